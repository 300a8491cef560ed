#include "doctest.h"

#include "nilcert/poly.hpp"

#include <stdexcept>
#include <string>
#include <vector>

using namespace nilcert;

namespace {

const std::vector<std::string> kNames = {"a", "b", "c"};

// Readable fingerprint of a polynomial, e.g. "2*a^2 + -1*a*b".
std::string render(const QPoly& p, const MonomialLayout& layout) {
    std::string s;
    for (const auto& [key, val] : p.sorted_terms()) {
        if (!s.empty()) s += " + ";
        s += val.get_str() + "*" + layout.decode(key, kNames);
    }
    return s.empty() ? "0" : s;
}

} // namespace

TEST_SUITE("poly") {

TEST_CASE("layout packs exponents reversibly") {
    MonomialLayout layout(3, 6); // needs 3 bits per variable
    CHECK(layout.bits == 3);
    u128 key = layout.var(0) * 2 + layout.var(2) * 5;
    CHECK(layout.exponent(key, 0) == 2);
    CHECK(layout.exponent(key, 1) == 0);
    CHECK(layout.exponent(key, 2) == 5);
    CHECK(layout.total_degree(key) == 7);
    CHECK(layout.decode(key, kNames) == "a^2*c^5");
    CHECK(layout.decode(0, kNames) == "1");
    CHECK(layout.decode(layout.var(1), kNames) == "b");
}

TEST_CASE("layout rejects impossible packings") {
    CHECK_THROWS_AS(MonomialLayout(50, 6), std::invalid_argument);
    // 42 variables at 3 bits still fit
    CHECK(MonomialLayout(42, 6).bits == 3);
}

TEST_CASE("addition accumulates and cancels") {
    MonomialLayout layout(2, 4);
    QPoly p;
    p.add(layout.var(0), rat(1, 2));
    p.add(layout.var(0), rat(1, 2));
    p.add(layout.var(1), rat(3));
    CHECK(p.term_count() == 2);
    p.add(layout.var(0), rat(-1));
    CHECK(p.term_count() == 1);
    p.add(layout.var(1), rat(-3));
    CHECK(p.is_zero());
}

TEST_CASE("products expand binomials") {
    MonomialLayout layout(2, 4);
    QPoly x_plus_y, x_minus_y;
    x_plus_y.add(layout.var(0), 1);
    x_plus_y.add(layout.var(1), 1);
    x_minus_y.add(layout.var(0), 1);
    x_minus_y.add(layout.var(1), -1);

    QPoly prod;
    prod.add_product(x_plus_y, x_minus_y);
    // (a+b)(a-b) = a^2 - b^2, with the middle terms cancelling
    CHECK(render(prod, layout) == "1*a^2 + -1*b^2");

    QPoly square;
    square.add_product(x_plus_y, x_plus_y);
    CHECK(render(square, layout) == "1*a^2 + 2*a*b + 1*b^2");
}

TEST_CASE("add_scaled and add_product_scaled match explicit arithmetic") {
    MonomialLayout layout(2, 6);
    QPoly p = QPoly::variable(layout, 0, rat(2)); // 2a
    QPoly q = QPoly::variable(layout, 1, rat(3)); // 3b

    QPoly lhs;
    lhs.add_scaled(p, rat(1, 2));           // a
    lhs.add_product_scaled(p, q, rat(1, 6)); // ab
    QPoly rhs;
    rhs.add(layout.var(0), 1);
    rhs.add(layout.var(0) + layout.var(1), 1);
    CHECK(render(lhs, layout) == render(rhs, layout));
}

TEST_CASE("integer coefficients stay exact at scale") {
    // (a + b + c)^8 has multinomial coefficients; check two of them
    MonomialLayout layout(3, 8);
    IPoly sum;
    for (int i = 0; i < 3; ++i) sum.add(layout.var(i), 1);
    IPoly pow = sum;
    for (int k = 1; k < 8; ++k) {
        IPoly next;
        next.add_product(pow, sum);
        pow = next;
    }
    CHECK(pow.term_count() == 45); // monomials of degree 8 in 3 variables
    Int coeff_332 = 0, coeff_800 = 0;
    pow.for_each([&](u128 key, const Int& v) {
        if (layout.exponent(key, 0) == 3 && layout.exponent(key, 1) == 3)
            coeff_332 = v;
        if (layout.exponent(key, 0) == 8) coeff_800 = v;
    });
    CHECK(coeff_332 == 560); // 8!/(3!3!2!)
    CHECK(coeff_800 == 1);
}

TEST_CASE("sorted_terms is deterministic and complete") {
    MonomialLayout layout(3, 4);
    QPoly p;
    p.add(layout.var(2), 5);
    p.add(layout.var(0), 7);
    p.add(layout.var(1) * 2, -1);
    auto terms = p.sorted_terms();
    REQUIRE(terms.size() == 3);
    for (size_t i = 0; i + 1 < terms.size(); ++i)
        CHECK(terms[i].first < terms[i + 1].first);
    CHECK(p.term_count() == 3);
}

TEST_CASE("rehashing preserves contents") {
    MonomialLayout layout(2, 10);
    QPoly p;
    // force several rehashes
    for (int i = 0; i <= 10; ++i)
        for (int j = 0; j <= 10 - i; ++j)
            p.add(layout.var(0) * i + layout.var(1) * j, rat(i + 2 * j + 1));
    CHECK(p.term_count() == 66);
    bool all_found = true;
    p.for_each([&](u128 key, const Rat& v) {
        int i = layout.exponent(key, 0), j = layout.exponent(key, 1);
        if (v != rat(i + 2 * j + 1)) all_found = false;
    });
    CHECK(all_found);
}

} // TEST_SUITE
