#include "doctest.h"

#include "nilcert/catalog.hpp"
#include "nilcert/malcev.hpp"

#include "support.hpp"

#include <random>
#include <stdexcept>

using namespace nilcert;

namespace {

// Unscaled 3-dimensional Heisenberg table [e1,e2] = e3; the standard
// example of a rational group law that leaves the integer lattice.
StructureConstants heis_unscaled() {
    StructureConstants sc;
    sc.dim = 3;
    sc.set(1, 2, qv({0, 0, 1}));
    return sc;
}

Vec random_int_vec(std::mt19937_64& rng, int n, int bound) {
    std::uniform_int_distribution<int> d(-bound, bound);
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = d(rng);
    return v;
}

} // namespace

TEST_SUITE("malcev") {

TEST_CASE("group law on the scaled Heisenberg lattice") {
    StructureConstants h = heisenberg_lattice(1);
    CHECK(BchContext(h).degree() == 2);
    CHECK(bch(qv({1, 0, 0}), qv({0, 1, 0}), h) == qv({1, 1, 1}));
    // unscaled, the same product picks up the half-coefficient
    CHECK(bch(qv({1, 0, 0}), qv({0, 1, 0}), heis_unscaled()) ==
          Vec{Rat(1), Rat(1), rat(1, 2)});
}

TEST_CASE("group law on the fixed entries") {
    auto cn7 = try_catalog("cn7");
    if (cn7) {
        CHECK(bch(qv({1, 0, 0, 0, 0, 0, 0}), qv({0, 1, 0, 0, 0, 0, 0}), *cn7) ==
              qv({1, 1, 15, 75, -75, -2325, -5625}));
        CHECK(bch(qv({1, 2, 0, 1, 0, 0, 1}), qv({0, 1, 1, 0, 2, 1, 0}), *cn7) ==
              qv({1, 3, 16, 91, 182, -1904, -16364}));
    }
    auto cn8 = try_catalog("cn8");
    if (cn8) {
        CHECK(bch(qv({1, 0, 1, 0, 0, 1, 0, 0}), qv({0, 1, 0, 1, 1, 0, 0, 0}),
                  *cn8) == qv({1, 1, 1, 1, 1, 1, 3, -3}));
    }
    auto cn9 = try_catalog("cn9");
    if (cn9) {
        CHECK(bch(qv({1, 1, 0, 0, 0, 0, 0, 1, 0}),
                  qv({0, 1, 0, 1, 0, 0, 0, 0, 1}), *cn9) ==
              qv({1, 2, 15, 76, 15, -2160, -10035, 1, 6661}));
    }
    // a truncation with denominators: the filiform chain at degree 3
    CHECK(bch(qv({1, 0, 0, 0}), qv({0, 1, 0, 0}), filiform(4)) ==
          Vec{Rat(1), Rat(1), rat(1, 2), rat(1, 12)});
}

TEST_CASE("group axioms hold exactly") {
    auto check_axioms = [](const StructureConstants& sc, int trials) {
        BchContext ctx(sc);
        std::mt19937_64 rng(42);
        Vec zero(sc.dim, Rat(0));
        for (int t = 0; t < trials; ++t) {
            Vec a = random_int_vec(rng, sc.dim, 3);
            Vec b = random_int_vec(rng, sc.dim, 3);
            Vec c = random_int_vec(rng, sc.dim, 3);
            CHECK(ctx.apply(a, zero) == a);
            CHECK(ctx.apply(zero, a) == a);
            CHECK(is_zero(ctx.apply(a, -a)));
            CHECK(ctx.apply(ctx.apply(a, b), c) == ctx.apply(a, ctx.apply(b, c)));
        }
    };
    check_axioms(heisenberg_lattice(1), 10);
    check_axioms(filiform(5), 10);
    auto cn7 = try_catalog("cn7");
    if (cn7) check_axioms(*cn7, 5);
}

TEST_CASE("rejects non-nilpotent input") {
    StructureConstants sc;
    sc.dim = 2;
    sc.set(1, 2, qv({0, 1})); // [e1,e2] = e2
    CHECK_THROWS_AS(BchContext{sc}, std::invalid_argument);
}

TEST_CASE("symbolic closure check") {
    CHECK(lattice_closure_check(heisenberg_lattice(1)).closed);
    CHECK(lattice_closure_check(heisenberg_lattice(2)).closed);
    CHECK(lattice_closure_check(abelian(4)).closed);
    for (const char* name : {"cn7", "cn8", "cn9"}) {
        auto sc = try_catalog(name);
        if (sc) CHECK(lattice_closure_check(*sc).closed);
    }

    ClosureReport r = lattice_closure_check(heis_unscaled());
    CHECK(!r.closed);
    CHECK(!r.exact);
    CHECK(r.coordinate == 3);
    CHECK(r.coefficient.get_den() == 2); // the 1/2 [x,y] term
    CHECK(!lattice_closure_check(filiform(4)).closed);
}

TEST_CASE("exact grid closure check agrees") {
    CHECK(lattice_closure_exact(heisenberg_lattice(1)).closed);

    ClosureReport r = lattice_closure_exact(heis_unscaled());
    CHECK(!r.closed);
    CHECK(r.exact);
    // the recorded pair really escapes the lattice
    CHECK(!is_integral(bch(r.at_x, r.at_y, heis_unscaled())));

    // refuses oversized grids instead of running forever
    CHECK_THROWS_AS(lattice_closure_exact(heisenberg_lattice(1), 10),
                    std::runtime_error);
}

TEST_CASE("endomorphism classification on the Heisenberg lattice") {
    StructureConstants h = heisenberg_lattice(1);

    LieEndomorphism good =
        classify_endomorphism(Mat::from_rows({{2, 0, 0}, {0, 2, 0}, {0, 0, 4}}), h);
    CHECK(good.is_hom);
    CHECK(good.is_automorphism);
    CHECK(good.is_lattice_preserving);
    CHECK(good.det == 16);
    CHECK(!good.failing_pair.has_value());

    LieEndomorphism bad =
        classify_endomorphism(Mat::from_rows({{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}), h);
    CHECK(!bad.is_hom);
    REQUIRE(bad.failing_pair.has_value());
    CHECK(*bad.failing_pair == std::pair<int, int>{1, 2});

    // the zero map is a homomorphism but no automorphism
    LieEndomorphism zero = classify_endomorphism(Mat(3, 3), h);
    CHECK(zero.is_hom);
    CHECK(!zero.is_automorphism);
    CHECK(zero.det == 0);

    // rational entries: automorphism over Q, not over the lattice
    Mat half = Mat::identity(3);
    half.at(0, 0) = rat(1, 2);
    half.at(2, 2) = rat(1, 2);
    LieEndomorphism frac = classify_endomorphism(half, h);
    CHECK(frac.is_hom);
    CHECK(frac.is_automorphism);
    CHECK(!frac.is_lattice_preserving);
}

TEST_CASE("index of the image subgroup") {
    StructureConstants h = heisenberg_lattice(1);
    LieEndomorphism f =
        classify_endomorphism(Mat::from_rows({{2, 0, 0}, {0, 2, 0}, {0, 0, 4}}), h);
    IndexResult r = image_index(f);
    CHECK(r.index == 16);
    CHECK(r.elementary_divisors == std::vector<Int>{2, 2, 4});

    CHECK(image_index(classify_endomorphism(Mat::identity(3), h)).index == 1);
    CHECK_THROWS_AS(image_index(classify_endomorphism(Mat(3, 3), h)),
                    std::invalid_argument);
}

TEST_CASE("coset enumeration agrees with the elementary divisors") {
    StructureConstants h = heisenberg_lattice(1);
    auto index_of = [&](const Mat& m, const StructureConstants& sc) {
        return coset_index_oracle(classify_endomorphism(m, sc), sc);
    };
    CHECK(index_of(Mat::from_rows({{2, 0, 0}, {0, 2, 0}, {0, 0, 4}}), h) == 16);
    CHECK(index_of(Mat::identity(3), h) == 1);
    CHECK(index_of(Mat::from_rows({{2, 0}, {0, 3}}), abelian(2)) == 6);
    // the cap aborts oversized enumerations
    CHECK_THROWS_AS(
        coset_index_oracle(
            classify_endomorphism(
                Mat::from_rows({{4, 0, 0}, {0, 4, 0}, {0, 0, 16}}), h),
            h, 10),
        std::runtime_error);
}

TEST_CASE("single-candidate witness checks") {
    StructureConstants h = heisenberg_lattice(1);
    CoHopfVerdict hit =
        cohopf_witness_check(Mat::from_rows({{2, 0, 0}, {0, 2, 0}, {0, 0, 4}}), h);
    CHECK(hit.kind == CoHopfVerdict::Kind::WitnessFound);
    REQUIRE(hit.index.has_value());
    CHECK(*hit.index == 16);

    CoHopfVerdict miss = cohopf_witness_check(Mat::identity(3), h);
    CHECK(miss.kind == CoHopfVerdict::Kind::Inconclusive);

    CHECK_THROWS_AS(
        cohopf_witness_check(Mat::from_rows({{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}), h),
        std::invalid_argument);
}

TEST_CASE("witness search finds the first lattice self-embedding") {
    // heisenberg_lattice(1): first witness in column-major value order
    CoHopfVerdict v = certify_cohopfian(heisenberg_lattice(1));
    REQUIRE(v.kind == CoHopfVerdict::Kind::WitnessFound);
    CHECK(v.witness->matrix ==
          Mat::from_rows({{-2, -2, 0}, {-2, -1, 0}, {-2, -2, -2}}));
    CHECK(v.witness->det == 4);
    CHECK(*v.index == 4);
    CHECK(v.witness->is_hom);
    CHECK(v.witness->is_lattice_preserving);

    CoHopfVerdict a2 = certify_cohopfian(abelian(2));
    REQUIRE(a2.kind == CoHopfVerdict::Kind::WitnessFound);
    CHECK(a2.witness->matrix == Mat::from_rows({{-2, -2}, {-2, -1}}));
    CHECK(a2.witness->det == -2);
    CHECK(*a2.index == 2);

    CoHopfVerdict a3 = certify_cohopfian(abelian(3));
    REQUIRE(a3.kind == CoHopfVerdict::Kind::WitnessFound);
    CHECK(a3.witness->matrix ==
          Mat::from_rows({{-2, -2, -2}, {-2, -2, -1}, {-2, -1, -2}}));
    CHECK(a3.witness->det == 2);
}

TEST_CASE("witness search respects the bound") {
    WitnessSearchOptions narrow;
    narrow.bound = 1;

    // on the Heisenberg lattice the homomorphism equations force the third
    // column to (0, 0, m) with m the upper 2x2 minor, so |det| = m^2 <= 1
    // within [-1, 1]: the bounded search must come back empty-handed
    CoHopfVerdict none = certify_cohopfian(heisenberg_lattice(1), narrow);
    CHECK(none.kind == CoHopfVerdict::Kind::Inconclusive);
    CHECK(none.note.find("no witness") != std::string::npos);

    // on abelian(2) a determinant-2 matrix with entries in [-1, 1] exists
    CoHopfVerdict v = certify_cohopfian(abelian(2), narrow);
    REQUIRE(v.kind == CoHopfVerdict::Kind::WitnessFound);
    for (const Rat& entry : v.witness->matrix.a) {
        CHECK(entry >= -1);
        CHECK(entry <= 1);
    }
    CHECK(abs(v.witness->det) > 1);
    CHECK(coset_index_oracle(*v.witness, abelian(2)) == *v.index);
}

TEST_CASE("certification and the node cap") {
    for (const char* name : {"cn7", "cn8", "cn9"}) {
        auto sc = try_catalog(name);
        if (!sc) continue;
        CoHopfVerdict v = certify_cohopfian(*sc);
        CHECK(v.kind == CoHopfVerdict::Kind::Certified);
        REQUIRE(v.certificate.has_value());
        CHECK(v.certificate->verdict);
    }

    // filiform(4) is neither characteristically nilpotent nor known to have
    // a small witness; a tight cap forces the inconclusive outcome
    WitnessSearchOptions tight;
    tight.node_cap = 50'000;
    CoHopfVerdict v = certify_cohopfian(filiform(4), tight);
    CHECK(v.kind == CoHopfVerdict::Kind::Inconclusive);
    CHECK(v.nodes_explored > 0);
    CHECK(v.note.find("node cap") != std::string::npos);
}

TEST_CASE("product with a line is a universal witness") {
    StructureConstants h = heisenberg_lattice(1);
    ProductWitness pw = product_with_line_witness(h);
    CHECK(pw.sum.dim == 4);
    CHECK(center(pw.sum).dim() == 2);

    LieEndomorphism f = classify_endomorphism(pw.f, pw.sum);
    CHECK(f.is_hom);
    CHECK(f.is_automorphism);
    CHECK(f.is_lattice_preserving);
    CHECK(f.det == 2);
    CHECK(image_index(f).index == 2);
    CHECK(coset_index_oracle(f, pw.sum) == 2);
}

TEST_CASE("exp(ad x) automorphisms") {
    StructureConstants h = heisenberg_lattice(1);
    LieEndomorphism e1 = exp_ad_automorphism(qv({1, 0, 0}), h);
    CHECK(e1.matrix == Mat::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 2, 1}}));
    CHECK(e1.is_hom);
    CHECK(e1.det == 1);

    // products of inner automorphisms stay unimodular automorphisms
    LieEndomorphism e2 = exp_ad_automorphism(qv({0, 1, 0}), h);
    LieEndomorphism prod = classify_endomorphism(e1.matrix * e2.matrix, h);
    CHECK(prod.is_hom);
    CHECK(prod.is_automorphism);
    CHECK(prod.det == 1);
    CHECK(image_index(prod).index == 1);

    auto cn7 = try_catalog("cn7");
    if (cn7) {
        LieEndomorphism e = exp_ad_automorphism(qv({1, 1, 0, 0, 0, 0, 0}), *cn7);
        CHECK(e.is_hom);
        CHECK(e.det == 1);
    }
}

TEST_CASE("signed permutation symmetries of the Heisenberg lattice") {
    // exactly 8 of the 48 signed permutations preserve the bracket
    StructureConstants h = heisenberg_lattice(1);
    const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                             {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    int count = 0;
    for (const auto& perm : perms)
        for (int signs = 0; signs < 8; ++signs) {
            Mat m(3, 3);
            for (int c = 0; c < 3; ++c)
                m.at(perm[c], c) = (signs >> c) & 1 ? -1 : 1;
            LieEndomorphism e = classify_endomorphism(m, h);
            if (e.is_hom) {
                ++count;
                CHECK(abs(e.det) == 1);
            }
        }
    CHECK(count == 8);
}

TEST_CASE("same-rank epimorphism rigidity") {
    StructureConstants h = heisenberg_lattice(1);
    Mat d224 = Mat::from_rows({{2, 0, 0}, {0, 2, 0}, {0, 0, 4}});
    EpiCheckResult r = same_rank_epi_check(d224, h, h);
    CHECK(r.is_hom);
    CHECK(r.rank == 3);
    CHECK(r.surjective_linear); // onto over Q ...
    CHECK(r.injective);         // ... hence injective
    CHECK(!r.lattice_surjective); // but proper on the lattice
    REQUIRE(r.index.has_value());
    CHECK(*r.index == 16);

    EpiCheckResult id = same_rank_epi_check(Mat::identity(3), h, h);
    CHECK(id.lattice_surjective);
    CHECK(*id.index == 1);

    EpiCheckResult zero = same_rank_epi_check(Mat(3, 3), h, h);
    CHECK(zero.rank == 0);
    CHECK(!zero.surjective_linear);
    CHECK(!zero.injective);

    CHECK_THROWS_AS(same_rank_epi_check(Mat(3, 3), h, abelian(2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        same_rank_epi_check(Mat::from_rows({{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}), h,
                            h),
        std::invalid_argument);
}

TEST_CASE("automorphisms commute with the group law") {
    StructureConstants h = heisenberg_lattice(1);
    BchContext ctx(h);
    LieEndomorphism f = exp_ad_automorphism(qv({1, -2, 3}), h);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        Vec x = random_int_vec(rng, 3, 4);
        Vec y = random_int_vec(rng, 3, 4);
        CHECK(f.matrix * ctx.apply(x, y) ==
              ctx.apply(f.matrix * x, f.matrix * y));
    }
}

} // TEST_SUITE
