#pragma once
// Sparse multivariate polynomials with packed exponent keys. Exponent vectors
// are packed into a single 128-bit key (fixed bits per variable), so monomial
// arithmetic is integer addition and hashing is cheap. Coefficients are exact
// (Int or Rat). Used for the trace-power nilpotency oracle and the symbolic
// lattice-closure check, where total degrees stay small (<= 10).

#include "nilcert/rat.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilcert {

using u128 = unsigned __int128;

// Fixed-width exponent packing. bits must satisfy nvars*bits <= 128 and
// 2^bits > max total degree (so individual exponents can never overflow).
struct MonomialLayout {
    int nvars = 0;
    int bits = 0;

    MonomialLayout() = default;
    MonomialLayout(int nv, int max_degree) : nvars(nv) {
        bits = 1;
        while ((1 << bits) <= max_degree) ++bits;
        if (nv * bits > 128)
            throw std::invalid_argument("monomial layout exceeds 128-bit packing");
    }

    u128 var(int i) const { return static_cast<u128>(1) << (bits * i); }
    int exponent(u128 key, int i) const {
        return static_cast<int>((key >> (bits * i)) & ((1u << bits) - 1));
    }
    int total_degree(u128 key) const {
        int d = 0;
        for (int i = 0; i < nvars; ++i) d += exponent(key, i);
        return d;
    }
    // e.g. "x1^2*x3" with the given variable names
    std::string decode(u128 key, const std::vector<std::string>& names) const;
};

namespace detail {
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
inline uint64_t hash_u128(u128 k) {
    return splitmix64(static_cast<uint64_t>(k)) ^
           splitmix64(static_cast<uint64_t>(k >> 64) * 0x9e3779b97f4a7c15ULL + 1);
}
} // namespace detail

// Open-addressing monomial->coefficient map with accumulate-on-insert.
// Entries whose coefficient cancels to zero stay in their slot (skipped on
// read); polynomials here only grow within one computation, so no deletion.
template <class C>
class SparsePoly {
public:
    struct Slot {
        u128 key = 0;
        C val{};
        bool used = false;
    };

    SparsePoly() { slots_.resize(16); }

    static SparsePoly variable(const MonomialLayout& layout, int i, const C& coeff) {
        SparsePoly p;
        p.add(layout.var(i), coeff);
        return p;
    }

    void add(u128 key, const C& c) {
        if (c == 0) return;
        if ((occupied_ + 1) * 5 >= slots_.size() * 3) rehash(slots_.size() * 2);
        size_t mask = slots_.size() - 1;
        size_t idx = detail::hash_u128(key) & mask;
        while (true) {
            Slot& s = slots_[idx];
            if (!s.used) {
                s.used = true;
                s.key = key;
                s.val = c;
                ++occupied_;
                return;
            }
            if (s.key == key) {
                s.val += c;
                return;
            }
            idx = (idx + 1) & mask;
        }
    }

    // this += c * other
    void add_scaled(const SparsePoly& other, const C& c) {
        if (c == 0) return;
        for (const Slot& s : other.slots_)
            if (s.used && s.val != 0) add(s.key, s.val * c);
    }

    // this += a * b (distributes; keys add because exponents add)
    void add_product(const SparsePoly& a, const SparsePoly& b) {
        for (const Slot& sa : a.slots_) {
            if (!sa.used || sa.val == 0) continue;
            for (const Slot& sb : b.slots_) {
                if (!sb.used || sb.val == 0) continue;
                add(sa.key + sb.key, sa.val * sb.val);
            }
        }
    }

    // this += a * b * c
    void add_product_scaled(const SparsePoly& a, const SparsePoly& b, const C& c) {
        if (c == 0) return;
        for (const Slot& sa : a.slots_) {
            if (!sa.used || sa.val == 0) continue;
            for (const Slot& sb : b.slots_) {
                if (!sb.used || sb.val == 0) continue;
                add(sa.key + sb.key, sa.val * sb.val * c);
            }
        }
    }

    bool is_zero() const {
        for (const Slot& s : slots_)
            if (s.used && s.val != 0) return false;
        return true;
    }

    size_t term_count() const {
        size_t n = 0;
        for (const Slot& s : slots_)
            if (s.used && s.val != 0) ++n;
        return n;
    }

    template <class F>
    void for_each(F&& f) const {
        for (const Slot& s : slots_)
            if (s.used && s.val != 0) f(s.key, s.val);
    }

    // deterministic listing, ordered by packed key
    std::vector<std::pair<u128, C>> sorted_terms() const {
        std::vector<std::pair<u128, C>> t;
        for_each([&](u128 k, const C& v) { t.emplace_back(k, v); });
        std::sort(t.begin(), t.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return t;
    }

private:
    void rehash(size_t cap) {
        std::vector<Slot> old = std::move(slots_);
        slots_.clear();
        slots_.resize(cap);
        occupied_ = 0;
        size_t mask = cap - 1;
        for (Slot& s : old) {
            if (!s.used || s.val == 0) continue;
            size_t idx = detail::hash_u128(s.key) & mask;
            while (slots_[idx].used) idx = (idx + 1) & mask;
            slots_[idx].used = true;
            slots_[idx].key = s.key;
            slots_[idx].val = std::move(s.val);
            ++occupied_;
        }
    }

    std::vector<Slot> slots_;
    size_t occupied_ = 0;
};

using IPoly = SparsePoly<Int>;
using QPoly = SparsePoly<Rat>;

} // namespace nilcert
