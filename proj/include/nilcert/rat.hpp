#pragma once
// Exact rational scalars on top of GMP. mpq_class keeps results canonical
// (lowest terms, positive denominator) under arithmetic; the helpers here
// guard the construction paths where canonicalization is the caller's job.

#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nilcert {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "p" or "p/q" with optional sign, base 10 only.
inline Rat rat_parse(std::string_view s) {
    Rat r;
    if (s.empty() || mpq_set_str(r.get_mpq_t(), std::string(s).c_str(), 10) != 0)
        throw std::invalid_argument("malformed rational: '" + std::string(s) + "'");
    if (r.get_den() == 0)
        throw std::invalid_argument("zero denominator: '" + std::string(s) + "'");
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline Int to_int(const Rat& r) {
    if (!is_integer(r)) throw std::invalid_argument("rational is not an integer");
    return r.get_num();
}

inline std::string to_string(const Rat& r) { return r.get_str(); }
inline std::string to_string(const Int& z) { return z.get_str(); }

} // namespace nilcert
