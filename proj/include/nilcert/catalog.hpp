#pragma once
// Built-in algebras: three parameterized families and three fixed entries
// (cn7/cn8/cn9) shipped as data files. Fixed entries carry documented
// invariants that are re-derived on load — a bad data file cannot be
// served. A missing data file marks the entry absent; callers are expected
// to skip dependent work loudly rather than fail.

#include "nilcert/liealg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nilcert {

struct CatalogExpected {
    int rank = 0;
    int cls = 0;
    int ab_dim = 0;
    bool charnil = false;
    bool lattice_closed = false;
};

struct CatalogEntry {
    std::string name;    // "abelian(n)" (family) or "cn7" (fixed)
    bool family = false;
    bool available = true; // fixed entries: data file present and valid
    std::string note;
    std::optional<CatalogExpected> expected; // fixed entries only
    std::string checksum;                    // fixed entries: FNV-1a of bytes
};

// dim 2k+1, [e_{2i-1}, e_{2i}] = 2*e_{2k+1}; the factor 2 makes the
// half-bracket BCH term integral, so Z^n is closed under the group law
StructureConstants heisenberg_lattice(int k);

// [e1, e_i] = e_{i+1} for 2 <= i <= n-1; n >= 3; deliberately unscaled, so
// it is a standard negative control for lattice closure
StructureConstants filiform(int n);

// Compiled-in location of the shipped data files.
std::string default_data_dir();

// "abelian(3)", "heisenberg_lattice(1)", "filiform(4)", "cn7", ...
// Unknown names and bad parameters throw std::invalid_argument; an absent
// fixed entry throws std::runtime_error; a fixed entry failing its
// documented-invariant recheck throws std::logic_error.
StructureConstants catalog_get(const std::string& spec,
                               const std::string& data_dir = default_data_dir());

// Stable listing; fixed entries are revalidated (availability reflects it).
std::vector<CatalogEntry> catalog_list(
    const std::string& data_dir = default_data_dir());

} // namespace nilcert
