#pragma once
// Structure-constant model of rational nilpotent Lie algebras and the
// subspace calculus: validation, brackets, lower central series, center,
// direct sums, invariant reports.

#include "nilcert/exactlin.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nilcert {

// The table stores only pairs i < j (1-based); [e_j,e_i] = -[e_i,e_j] is
// implicit and never re-verified. Absent pairs mean zero bracket.
struct StructureConstants {
    int dim = 0;
    std::map<std::pair<int, int>, Vec> table;
    std::string name;

    // returns nullptr when [e_i,e_j] = 0 (absent entry); requires i < j
    const Vec* entry(int i, int j) const {
        auto it = table.find({i, j});
        return it == table.end() ? nullptr : &it->second;
    }
    void set(int i, int j, Vec v);

    bool operator==(const StructureConstants& o) const {
        return dim == o.dim && table == o.table && name == o.name;
    }
};

// Rational subspace in canonical form: basis rows are the RREF of any
// spanning set, so equal subspaces have identical representations.
struct Subspace {
    int ambient_dim = 0;
    std::vector<Vec> basis;

    static Subspace from_span(std::vector<Vec> vectors, int ambient_dim);
    static Subspace full(int n);
    static Subspace zero(int n) { return Subspace{n, {}}; }

    int dim() const { return static_cast<int>(basis.size()); }
    bool contains(const Vec& v) const { return in_row_space(basis, v); }
    bool contains(const Subspace& other) const;
    bool operator==(const Subspace& o) const {
        return ambient_dim == o.ambient_dim && basis == o.basis;
    }
};

struct JacobiFailure {
    int i, j, k;
    Vec residual;
};

struct ValidationReport {
    bool accepted = false;
    std::vector<JacobiFailure> jacobi_failures;
    bool nilpotent = false;
    int cls = 0;                  // nilpotency class when nilpotent
    std::vector<int> series_dims; // dims of the lower central series terms
};

// Checks the Lie axioms assumed everywhere else: all Jacobi residuals zero
// and the lower central series terminating at zero. Malformed tables
// (wrong vector length, bad indices) throw std::invalid_argument.
ValidationReport validate(const StructureConstants& sc);

// Bilinear extension of the table. Throws on length mismatch.
Vec bracket(const Vec& x, const Vec& y, const StructureConstants& sc);

// Span of all pairwise brackets of basis vectors of a and b.
Subspace subspace_bracket(const Subspace& a, const Subspace& b,
                          const StructureConstants& sc);

struct SeriesResult {
    std::vector<Subspace> terms; // L^1 = L down to the zero term inclusive
    std::vector<int> dims;
    int cls = 0;
    bool terminated = false; // false iff dims stopped strictly decreasing
};

SeriesResult lower_central_series(const StructureConstants& sc);

// Solution space of [x, e_i] = 0 for all i.
Subspace center(const StructureConstants& sc);

// Block sum; cross brackets zero.
StructureConstants direct_sum(const StructureConstants& a,
                              const StructureConstants& b);

struct InvariantReport {
    int rank = 0;       // dim L
    int cls = 0;        // nilpotency class
    std::vector<int> series_dims;
    int center_dim = 0;
    int ab_dim = 0;     // dim L/[L,L]
    int generators = 0; // minimal generator count = ab_dim
};

InvariantReport invariant_report(const StructureConstants& sc);

// Builders used across tests and the catalog.
StructureConstants abelian(int n);

} // namespace nilcert
