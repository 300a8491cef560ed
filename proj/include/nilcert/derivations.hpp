#pragma once
// Derivation spaces (Leibniz solver), the Engel simultaneous-flag decision
// procedure for "every element of the span is nilpotent", characteristic
// nilpotency, and the independent trace-power oracle.

#include "nilcert/liealg.hpp"

#include <optional>

namespace nilcert {

struct DerivationSpace {
    StructureConstants algebra;
    std::vector<Mat> basis; // n x n matrices, canonical kernel basis order
    int dimension = 0;
};

struct NilpotencyCertificate {
    enum class Verdict { AllNilpotent, NotAllNilpotent };
    Verdict verdict = Verdict::AllNilpotent;

    // all-nilpotent: nested subspaces, full space down to zero, with every
    // basis matrix mapping step i into step i+1 (simultaneous strict
    // triangularization evidence)
    std::vector<Subspace> flag;

    // not-all-nilpotent: the recursion stage at which the common kernel
    // vanished, plus (best effort) a span element with a nonzero trace power
    int failure_stage = -1;
    std::optional<Mat> witness;
    int witness_trace_power = 0; // k with tr(witness^k) != 0, when witness set
};

// Basis of the solution space of the Leibniz system D[e_i,e_j] =
// [De_i,e_j] + [e_i,De_j]. Unknowns d(a,b) are flattened a*n+b (D e_b has
// e_a-coordinate d(a,b)); the basis is the canonical kernel basis of that
// system. Commutator closure of the span is verified and asserted.
DerivationSpace derivation_space(const StructureConstants& sc);

// True iff M satisfies the Leibniz identity on all basis pairs.
bool is_derivation(const Mat& m, const StructureConstants& sc);

// Engel recursion: intersect kernels, quotient, recurse. The span of the
// basis must be commutator-closed; this is checked and a violation throws
// std::invalid_argument.
NilpotencyCertificate engel_all_nilpotent(const std::vector<Mat>& basis, int n);

struct CharNilResult {
    bool verdict = false;
    NilpotencyCertificate certificate;
    int der_dim = 0;
};

// verdict true iff every derivation is nilpotent. On true, the two
// structural consequences (center inside the derived subalgebra; Der(L)
// nilpotent as a Lie algebra) are re-derived and asserted.
CharNilResult is_characteristically_nilpotent(const StructureConstants& sc);

struct DerLcsResult {
    std::vector<int> dims;
    bool nilpotent_as_lie_algebra = false;
};

// Lower central series of the matrix Lie algebra spanned by ds.basis.
DerLcsResult der_lie_lcs(const DerivationSpace& ds);

// Independent oracle: true iff tr(X^k) vanishes identically for the generic
// span element X = sum t_i D_i, k = 1..n — equivalent over Q to every span
// element being nilpotent. Computed coefficient-wise via polynomial matrix
// powers (the coefficient of a degree-k monomial is the sum of word traces
// over all orderings of that multiset). Throws for ambient dimension > 10.
bool trace_power_oracle(const std::vector<Mat>& basis);

} // namespace nilcert
