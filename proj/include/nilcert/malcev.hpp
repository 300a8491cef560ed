#pragma once
// Lattice-coordinate model of the lattice group attached to a nilpotent
// algebra: truncated BCH group law, lattice closure checks, endomorphism
// classification, index computations (elementary divisors + independent
// coset enumeration), and the determinant-based co-Hopfian verdicts.

#include "nilcert/derivations.hpp"
#include "nilcert/liealg.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nilcert {

// Dynkin-series word table for one truncation degree. A "word" is a letter
// string over {x, y} (bit 0 = outermost letter, 1 = y); its value is the
// right-nested bracket. Distinct composition terms contributing the same
// word are merged at construction, so evaluation costs one bracket per
// table word plus shared suffixes.
class BchContext {
public:
    // Truncates at the nilpotency class of sc. Throws std::invalid_argument
    // if sc is not nilpotent or the class exceeds the supported range.
    explicit BchContext(const StructureConstants& sc);

    // z with exp(x)exp(y) = exp(z); exact, associative, identity 0,
    // inverse -x.
    Vec apply(const Vec& x, const Vec& y) const;

    int degree() const { return degree_; }
    const StructureConstants& algebra() const { return sc_; }

    struct Word {
        int length;
        unsigned mask;
        Rat coeff;
    };
    const std::vector<Word>& words() const { return words_; }

private:
    StructureConstants sc_;
    int degree_ = 1;
    std::vector<Word> words_;
};

// One-shot convenience wrapper around BchContext.
Vec bch(const Vec& x, const Vec& y, const StructureConstants& sc);

struct ClosureReport {
    bool closed = true;
    bool exact = false; // true when produced by the grid check

    // symbolic check failure: first coordinate (1-based) whose polynomial
    // has a non-integer coefficient, the offending monomial and coefficient
    int coordinate = 0;
    std::string monomial;
    Rat coefficient;

    // grid check failure: the integer pair whose product left the lattice
    Vec at_x, at_y;
};

// Sufficient closure check: expands bch symbolically over free coordinates
// x1..xn, y1..yn and requires every polynomial coefficient to be an
// integer. Integer coefficients guarantee bch(Z^n, Z^n) stays in Z^n.
ClosureReport lattice_closure_check(const StructureConstants& sc);

// Exact integer-valuedness check by evaluation on the grid {0..c}^(2n)
// (finite-difference support for total degree <= c). Exponential in n;
// refuses to start when the grid exceeds max_points.
ClosureReport lattice_closure_exact(const StructureConstants& sc,
                                    long long max_points = 2'000'000);

struct LieEndomorphism {
    Mat matrix;
    StructureConstants algebra;

    bool is_hom = false;
    bool is_automorphism = false;       // hom with det != 0
    bool is_lattice_preserving = false; // integral entries
    Rat det = Rat(0);

    // first pair (i,j) with F[e_i,e_j] != [Fe_i,Fe_j], on rejection
    std::optional<std::pair<int, int>> failing_pair;
};

// Checks the homomorphism equations on all basis pairs and caches the
// classification flags. Throws std::invalid_argument on size mismatch.
LieEndomorphism classify_endomorphism(const Mat& f,
                                      const StructureConstants& sc);

struct IndexResult {
    Int index = 0;
    std::vector<Int> elementary_divisors;
};

// Index of the image lattice group = product of the elementary divisors of
// the matrix = |det|. Requires a lattice-preserving automorphism; throws
// std::invalid_argument otherwise.
IndexResult image_index(const LieEndomorphism& f);

// Independent index computation: breadth-first enumeration of the cosets of
// the image subgroup in (Z^n, bch). Candidate g merges into the coset of a
// representative r iff F^{-1}(bch(g, -r)) is integral. Requires a
// lattice-preserving automorphism over a lattice-closed algebra; throws
// std::runtime_error when the count exceeds the cap.
Int coset_index_oracle(const LieEndomorphism& f, const StructureConstants& sc,
                       long long cap = 4096);

struct CoHopfVerdict {
    enum class Kind { WitnessFound, Certified, Inconclusive };
    Kind kind = Kind::Inconclusive;

    std::optional<LieEndomorphism> witness; // |det| > 1, lattice-preserving
    std::optional<Int> index;               // image index of the witness
    std::optional<CharNilResult> certificate;
    std::string note;
    long long nodes_explored = 0; // witness-search statistics
};

// Verdict for one candidate matrix: witness-found with index when F is a
// lattice-preserving automorphism with |det| > 1; inconclusive (not a
// witness) when |det| = 1. Throws std::invalid_argument, with the
// classification evidence in the message, when F is not a lattice-
// preserving automorphism.
CoHopfVerdict cohopf_witness_check(const Mat& f, const StructureConstants& sc);

struct WitnessSearchOptions {
    int bound = 2;                      // entries searched in [-bound, bound]
    long long node_cap = 5'000'000;     // DFS size limit -> inconclusive
};

// Full certification: characteristic nilpotency first (certified verdict
// with the Engel flag), else a bounded deterministic search for a
// lattice-preserving automorphism with |det| > 1. The DFS fills the matrix
// column by column (values ascending), prunes by the homomorphism
// equations as soon as every column they mention is complete, and prunes
// column prefixes that are already linearly dependent (no completion can
// be invertible). Reports the first witness in that order, which is the
// lexicographically smallest one; node cap exhaustion is reported as
// inconclusive.
CoHopfVerdict certify_cohopfian(const StructureConstants& sc,
                                const WitnessSearchOptions& opts = {});

struct ProductWitness {
    StructureConstants sum; // sc + one central line
    Mat f;                  // identity on sc, times 2 on the line
};

// The product group with a line is never co-Hopfian: returns the direct sum
// with abelian(1) and the block witness id + (2), verified to be a
// lattice-preserving automorphism of determinant 2.
ProductWitness product_with_line_witness(const StructureConstants& sc);

// exp(ad x) as an automorphism. Asserts (and throws std::logic_error on
// violation, which would indicate a solver bug): Lie automorphism,
// identity induced on L/[L,L], unipotent, determinant exactly 1.
LieEndomorphism exp_ad_automorphism(const Vec& x, const StructureConstants& sc);

struct EpiCheckResult {
    bool is_hom = false;
    int rank = 0;                 // linear rank over Q
    bool surjective_linear = false; // rank = n, i.e. epimorphism over Q
    bool injective = false;         // det != 0
    bool lattice_surjective = false; // integral with all divisors 1
    std::optional<Int> index;        // lattice index when integral, det != 0
};

// Same-rank epimorphism rigidity: for dim(src) = dim(dst), surjective
// implies bijective (rank n forces det != 0; asserted). The result keeps
// the linear-rank and lattice-index evidence separate, since a map can be
// onto over Q while proper on the lattice. Throws std::invalid_argument on
// dimension mismatch or when f is not a homomorphism src -> dst.
EpiCheckResult same_rank_epi_check(const Mat& f, const StructureConstants& src,
                                   const StructureConstants& dst);

} // namespace nilcert
