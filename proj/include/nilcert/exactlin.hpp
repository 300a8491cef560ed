#pragma once
// Exact linear algebra: reduced row echelon form, kernel bases, Bareiss
// determinants, Smith normal form. All deterministic, all over Q (or Z
// where stated).

#include "nilcert/mat.hpp"

#include <optional>
#include <vector>

namespace nilcert {

struct RrefResult {
    Mat reduced;
    int rank = 0;
    std::vector<int> pivot_cols;
};

// Unique reduced row echelon form (leading entries 1, pivot columns cleared).
RrefResult rref(const Mat& m);

// Canonical null-space basis: one vector per free column, in column order,
// with the free coordinate set to 1 and pivot coordinates read off the RREF.
std::vector<Vec> kernel_basis(const Mat& m);

struct DetInvResult {
    Rat det;
    std::optional<Mat> inverse; // present iff det != 0
};

// Determinant by fraction-free (Bareiss) elimination on a common-denominator
// integer lift; inverse by Gauss-Jordan. Throws std::invalid_argument if m is
// not square.
DetInvResult det_inv(const Mat& m);

struct SnfResult {
    std::vector<Int> divisors; // diagonal d with d[i] | d[i+1], all >= 0
    Mat left;                  // unimodular, left * m * right = diag(divisors)
    Mat right;                 // unimodular
};

// Smith normal form by row/column gcd reduction with minimal-|pivot|
// selection. Throws std::invalid_argument unless every entry is an integer.
SnfResult smith_normal_form(const Mat& m);

// Convenience: rank of a matrix.
inline int rank(const Mat& m) { return rref(m).rank; }

// Row-span utilities used for subspace calculus.
// Returns the RREF basis rows of the span of the given vectors.
std::vector<Vec> row_space_basis(const std::vector<Vec>& vectors, int ambient_dim);

// True iff v lies in the span of the given RREF rows.
bool in_row_space(const std::vector<Vec>& rref_rows, const Vec& v);

} // namespace nilcert
