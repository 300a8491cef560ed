#include "nilcert/exactlin.hpp"

#include <algorithm>
#include <stdexcept>

namespace nilcert {

RrefResult rref(const Mat& m) {
    RrefResult out;
    out.reduced = m;
    Mat& a = out.reduced;
    int r = 0;
    for (int c = 0; c < a.cols && r < a.rows; ++c) {
        int pr = -1;
        for (int i = r; i < a.rows; ++i)
            if (a.at(i, c) != 0) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < a.cols; ++j) std::swap(a.at(r, j), a.at(pr, j));
        Rat inv = a.at(r, c);
        for (int j = c; j < a.cols; ++j) a.at(r, j) /= inv;
        for (int i = 0; i < a.rows; ++i) {
            if (i == r || a.at(i, c) == 0) continue;
            Rat f = a.at(i, c);
            for (int j = c; j < a.cols; ++j) a.at(i, j) -= f * a.at(r, j);
        }
        out.pivot_cols.push_back(c);
        ++r;
    }
    out.rank = r;
    return out;
}

std::vector<Vec> kernel_basis(const Mat& m) {
    RrefResult rr = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : rr.pivot_cols) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (int fc = 0; fc < m.cols; ++fc) {
        if (is_pivot[fc]) continue;
        Vec v(m.cols, Rat(0));
        v[fc] = 1;
        for (int ri = 0; ri < rr.rank; ++ri)
            v[rr.pivot_cols[ri]] = -rr.reduced.at(ri, fc);
        basis.push_back(std::move(v));
    }
    return basis;
}

namespace {

// Clears denominators row by row; returns the integer matrix and the product
// of the row scale factors (det(m) = det(lift) / scale).
std::pair<std::vector<std::vector<Int>>, Int> integer_lift(const Mat& m) {
    std::vector<std::vector<Int>> z(m.rows, std::vector<Int>(m.cols));
    Int scale = 1;
    for (int i = 0; i < m.rows; ++i) {
        Int l = 1;
        for (int j = 0; j < m.cols; ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).get_den().get_mpz_t());
        for (int j = 0; j < m.cols; ++j) {
            Rat v = m.at(i, j) * Rat(l);
            z[i][j] = v.get_num();
        }
        scale *= l;
    }
    return {std::move(z), scale};
}

Rat bareiss_det(const Mat& m) {
    auto [a, scale] = integer_lift(m);
    const int n = m.rows;
    int sign = 1;
    Int prev = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            int pr = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][k] != 0) { pr = i; break; }
            if (pr < 0) return Rat(0);
            std::swap(a[k], a[pr]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Int num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    Rat det = rat(Int(sign) * a[n - 1][n - 1], scale);
    return det;
}

} // namespace

DetInvResult det_inv(const Mat& m) {
    if (!m.is_square()) throw std::invalid_argument("det_inv: matrix not square");
    DetInvResult out;
    if (m.rows == 0) {
        out.det = 1; // empty product convention
        out.inverse = Mat(0, 0);
        return out;
    }
    out.det = bareiss_det(m);
    if (out.det == 0) return out;
    // Gauss-Jordan on [m | I]
    Mat aug(m.rows, 2 * m.cols);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols + i) = 1;
    }
    RrefResult rr = rref(aug);
    Mat inv(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) inv.at(i, j) = rr.reduced.at(i, m.cols + j);
    out.inverse = std::move(inv);
    return out;
}

SnfResult smith_normal_form(const Mat& m) {
    if (!m.is_integral())
        throw std::invalid_argument("smith_normal_form: entries must be integers");
    const int R = m.rows, C = m.cols;
    std::vector<std::vector<Int>> a(R, std::vector<Int>(C));
    for (int i = 0; i < R; ++i)
        for (int j = 0; j < C; ++j) a[i][j] = m.at(i, j).get_num();

    // Row ops mirror into L (left), column ops into Rt (right).
    std::vector<std::vector<Int>> L(R, std::vector<Int>(R)), Rt(C, std::vector<Int>(C));
    for (int i = 0; i < R; ++i) L[i][i] = 1;
    for (int j = 0; j < C; ++j) Rt[j][j] = 1;

    auto swap_rows = [&](int i, int j) { std::swap(a[i], a[j]); std::swap(L[i], L[j]); };
    auto swap_cols = [&](int i, int j) {
        for (int r = 0; r < R; ++r) std::swap(a[r][i], a[r][j]);
        for (int r = 0; r < C; ++r) std::swap(Rt[r][i], Rt[r][j]);
    };
    auto add_row = [&](int dst, int src, const Int& f) { // row dst += f * row src
        for (int c = 0; c < C; ++c) a[dst][c] += f * a[src][c];
        for (int c = 0; c < R; ++c) L[dst][c] += f * L[src][c];
    };
    auto add_col = [&](int dst, int src, const Int& f) {
        for (int r = 0; r < R; ++r) a[r][dst] += f * a[r][src];
        for (int r = 0; r < C; ++r) Rt[r][dst] += f * Rt[r][src];
    };
    auto neg_row = [&](int i) {
        for (int c = 0; c < C; ++c) a[i][c] = -a[i][c];
        for (int c = 0; c < R; ++c) L[i][c] = -L[i][c];
    };

    const int steps = std::min(R, C);
    int t = 0;
    for (; t < steps; ++t) {
        // find minimal-|value| nonzero entry in the trailing block
        int pi = -1, pj = -1;
        for (int i = t; i < R; ++i)
            for (int j = t; j < C; ++j)
                if (a[i][j] != 0 &&
                    (pi < 0 || cmp(abs(a[i][j]), abs(a[pi][pj])) < 0)) {
                    pi = i; pj = j;
                }
        if (pi < 0) break; // trailing block all zero
        swap_rows(t, pi);
        swap_cols(t, pj);
        bool dirty = true;
        while (dirty) {
            dirty = false;
            // clear column t by division with remainder; re-pivot on a smaller
            // remainder when one shows up
            for (int i = t + 1; i < R; ++i) {
                if (a[i][t] == 0) continue;
                Int q = a[i][t] / a[t][t]; // C++ truncation; remainder may be negative
                add_row(i, t, -q);
                if (a[i][t] != 0) { swap_rows(t, i); dirty = true; }
            }
            for (int j = t + 1; j < C; ++j) {
                if (a[t][j] == 0) continue;
                Int q = a[t][j] / a[t][t];
                add_col(j, t, -q);
                if (a[t][j] != 0) { swap_cols(t, j); dirty = true; }
            }
        }
        // divisibility fixup: every entry of the trailing block must be a
        // multiple of the pivot; if not, fold the offending row in and redo
        bool fixed = false;
        for (int i = t + 1; i < R && !fixed; ++i)
            for (int j = t + 1; j < C && !fixed; ++j)
                if (a[i][j] % a[t][t] != 0) {
                    add_row(t, i, Int(1));
                    fixed = true;
                }
        if (fixed) { --t; continue; } // redo this step with the folded row
        if (a[t][t] < 0) neg_row(t);
    }

    SnfResult out;
    for (int i = 0; i < steps; ++i) out.divisors.push_back(i < t ? a[i][i] : Int(0));
    out.left = Mat(R, R);
    out.right = Mat(C, C);
    for (int i = 0; i < R; ++i)
        for (int j = 0; j < R; ++j) out.left.at(i, j) = Rat(L[i][j]);
    for (int i = 0; i < C; ++i)
        for (int j = 0; j < C; ++j) out.right.at(i, j) = Rat(Rt[i][j]);
    return out;
}

std::vector<Vec> row_space_basis(const std::vector<Vec>& vectors, int ambient_dim) {
    std::vector<const Vec*> nonzero;
    for (const Vec& v : vectors)
        if (!is_zero(v)) nonzero.push_back(&v);
    if (nonzero.empty()) return {};
    Mat m(static_cast<int>(nonzero.size()), ambient_dim);
    for (size_t i = 0; i < nonzero.size(); ++i)
        for (int j = 0; j < ambient_dim; ++j) m.at(static_cast<int>(i), j) = (*nonzero[i])[j];
    RrefResult rr = rref(m);
    std::vector<Vec> rows;
    for (int i = 0; i < rr.rank; ++i) rows.push_back(rr.reduced.row(i));
    return rows;
}

bool in_row_space(const std::vector<Vec>& rref_rows, const Vec& v) {
    // reduce v against the RREF rows; membership iff the residue is zero
    Vec w = v;
    for (const Vec& row : rref_rows) {
        int p = -1;
        for (size_t j = 0; j < row.size(); ++j)
            if (row[j] != 0) { p = static_cast<int>(j); break; }
        if (p < 0) continue;
        if (w[p] != 0) {
            Rat f = w[p]; // row has leading 1 at p
            for (size_t j = 0; j < w.size(); ++j) w[j] -= f * row[j];
        }
    }
    return is_zero(w);
}

} // namespace nilcert
