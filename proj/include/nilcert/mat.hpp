#pragma once
// Dense rational matrices and vectors, row-major. Everything is exact and
// immutable by convention: operations return fresh values.

#include "nilcert/rat.hpp"

#include <cassert>
#include <initializer_list>
#include <vector>

namespace nilcert {

using Vec = std::vector<Rat>;

struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<Rat> a; // rows*cols entries

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Rat(0)) {
        assert(r >= 0 && c >= 0);
    }
    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    static Mat from_rows(std::initializer_list<std::initializer_list<long>> rws) {
        Mat m(static_cast<int>(rws.size()),
              rws.size() ? static_cast<int>(rws.begin()->size()) : 0);
        int i = 0;
        for (const auto& row : rws) {
            assert(static_cast<int>(row.size()) == m.cols);
            int j = 0;
            for (long v : row) m.at(i, j++) = v;
            ++i;
        }
        return m;
    }

    Rat& at(int r, int c) {
        assert(r >= 0 && r < rows && c >= 0 && c < cols);
        return a[static_cast<size_t>(r) * cols + c];
    }
    const Rat& at(int r, int c) const {
        assert(r >= 0 && r < rows && c >= 0 && c < cols);
        return a[static_cast<size_t>(r) * cols + c];
    }

    bool operator==(const Mat& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }

    bool is_square() const { return rows == cols; }
    bool is_integral() const {
        for (const Rat& x : a)
            if (!is_integer(x)) return false;
        return true;
    }
    bool is_zero() const {
        for (const Rat& x : a)
            if (x != 0) return false;
        return true;
    }

    Vec col(int c) const {
        Vec v(rows);
        for (int r = 0; r < rows; ++r) v[r] = at(r, c);
        return v;
    }
    Vec row(int r) const {
        Vec v(cols);
        for (int c = 0; c < cols; ++c) v[c] = at(r, c);
        return v;
    }
};

inline Mat operator*(const Mat& x, const Mat& y) {
    assert(x.cols == y.rows);
    Mat z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const Rat& v = x.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < y.cols; ++j)
                if (y.at(k, j) != 0) z.at(i, j) += v * y.at(k, j);
        }
    return z;
}

inline Mat operator+(const Mat& x, const Mat& y) {
    assert(x.rows == y.rows && x.cols == y.cols);
    Mat z = x;
    for (size_t i = 0; i < z.a.size(); ++i) z.a[i] += y.a[i];
    return z;
}

inline Mat operator-(const Mat& x, const Mat& y) {
    assert(x.rows == y.rows && x.cols == y.cols);
    Mat z = x;
    for (size_t i = 0; i < z.a.size(); ++i) z.a[i] -= y.a[i];
    return z;
}

inline Mat operator*(const Rat& c, const Mat& x) {
    Mat z = x;
    for (Rat& v : z.a) v *= c;
    return z;
}

inline Vec operator*(const Mat& m, const Vec& v) {
    assert(static_cast<int>(v.size()) == m.cols);
    Vec w(m.rows, Rat(0));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (m.at(i, j) != 0 && v[j] != 0) w[i] += m.at(i, j) * v[j];
    return w;
}

inline Vec operator+(const Vec& x, const Vec& y) {
    assert(x.size() == y.size());
    Vec z = x;
    for (size_t i = 0; i < z.size(); ++i) z[i] += y[i];
    return z;
}

inline Vec operator-(const Vec& x) {
    Vec z = x;
    for (Rat& v : z) v = -v;
    return z;
}

inline Vec operator-(const Vec& x, const Vec& y) {
    assert(x.size() == y.size());
    Vec z = x;
    for (size_t i = 0; i < z.size(); ++i) z[i] -= y[i];
    return z;
}

inline Vec operator*(const Rat& c, const Vec& x) {
    Vec z = x;
    for (Rat& v : z) v *= c;
    return z;
}

inline bool is_zero(const Vec& v) {
    for (const Rat& x : v)
        if (x != 0) return false;
    return true;
}

inline bool is_integral(const Vec& v) {
    for (const Rat& x : v)
        if (!is_integer(x)) return false;
    return true;
}

inline Vec unit_vec(int n, int i) {
    Vec v(n, Rat(0));
    v[i] = 1;
    return v;
}

} // namespace nilcert
