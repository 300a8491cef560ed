#include "nilcert/derivations.hpp"

#include "nilcert/poly.hpp"

#include <stdexcept>

namespace nilcert {

namespace {

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

Vec flatten(const Mat& m) {
    Vec v;
    v.reserve(m.a.size());
    for (const Rat& x : m.a) v.push_back(x);
    return v;
}

// trace of m^k for k = 1..n; returns smallest k with tr != 0, else 0
int first_nonzero_trace_power(const Mat& m) {
    Mat p = m;
    for (int k = 1; k <= m.rows; ++k) {
        Rat tr(0);
        for (int i = 0; i < m.rows; ++i) tr += p.at(i, i);
        if (tr != 0) return k;
        if (k < m.rows) p = p * m;
    }
    return 0;
}

} // namespace

bool is_derivation(const Mat& m, const StructureConstants& sc) {
    const int n = sc.dim;
    if (m.rows != n || m.cols != n) return false;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            Vec ei = unit_vec(n, i - 1), ej = unit_vec(n, j - 1);
            Vec lhs = m * bracket(ei, ej, sc);
            Vec rhs = bracket(m * ei, ej, sc) + bracket(ei, m * ej, sc);
            if (lhs != rhs) return false;
        }
    return true;
}

DerivationSpace derivation_space(const StructureConstants& sc) {
    const int n = sc.dim;
    // ad matrices: adcol[j] has columns [e_a, e_j] (a = 1..n)
    std::vector<Mat> ad(n, Mat(n, n));
    for (int j = 1; j <= n; ++j)
        for (int a = 1; a <= n; ++a) {
            Vec v = bracket(unit_vec(n, a - 1), unit_vec(n, j - 1), sc);
            for (int k = 0; k < n; ++k) ad[j - 1].at(k, a - 1) = v[k];
        }

    // one equation per pair (i<j) per coordinate k, unknowns d(a,b) -> a*n+b
    std::vector<Vec> rows;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            const Vec* cij = sc.entry(i, j);
            for (int k = 0; k < n; ++k) {
                Vec row(n * n, Rat(0));
                if (cij)
                    for (int m = 0; m < n; ++m)
                        if ((*cij)[m] != 0) row[k * n + m] += (*cij)[m];
                for (int a = 1; a <= n; ++a) {
                    // [De_i, e_j] term: coefficient of d(a,i) is [e_a,e_j]_k
                    const Rat& v1 = ad[j - 1].at(k, a - 1);
                    if (v1 != 0) row[(a - 1) * n + (i - 1)] -= v1;
                    // [e_i, De_j] term: coefficient of d(a,j) is [e_i,e_a]_k
                    const Rat& v2 = ad[i - 1].at(k, a - 1);
                    if (v2 != 0) row[(a - 1) * n + (j - 1)] += v2;
                }
                if (!is_zero(row)) rows.push_back(std::move(row));
            }
        }

    Mat sys(static_cast<int>(rows.size()), n * n);
    for (size_t r = 0; r < rows.size(); ++r)
        for (int c = 0; c < n * n; ++c) sys.at(static_cast<int>(r), c) = rows[r][c];

    DerivationSpace ds;
    ds.algebra = sc;
    for (const Vec& v : kernel_basis(sys)) {
        Mat d(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) d.at(a, b) = v[a * n + b];
        ds.basis.push_back(std::move(d));
    }
    ds.dimension = static_cast<int>(ds.basis.size());

    // the span must be commutator-closed (it is Der(L) mathematically;
    // this assertion catches solver bugs, not user errors)
    std::vector<Vec> span_rows;
    for (const Mat& d : ds.basis) span_rows.push_back(flatten(d));
    std::vector<Vec> span = row_space_basis(span_rows, n * n);
    for (size_t i = 0; i < ds.basis.size(); ++i)
        for (size_t j = i + 1; j < ds.basis.size(); ++j)
            if (!in_row_space(span, flatten(commutator(ds.basis[i], ds.basis[j]))))
                throw std::logic_error("derivation space not commutator-closed");
    return ds;
}

namespace {

struct EngelState {
    std::vector<Vec> flag_vectors; // original coordinates, grows as stages lift
    std::vector<int> stage_sizes;
};

// One Engel stage on the induced matrices `mats` (size m x m) with `lift`
// giving original-coordinate vectors of the current complement basis.
// Returns false (and records the stage) when the common kernel vanishes.
bool engel_recurse(const std::vector<Mat>& mats, std::vector<Vec> lift,
                   EngelState& st, int stage, int& failure_stage) {
    const int m = mats.empty() ? 0 : mats[0].rows;
    if (m == 0) return true;
    bool all_zero = true;
    for (const Mat& a : mats)
        if (!a.is_zero()) { all_zero = false; break; }
    if (all_zero) {
        for (const Vec& v : lift) st.flag_vectors.push_back(v);
        st.stage_sizes.push_back(m);
        return true;
    }

    // common kernel of all induced matrices
    Mat stacked(static_cast<int>(mats.size()) * m, m);
    for (size_t t = 0; t < mats.size(); ++t)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                stacked.at(static_cast<int>(t) * m + i, j) = mats[t].at(i, j);
    std::vector<Vec> ker = kernel_basis(stacked);
    const int k = static_cast<int>(ker.size());
    if (k == 0) {
        failure_stage = stage;
        return false;
    }

    // lift kernel vectors to original coordinates and extend the flag
    for (const Vec& kv : ker) {
        Vec orig(lift[0].size(), Rat(0));
        for (int i = 0; i < m; ++i)
            if (kv[i] != 0) orig = orig + kv[i] * lift[i];
        st.flag_vectors.push_back(std::move(orig));
    }
    st.stage_sizes.push_back(k);

    // deterministic basis completion: RREF rows of the kernel, then standard
    // vectors in index order that extend the span
    std::vector<Vec> rows = row_space_basis(ker, m);
    std::vector<Vec> completion;
    for (int i = 0; i < m && static_cast<int>(rows.size() + completion.size()) < m; ++i) {
        Vec cand = unit_vec(m, i);
        std::vector<Vec> all = rows;
        for (const Vec& c : completion) all.push_back(c);
        if (!in_row_space(row_space_basis(all, m), cand)) completion.push_back(cand);
    }

    // change of basis C = [kernel rows | completion] as columns
    const int q = m - k;
    Mat C(m, m);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < m; ++i) C.at(i, j) = rows[j][i];
    for (int j = 0; j < q; ++j)
        for (int i = 0; i < m; ++i) C.at(i, k + j) = completion[j][i];
    Mat Ci = *det_inv(C).inverse;

    std::vector<Mat> quotient;
    std::vector<Vec> new_lift;
    for (int j = 0; j < q; ++j) {
        Vec orig(lift[0].size(), Rat(0));
        for (int i = 0; i < m; ++i)
            if (completion[j][i] != 0) orig = orig + completion[j][i] * lift[i];
        new_lift.push_back(std::move(orig));
    }
    for (const Mat& a : mats) {
        Mat t = Ci * a * C;
        Mat qa(q, q);
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j) qa.at(i, j) = t.at(k + i, k + j);
        quotient.push_back(std::move(qa));
    }
    return engel_recurse(quotient, std::move(new_lift), st, stage + 1, failure_stage);
}

// best-effort non-nilpotent span element: basis elements, then pair sums and
// differences (diagonal-dominant combinations first by construction order)
std::optional<std::pair<Mat, int>> find_trace_witness(const std::vector<Mat>& basis) {
    for (const Mat& d : basis)
        if (int k = first_nonzero_trace_power(d)) return std::make_pair(d, k);
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i + 1; j < basis.size(); ++j) {
            Mat s = basis[i] + basis[j];
            if (int k = first_nonzero_trace_power(s)) return std::make_pair(s, k);
            Mat d = basis[i] - basis[j];
            if (int k = first_nonzero_trace_power(d)) return std::make_pair(d, k);
        }
    return std::nullopt;
}

} // namespace

NilpotencyCertificate engel_all_nilpotent(const std::vector<Mat>& basis, int n) {
    // precondition: commutator-closed span
    std::vector<Vec> span_rows;
    for (const Mat& d : basis) span_rows.push_back(flatten(d));
    std::vector<Vec> span = row_space_basis(span_rows, n * n);
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i + 1; j < basis.size(); ++j)
            if (!in_row_space(span, flatten(commutator(basis[i], basis[j]))))
                throw std::invalid_argument(
                    "engel_all_nilpotent: span is not commutator-closed");

    NilpotencyCertificate cert;
    std::vector<Vec> lift;
    for (int i = 0; i < n; ++i) lift.push_back(unit_vec(n, i));
    EngelState st;
    int failure_stage = -1;
    bool ok = engel_recurse(basis, std::move(lift), st, 0, failure_stage);
    if (!ok) {
        cert.verdict = NilpotencyCertificate::Verdict::NotAllNilpotent;
        cert.failure_stage = failure_stage;
        if (auto w = find_trace_witness(basis)) {
            cert.witness = w->first;
            cert.witness_trace_power = w->second;
        }
        return cert;
    }
    cert.verdict = NilpotencyCertificate::Verdict::AllNilpotent;
    // build the flag: V_t = span of the first t stage blocks (ascending),
    // reported descending from the full space down to zero
    std::vector<Subspace> ascending;
    ascending.push_back(Subspace::zero(n));
    size_t consumed = 0;
    for (int sz : st.stage_sizes) {
        consumed += sz;
        std::vector<Vec> upto(st.flag_vectors.begin(),
                              st.flag_vectors.begin() + consumed);
        ascending.push_back(Subspace::from_span(std::move(upto), n));
    }
    for (auto it = ascending.rbegin(); it != ascending.rend(); ++it)
        cert.flag.push_back(*it);
    return cert;
}

CharNilResult is_characteristically_nilpotent(const StructureConstants& sc) {
    DerivationSpace ds = derivation_space(sc);
    CharNilResult out;
    out.der_dim = ds.dimension;
    out.certificate = engel_all_nilpotent(ds.basis, sc.dim);
    out.verdict =
        out.certificate.verdict == NilpotencyCertificate::Verdict::AllNilpotent;
    if (out.verdict) {
        // structural consequences, re-derived as assertions
        SeriesResult series = lower_central_series(sc);
        const Subspace& derived =
            series.terms.size() > 1 ? series.terms[1] : Subspace::zero(sc.dim);
        if (!derived.contains(center(sc)))
            throw std::logic_error(
                "characteristically nilpotent but center not inside [L,L]");
        if (!der_lie_lcs(ds).nilpotent_as_lie_algebra)
            throw std::logic_error(
                "characteristically nilpotent but Der(L) not nilpotent");
    }
    return out;
}

DerLcsResult der_lie_lcs(const DerivationSpace& ds) {
    const int n2 = ds.algebra.dim * ds.algebra.dim;
    DerLcsResult out;
    std::vector<Mat> full = ds.basis;
    std::vector<Mat> cur = ds.basis;
    auto span_dim = [&](const std::vector<Mat>& mats) {
        std::vector<Vec> rows;
        for (const Mat& m : mats) rows.push_back(flatten(m));
        return static_cast<int>(row_space_basis(rows, n2).size());
    };
    out.dims.push_back(span_dim(cur));
    while (out.dims.back() > 0) {
        std::vector<Mat> next;
        for (const Mat& a : full)
            for (const Mat& b : cur) {
                Mat c = commutator(a, b);
                if (!c.is_zero()) next.push_back(std::move(c));
            }
        int d = next.empty() ? 0 : span_dim(next);
        if (d == out.dims.back()) {
            out.nilpotent_as_lie_algebra = false;
            return out;
        }
        out.dims.push_back(d);
        // keep a basis-sized subset for the next round: reduce via row space
        std::vector<Vec> rows;
        for (const Mat& m : next) rows.push_back(flatten(m));
        std::vector<Vec> basis_rows = row_space_basis(rows, n2);
        cur.clear();
        for (const Vec& r : basis_rows) {
            Mat m(ds.algebra.dim, ds.algebra.dim);
            for (int i = 0; i < ds.algebra.dim; ++i)
                for (int j = 0; j < ds.algebra.dim; ++j)
                    m.at(i, j) = r[i * ds.algebra.dim + j];
            cur.push_back(std::move(m));
        }
    }
    out.nilpotent_as_lie_algebra = true;
    return out;
}

namespace {

// Open-addressing monomial accumulator with machine-int coefficients and
// overflow detection; the oracle's fast path. Any overflow aborts the fast
// path (the caller falls back to arbitrary precision).
class Poly64 {
public:
    Poly64() { slots_.resize(16); }

    bool add(u128 key, long long c) {
        if (c == 0) return true;
        if ((occupied_ + 1) * 5 >= slots_.size() * 3) rehash();
        size_t mask = slots_.size() - 1;
        size_t idx = detail::hash_u128(key) & mask;
        while (true) {
            Slot& s = slots_[idx];
            if (!s.used) {
                s.used = true;
                s.key = key;
                s.val = c;
                ++occupied_;
                return true;
            }
            if (s.key == key)
                return !__builtin_add_overflow(s.val, c, &s.val);
            idx = (idx + 1) & mask;
        }
    }

    // flattened nonzero terms
    void terms(std::vector<u128>& keys, std::vector<long long>& vals) const {
        keys.clear();
        vals.clear();
        for (const Slot& s : slots_)
            if (s.used && s.val != 0) {
                keys.push_back(s.key);
                vals.push_back(s.val);
            }
    }

    bool all_zero() const {
        for (const Slot& s : slots_)
            if (s.used && s.val != 0) return false;
        return true;
    }

private:
    struct Slot {
        u128 key = 0;
        long long val = 0;
        bool used = false;
    };
    void rehash() {
        std::vector<Slot> old = std::move(slots_);
        slots_.clear();
        slots_.resize(old.size() * 2);
        occupied_ = 0;
        size_t mask = slots_.size() - 1;
        for (const Slot& s : old) {
            if (!s.used || s.val == 0) continue;
            size_t idx = detail::hash_u128(s.key) & mask;
            while (slots_[idx].used) idx = (idx + 1) & mask;
            slots_[idx] = s;
            ++occupied_;
        }
    }
    std::vector<Slot> slots_;
    size_t occupied_ = 0;
};

// Same accumulator with 128-bit coefficients, for the paired traces whose
// products of 64-bit terms need the wider type.
class Poly128 {
public:
    explicit Poly128(size_t cap_hint) {
        size_t cap = 16;
        while (cap * 3 < cap_hint * 5) cap *= 2;
        slots_.resize(cap);
    }
    void add(u128 key, __int128 c) {
        if (c == 0) return;
        if ((occupied_ + 1) * 5 >= slots_.size() * 3) rehash();
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
    bool all_zero() const {
        for (const Slot& s : slots_)
            if (s.used && s.val != 0) return false;
        return true;
    }

private:
    struct Slot {
        u128 key = 0;
        __int128 val = 0;
        bool used = false;
    };
    void rehash() {
        std::vector<Slot> old = std::move(slots_);
        slots_.clear();
        slots_.resize(old.size() * 2);
        occupied_ = 0;
        size_t mask = slots_.size() - 1;
        for (const Slot& s : old) {
            if (!s.used || s.val == 0) continue;
            size_t idx = detail::hash_u128(s.key) & mask;
            while (slots_[idx].used) idx = (idx + 1) & mask;
            slots_[idx] = s;
            ++occupied_;
        }
    }
    std::vector<Slot> slots_;
    size_t occupied_ = 0;
};

// Sparse polynomial matrix entry in flat form.
struct Entry64 {
    std::vector<u128> keys;
    std::vector<long long> vals;
    // sum of |coefficients|, for accumulation-width guards
    __int128 abs_mass() const {
        __int128 s = 0;
        for (long long v : vals) s += v < 0 ? -static_cast<__int128>(v) : v;
        return s;
    }
};

constexpr __int128 kInt128Cap = (static_cast<__int128>(1) << 126);

// machine-int implementation; nullopt whenever an overflow guard cannot
// promise exactness
std::optional<bool> trace_oracle_fast(const std::vector<std::vector<Int>>& imats,
                                      int n, int m) {
    MonomialLayout layout(m, n);
    std::vector<std::vector<long long>> em;
    for (const auto& im : imats) {
        std::vector<long long> e;
        for (const Int& z : im) {
            if (!z.fits_slong_p()) return std::nullopt;
            e.push_back(z.get_si());
        }
        em.push_back(std::move(e));
    }

    using PM = std::vector<Entry64>; // n*n entries
    PM x(static_cast<size_t>(n) * n);
    for (int i = 0; i < m; ++i)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                long long c = em[i][static_cast<size_t>(a) * n + b];
                if (c) {
                    x[static_cast<size_t>(a) * n + b].keys.push_back(layout.var(i));
                    x[static_cast<size_t>(a) * n + b].vals.push_back(c);
                }
            }

    bool ok = true;
    auto mat_mul = [&](const PM& a, const PM& b) {
        PM c(static_cast<size_t>(n) * n);
        for (int i = 0; i < n && ok; ++i)
            for (int j = 0; j < n && ok; ++j) {
                Poly64 acc;
                for (int k = 0; k < n && ok; ++k) {
                    const Entry64& ea = a[static_cast<size_t>(i) * n + k];
                    const Entry64& eb = b[static_cast<size_t>(k) * n + j];
                    for (size_t p = 0; p < ea.keys.size() && ok; ++p)
                        for (size_t q = 0; q < eb.keys.size(); ++q) {
                            long long prod;
                            if (__builtin_mul_overflow(ea.vals[p], eb.vals[q],
                                                       &prod)) {
                                ok = false;
                                break;
                            }
                            if (!acc.add(ea.keys[p] + eb.keys[q], prod)) {
                                ok = false;
                                break;
                            }
                        }
                }
                if (ok)
                    acc.terms(c[static_cast<size_t>(i) * n + j].keys,
                              c[static_cast<size_t>(i) * n + j].vals);
            }
        return c;
    };
    auto trace_zero = [&](const PM& p) {
        Poly64 acc;
        for (int i = 0; i < n; ++i) {
            const Entry64& e = p[static_cast<size_t>(i) * n + i];
            for (size_t q = 0; q < e.keys.size(); ++q)
                if (!acc.add(e.keys[q], e.vals[q])) {
                    ok = false;
                    return true;
                }
        }
        return acc.all_zero();
    };
    // tr(lo * hi) identically zero? 128-bit accumulation, guarded by the
    // total absolute mass of the products
    auto pair_trace_zero = [&](const PM& lo, const PM& hi) {
        __int128 mass = 0;
        size_t total_terms = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const Entry64& a = lo[static_cast<size_t>(i) * n + j];
                const Entry64& b = hi[static_cast<size_t>(j) * n + i];
                if (a.keys.empty() || b.keys.empty()) continue;
                __int128 am = a.abs_mass(), bm = b.abs_mass();
                if (am != 0 && bm > kInt128Cap / am) {
                    ok = false;
                    return true;
                }
                mass += am * bm;
                if (mass > kInt128Cap) {
                    ok = false;
                    return true;
                }
                total_terms += a.keys.size() * b.keys.size();
            }
        Poly128 acc(total_terms / 4 + 16);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const Entry64& a = lo[static_cast<size_t>(i) * n + j];
                const Entry64& b = hi[static_cast<size_t>(j) * n + i];
                for (size_t p = 0; p < a.keys.size(); ++p) {
                    const __int128 av = a.vals[p];
                    const u128 ak = a.keys[p];
                    for (size_t q = 0; q < b.keys.size(); ++q)
                        acc.add(ak + b.keys[q], av * b.vals[q]);
                }
            }
        return acc.all_zero();
    };

    const int p_max = (n + 1) / 2;
    std::vector<PM> powers;
    powers.push_back(x);
    bool z0 = trace_zero(powers[0]);
    if (!ok) return std::nullopt;
    if (!z0) return false;
    for (int k = 2; k <= n; ++k) {
        bool zero;
        if (k <= p_max) {
            powers.push_back(mat_mul(powers.back(), x));
            if (!ok) return std::nullopt;
            zero = trace_zero(powers.back());
        } else {
            zero = pair_trace_zero(powers[static_cast<size_t>(k - p_max) - 1],
                                   powers[static_cast<size_t>(p_max) - 1]);
        }
        if (!ok) return std::nullopt;
        if (!zero) return false;
    }
    return true;
}

// arbitrary-precision implementation (no overflow concerns, slower)
bool trace_oracle_bignum(const std::vector<std::vector<Int>>& imats, int n,
                         int m) {
    MonomialLayout layout(m, n);
    using PMat = std::vector<IPoly>; // n*n entries, row-major

    // X = sum t_i D_i
    PMat X(static_cast<size_t>(n) * n);
    for (int i = 0; i < m; ++i)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                const Int& c = imats[i][static_cast<size_t>(a) * n + b];
                if (c != 0) X[static_cast<size_t>(a) * n + b].add(layout.var(i), c);
            }

    auto trace_of = [&](const PMat& p) {
        IPoly t;
        for (int i = 0; i < n; ++i)
            t.add_scaled(p[static_cast<size_t>(i) * n + i], Int(1));
        return t;
    };
    auto pair_trace = [&](const PMat& a, const PMat& b) {
        IPoly t;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                t.add_product(a[static_cast<size_t>(i) * n + j],
                              b[static_cast<size_t>(j) * n + i]);
        return t;
    };
    auto mat_mul = [&](const PMat& a, const PMat& b) {
        PMat c(static_cast<size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const IPoly& aik = a[static_cast<size_t>(i) * n + k];
                if (aik.is_zero()) continue;
                for (int j = 0; j < n; ++j)
                    c[static_cast<size_t>(i) * n + j].add_product(
                        aik, b[static_cast<size_t>(k) * n + j]);
            }
        return c;
    };

    // store powers X^1..X^p with p = ceil(n/2); tr(X^k) for k > p is
    // tr(X^{k-p} * X^p), so stored degrees stay small
    const int p_max = (n + 1) / 2;
    std::vector<PMat> powers;
    powers.push_back(X);
    if (!trace_of(X).is_zero()) return false;
    for (int k = 2; k <= n; ++k) {
        if (k <= p_max) {
            powers.push_back(mat_mul(powers.back(), X));
            if (!trace_of(powers.back()).is_zero()) return false;
        } else {
            const PMat& lo = powers[static_cast<size_t>(k - p_max) - 1];
            const PMat& hi = powers[static_cast<size_t>(p_max) - 1];
            if (!pair_trace(lo, hi).is_zero()) return false;
        }
    }
    return true;
}

} // namespace

bool trace_power_oracle(const std::vector<Mat>& basis) {
    if (basis.empty()) return true;
    const int n = basis[0].rows;
    if (n > 10)
        throw std::invalid_argument("trace_power_oracle: ambient dimension > 10");
    const int m = static_cast<int>(basis.size());

    // rescale each basis matrix to a primitive integer matrix; the span is
    // unchanged, so the all-nilpotency question is unchanged
    std::vector<std::vector<Int>> imats;
    for (const Mat& d : basis) {
        Int l = 1;
        for (const Rat& x : d.a)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
        std::vector<Int> e;
        e.reserve(d.a.size());
        Int g = 0;
        for (const Rat& x : d.a) {
            Rat v = x * Rat(l);
            e.push_back(v.get_num());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.back().get_mpz_t());
        }
        if (g > 1)
            for (Int& z : e) mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), g.get_mpz_t());
        imats.push_back(std::move(e));
    }

    if (auto fast = trace_oracle_fast(imats, n, m)) return *fast;
    return trace_oracle_bignum(imats, n, m);
}

} // namespace nilcert
