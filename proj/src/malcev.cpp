#include "nilcert/malcev.hpp"

#include "nilcert/exactlin.hpp"
#include "nilcert/poly.hpp"

#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

namespace nilcert {

namespace {

// ---- generic Dynkin evaluation over Rat or QPoly coordinates ----

inline void axpy_elem(Rat& dst, const Rat& src, const Rat& c) { dst += src * c; }
inline void axpy_elem(QPoly& dst, const QPoly& src, const Rat& c) {
    dst.add_scaled(src, c);
}
inline void add_prod_elem(Rat& dst, const Rat& a, const Rat& b, const Rat& c) {
    dst += a * b * c;
}
inline void add_prod_elem(QPoly& dst, const QPoly& a, const QPoly& b,
                          const Rat& c) {
    dst.add_product_scaled(a, b, c);
}
inline bool elem_zero(const Rat& x) { return x == 0; }
inline bool elem_zero(const QPoly& p) { return p.is_zero(); }

template <class E>
bool vec_zero(const std::vector<E>& v) {
    for (const E& e : v)
        if (!elem_zero(e)) return false;
    return true;
}

template <class E>
std::vector<E> bracket_g(const std::vector<E>& u, const std::vector<E>& v,
                         const StructureConstants& sc) {
    std::vector<E> w(sc.dim);
    for (const auto& [ij, c] : sc.table) {
        const int i = ij.first - 1, j = ij.second - 1;
        for (int k = 0; k < sc.dim; ++k) {
            if (c[k] == 0) continue;
            const Rat neg = -c[k];
            add_prod_elem(w[k], u[i], v[j], c[k]);
            add_prod_elem(w[k], u[j], v[i], neg);
        }
    }
    return w;
}

template <class E>
std::vector<E> bch_eval(const BchContext& ctx, const std::vector<E>& x,
                        const std::vector<E>& y) {
    const StructureConstants& sc = ctx.algebra();
    const int n = sc.dim, deg = ctx.degree();
    std::vector<E> z(n);
    for (int k = 0; k < n; ++k) {
        axpy_elem(z[k], x[k], Rat(1));
        axpy_elem(z[k], y[k], Rat(1));
    }
    if (deg < 2 || ctx.words().empty()) return z;

    // vals[len-1][mask]: right-nested bracket of the word; shared suffixes
    // mean one bracket per word
    std::vector<std::vector<std::vector<E>>> vals(deg);
    std::vector<std::vector<char>> nz(deg);
    vals[0] = {x, y};
    nz[0] = {static_cast<char>(!vec_zero(x)), static_cast<char>(!vec_zero(y))};
    for (int len = 2; len <= deg; ++len) {
        const int cnt = 1 << len;
        vals[len - 1].resize(cnt);
        nz[len - 1].assign(cnt, 0);
        for (int mask = 0; mask < cnt; ++mask) {
            const int parent = mask >> 1;
            if (!nz[len - 2][parent]) {
                vals[len - 1][mask] = std::vector<E>(n);
                continue;
            }
            const std::vector<E>& head = (mask & 1) ? y : x;
            vals[len - 1][mask] = bracket_g(head, vals[len - 2][parent], sc);
            nz[len - 1][mask] = !vec_zero(vals[len - 1][mask]);
        }
    }
    for (const BchContext::Word& w : ctx.words()) {
        if (!nz[w.length - 1][w.mask]) continue;
        const std::vector<E>& v = vals[w.length - 1][w.mask];
        for (int k = 0; k < n; ++k) axpy_elem(z[k], v[k], w.coeff);
    }
    return z;
}

Int factorial(int k) {
    Int f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

std::string flags_summary(const LieEndomorphism& f) {
    std::ostringstream os;
    os << "hom=" << (f.is_hom ? "yes" : "no");
    if (!f.is_hom && f.failing_pair)
        os << " (first failing pair e" << f.failing_pair->first << ",e"
           << f.failing_pair->second << ")";
    os << " automorphism=" << (f.is_automorphism ? "yes" : "no")
       << " lattice-preserving=" << (f.is_lattice_preserving ? "yes" : "no")
       << " det=" << to_string(f.det);
    return os.str();
}

} // namespace

BchContext::BchContext(const StructureConstants& sc) : sc_(sc) {
    SeriesResult series = lower_central_series(sc);
    if (!series.terminated)
        throw std::invalid_argument("bch: algebra is not nilpotent");
    degree_ = series.cls > 0 ? series.cls : 1;
    if (degree_ > 16)
        throw std::invalid_argument("bch: nilpotency class too large");

    // accumulate Dynkin composition terms per letter word
    std::map<std::pair<int, unsigned>, Rat> acc;
    std::vector<std::pair<int, int>> comp;
    auto emit = [&](int total) {
        const int m = static_cast<int>(comp.size());
        unsigned mask = 0;
        int pos = 0;
        for (const auto& [p, q] : comp) {
            pos += p; // x letters: zero bits
            for (int t = 0; t < q; ++t) mask |= 1u << (pos + t);
            pos += q;
        }
        // words with equal innermost letters bracket to zero
        if (((mask >> (total - 1)) & 1u) == ((mask >> (total - 2)) & 1u))
            return;
        Int den = Int(m) * total;
        for (const auto& [p, q] : comp) den *= factorial(p) * factorial(q);
        Rat coeff = Rat((m - 1) % 2 ? -1 : 1) / Rat(den);
        acc[{total, mask}] += coeff;
    };
    auto rec = [&](auto&& self, int rem, int total) -> void {
        if (rem == 0) {
            emit(total);
            return;
        }
        for (int p = 0; p <= rem; ++p)
            for (int q = 0; p + q <= rem; ++q) {
                if (p == 0 && q == 0) continue;
                comp.emplace_back(p, q);
                self(self, rem - p - q, total);
                comp.pop_back();
            }
    };
    for (int total = 2; total <= degree_; ++total) rec(rec, total, total);
    for (const auto& [key, coeff] : acc)
        if (coeff != 0) words_.push_back({key.first, key.second, coeff});
}

Vec BchContext::apply(const Vec& x, const Vec& y) const {
    if (static_cast<int>(x.size()) != sc_.dim ||
        static_cast<int>(y.size()) != sc_.dim)
        throw std::invalid_argument("bch: vector length mismatch");
    return bch_eval<Rat>(*this, x, y);
}

Vec bch(const Vec& x, const Vec& y, const StructureConstants& sc) {
    return BchContext(sc).apply(x, y);
}

ClosureReport lattice_closure_check(const StructureConstants& sc) {
    BchContext ctx(sc);
    const int n = sc.dim;
    MonomialLayout layout(2 * n, ctx.degree());
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    for (int i = 1; i <= n; ++i) names.push_back("y" + std::to_string(i));

    std::vector<QPoly> x(n), y(n);
    for (int i = 0; i < n; ++i) {
        x[i].add(layout.var(i), Rat(1));
        y[i].add(layout.var(n + i), Rat(1));
    }
    std::vector<QPoly> z = bch_eval<QPoly>(ctx, x, y);

    ClosureReport rep;
    for (int k = 0; k < n; ++k)
        for (const auto& [key, coeff] : z[k].sorted_terms())
            if (!is_integer(coeff)) {
                rep.closed = false;
                rep.coordinate = k + 1;
                rep.monomial = layout.decode(key, names);
                rep.coefficient = coeff;
                return rep;
            }
    return rep;
}

ClosureReport lattice_closure_exact(const StructureConstants& sc,
                                    long long max_points) {
    BchContext ctx(sc);
    const int n = sc.dim, c = ctx.degree();
    long long points = 1;
    for (int i = 0; i < 2 * n; ++i) {
        points *= c + 1;
        if (points > max_points)
            throw std::runtime_error(
                "exact closure check: grid larger than the configured budget");
    }

    ClosureReport rep;
    rep.exact = true;
    std::vector<int> odo(2 * n, 0); // x coords then y coords, lex order
    while (true) {
        Vec x(n), y(n);
        for (int i = 0; i < n; ++i) x[i] = odo[i];
        for (int i = 0; i < n; ++i) y[i] = odo[n + i];
        Vec z = ctx.apply(x, y);
        for (int k = 0; k < n; ++k)
            if (!is_integer(z[k])) {
                rep.closed = false;
                rep.coordinate = k + 1;
                rep.coefficient = z[k];
                rep.at_x = x;
                rep.at_y = y;
                return rep;
            }
        int i = 2 * n - 1;
        while (i >= 0 && odo[i] == c) odo[i--] = 0;
        if (i < 0) break;
        ++odo[i];
    }
    return rep;
}

LieEndomorphism classify_endomorphism(const Mat& f,
                                      const StructureConstants& sc) {
    const int n = sc.dim;
    if (f.rows != n || f.cols != n)
        throw std::invalid_argument("classify_endomorphism: size mismatch");
    LieEndomorphism e;
    e.matrix = f;
    e.algebra = sc;
    e.is_hom = true;
    for (int i = 1; i <= n && e.is_hom; ++i)
        for (int j = i + 1; j <= n; ++j) {
            Vec lhs = bracket(f.col(i - 1), f.col(j - 1), sc);
            const Vec* cij = sc.entry(i, j);
            Vec rhs = cij ? f * *cij : Vec(n, Rat(0));
            if (lhs != rhs) {
                e.is_hom = false;
                e.failing_pair = {i, j};
                break;
            }
        }
    e.det = det_inv(f).det;
    e.is_automorphism = e.is_hom && e.det != 0;
    e.is_lattice_preserving = f.is_integral();
    return e;
}

IndexResult image_index(const LieEndomorphism& f) {
    if (!f.is_lattice_preserving || !f.is_automorphism)
        throw std::invalid_argument(
            "image_index requires a lattice-preserving automorphism; got " +
            flags_summary(f));
    SnfResult snf = smith_normal_form(f.matrix);
    IndexResult out;
    out.index = 1;
    for (const Int& d : snf.divisors) {
        out.elementary_divisors.push_back(d);
        out.index *= d;
    }
    Int want = abs(f.det.get_num());
    if (out.index != want)
        throw std::logic_error("divisor product disagrees with |det|");
    return out;
}

Int coset_index_oracle(const LieEndomorphism& f, const StructureConstants& sc,
                       long long cap) {
    if (!f.is_lattice_preserving || !f.is_automorphism)
        throw std::invalid_argument(
            "coset oracle requires a lattice-preserving automorphism; got " +
            flags_summary(f));
    BchContext ctx(sc);
    const int n = sc.dim;
    Mat finv = *det_inv(f.matrix).inverse;
    auto in_image = [&](const Vec& v) { return is_integral(finv * v); };

    std::vector<Vec> gens;
    for (int i = 0; i < n; ++i) {
        gens.push_back(unit_vec(n, i));
        gens.push_back(-unit_vec(n, i));
    }
    std::vector<Vec> reps{Vec(n, Rat(0))};
    std::deque<size_t> queue{0};
    while (!queue.empty()) {
        Vec g = reps[queue.front()];
        queue.pop_front();
        for (const Vec& s : gens) {
            Vec cand = ctx.apply(g, s);
            bool merged = false;
            for (const Vec& r : reps)
                if (in_image(ctx.apply(cand, -r))) {
                    merged = true;
                    break;
                }
            if (!merged) {
                reps.push_back(cand);
                if (static_cast<long long>(reps.size()) > cap)
                    throw std::runtime_error(
                        "coset enumeration exceeded the cap of " +
                        std::to_string(cap));
                queue.push_back(reps.size() - 1);
            }
        }
    }
    return Int(static_cast<unsigned long>(reps.size()));
}

CoHopfVerdict cohopf_witness_check(const Mat& f, const StructureConstants& sc) {
    LieEndomorphism e = classify_endomorphism(f, sc);
    if (!e.is_lattice_preserving || !e.is_automorphism)
        throw std::invalid_argument(
            "candidate is not a lattice-preserving automorphism: " +
            flags_summary(e));
    CoHopfVerdict v;
    IndexResult idx = image_index(e);
    if (idx.index > 1) {
        v.kind = CoHopfVerdict::Kind::WitnessFound;
        v.witness = e;
        v.index = idx.index;
        v.note = "proper self-embedding of index " + idx.index.get_str();
    } else {
        v.kind = CoHopfVerdict::Kind::Inconclusive;
        v.note = "unimodular: the candidate maps the lattice onto itself and "
                 "is not a witness";
    }
    return v;
}

namespace {

// bounded deterministic search for an integral automorphism with |det| > 1
struct WitnessSearch {
    const StructureConstants& sc;
    int n, bound;
    long long node_cap, nodes = 0;
    bool capped = false;
    Mat fm;
    std::optional<Mat> found;
    // pairs (i,j) checkable once column c completes: every column index in
    // {i-1, j-1} and the bracket support is <= c
    std::vector<std::vector<std::pair<int, int>>> pairs_by_col;
    // RREF rows of the completed-column span, for dependence pruning
    std::vector<Vec> span_rows;

    WitnessSearch(const StructureConstants& s, int b, long long cap)
        : sc(s), n(s.dim), bound(b), node_cap(cap), fm(s.dim, s.dim),
          pairs_by_col(s.dim) {
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                int last = std::max(i, j) - 1;
                if (const Vec* cij = sc.entry(i, j))
                    for (int k = 0; k < n; ++k)
                        if ((*cij)[k] != 0) last = std::max(last, k);
                pairs_by_col[last].emplace_back(i, j);
            }
    }

    bool check_pair(int i, int j) const {
        Vec lhs = bracket(fm.col(i - 1), fm.col(j - 1), sc);
        const Vec* cij = sc.entry(i, j);
        Vec rhs = cij ? fm * *cij : Vec(n, Rat(0));
        return lhs == rhs;
    }

    void dfs(int pos) {
        if (found || capped) return;
        if (pos == n * n) {
            Rat d = det_inv(fm).det;
            if (d > 1 || d < -1) found = fm;
            return;
        }
        const int col = pos / n, row = pos % n;
        for (int v = -bound; v <= bound; ++v) {
            if (++nodes > node_cap) {
                capped = true;
                return;
            }
            fm.at(row, col) = v;
            if (row == n - 1) {
                bool ok = true;
                for (const auto& [i, j] : pairs_by_col[col])
                    if (!check_pair(i, j)) {
                        ok = false;
                        break;
                    }
                // a dependent column prefix admits no invertible completion
                if (ok && col < n - 1) {
                    std::vector<Vec> rows = span_rows;
                    rows.push_back(fm.col(col));
                    rows = row_space_basis(rows, n);
                    if (static_cast<int>(rows.size()) == col + 1) {
                        std::vector<Vec> saved = std::move(span_rows);
                        span_rows = std::move(rows);
                        dfs(pos + 1);
                        span_rows = std::move(saved);
                    }
                } else if (ok) {
                    dfs(pos + 1);
                }
            } else {
                dfs(pos + 1);
            }
            if (found || capped) return;
        }
        fm.at(row, col) = 0;
    }
};

} // namespace

CoHopfVerdict certify_cohopfian(const StructureConstants& sc,
                                const WitnessSearchOptions& opts) {
    CoHopfVerdict v;
    CharNilResult cn = is_characteristically_nilpotent(sc);
    if (cn.verdict) {
        v.kind = CoHopfVerdict::Kind::Certified;
        v.certificate = cn;
        v.note = "characteristically nilpotent: every lattice-preserving "
                 "automorphism is unimodular";
        return v;
    }
    if (opts.bound <= 0) {
        v.kind = CoHopfVerdict::Kind::Inconclusive;
        v.note = "not characteristically nilpotent; witness search disabled";
        return v;
    }
    WitnessSearch search(sc, opts.bound, opts.node_cap);
    search.dfs(0);
    v.nodes_explored = search.nodes;
    if (search.found) {
        LieEndomorphism e = classify_endomorphism(*search.found, sc);
        v.kind = CoHopfVerdict::Kind::WitnessFound;
        v.index = image_index(e).index;
        v.witness = std::move(e);
        v.note = "bounded search found a proper self-embedding of index " +
                 v.index->get_str();
    } else {
        v.kind = CoHopfVerdict::Kind::Inconclusive;
        v.note = search.capped
                     ? "witness search hit the node cap"
                     : "no witness with entries in [-" +
                           std::to_string(opts.bound) + ", " +
                           std::to_string(opts.bound) + "]";
    }
    return v;
}

ProductWitness product_with_line_witness(const StructureConstants& sc) {
    ProductWitness out;
    out.sum = direct_sum(sc, abelian(1));
    out.f = Mat::identity(sc.dim + 1);
    out.f.at(sc.dim, sc.dim) = 2;
    LieEndomorphism e = classify_endomorphism(out.f, out.sum);
    if (!e.is_hom || !e.is_automorphism || !e.is_lattice_preserving ||
        e.det != 2)
        throw std::logic_error("doubling the line is not the expected witness");
    return out;
}

LieEndomorphism exp_ad_automorphism(const Vec& x, const StructureConstants& sc) {
    const int n = sc.dim;
    if (static_cast<int>(x.size()) != n)
        throw std::invalid_argument("exp_ad: vector length mismatch");
    Mat ad(n, n);
    for (int j = 0; j < n; ++j) {
        Vec v = bracket(x, unit_vec(n, j), sc);
        for (int i = 0; i < n; ++i) ad.at(i, j) = v[i];
    }
    Mat f = Mat::identity(n);
    Mat p = Mat::identity(n);
    for (int k = 1; k <= n; ++k) {
        p = p * ad;
        if (p.is_zero()) break;
        if (k == n)
            throw std::logic_error("ad x is not nilpotent");
        f = f + Rat(1, factorial(k)) * p;
    }

    LieEndomorphism e = classify_endomorphism(f, sc);
    if (!e.is_hom || e.det != 1)
        throw std::logic_error("exp(ad x) failed the automorphism assertions");
    // unipotence and triviality on L/[L,L]
    Mat u = f - Mat::identity(n);
    Mat up = u;
    for (int k = 1; k < n && !up.is_zero(); ++k) up = up * u;
    if (!up.is_zero())
        throw std::logic_error("exp(ad x) is not unipotent");
    SeriesResult series = lower_central_series(sc);
    const Subspace& derived =
        series.terms.size() > 1 ? series.terms[1] : Subspace::zero(n);
    for (int j = 0; j < n; ++j)
        if (!derived.contains(u.col(j)))
            throw std::logic_error(
                "exp(ad x) does not act trivially on the abelianization");
    return e;
}

EpiCheckResult same_rank_epi_check(const Mat& f, const StructureConstants& src,
                                   const StructureConstants& dst) {
    if (src.dim != dst.dim)
        throw std::invalid_argument("same_rank_epi_check: dimension mismatch");
    const int n = src.dim;
    if (f.rows != n || f.cols != n)
        throw std::invalid_argument("same_rank_epi_check: size mismatch");
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            Vec lhs = bracket(f.col(i - 1), f.col(j - 1), dst);
            const Vec* cij = src.entry(i, j);
            Vec rhs = cij ? f * *cij : Vec(n, Rat(0));
            if (lhs != rhs)
                throw std::invalid_argument(
                    "not a homomorphism: fails on pair e" + std::to_string(i) +
                    ",e" + std::to_string(j));
        }

    EpiCheckResult out;
    out.is_hom = true;
    out.rank = rank(f);
    out.surjective_linear = out.rank == n;
    Rat d = det_inv(f).det;
    out.injective = d != 0;
    if (out.surjective_linear && !out.injective)
        throw std::logic_error("full rank with zero determinant");
    if (f.is_integral() && d != 0) {
        SnfResult snf = smith_normal_form(f);
        Int idx = 1;
        bool onto = true;
        for (const Int& e : snf.divisors) {
            idx *= e;
            if (e != 1) onto = false;
        }
        out.index = idx;
        out.lattice_surjective = onto;
    }
    return out;
}

} // namespace nilcert
