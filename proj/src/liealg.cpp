#include "nilcert/liealg.hpp"

#include <stdexcept>

namespace nilcert {

void StructureConstants::set(int i, int j, Vec v) {
    if (!(1 <= i && i < j && j <= dim))
        throw std::invalid_argument("structure constants: need 1 <= i < j <= dim");
    if (static_cast<int>(v.size()) != dim)
        throw std::invalid_argument("structure constants: vector length != dim");
    if (is_zero(v))
        table.erase({i, j});
    else
        table[{i, j}] = std::move(v);
}

Subspace Subspace::from_span(std::vector<Vec> vectors, int ambient_dim) {
    Subspace s;
    s.ambient_dim = ambient_dim;
    s.basis = row_space_basis(vectors, ambient_dim);
    return s;
}

Subspace Subspace::full(int n) {
    Subspace s;
    s.ambient_dim = n;
    for (int i = 0; i < n; ++i) s.basis.push_back(unit_vec(n, i));
    return s;
}

bool Subspace::contains(const Subspace& other) const {
    for (const Vec& v : other.basis)
        if (!contains(v)) return false;
    return true;
}

namespace {

void check_table(const StructureConstants& sc) {
    for (const auto& [key, v] : sc.table) {
        auto [i, j] = key;
        if (!(1 <= i && i < j && j <= sc.dim))
            throw std::invalid_argument("structure constants: pair out of range");
        if (static_cast<int>(v.size()) != sc.dim)
            throw std::invalid_argument(
                "structure constants: table vector length != dim");
    }
}

} // namespace

Vec bracket(const Vec& x, const Vec& y, const StructureConstants& sc) {
    const int n = sc.dim;
    if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
        throw std::invalid_argument("bracket: vector length != dim");
    Vec r(n, Rat(0));
    for (const auto& [key, v] : sc.table) {
        auto [i, j] = key;
        Rat c = x[i - 1] * y[j - 1] - x[j - 1] * y[i - 1];
        if (c == 0) continue;
        for (int k = 0; k < n; ++k)
            if (v[k] != 0) r[k] += c * v[k];
    }
    return r;
}

Subspace subspace_bracket(const Subspace& a, const Subspace& b,
                          const StructureConstants& sc) {
    if (a.ambient_dim != sc.dim || b.ambient_dim != sc.dim)
        throw std::invalid_argument("subspace_bracket: ambient dimension mismatch");
    std::vector<Vec> spans;
    for (const Vec& u : a.basis)
        for (const Vec& w : b.basis) {
            Vec v = bracket(u, w, sc);
            if (!is_zero(v)) spans.push_back(std::move(v));
        }
    return Subspace::from_span(std::move(spans), sc.dim);
}

SeriesResult lower_central_series(const StructureConstants& sc) {
    SeriesResult out;
    Subspace full = Subspace::full(sc.dim);
    out.terms.push_back(full);
    out.dims.push_back(sc.dim);
    while (out.dims.back() > 0) {
        Subspace next = subspace_bracket(full, out.terms.back(), sc);
        if (next.dim() == out.dims.back()) {
            out.terminated = false; // stabilized above zero: not nilpotent
            return out;
        }
        out.dims.push_back(next.dim());
        out.terms.push_back(std::move(next));
    }
    out.terminated = true;
    out.cls = static_cast<int>(out.dims.size()) - 1;
    return out;
}

ValidationReport validate(const StructureConstants& sc) {
    check_table(sc);
    ValidationReport rep;
    const int n = sc.dim;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k) {
                Vec ei = unit_vec(n, i - 1), ej = unit_vec(n, j - 1),
                    ek = unit_vec(n, k - 1);
                Vec r = bracket(bracket(ei, ej, sc), ek, sc) +
                        bracket(bracket(ej, ek, sc), ei, sc) +
                        bracket(bracket(ek, ei, sc), ej, sc);
                if (!is_zero(r)) rep.jacobi_failures.push_back({i, j, k, std::move(r)});
            }
    SeriesResult series = lower_central_series(sc);
    rep.nilpotent = series.terminated;
    rep.series_dims = series.dims;
    if (series.terminated) rep.cls = series.cls;
    rep.accepted = rep.jacobi_failures.empty() && rep.nilpotent;
    return rep;
}

Subspace center(const StructureConstants& sc) {
    const int n = sc.dim;
    // rows of the stacked system: coordinate k of [x, e_j] for each j
    Mat sys(n * n, n);
    for (int j = 1; j <= n; ++j) {
        for (int i = 1; i <= n; ++i) {
            Vec v = bracket(unit_vec(n, i - 1), unit_vec(n, j - 1), sc);
            for (int k = 0; k < n; ++k) sys.at((j - 1) * n + k, i - 1) = v[k];
        }
    }
    return Subspace::from_span(kernel_basis(sys), n);
}

StructureConstants direct_sum(const StructureConstants& a,
                              const StructureConstants& b) {
    StructureConstants s;
    s.dim = a.dim + b.dim;
    if (!a.name.empty() && !b.name.empty()) s.name = a.name + "+" + b.name;
    for (const auto& [key, v] : a.table) {
        Vec w(s.dim, Rat(0));
        for (int k = 0; k < a.dim; ++k) w[k] = v[k];
        s.set(key.first, key.second, std::move(w));
    }
    for (const auto& [key, v] : b.table) {
        Vec w(s.dim, Rat(0));
        for (int k = 0; k < b.dim; ++k) w[a.dim + k] = v[k];
        s.set(a.dim + key.first, a.dim + key.second, std::move(w));
    }
    return s;
}

InvariantReport invariant_report(const StructureConstants& sc) {
    InvariantReport rep;
    rep.rank = sc.dim;
    SeriesResult series = lower_central_series(sc);
    if (!series.terminated)
        throw std::invalid_argument("invariant_report: input not nilpotent");
    rep.cls = series.cls;
    rep.series_dims = series.dims;
    rep.center_dim = center(sc).dim();
    int derived_dim = series.terms.size() > 1 ? series.terms[1].dim() : 0;
    rep.ab_dim = sc.dim - derived_dim;
    rep.generators = rep.ab_dim;
    // dim(L/[L,L]) >= 2 whenever L is non-abelian: a nilpotent algebra with a
    // 1-dimensional abelianization is 1-dimensional abelian
    if (rep.cls >= 2 && rep.ab_dim < 2)
        throw std::logic_error("invariant_report: impossible abelianization");
    return rep;
}

StructureConstants abelian(int n) {
    if (n < 1) throw std::invalid_argument("abelian(n) needs n >= 1");
    StructureConstants sc;
    sc.dim = n;
    sc.name = "abelian(" + std::to_string(n) + ")";
    return sc;
}

} // namespace nilcert
