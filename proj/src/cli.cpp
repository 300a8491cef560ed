#include "nilcert/cli.hpp"

#include "nilcert/algio.hpp"
#include "nilcert/catalog.hpp"
#include "nilcert/derivations.hpp"
#include "nilcert/liealg.hpp"
#include "nilcert/malcev.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nilcert::cli {
namespace {

// ---------------------------------------------------------------------------
// report plumbing

// Ordered key=value pairs. Machine mode prints exactly these, one per line;
// text handlers draw their prose from the same values, so switching formats
// never loses a number.
class Report {
public:
    void put(const std::string& key, std::string value) {
        kv_.emplace_back(key, std::move(value));
    }
    void put(const std::string& key, const char* value) {
        put(key, std::string(value));
    }
    void put(const std::string& key, bool v) {
        put(key, std::string(v ? "yes" : "no"));
    }
    void put(const std::string& key, int v) { put(key, std::to_string(v)); }
    void put(const std::string& key, long long v) { put(key, std::to_string(v)); }
    void put(const std::string& key, const Int& v) { put(key, v.get_str()); }
    void put(const std::string& key, const Rat& v) { put(key, v.get_str()); }

    void emit(std::ostream& os) const {
        for (const auto& [k, v] : kv_) os << k << '=' << v << '\n';
    }

private:
    std::vector<std::pair<std::string, std::string>> kv_;
};

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string s;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) s += sep;
        s += parts[i];
    }
    return s;
}

std::string fmt_vec(const Vec& v, const std::string& sep = ",") {
    std::vector<std::string> parts;
    parts.reserve(v.size());
    for (const Rat& x : v) parts.push_back(x.get_str());
    return join(parts, sep);
}

std::string fmt_dims(const std::vector<int>& dims, const std::string& sep = ",") {
    std::vector<std::string> parts;
    parts.reserve(dims.size());
    for (int d : dims) parts.push_back(std::to_string(d));
    return join(parts, sep);
}

std::string fmt_ints(const std::vector<Int>& zs, const std::string& sep = ",") {
    std::vector<std::string> parts;
    parts.reserve(zs.size());
    for (const Int& z : zs) parts.push_back(z.get_str());
    return join(parts, sep);
}

// One-line matrix literal, same grammar --matrix accepts: rows ';', entries ','.
std::string fmt_mat(const Mat& m) {
    std::vector<std::string> rows;
    rows.reserve(static_cast<size_t>(m.rows));
    for (int r = 0; r < m.rows; ++r) rows.push_back(fmt_vec(m.row(r)));
    return join(rows, ";");
}

// Aligned bracketed block for prose output.
void print_matrix_block(std::ostream& os, const Mat& m) {
    std::vector<size_t> width(static_cast<size_t>(m.cols), 1);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c)
            width[static_cast<size_t>(c)] =
                std::max(width[static_cast<size_t>(c)], m.at(r, c).get_str().size());
    for (int r = 0; r < m.rows; ++r) {
        os << "  [";
        for (int c = 0; c < m.cols; ++c)
            os << ' '
               << std::setw(static_cast<int>(width[static_cast<size_t>(c)]))
               << m.at(r, c).get_str();
        os << " ]\n";
    }
}

// ---------------------------------------------------------------------------
// input parsing

Vec parse_vec(const std::string& text, int expect_dim, const std::string& what) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            tokens.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    tokens.push_back(cur);
    if (static_cast<int>(tokens.size()) != expect_dim)
        throw std::invalid_argument(what + ": expected " + std::to_string(expect_dim) +
                                    " comma-separated entries, got " +
                                    std::to_string(tokens.size()));
    Vec v;
    v.reserve(tokens.size());
    for (const std::string& t : tokens) {
        try {
            v.push_back(rat_parse(t));
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument(what + ": cannot read '" + t +
                                        "' as a rational number");
        }
    }
    return v;
}

// Rows separated by ';' or newlines, entries by ',' or whitespace; '#' starts
// a comment. Must be rectangular and nonempty.
Mat parse_matrix_text(const std::string& text, const std::string& what) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string cur;
    bool comment = false;
    auto flush_entry = [&] {
        if (!cur.empty()) {
            row.push_back(cur);
            cur.clear();
        }
    };
    auto flush_row = [&] {
        flush_entry();
        if (!row.empty()) {
            rows.push_back(row);
            row.clear();
        }
    };
    for (char ch : text) {
        if (ch == '\n') {
            comment = false;
            flush_row();
        } else if (comment) {
            continue;
        } else if (ch == '#') {
            comment = true;
        } else if (ch == ';') {
            flush_row();
        } else if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
            flush_entry();
        } else {
            cur += ch;
        }
    }
    flush_row();
    if (rows.empty()) throw std::invalid_argument(what + ": empty matrix");
    Mat m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows[0].size())
            throw std::invalid_argument(what + ": row " + std::to_string(r + 1) +
                                        " has " + std::to_string(rows[r].size()) +
                                        " entries, row 1 has " +
                                        std::to_string(rows[0].size()));
        for (size_t c = 0; c < rows[r].size(); ++c) {
            try {
                m.at(static_cast<int>(r), static_cast<int>(c)) = rat_parse(rows[r][c]);
            } catch (const std::invalid_argument&) {
                throw std::invalid_argument(what + ": cannot read '" + rows[r][c] +
                                            "' as a rational number");
            }
        }
    }
    return m;
}

struct Loaded {
    StructureConstants sc;
    std::string source;
    std::string digest; // FNV-1a of the bytes the algebra came from
};

Loaded load_input(const std::string& path, const std::string& catalog_spec,
                  const std::string& data_dir) {
    if (!path.empty() && !catalog_spec.empty())
        throw std::invalid_argument(
            "give either an input file or --catalog, not both");
    if (path.empty() && catalog_spec.empty())
        throw std::invalid_argument(
            "no input: give an algebra file path or --catalog NAME");
    if (!catalog_spec.empty()) {
        StructureConstants sc = catalog_get(catalog_spec, data_dir);
        std::string text = emit_algebra(sc);
        return {std::move(sc), "catalog:" + catalog_spec, fnv1a64_hex(text)};
    }
    std::string text = read_text_file(path);
    try {
        return {parse_algebra(text), path, fnv1a64_hex(text)};
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

Mat load_matrix(const std::string& literal, const std::string& file, int dim) {
    if (!literal.empty() && !file.empty())
        throw std::invalid_argument("give either --matrix or --matrix-file, not both");
    if (literal.empty() && file.empty())
        throw std::invalid_argument("no matrix: give --matrix or --matrix-file");
    Mat m = literal.empty()
                ? parse_matrix_text(read_text_file(file), file)
                : parse_matrix_text(literal, "--matrix");
    if (m.rows != dim || m.cols != dim)
        throw std::invalid_argument("matrix is " + std::to_string(m.rows) + "x" +
                                    std::to_string(m.cols) + ", the algebra has dimension " +
                                    std::to_string(dim));
    return m;
}

// Everything downstream of validate assumes a nilpotent Lie algebra; reject
// other inputs as unusable rather than report nonsense.
void require_valid(const StructureConstants& sc, const std::string& source) {
    ValidationReport vr = validate(sc);
    if (vr.accepted) return;
    std::string why;
    if (!vr.jacobi_failures.empty()) {
        const JacobiFailure& f = vr.jacobi_failures.front();
        why = "the Jacobi identity fails at (e" + std::to_string(f.i) + ",e" +
              std::to_string(f.j) + ",e" + std::to_string(f.k) + ")";
    } else {
        why = "the lower central series does not reach zero";
    }
    throw std::invalid_argument(source + ": not a nilpotent Lie algebra (" + why +
                                "; run the validate subcommand)");
}

// ---------------------------------------------------------------------------
// subcommand handlers; `text` is false in machine mode

int do_validate(const Loaded& in, Report& rep, bool text, std::ostream& out) {
    ValidationReport vr = validate(in.sc);
    rep.put("dim", in.sc.dim);
    rep.put("valid", vr.accepted);
    rep.put("jacobi_failures", static_cast<int>(vr.jacobi_failures.size()));
    rep.put("nilpotent", vr.nilpotent);
    if (!vr.jacobi_failures.empty()) {
        const JacobiFailure& f = vr.jacobi_failures.front();
        rep.put("fail_at", std::to_string(f.i) + "," + std::to_string(f.j) + "," +
                               std::to_string(f.k));
        rep.put("fail_residual", format_combination(f.residual));
    }
    if (vr.nilpotent) {
        rep.put("class", vr.cls);
        rep.put("lcs", fmt_dims(vr.series_dims));
    }
    if (text) {
        if (vr.accepted) {
            out << "valid: yes (dimension " << in.sc.dim
                << ", Jacobi identity holds, nilpotent of class " << vr.cls << ")\n"
                << "lower central series dims: " << fmt_dims(vr.series_dims, " ")
                << "\n";
        } else if (!vr.jacobi_failures.empty()) {
            const JacobiFailure& f = vr.jacobi_failures.front();
            out << "valid: no (the Jacobi identity fails at (e" << f.i << ",e" << f.j
                << ",e" << f.k << "): residual " << format_combination(f.residual)
                << ")\n";
        } else {
            out << "valid: no (the lower central series does not reach zero)\n";
        }
    }
    return vr.accepted ? 0 : 1;
}

int do_invariants(const Loaded& in, bool closure, Report& rep, bool text,
                  std::ostream& out) {
    require_valid(in.sc, in.source);
    InvariantReport ir = invariant_report(in.sc);
    rep.put("dim", ir.rank);
    rep.put("class", ir.cls);
    rep.put("lcs", fmt_dims(ir.series_dims));
    rep.put("ab_dim", ir.ab_dim);
    rep.put("center_dim", ir.center_dim);
    rep.put("generators", ir.generators);
    if (text) {
        out << "dimension: " << ir.rank << "\n"
            << "nilpotency class: " << ir.cls << "\n"
            << "lower central series dims: " << fmt_dims(ir.series_dims, " ") << "\n"
            << "abelianization dimension: " << ir.ab_dim << "\n"
            << "center dimension: " << ir.center_dim << "\n"
            << "minimal generators: " << ir.generators << "\n";
    }
    if (closure) {
        ClosureReport cr = lattice_closure_check(in.sc);
        rep.put("closed", cr.closed);
        if (!cr.closed) {
            rep.put("closure_coordinate", cr.coordinate);
            rep.put("closure_monomial", cr.monomial);
            rep.put("closure_coefficient", cr.coefficient);
        }
        if (text) {
            if (cr.closed) {
                out << "lattice closure: yes (all group-law coefficients are integers)\n";
            } else {
                out << "lattice closure: no (coordinate " << cr.coordinate
                    << " has coefficient " << cr.coefficient.get_str() << " at "
                    << cr.monomial << ")\n";
            }
        }
    }
    return 0;
}

int do_derivations(const Loaded& in, bool with_basis, bool with_series,
                   Report& rep, bool text, std::ostream& out) {
    require_valid(in.sc, in.source);
    DerivationSpace ds = derivation_space(in.sc);
    rep.put("der_dim", ds.dimension);
    if (text) out << "dim Der(L) = " << ds.dimension << "\n";
    if (with_basis) {
        for (size_t k = 0; k < ds.basis.size(); ++k)
            rep.put("basis." + std::to_string(k), fmt_mat(ds.basis[k]));
        if (text) {
            for (size_t k = 0; k < ds.basis.size(); ++k) {
                out << "D" << k << ":\n";
                print_matrix_block(out, ds.basis[k]);
            }
        }
    }
    if (with_series) {
        DerLcsResult lr = der_lie_lcs(ds);
        rep.put("der_lcs", fmt_dims(lr.dims));
        rep.put("der_nilpotent", lr.nilpotent_as_lie_algebra);
        if (text) {
            out << "Der(L) lower central series dims: " << fmt_dims(lr.dims, " ")
                << "\n"
                << "Der(L) nilpotent as a Lie algebra: "
                << (lr.nilpotent_as_lie_algebra ? "yes" : "no") << "\n";
        }
    }
    return 0;
}

int do_charnil(const Loaded& in, bool with_oracle, Report& rep, bool text,
               std::ostream& out) {
    require_valid(in.sc, in.source);
    CharNilResult cn = is_characteristically_nilpotent(in.sc);
    rep.put("charnil", cn.verdict);
    rep.put("der_dim", cn.der_dim);
    if (cn.verdict) {
        std::vector<int> flag_dims;
        flag_dims.reserve(cn.certificate.flag.size());
        for (const Subspace& s : cn.certificate.flag) flag_dims.push_back(s.dim());
        rep.put("flag_dims", fmt_dims(flag_dims));
        if (text) {
            out << "characteristically nilpotent: yes (every derivation is nilpotent; "
                << "dim Der(L) = " << cn.der_dim << ")\n"
                << "invariant flag dims: " << fmt_dims(flag_dims, " ") << "\n";
        }
    } else {
        rep.put("failure_stage", cn.certificate.failure_stage);
        if (cn.certificate.witness) {
            rep.put("witness", fmt_mat(*cn.certificate.witness));
            rep.put("trace_power", cn.certificate.witness_trace_power);
        }
        if (text) {
            out << "characteristically nilpotent: no (dim Der(L) = " << cn.der_dim
                << ")\n";
            if (cn.certificate.witness) {
                out << "non-nilpotent derivation with tr(D^"
                    << cn.certificate.witness_trace_power << ") != 0:\n";
                print_matrix_block(out, *cn.certificate.witness);
            }
        }
    }
    if (with_oracle) {
        DerivationSpace ds = derivation_space(in.sc);
        bool oracle_nilpotent = trace_power_oracle(ds.basis);
        rep.put("oracle_nilpotent", oracle_nilpotent);
        rep.put("oracle_agrees", oracle_nilpotent == cn.verdict);
        if (text) {
            out << "trace-power oracle: "
                << (oracle_nilpotent ? "all derivations nilpotent"
                                     : "non-nilpotent derivation exists")
                << (oracle_nilpotent == cn.verdict ? " (agrees)" : " (DISAGREES)")
                << "\n";
        }
        if (oracle_nilpotent != cn.verdict)
            throw std::logic_error(
                "trace-power oracle disagrees with the Engel decision");
    }
    return cn.verdict ? 0 : 1;
}

void report_endo_flags(const LieEndomorphism& e, Report& rep) {
    rep.put("hom", e.is_hom);
    if (e.failing_pair)
        rep.put("failing_pair", std::to_string(e.failing_pair->first) + "," +
                                    std::to_string(e.failing_pair->second));
    rep.put("automorphism", e.is_automorphism);
    rep.put("lattice_preserving", e.is_lattice_preserving);
    rep.put("det", e.det);
}

int do_endo(const Loaded& in, const Mat& f, Report& rep, bool text,
            std::ostream& out) {
    require_valid(in.sc, in.source);
    LieEndomorphism e = classify_endomorphism(f, in.sc);
    report_endo_flags(e, rep);
    if (text) {
        if (e.is_hom) {
            out << "Lie algebra homomorphism: yes\n";
        } else {
            out << "Lie algebra homomorphism: no (first failing pair e"
                << e.failing_pair->first << ", e" << e.failing_pair->second << ")\n";
        }
        out << "automorphism: " << (e.is_automorphism ? "yes" : "no")
            << " (det = " << e.det.get_str() << ")\n"
            << "lattice-preserving: " << (e.is_lattice_preserving ? "yes" : "no")
            << "\n";
    }
    if (e.is_hom && e.is_automorphism && e.is_lattice_preserving) {
        IndexResult ii = image_index(e);
        rep.put("index", ii.index);
        rep.put("divisors", fmt_ints(ii.elementary_divisors));
        if (text) {
            out << "index of the image subgroup: " << ii.index.get_str() << "\n"
                << "elementary divisors: " << fmt_ints(ii.elementary_divisors, " ")
                << "\n";
        }
    }
    return 0;
}

int do_index(const Loaded& in, const Mat& f, bool oracle, long long oracle_cap,
             Report& rep, bool text, std::ostream& out) {
    require_valid(in.sc, in.source);
    LieEndomorphism e = classify_endomorphism(f, in.sc);
    if (!(e.is_hom && e.is_automorphism && e.is_lattice_preserving)) {
        std::string why = !e.is_hom ? "not a homomorphism"
                          : !e.is_automorphism
                              ? "determinant zero"
                              : "not lattice-preserving (non-integer entries)";
        throw std::invalid_argument("matrix is not a lattice-preserving automorphism: " +
                                    why);
    }
    IndexResult ii = image_index(e);
    rep.put("det", e.det);
    rep.put("index", ii.index);
    rep.put("divisors", fmt_ints(ii.elementary_divisors));
    if (text) {
        out << "index of the image subgroup: " << ii.index.get_str()
            << " (= |det| = |" << e.det.get_str() << "|)\n"
            << "elementary divisors: " << fmt_ints(ii.elementary_divisors, " ")
            << "\n";
    }
    if (oracle) {
        // The enumeration walks Z^n under the group law, so the law has to
        // stay on the lattice for the count to mean anything.
        ClosureReport cr = lattice_closure_check(in.sc);
        if (!cr.closed)
            throw std::invalid_argument(
                "coset enumeration needs a lattice-closed group law, but "
                "coordinate " +
                std::to_string(cr.coordinate) + " has coefficient " +
                cr.coefficient.get_str() + " at " + cr.monomial);
        Int count = coset_index_oracle(e, in.sc, oracle_cap);
        rep.put("coset_count", count);
        rep.put("oracle_agrees", count == ii.index);
        if (text)
            out << "coset enumeration count: " << count.get_str()
                << (count == ii.index ? " (agrees)" : " (DISAGREES)") << "\n";
        if (count != ii.index)
            throw std::logic_error(
                "coset enumeration disagrees with the elementary-divisor index");
    }
    return 0;
}

void report_witness(const CoHopfVerdict& v, Report& rep, bool text,
                    std::ostream& out) {
    rep.put("witness", fmt_mat(v.witness->matrix));
    rep.put("witness_det", v.witness->det);
    rep.put("index", *v.index);
    if (text) {
        out << "proper finite-index self-embedding (det = "
            << v.witness->det.get_str() << ", image index = " << v.index->get_str()
            << "):\n";
        print_matrix_block(out, v.witness->matrix);
    }
}

int do_cohopf(const Loaded& in, const std::string& matrix_arg,
              const std::string& matrix_file, int bound, long long node_cap,
              Report& rep, bool text, std::ostream& out) {
    require_valid(in.sc, in.source);

    if (!matrix_arg.empty() || !matrix_file.empty()) {
        // single-candidate mode: is this matrix a witness?
        Mat f = load_matrix(matrix_arg, matrix_file, in.sc.dim);
        CoHopfVerdict v = cohopf_witness_check(f, in.sc);
        bool found = v.kind == CoHopfVerdict::Kind::WitnessFound;
        rep.put("verdict", found ? "witness-found" : "inconclusive");
        rep.put("note", v.note);
        if (found) {
            report_witness(v, rep, text, out);
            return 1;
        }
        if (text) out << "not a witness: " << v.note << "\n";
        return 0;
    }

    WitnessSearchOptions opts;
    opts.bound = bound;
    opts.node_cap = node_cap;

    CoHopfVerdict v;
    if (bound == 0) {
        // search disabled: report what characteristic nilpotency alone gives
        CharNilResult cn = is_characteristically_nilpotent(in.sc);
        v.certificate = cn;
        if (cn.verdict) {
            v.kind = CoHopfVerdict::Kind::Certified;
            v.note = "characteristically nilpotent: every lattice-preserving "
                     "automorphism is unimodular";
        } else {
            v.kind = CoHopfVerdict::Kind::Inconclusive;
            v.note = "not characteristically nilpotent; witness search disabled";
        }
    } else {
        v = certify_cohopfian(in.sc, opts);
    }

    if (v.certificate) rep.put("charnil", v.certificate->verdict);
    switch (v.kind) {
    case CoHopfVerdict::Kind::Certified:
        rep.put("verdict", "certified");
        rep.put("note", v.note);
        if (text)
            out << "co-Hopfian: certified\n"
                << "reason: " << v.note << "\n";
        return 0;
    case CoHopfVerdict::Kind::WitnessFound:
        rep.put("verdict", "witness-found");
        rep.put("note", v.note);
        rep.put("nodes", v.nodes_explored);
        if (text) out << "co-Hopfian: no\n";
        report_witness(v, rep, text, out);
        return 1;
    case CoHopfVerdict::Kind::Inconclusive:
    default:
        rep.put("verdict", "inconclusive");
        rep.put("note", v.note);
        rep.put("nodes", v.nodes_explored);
        if (text) out << "inconclusive: " << v.note << "\n";
        return 0;
    }
}

int do_witness_gxz(const Loaded& in, bool emit_sum, Report& rep, bool text,
                   std::ostream& out) {
    require_valid(in.sc, in.source);
    ProductWitness pw = product_with_line_witness(in.sc);
    IndexResult ii = image_index(classify_endomorphism(pw.f, pw.sum));
    rep.put("sum_dim", pw.sum.dim);
    rep.put("witness", fmt_mat(pw.f));
    rep.put("det", Rat(2));
    rep.put("index", ii.index);
    if (text) {
        out << "the product with a central line is not co-Hopfian\n"
            << "self-embedding of L x Z (dimension " << pw.sum.dim
            << ", det = 2, image index = " << ii.index.get_str() << "):\n";
        print_matrix_block(out, pw.f);
    }
    if (emit_sum) {
        if (text) out << "product algebra:\n";
        out << emit_algebra(pw.sum);
    }
    return 1;
}

int do_bch(const Loaded& in, const std::string& x_arg, const std::string& y_arg,
           Report& rep, bool text, std::ostream& out) {
    require_valid(in.sc, in.source);
    Vec x = parse_vec(x_arg, in.sc.dim, "--x");
    Vec y = parse_vec(y_arg, in.sc.dim, "--y");
    Vec z = bch(x, y, in.sc);
    rep.put("x", fmt_vec(x));
    rep.put("y", fmt_vec(y));
    rep.put("z", fmt_vec(z));
    rep.put("pretty", format_combination(z));
    rep.put("integral", is_integral(z));
    if (text) {
        out << "bch(x, y) = " << format_combination(z) << "\n"
            << "coordinates: " << fmt_vec(z) << "\n"
            << "integral: " << (is_integral(z) ? "yes" : "no") << "\n";
    }
    return 0;
}

int do_catalog(const std::string& name, const std::string& data_dir, Report& rep,
               bool text, std::ostream& out) {
    if (!name.empty()) {
        // emit mode: print the algebra file text itself, both formats, so the
        // output can be fed straight back into the other subcommands
        StructureConstants sc = catalog_get(name, data_dir);
        out << emit_algebra(sc);
        return 0;
    }
    std::vector<CatalogEntry> entries = catalog_list(data_dir);
    rep.put("count", static_cast<int>(entries.size()));
    for (size_t k = 0; k < entries.size(); ++k) {
        const CatalogEntry& e = entries[k];
        std::string p = "entry." + std::to_string(k) + ".";
        rep.put(p + "name", e.name);
        rep.put(p + "kind", e.family ? "family" : "fixed");
        rep.put(p + "available", e.available);
        if (!e.note.empty()) rep.put(p + "note", e.note);
        if (!e.checksum.empty()) rep.put(p + "checksum", e.checksum);
    }
    if (text) {
        size_t name_w = 4;
        for (const CatalogEntry& e : entries) name_w = std::max(name_w, e.name.size());
        out << std::left << std::setw(static_cast<int>(name_w) + 2) << "name"
            << std::setw(8) << "kind" << std::setw(11) << "available"
            << "note\n";
        for (const CatalogEntry& e : entries) {
            out << std::left << std::setw(static_cast<int>(name_w) + 2) << e.name
                << std::setw(8) << (e.family ? "family" : "fixed") << std::setw(11)
                << (e.available ? "yes" : "no") << e.note << "\n";
        }
    }
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"exact analysis of rational nilpotent Lie algebras and the "
                 "co-Hopf property of their lattice groups"};
    app.name("nilcert");
    app.fallthrough();
    app.require_subcommand(1);

    std::string format = "text";
    unsigned long long seed = 0;
    std::string data_dir = default_data_dir();
    app.add_option("--format", format, "report format")
        ->check(CLI::IsMember({"text", "machine"}));
    app.add_option("--seed", seed, "echoed into reports; all computations are "
                                   "deterministic and ignore it");
    app.add_option("--data-dir", data_dir, "directory with the catalog data files");

    std::string input_path, input_catalog;
    auto add_input = [&](CLI::App* sub) {
        sub->add_option("input", input_path, "structure-constant file");
        sub->add_option("--catalog", input_catalog,
                        "built-in algebra, e.g. cn7 or heisenberg_lattice(2)");
    };
    std::string matrix_arg, matrix_file;
    auto add_matrix = [&](CLI::App* sub) {
        sub->add_option("--matrix", matrix_arg,
                        "matrix literal: rows separated by ';', entries by ','");
        sub->add_option("--matrix-file", matrix_file,
                        "file with one matrix row per line");
    };

    CLI::App* sub_validate = app.add_subcommand(
        "validate", "check a structure-constant file: table shape, Jacobi "
                    "identity, nilpotency");
    add_input(sub_validate);

    bool closure = false;
    CLI::App* sub_invariants = app.add_subcommand(
        "invariants", "dimension, lower central series, center, abelianization");
    add_input(sub_invariants);
    sub_invariants->add_flag("--closure", closure,
                             "also check that the group law preserves the lattice");

    bool der_basis = false, der_series = false;
    CLI::App* sub_derivations = app.add_subcommand(
        "derivations", "dimension (and optionally a basis) of the derivation "
                       "algebra");
    add_input(sub_derivations);
    sub_derivations->add_flag("--basis", der_basis, "print a basis of Der(L)");
    sub_derivations->add_flag("--lie-series", der_series,
                              "lower central series of Der(L) as a Lie algebra");

    bool cn_oracle = false;
    CLI::App* sub_charnil = app.add_subcommand(
        "charnil", "decide characteristic nilpotency: is every derivation "
                   "nilpotent?");
    add_input(sub_charnil);
    sub_charnil->add_flag("--oracle", cn_oracle,
                          "cross-check with the trace-power oracle (dimension "
                          "<= 10 only)");

    CLI::App* sub_endo = app.add_subcommand(
        "endo", "classify a matrix: homomorphism, automorphism, "
                "lattice-preserving, determinant");
    add_input(sub_endo);
    add_matrix(sub_endo);

    int search_bound = 2;
    long long node_cap = 5'000'000;
    CLI::App* sub_cohopf = app.add_subcommand(
        "cohopf", "certify the lattice group co-Hopfian, or search for a "
                  "proper finite-index self-embedding");
    add_input(sub_cohopf);
    add_matrix(sub_cohopf);
    sub_cohopf->add_option("--search-bound", search_bound,
                           "witness entries searched in [-B, B]; 0 disables "
                           "the search");
    sub_cohopf->add_option("--node-cap", node_cap,
                           "witness search gives up (inconclusive) after this "
                           "many nodes");

    bool emit_sum = false;
    CLI::App* sub_gxz = app.add_subcommand(
        "witness-gxz", "build the index-2 self-embedding of the product with a "
                       "central line (G x Z is never co-Hopfian)");
    add_input(sub_gxz);
    sub_gxz->add_flag("--emit-sum", emit_sum,
                      "also print the product algebra as a file");

    std::string x_arg, y_arg;
    CLI::App* sub_bch = app.add_subcommand(
        "bch", "group law in lattice coordinates: z with exp(x)exp(y) = exp(z)");
    add_input(sub_bch);
    sub_bch->add_option("--x", x_arg, "left factor, comma-separated rationals")
        ->required();
    sub_bch->add_option("--y", y_arg, "right factor, comma-separated rationals")
        ->required();

    bool oracle = false;
    long long oracle_cap = 4096;
    CLI::App* sub_index = app.add_subcommand(
        "index", "index of the image subgroup: elementary divisors and |det|");
    add_input(sub_index);
    add_matrix(sub_index);
    sub_index->add_flag("--oracle", oracle,
                        "cross-check by enumerating cosets under the group law");
    sub_index->add_option("--oracle-cap", oracle_cap,
                          "abort the coset enumeration beyond this many cosets");

    std::string catalog_name;
    CLI::App* sub_catalog = app.add_subcommand(
        "catalog", "list built-in algebras, or print one as an algebra file");
    sub_catalog->add_option("name", catalog_name,
                            "entry to print; omit to list all entries");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    const bool text = format != "machine";
    Report rep;
    rep.put("command", app.get_subcommands().front()->get_name());
    rep.put("seed", static_cast<long long>(seed));

    auto t0 = std::chrono::steady_clock::now();
    int code = 0;
    try {
        auto load = [&] {
            Loaded in = load_input(input_path, input_catalog, data_dir);
            rep.put("input", in.source);
            rep.put("input_digest", in.digest);
            return in;
        };
        if (sub_validate->parsed()) {
            code = do_validate(load(), rep, text, out);
        } else if (sub_invariants->parsed()) {
            code = do_invariants(load(), closure, rep, text, out);
        } else if (sub_derivations->parsed()) {
            code = do_derivations(load(), der_basis, der_series, rep, text, out);
        } else if (sub_charnil->parsed()) {
            code = do_charnil(load(), cn_oracle, rep, text, out);
        } else if (sub_endo->parsed()) {
            Loaded in = load();
            Mat f = load_matrix(matrix_arg, matrix_file, in.sc.dim);
            code = do_endo(in, f, rep, text, out);
        } else if (sub_cohopf->parsed()) {
            code = do_cohopf(load(), matrix_arg, matrix_file, search_bound,
                             node_cap, rep, text, out);
        } else if (sub_gxz->parsed()) {
            code = do_witness_gxz(load(), emit_sum, rep, text, out);
        } else if (sub_bch->parsed()) {
            code = do_bch(load(), x_arg, y_arg, rep, text, out);
        } else if (sub_index->parsed()) {
            Loaded in = load();
            Mat f = load_matrix(matrix_arg, matrix_file, in.sc.dim);
            code = do_index(in, f, oracle, oracle_cap, rep, text, out);
        } else if (sub_catalog->parsed()) {
            if (!catalog_name.empty())
                return do_catalog(catalog_name, data_dir, rep, text, out);
            code = do_catalog(catalog_name, data_dir, rep, text, out);
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::logic_error& e) {
        err << "internal check failed: " << e.what() << '\n';
        return 2;
    }

    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    rep.put("elapsed_ms", static_cast<long long>(ms));
    if (!text) rep.emit(out);
    return code;
}

} // namespace nilcert::cli
