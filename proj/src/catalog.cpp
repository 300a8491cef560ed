#include "nilcert/catalog.hpp"

#include "nilcert/algio.hpp"
#include "nilcert/derivations.hpp"
#include "nilcert/malcev.hpp"

#include <fstream>
#include <stdexcept>

namespace nilcert {

namespace {

struct FixedSlot {
    const char* name;
    const char* note;
    CatalogExpected expected;
};

// Documented invariants for the fixed entries. rank/class for all three and
// the abelianization of cn9 are anchored facts; the rest were derived once
// and frozen here, then re-derived against the data file on every load.
const FixedSlot kFixed[] = {
    {"cn7", "7-dimensional, class 6, every derivation nilpotent",
     {7, 6, 2, true, true}},
    {"cn8", "8-dimensional, class 3, every derivation nilpotent",
     {8, 3, 4, true, true}},
    {"cn9", "9-dimensional, class 6, two generators, every derivation "
            "nilpotent",
     {9, 6, 2, true, true}},
};

const FixedSlot* find_fixed(const std::string& name) {
    for (const FixedSlot& s : kFixed)
        if (name == s.name) return &s;
    return nullptr;
}

StructureConstants load_fixed(const FixedSlot& slot,
                              const std::string& data_dir,
                              std::string* checksum_out) {
    const std::string path = data_dir + "/" + slot.name + ".alg";
    std::string text;
    try {
        text = read_text_file(path);
    } catch (const std::runtime_error&) {
        throw std::runtime_error("catalog entry '" + std::string(slot.name) +
                                 "' is absent: no data file at " + path);
    }
    if (checksum_out) *checksum_out = fnv1a64_hex(text);

    StructureConstants sc;
    try {
        sc = parse_algebra(text);
    } catch (const std::invalid_argument& e) {
        throw std::logic_error("catalog data file " + path +
                               " does not parse: " + e.what());
    }
    auto reject = [&](const std::string& what) {
        throw std::logic_error("catalog entry '" + std::string(slot.name) +
                               "' failed its documented-invariant recheck: " +
                               what);
    };
    if (!validate(sc).accepted) reject("not a nilpotent Lie algebra");
    InvariantReport inv = invariant_report(sc);
    if (inv.rank != slot.expected.rank)
        reject("rank " + std::to_string(inv.rank));
    if (inv.cls != slot.expected.cls)
        reject("class " + std::to_string(inv.cls));
    if (inv.ab_dim != slot.expected.ab_dim)
        reject("abelianization dim " + std::to_string(inv.ab_dim));
    if (lattice_closure_check(sc).closed != slot.expected.lattice_closed)
        reject("lattice closure mismatch");
    if (is_characteristically_nilpotent(sc).verdict != slot.expected.charnil)
        reject("characteristic nilpotency mismatch");
    return sc;
}

} // namespace

StructureConstants heisenberg_lattice(int k) {
    if (k < 1)
        throw std::invalid_argument("heisenberg_lattice(k) needs k >= 1");
    StructureConstants sc;
    sc.dim = 2 * k + 1;
    sc.name = "heisenberg_lattice(" + std::to_string(k) + ")";
    for (int i = 1; i <= k; ++i) {
        Vec v(sc.dim, Rat(0));
        v[sc.dim - 1] = 2;
        sc.set(2 * i - 1, 2 * i, v);
    }
    return sc;
}

StructureConstants filiform(int n) {
    if (n < 3) throw std::invalid_argument("filiform(n) needs n >= 3");
    StructureConstants sc;
    sc.dim = n;
    sc.name = "filiform(" + std::to_string(n) + ")";
    for (int i = 2; i <= n - 1; ++i) {
        Vec v(n, Rat(0));
        v[i] = 1;
        sc.set(1, i, v);
    }
    return sc;
}

std::string default_data_dir() { return NILCERT_DATA_DIR; }

StructureConstants catalog_get(const std::string& spec,
                               const std::string& data_dir) {
    if (const FixedSlot* slot = find_fixed(spec))
        return load_fixed(*slot, data_dir, nullptr);

    size_t open = spec.find('(');
    if (open != std::string::npos && spec.back() == ')') {
        std::string base = spec.substr(0, open);
        std::string arg = spec.substr(open + 1, spec.size() - open - 2);
        if (arg.empty() || arg.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad catalog parameter in '" + spec +
                                        "'");
        int p = std::stoi(arg);
        if (base == "abelian") return abelian(p);
        if (base == "heisenberg_lattice") return heisenberg_lattice(p);
        if (base == "filiform") return filiform(p);
    }
    throw std::invalid_argument(
        "unknown catalog entry '" + spec +
        "'; known: abelian(n), heisenberg_lattice(k), filiform(n), cn7, cn8, "
        "cn9");
}

std::vector<CatalogEntry> catalog_list(const std::string& data_dir) {
    std::vector<CatalogEntry> out;
    out.push_back({"abelian(n)", true, true,
                   "zero brackets; class 1; never characteristically "
                   "nilpotent for n >= 1",
                   std::nullopt, ""});
    out.push_back({"heisenberg_lattice(k)", true, true,
                   "dim 2k+1, class 2, brackets scaled by 2 for lattice "
                   "closure",
                   std::nullopt, ""});
    out.push_back({"filiform(n)", true, true,
                   "dim n, class n-1, single generator chain; not lattice-"
                   "closed as shipped",
                   std::nullopt, ""});
    for (const FixedSlot& s : kFixed) {
        CatalogEntry e;
        e.name = s.name;
        e.family = false;
        e.note = s.note;
        e.expected = s.expected;
        try {
            load_fixed(s, data_dir, &e.checksum);
            e.available = true;
        } catch (const std::runtime_error&) {
            e.available = false; // data file missing
        }
        out.push_back(std::move(e));
    }
    return out;
}

} // namespace nilcert
