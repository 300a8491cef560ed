#include "nilcert/algio.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nilcert {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
    throw std::invalid_argument("line " + std::to_string(line) + ": " + msg);
}

std::string strip(std::string_view s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

int parse_int(const std::string& digits, int line) {
    try {
        return std::stoi(digits);
    } catch (const std::exception&) {
        fail(line, "number '" + digits + "' out of range");
    }
}

// one term of a bracket line: [coeff][*]e<k>, sign handled by the caller
void parse_term(const std::string& term, int line, int dim, Vec& into) {
    size_t e = term.find('e');
    if (e == std::string::npos)
        fail(line, "expected a basis term like 2*e3 or e5, got '" + term + "'");
    Rat coeff(1);
    std::string head = strip(term.substr(0, e));
    if (!head.empty()) {
        if (head.back() == '*') head = strip(head.substr(0, head.size() - 1));
        if (head.empty())
            fail(line, "missing coefficient before '*' in '" + term + "'");
        try {
            coeff = rat_parse(head);
        } catch (const std::exception&) {
            fail(line, "malformed coefficient '" + head + "'");
        }
    }
    std::string idx = strip(term.substr(e + 1));
    if (idx.empty() || idx.find_first_not_of("0123456789") != std::string::npos)
        fail(line, "malformed basis index in '" + term + "'");
    int k = parse_int(idx, line);
    if (k < 1 || k > dim)
        fail(line, "basis index e" + idx + " out of range 1.." +
                       std::to_string(dim));
    into[k - 1] += coeff;
}

} // namespace

StructureConstants parse_algebra(const std::string& text) {
    StructureConstants sc;
    bool have_dim = false;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        size_t hash = s.find('#');
        if (hash != std::string::npos) {
            std::string comment = strip(s.substr(hash + 1));
            if (comment.rfind("name:", 0) == 0 && sc.name.empty())
                sc.name = strip(comment.substr(5));
            s = s.substr(0, hash);
        }
        s = strip(s);
        if (s.empty()) continue;

        if (s.rfind("dim", 0) == 0 &&
            (s.size() == 3 || std::isspace(static_cast<unsigned char>(s[3])))) {
            if (have_dim) fail(line, "duplicate dim header");
            std::string num = strip(s.substr(3));
            if (num.empty() ||
                num.find_first_not_of("0123456789") != std::string::npos)
                fail(line, "malformed dimension '" + num + "'");
            sc.dim = parse_int(num, line);
            if (sc.dim < 1 || sc.dim > 64)
                fail(line, "dimension out of supported range 1..64");
            have_dim = true;
            continue;
        }
        if (!have_dim) fail(line, "expected 'dim <n>' before bracket lines");

        if (s[0] != '[') fail(line, "expected a bracket line '[i,j] = ...'");
        size_t close = s.find(']');
        size_t comma = s.find(',');
        if (close == std::string::npos || comma == std::string::npos ||
            comma > close)
            fail(line, "malformed bracket pair, expected '[i,j]'");
        std::string si = strip(s.substr(1, comma - 1));
        std::string sj = strip(s.substr(comma + 1, close - comma - 1));
        if (si.empty() || sj.empty() ||
            si.find_first_not_of("0123456789") != std::string::npos ||
            sj.find_first_not_of("0123456789") != std::string::npos)
            fail(line, "malformed bracket indices '[" + si + "," + sj + "]'");
        int i = parse_int(si, line), j = parse_int(sj, line);
        if (i < 1 || j < 1 || i > sc.dim || j > sc.dim)
            fail(line, "bracket indices out of range 1.." +
                           std::to_string(sc.dim));
        if (i >= j) fail(line, "expected i < j in '[" + si + "," + sj + "]'");
        if (sc.table.count({i, j}))
            fail(line, "duplicate bracket line for [" + si + "," + sj + "]");

        size_t eq = s.find('=', close);
        if (eq == std::string::npos) fail(line, "expected '=' after '[i,j]'");
        std::string rhs = strip(s.substr(eq + 1));
        if (rhs.empty()) fail(line, "empty right-hand side");

        // split on +/- operators (a leading sign binds to the first term)
        Vec value(sc.dim, Rat(0));
        size_t pos = 0;
        int sign = 1;
        if (rhs[0] == '+' || rhs[0] == '-') {
            sign = rhs[0] == '-' ? -1 : 1;
            pos = 1;
        }
        while (pos < rhs.size()) {
            size_t next = pos;
            while (next < rhs.size() && rhs[next] != '+' && rhs[next] != '-') {
                // keep '-' that is part of a coefficient like "1/-2"? not
                // allowed; any '-' after the term start is an operator
                ++next;
            }
            std::string term = strip(rhs.substr(pos, next - pos));
            if (term.empty()) fail(line, "empty term in '" + rhs + "'");
            Vec tv(sc.dim, Rat(0));
            parse_term(term, line, sc.dim, tv);
            for (int k = 0; k < sc.dim; ++k) value[k] += Rat(sign) * tv[k];
            if (next >= rhs.size()) break;
            sign = rhs[next] == '-' ? -1 : 1;
            pos = next + 1;
        }
        if (!is_zero(value)) sc.set(i, j, value);
    }
    if (!have_dim) fail(line ? line : 1, "missing 'dim <n>' header");
    return sc;
}

namespace {

// "2*e3", "e5", "-e7", "1/2*e4" — sign folded in when lead is true
std::string format_term(const Rat& c, int k, bool lead) {
    Rat a = c < 0 ? Rat(-c) : c;
    std::string s = lead ? (c < 0 ? "-" : "") : "";
    if (a != 1) s += to_string(a) + "*";
    s += "e" + std::to_string(k);
    return s;
}

} // namespace

std::string format_combination(const Vec& v) {
    std::string out;
    for (size_t k = 0; k < v.size(); ++k) {
        if (v[k] == 0) continue;
        if (out.empty()) {
            out = format_term(v[k], static_cast<int>(k) + 1, true);
        } else {
            out += v[k] < 0 ? " - " : " + ";
            out += format_term(v[k], static_cast<int>(k) + 1, false);
        }
    }
    return out.empty() ? "0" : out;
}

std::string emit_algebra(const StructureConstants& sc) {
    std::ostringstream out;
    if (!sc.name.empty()) out << "# name: " << sc.name << "\n";
    out << "dim " << sc.dim << "\n";
    for (const auto& [ij, v] : sc.table)
        out << "[" << ij.first << "," << ij.second
            << "] = " << format_combination(v) << "\n";
    return out.str();
}

uint64_t fnv1a64(std::string_view bytes) {
    uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string fnv1a64_hex(std::string_view bytes) {
    static const char* digits = "0123456789abcdef";
    uint64_t h = fnv1a64(bytes);
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[h & 0xf];
        h >>= 4;
    }
    return s;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace nilcert
