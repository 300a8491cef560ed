#include "doctest.h"

#include "nilcert/algio.hpp"
#include "nilcert/catalog.hpp"
#include "nilcert/cli.hpp"

#include "support.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace nilcert;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

// key=value lines -> map (split on the first '=')
std::map<std::string, std::string> machine_map(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto eq = line.find('=');
        REQUIRE(eq != std::string::npos);
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

std::string write_temp(const std::string& name, const std::string& text) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream f(path);
    f << text;
    return path.string();
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

const char* kHeis = "heisenberg_lattice(1)";

} // namespace

TEST_SUITE("cli") {

TEST_CASE("text format parses what it emits") {
    StructureConstants sc = heisenberg_lattice(2);
    sc.name = "h5";
    StructureConstants back = parse_algebra(emit_algebra(sc));
    CHECK(back == sc);

    // coefficients in all supported spellings
    StructureConstants mixed = parse_algebra(
        "# name: mixed\n"
        "dim 4\n"
        "[1,2] = 2*e3 + e4\n"
        "[1,3] = -e4\n"
        "[2,3] = 1/2*e4 - 3*e1\n");
    CHECK(mixed.name == "mixed");
    CHECK(*mixed.entry(1, 2) == qv({0, 0, 2, 1}));
    CHECK(*mixed.entry(1, 3) == qv({0, 0, 0, -1}));
    CHECK(*mixed.entry(2, 3) == Vec{Rat(-3), Rat(0), Rat(0), rat(1, 2)});
    CHECK(parse_algebra(emit_algebra(mixed)) == mixed);
}

TEST_CASE("parser errors carry line numbers") {
    auto error_of = [](const std::string& text) {
        try {
            parse_algebra(text);
            return std::string("no error");
        } catch (const std::invalid_argument& e) {
            return std::string(e.what());
        }
    };
    CHECK(contains(error_of("dim zero\n"), "line 1"));
    CHECK(contains(error_of("[1,2] = e3\n"), "line 1")); // bracket before dim
    CHECK(contains(error_of("dim 3\n[2,1] = e3\n"), "expected i < j"));
    CHECK(contains(error_of("dim 3\n[1,4] = e3\n"), "line 2"));
    CHECK(contains(error_of("dim 3\n[1,2] = e9\n"), "line 2"));
    CHECK(contains(error_of("dim 3\n[1,2] = e3\n[1,2] = e3\n"), "line 3"));
    CHECK(contains(error_of("dim 3\n[1,2] = bogus\n"), "line 2"));
    CHECK(contains(error_of("dim 3\n[1,2] =\n"), "line 2"));
    CHECK(contains(error_of("dim 99999999999999999999\n"), "line 1"));
    CHECK(contains(error_of(""), "dim"));
}

TEST_CASE("combinations render readably") {
    CHECK(format_combination(qv({0, 0, 0})) == "0");
    CHECK(format_combination(qv({1, 1, 0})) == "e1 + e2");
    CHECK(format_combination(qv({1, 0, -2})) == "e1 - 2*e3");
    CHECK(format_combination(qv({-1, 0, 0})) == "-e1");
    CHECK(format_combination(Vec{rat(1, 2), Rat(0)}) == "1/2*e1");
}

TEST_CASE("content digests match the reference vectors") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
    CHECK(fnv1a64_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("validate: accept and reject") {
    CliResult ok = run_cli({"validate", "--catalog", kHeis});
    CHECK(ok.code == 0);
    CHECK(contains(ok.out, "valid: yes"));

    std::string bad = write_temp("nilcert_jacobi.alg",
                                 "dim 4\n[1,2] = e3\n[1,3] = e4\n[2,4] = e4\n");
    CliResult rejected = run_cli({"validate", bad, "--format", "machine"});
    CHECK(rejected.code == 1);
    auto kv = machine_map(rejected.out);
    CHECK(kv.at("valid") == "no");
    CHECK(kv.at("fail_at") == "1,2,3");
    CHECK(kv.at("fail_residual") == "e4");

    CliResult broken = run_cli({"validate", write_temp("nilcert_broken.alg",
                                                       "dim 3\n[1,2] = what\n")});
    CHECK(broken.code == 2);
    CHECK(contains(broken.err, "line 2"));
}

TEST_CASE("invariants in machine format") {
    auto cn7 = try_catalog("cn7");
    if (!cn7) return;
    CliResult r =
        run_cli({"invariants", "--catalog", "cn7", "--format", "machine"});
    CHECK(r.code == 0);
    auto kv = machine_map(r.out);
    CHECK(kv.at("command") == "invariants");
    CHECK(kv.at("dim") == "7");
    CHECK(kv.at("class") == "6");
    CHECK(kv.at("lcs") == "7,5,4,3,2,1,0");
    CHECK(kv.at("ab_dim") == "2");
    CHECK(kv.at("center_dim") == "1");
    CHECK(kv.count("input_digest") == 1);
    CHECK(kv.count("elapsed_ms") == 1);
}

TEST_CASE("derivations and charnil verdicts") {
    CliResult d = run_cli({"derivations", "--catalog", kHeis, "--format",
                           "machine"});
    CHECK(d.code == 0);
    CHECK(machine_map(d.out).at("der_dim") == "6");

    CliResult no = run_cli({"charnil", "--catalog", "filiform(4)"});
    CHECK(no.code == 1);
    CHECK(contains(no.out, "characteristically nilpotent: no"));

    auto cn8 = try_catalog("cn8");
    if (cn8) {
        CliResult yes =
            run_cli({"charnil", "--catalog", "cn8", "--format", "machine"});
        CHECK(yes.code == 0);
        auto kv = machine_map(yes.out);
        CHECK(kv.at("charnil") == "yes");
        CHECK(kv.at("der_dim") == "12");
    }
}

TEST_CASE("endo classification and index") {
    CliResult r = run_cli({"endo", "--catalog", kHeis, "--matrix",
                           "2,0,0;0,2,0;0,0,4", "--format", "machine"});
    CHECK(r.code == 0);
    auto kv = machine_map(r.out);
    CHECK(kv.at("hom") == "yes");
    CHECK(kv.at("automorphism") == "yes");
    CHECK(kv.at("lattice_preserving") == "yes");
    CHECK(kv.at("det") == "16");
    CHECK(kv.at("index") == "16");
    CHECK(kv.at("divisors") == "2,2,4");

    CliResult bad = run_cli({"endo", "--catalog", kHeis, "--matrix",
                             "2,0,0;0,1,0;0,0,1", "--format", "machine"});
    CHECK(bad.code == 0); // a negative classification is still an answer
    auto kv2 = machine_map(bad.out);
    CHECK(kv2.at("hom") == "no");
    CHECK(kv2.at("failing_pair") == "1,2");
    CHECK(kv2.count("index") == 0);
}

TEST_CASE("index cross-checked by coset enumeration") {
    CliResult r = run_cli({"index", "--catalog", kHeis, "--matrix",
                           "2,0,0;0,2,0;0,0,4", "--oracle", "--format",
                           "machine"});
    CHECK(r.code == 0);
    auto kv = machine_map(r.out);
    CHECK(kv.at("index") == "16");
    CHECK(kv.at("coset_count") == "16");
    CHECK(kv.at("oracle_agrees") == "yes");

    // a non-automorphism is unusable input here
    CliResult bad = run_cli({"index", "--catalog", kHeis, "--matrix",
                             "2,0,0;0,1,0;0,0,1"});
    CHECK(bad.code == 2);
    CHECK(contains(bad.err, "not a lattice-preserving automorphism"));

    // the coset walk refuses laws that leave the lattice
    CliResult open = run_cli({"index", "--catalog", "filiform(4)", "--matrix",
                              "2,0,0,0;0,2,0,0;0,0,4,0;0,0,0,8", "--oracle"});
    CHECK(open.code == 2);
    CHECK(contains(open.err, "lattice-closed"));

    // the cap aborts oversized enumerations
    CliResult capped = run_cli({"index", "--catalog", kHeis, "--matrix",
                                "2,0,0;0,2,0;0,0,4", "--oracle", "--oracle-cap",
                                "7"});
    CHECK(capped.code == 2);
    CHECK(contains(capped.err, "exceeded the cap"));
}

TEST_CASE("cohopf: certify, search, and check candidates") {
    auto cn7 = try_catalog("cn7");
    if (cn7) {
        CliResult cert =
            run_cli({"cohopf", "--catalog", "cn7", "--format", "machine"});
        CHECK(cert.code == 0);
        CHECK(machine_map(cert.out).at("verdict") == "certified");
    }

    CliResult search =
        run_cli({"cohopf", "--catalog", kHeis, "--format", "machine"});
    CHECK(search.code == 1);
    auto kv = machine_map(search.out);
    CHECK(kv.at("verdict") == "witness-found");
    CHECK(kv.at("witness") == "-2,-2,0;-2,-1,0;-2,-2,-2");
    CHECK(kv.at("witness_det") == "4");
    CHECK(kv.at("index") == "4");

    CliResult disabled = run_cli({"cohopf", "--catalog", kHeis,
                                  "--search-bound", "0", "--format", "machine"});
    CHECK(disabled.code == 0);
    auto kv2 = machine_map(disabled.out);
    CHECK(kv2.at("verdict") == "inconclusive");
    CHECK(contains(kv2.at("note"), "disabled"));

    CliResult candidate = run_cli({"cohopf", "--catalog", kHeis, "--matrix",
                                   "1,0,0;0,1,0;0,0,1"});
    CHECK(candidate.code == 0);
    CHECK(contains(candidate.out, "not a witness"));

    CliResult capped = run_cli({"cohopf", "--catalog", "filiform(4)",
                                "--node-cap", "20000", "--format", "machine"});
    CHECK(capped.code == 0);
    CHECK(machine_map(capped.out).at("verdict") == "inconclusive");
}

TEST_CASE("witness-gxz always produces its embedding") {
    CliResult r =
        run_cli({"witness-gxz", "--catalog", kHeis, "--format", "machine"});
    CHECK(r.code == 1);
    auto kv = machine_map(r.out);
    CHECK(kv.at("sum_dim") == "4");
    CHECK(kv.at("det") == "2");
    CHECK(kv.at("index") == "2");
    CHECK(kv.at("witness") == "1,0,0,0;0,1,0,0;0,0,1,0;0,0,0,2");
}

TEST_CASE("bch from the command line") {
    CliResult r = run_cli({"bch", "--catalog", kHeis, "--x", "1,0,0", "--y",
                           "0,1,0", "--format", "machine"});
    CHECK(r.code == 0);
    auto kv = machine_map(r.out);
    CHECK(kv.at("z") == "1,1,1");
    CHECK(kv.at("pretty") == "e1 + e2 + e3");
    CHECK(kv.at("integral") == "yes");

    CliResult frac = run_cli({"bch", "--catalog", "filiform(4)", "--x",
                              "1,0,0,0", "--y", "0,1,0,0"});
    CHECK(frac.code == 0);
    CHECK(contains(frac.out, "1/2*e3"));
    CHECK(contains(frac.out, "integral: no"));

    CliResult short_vec =
        run_cli({"bch", "--catalog", kHeis, "--x", "1,0", "--y", "0,1,0"});
    CHECK(short_vec.code == 2);
    CHECK(contains(short_vec.err, "expected 3"));
}

TEST_CASE("catalog listing and emission") {
    CliResult list = run_cli({"catalog", "--format", "machine"});
    CHECK(list.code == 0);
    auto kv = machine_map(list.out);
    CHECK(kv.at("count") == "6");
    CHECK(kv.at("entry.0.name") == "abelian(n)");
    CHECK(kv.at("entry.3.name") == "cn7");

    CliResult emit = run_cli({"catalog", kHeis});
    CHECK(emit.code == 0);
    StructureConstants sc = parse_algebra(emit.out);
    CHECK(sc.dim == 3);
    CHECK(*sc.entry(1, 2) == qv({0, 0, 2}));

    CliResult absent = run_cli({"catalog", "cn7", "--data-dir", "/nonexistent"});
    CHECK(absent.code == 2);
    CHECK(contains(absent.err, "absent"));
}

TEST_CASE("flag errors and the seed echo") {
    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({"bch", "--catalog", kHeis, "--x", "1,0,0"}).code == 2);
    CHECK(run_cli({"validate", "--catalog", kHeis, "--format", "yaml"}).code ==
          2);
    CHECK(run_cli({"validate"}).code == 2); // no input at all
    CHECK(run_cli({"endo", "--catalog", kHeis}).code == 2); // no matrix
    CHECK(run_cli({"endo", "--catalog", kHeis, "--matrix", "1,0;0,1"}).code ==
          2); // wrong size

    CliResult seeded = run_cli({"invariants", "--catalog", kHeis, "--seed",
                                "42", "--format", "machine"});
    CHECK(seeded.code == 0);
    CHECK(machine_map(seeded.out).at("seed") == "42");
}

TEST_CASE("matrix files work like matrix literals") {
    std::string path = write_temp("nilcert_matrix.txt",
                                  "# the standard dilation\n"
                                  "2 0 0\n"
                                  "0 2 0\n"
                                  "0 0 4\n");
    CliResult r = run_cli({"index", "--catalog", kHeis, "--matrix-file", path,
                           "--format", "machine"});
    CHECK(r.code == 0);
    CHECK(machine_map(r.out).at("index") == "16");
}

TEST_CASE("machine reports carry the shared envelope") {
    CliResult r = run_cli({"validate", "--catalog", kHeis, "--format",
                           "machine"});
    auto kv = machine_map(r.out);
    CHECK(kv.at("command") == "validate");
    CHECK(kv.at("input") == std::string("catalog:") + kHeis);
    CHECK(kv.at("seed") == "0");
    CHECK(kv.count("input_digest") == 1);
    CHECK(kv.count("elapsed_ms") == 1);
    // same input, same digest, independent of the subcommand
    CliResult r2 = run_cli({"invariants", "--catalog", kHeis, "--format",
                            "machine"});
    CHECK(machine_map(r2.out).at("input_digest") == kv.at("input_digest"));
}

} // TEST_SUITE
