#pragma once
// Command-line front end. run() parses one subcommand invocation and writes
// a report to `out` (prose by default, ordered key=value lines with
// --format=machine; the machine rendering always carries every number the
// prose mentions).
//
// Exit codes: 0 = success, including negative query answers and
// inconclusive verdicts; 1 = the analyzed property was refuted (validation
// rejected, not characteristically nilpotent, co-Hopf witness found or
// constructed); 2 = unusable input (parse errors, bad flags, enumeration
// caps, absent catalog entries).

#include <iosfwd>
#include <string>
#include <vector>

namespace nilcert::cli {

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

} // namespace nilcert::cli
