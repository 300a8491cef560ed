#include "nilcert/cli.hpp"

#include <exception>
#include <iostream>
#include <vector>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return nilcert::cli::run(args, std::cout, std::cerr);
    } catch (const std::exception& e) {
        // run() maps expected failures itself; anything arriving here is a bug
        std::cerr << "internal check failed: " << e.what() << '\n';
        return 2;
    }
}
