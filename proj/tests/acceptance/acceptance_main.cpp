#include <cstdlib>
#include <iostream>
#include <string>

#include "rhls/acceptance.hpp"

int main(int argc, char** argv)
{
    const std::string suite = argc > 1 ? argv[1] : "all";
    if (!rhls::is_suite(suite)) {
        std::cerr << "unknown suite: " << suite << '\n';
        return 2;
    }
    rhls::AcceptanceOptions opts;
    if (argc > 2)
        opts.seed = std::strtoull(argv[2], nullptr, 10);
    const auto results = rhls::run_suite(suite, opts);
    rhls::print_results(std::cout, results);
    return rhls::all_passed(results) ? 0 : 1;
}
