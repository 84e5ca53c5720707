// Runs acceptance criteria 1..9 at full size and prints one line each.

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "linstrand/acceptance.hpp"

int main(int argc, char** argv) {
    CLI::App app{"linstrand acceptance run"};
    linstrand::AcceptanceOptions opts;
    app.add_option("--max-trials", opts.max_trials, "cap per-criterion trials (0 = full)");
    app.add_option("--seed", opts.seed);
    CLI11_PARSE(app, argc, argv);

    bool all = true;
    for (const auto& r : linstrand::run_acceptance(opts)) {
        std::cout << linstrand::format_result(r) << std::endl;
        all = all && r.passed;
    }
    return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
