// Acceptance suite: one pass/fail line per criterion, non-zero exit on any
// failure. AC10 additionally runs the installed CLI binary twice per figure
// and compares the written files byte for byte.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <string>

#include "wqed/verify.hpp"

#ifndef WQED_CLI_PATH
#error "WQED_CLI_PATH must name the wqed executable"
#endif

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

// Returns an empty string on success, otherwise what went wrong.
std::string cli_byte_identity() {
    std::random_device rd;
    const fs::path dir = fs::temp_directory_path() / ("wqed_acceptance_" + std::to_string(rd()));
    fs::create_directories(dir);
    std::string problem;
    for (const char* id : {"fig5d", "fig7", "fig9"}) {
        std::string first;
        for (int run = 0; run < 2 && problem.empty(); ++run) {
            const fs::path out = dir / (std::string(id) + "_" + std::to_string(run) + ".csv");
            const std::string cmd = std::string("\"") + WQED_CLI_PATH + "\" figure " + id + " --out \"" +
                                    out.string() + "\"";
            if (std::system(cmd.c_str()) != 0) {
                problem = std::string("`wqed figure ") + id + "` failed";
                break;
            }
            const std::string bytes = slurp(out);
            if (bytes.empty()) problem = std::string("`wqed figure ") + id + "` wrote nothing";
            if (run == 0) first = bytes;
            else if (bytes != first) problem = std::string(id) + " differs between processes";
        }
    }
    fs::remove_all(dir);
    return problem;
}

} // namespace

int main() {
    const wqed::VerifyOptions opt;
    int failures = 0;
    for (const auto& check : wqed::verification_checks()) {
        wqed::CheckResult r;
        try {
            r = check.run(opt);
        } catch (const std::exception& e) {
            r.id = check.id;
            r.name = "threw";
            r.passed = false;
            r.detail = e.what();
        }
        if (r.id == "AC10") {
            const std::string problem = cli_byte_identity();
            if (problem.empty()) {
                r.detail += "; two CLI processes wrote identical files";
            } else {
                r.passed = false;
                r.detail += "; " + problem;
            }
        }
        if (!r.passed) ++failures;
        std::cout << wqed::format_check_line(r) << std::endl;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
