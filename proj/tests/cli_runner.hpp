#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "schur_cli.hpp"

namespace testing_support {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

/// Runs the command line in-process, e.g. run_cli({"table", "6"}).
inline CliResult run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"schur"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    CliResult r;
    r.code = schur::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

inline std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

inline std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

}  // namespace testing_support
