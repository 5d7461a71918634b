#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lorenz/sweep.hpp"

namespace lorenz::cli {

enum ExitCode : int {
    kOk = 0,
    kInvalidParameters = 2,
    kNoRootFound = 3,
    kResourceLimit = 4,
};

/// Everything a subcommand needs, after parsing and validation.
struct RunConfig {
    std::string command;
    // Branch spec: inline slopes or a JSON file.
    std::optional<std::string> b0, b1;
    std::optional<std::string> branches_file;
    std::optional<std::string> p;
    std::optional<std::string> p_min, p_max;
    std::optional<std::size_t> points;
    std::string method = "spectral";
    std::optional<std::size_t> n;  // defaults depend on the method
    std::size_t laps_n = 50;
    std::size_t window = 10;
    std::string tol = "1e-7";
    std::string mode = "exact";
    std::string side = "upper";
    std::string format;  // json | csv; default depends on the command
    std::optional<std::string> out;
    std::optional<std::size_t> workers;
    std::optional<std::string> margin;
    std::optional<std::string> features_file;
    std::string prominence_tol = "1e-5";
    bool no_confirm = false;
    std::size_t class_cap = kDefaultClassCap;
};

/// Parses argv and runs the subcommand. Data goes to `out` (or --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace lorenz::cli
