#include "lorenz/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

namespace lorenz::cli {

namespace {

using nlohmann::json;

void add_branch_options(CLI::App* sub, RunConfig& cfg) {
    auto* b0 = sub->add_option("--b0", cfg.b0, "slope of f0(x) = b0 x (decimal or fraction)");
    auto* b1 = sub->add_option("--b1", cfg.b1, "slope of f1(x) = 1 - b1 + b1 x");
    auto* file = sub->add_option("--branches", cfg.branches_file, "JSON branch spec file");
    file->excludes(b0)->excludes(b1);
}

void add_point_option(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--p", cfg.p, "discontinuity p (decimal or fraction such as 3/5)");
}

void add_range_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--p-min", cfg.p_min, "lower end of the p range");
    sub->add_option("--p-max", cfg.p_max, "upper end of the p range");
    sub->add_option("--points", cfg.points, "number of equally spaced p values (>= 2)");
    sub->add_option("--margin", cfg.margin, "distance kept from a and b (default: grid spacing)");
    sub->add_option("--workers", cfg.workers, "worker threads (default: LORENZ_WORKERS or all cores)");
}

void add_numeric_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--tol", cfg.tol, "root-finding tolerance")->capture_default_str();
    sub->add_option("--mode", cfg.mode, "numeric mode")->check(CLI::IsMember({"exact", "float"}))->capture_default_str();
    sub->add_option("--out", cfg.out, "write data output to this file instead of stdout");
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--class-cap", cfg.class_cap, "maximum number of lap classes")->capture_default_str();
}

BranchPair load_branches(const RunConfig& cfg) {
    if (cfg.branches_file) {
        std::ifstream in(*cfg.branches_file);
        if (!in) throw InvalidArgument("cannot read branch spec file '" + *cfg.branches_file + "'");
        std::stringstream buffer;
        buffer << in.rdbuf();
        return branch_pair_from_json(buffer.str());
    }
    if (!cfg.b0 || !cfg.b1) throw InvalidArgument("give both --b0 and --b1, or --branches FILE");
    return make_affine_pair(parse_rational(*cfg.b0), parse_rational(*cfg.b1));
}

NumericMode numeric_mode(const RunConfig& cfg) { return cfg.mode == "float" ? NumericMode::Float : NumericMode::Exact; }

double parse_positive(const std::string& text, const char* what) {
    const double v = to_double(parse_rational(text));
    if (!(v > 0)) throw InvalidArgument(std::string(what) + " must be positive");
    return v;
}

void require_single_point(const RunConfig& cfg) {
    if (cfg.p_min || cfg.p_max || cfg.points) throw InvalidArgument("this command takes --p, not a p range");
    if (!cfg.p) throw InvalidArgument("--p is required");
}

void require_range(const RunConfig& cfg) {
    if (cfg.p) throw InvalidArgument("give either --p or --p-min/--p-max/--points, not both");
    if (!cfg.p_min || !cfg.p_max || !cfg.points) throw InvalidArgument("--p-min, --p-max and --points are required");
}

SweepParams sweep_params(const RunConfig& cfg) {
    SweepParams params;
    params.method = parse_method(cfg.method);
    params.tol = parse_positive(cfg.tol, "--tol");
    params.mode = numeric_mode(cfg);
    params.window = cfg.window;
    if (params.method == Method::Spectral) {
        params.spectral_order = cfg.n.value_or(500);
        params.laps_order = cfg.laps_n;
    } else {
        params.laps_order = cfg.n.value_or(cfg.laps_n);
    }
    if (params.spectral_order < 2) throw InvalidArgument("--n must be at least 2");
    if (params.laps_order <= params.window || params.window < 1) {
        throw InvalidArgument("lap counting needs n > window >= 1");
    }
    if (cfg.workers) params.workers = *cfg.workers;
    params.class_cap = cfg.class_cap;
    if (cfg.margin) params.margin = parse_rational(*cfg.margin);
    return params;
}

// Writes to --out when given, else to `out`.
template <class Fn>
void emit(const RunConfig& cfg, std::ostream& out, Fn&& write) {
    if (cfg.out) {
        std::ofstream file(*cfg.out, std::ios::binary);
        if (!file) throw InvalidArgument("cannot open output file '" + *cfg.out + "'");
        write(file);
    } else {
        write(out);
    }
}

json estimate_json(const Rational& p, const EntropyEstimate& est) {
    return {{"p", to_double(p)},
            {"entropy", est.entropy},
            {"gamma", est.gamma},
            {"method", to_string(est.method)},
            {"order", est.order},
            {"error_bound", est.error_bound},
            {"certified", est.certified}};
}

json optional_json(const std::optional<std::size_t>& v) { return v ? json(*v) : json(); }

int cmd_entropy(const RunConfig& cfg, std::ostream& out) {
    require_single_point(cfg);
    const BranchPair bp = load_branches(cfg);
    const Rational p = parse_rational(*cfg.p);
    const SweepParams params = sweep_params(cfg);
    const EntropyEstimate est = evaluate_entropy(bp, p, params);
    emit(cfg, out, [&](std::ostream& os) {
        if (cfg.format == "csv") {
            SweepRecord rec;
            rec.p = to_double(p);
            rec.p_exact = p;
            rec.estimate = est;
            write_csv(os, {rec});
        } else {
            os << estimate_json(p, est).dump() << '\n';
        }
    });
    return kOk;
}

int cmd_kneading(const RunConfig& cfg, std::ostream& out) {
    require_single_point(cfg);
    const BranchPair bp = load_branches(cfg);
    const Rational p = parse_rational(*cfg.p);
    const std::size_t n = cfg.n.value_or(64);
    if (n < 1) throw InvalidArgument("--n must be at least 1");
    const KneadingPair kp = kneading_prefixes(bp, p, n, numeric_mode(cfg));
    const json doc = {{"p", to_double(p)},
                      {"n", n},
                      {"alpha", kp.alpha.to_string()},
                      {"beta", kp.beta.to_string()},
                      {"alpha_period", optional_json(kp.alpha_period)},
                      {"beta_period", optional_json(kp.beta_period)},
                      {"exact", kp.exact}};
    emit(cfg, out, [&](std::ostream& os) { os << doc.dump() << '\n'; });
    return kOk;
}

int cmd_laps(const RunConfig& cfg, std::ostream& out) {
    require_single_point(cfg);
    const BranchPair bp = load_branches(cfg);
    const Rational p = parse_rational(*cfg.p);
    const std::size_t n = cfg.n.value_or(cfg.laps_n);
    if (cfg.window < 1 || n <= cfg.window) throw InvalidArgument("lap counting needs n > window >= 1");
    const Side side = cfg.side == "lower" ? Side::Lower : Side::Upper;
    const LorenzMap m(bp, p, side);
    const LapsResult r = entropy_laps(m, n, cfg.window, numeric_mode(cfg), cfg.class_cap);
    const json doc = {{"p", to_double(p)},
                      {"n", n},
                      {"window", cfg.window},
                      {"laps", r.at_n.laps.get_str()},
                      {"variation", r.at_n.variation},
                      {"classes", r.at_n.classes},
                      {"entropy", r.estimate.entropy},
                      {"gamma", r.estimate.gamma},
                      {"error_bound", r.estimate.error_bound}};
    emit(cfg, out, [&](std::ostream& os) { os << doc.dump() << '\n'; });
    return kOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    require_range(cfg);
    const BranchPair bp = load_branches(cfg);
    const SweepParams params = sweep_params(cfg);
    const auto records = sweep(bp, parse_rational(*cfg.p_min), parse_rational(*cfg.p_max), *cfg.points, params);
    emit(cfg, out, [&](std::ostream& os) {
        if (cfg.format == "json") {
            os << records_to_json(records) << '\n';
        } else {
            write_csv(os, records);
        }
    });
    if (cfg.features_file) {
        auto features = detect_nonmonotonic(records, parse_positive(cfg.prominence_tol, "--prominence-tol"));
        if (!cfg.no_confirm) confirm_features(bp, records, features, params);
        std::ofstream file(*cfg.features_file, std::ios::binary);
        if (!file) throw InvalidArgument("cannot open features file '" + *cfg.features_file + "'");
        file << features_to_json(features) << '\n';
    }
    std::size_t failed = 0;
    for (const auto& r : records) failed += r.ok() ? 0 : 1;
    if (failed > 0) err << failed << " of " << records.size() << " sweep points failed\n";
    return kOk;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
    require_range(cfg);
    const BranchPair bp = load_branches(cfg);
    SweepParams spectral = sweep_params(cfg);
    spectral.method = Method::Spectral;
    spectral.spectral_order = cfg.n.value_or(500);
    SweepParams laps = spectral;
    laps.method = Method::Laps;
    const auto grid = sweep_grid(bp, parse_rational(*cfg.p_min), parse_rational(*cfg.p_max), *cfg.points,
                                 spectral.margin);
    const auto s1 = sweep_at(bp, grid, spectral);
    const auto s2 = sweep_at(bp, grid, laps);
    const MethodComparison cmp = compare_methods(s1, s2);
    const json doc = {{"points", grid.size()},
                      {"compared", cmp.compared},
                      {"max_abs_diff", cmp.max_abs_diff},
                      {"mean_abs_diff", cmp.mean_abs_diff},
                      {"worst_p", cmp.worst_p},
                      {"spectral_order", spectral.spectral_order},
                      {"laps_order", laps.laps_order},
                      {"window", laps.window}};
    emit(cfg, out, [&](std::ostream& os) { os << doc.dump() << '\n'; });
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Topological entropy of Lorenz maps from kneading data and lap growth", "lorenz"};
    app.require_subcommand(1);

    auto* entropy = app.add_subcommand("entropy", "entropy at one p");
    add_branch_options(entropy, cfg);
    add_point_option(entropy, cfg);
    add_range_options(entropy, cfg);
    add_numeric_options(entropy, cfg);
    entropy->add_option("--method", cfg.method)->check(CLI::IsMember({"spectral", "laps"}))->capture_default_str();
    entropy->add_option("--n", cfg.n, "truncation order (spectral, default 500) or iterate count (laps, default 50)");
    entropy->add_option("--window", cfg.window, "lap-growth window")->capture_default_str();

    auto* kneading = app.add_subcommand("kneading", "kneading prefixes alpha|n and beta|n");
    add_branch_options(kneading, cfg);
    add_point_option(kneading, cfg);
    add_range_options(kneading, cfg);
    add_numeric_options(kneading, cfg);
    kneading->add_option("--n", cfg.n, "prefix length (default 64)");

    auto* laps = app.add_subcommand("laps", "lap number and variation of T^n");
    add_branch_options(laps, cfg);
    add_point_option(laps, cfg);
    add_range_options(laps, cfg);
    add_numeric_options(laps, cfg);
    laps->add_option("--n", cfg.n, "iterate count (default 50)");
    laps->add_option("--window", cfg.window, "lap-growth window")->capture_default_str();
    laps->add_option("--side", cfg.side)->check(CLI::IsMember({"upper", "lower"}))->capture_default_str();

    auto* sweep_cmd = app.add_subcommand("sweep", "entropy curve over a p grid (CSV)");
    add_branch_options(sweep_cmd, cfg);
    add_point_option(sweep_cmd, cfg);
    add_range_options(sweep_cmd, cfg);
    add_numeric_options(sweep_cmd, cfg);
    sweep_cmd->add_option("--method", cfg.method)->check(CLI::IsMember({"spectral", "laps"}))->capture_default_str();
    sweep_cmd->add_option("--n", cfg.n, "truncation order or iterate count");
    sweep_cmd->add_option("--laps-n", cfg.laps_n, "iterate count for cross-method confirmation")->capture_default_str();
    sweep_cmd->add_option("--window", cfg.window, "lap-growth window")->capture_default_str();
    sweep_cmd->add_option("--features", cfg.features_file, "write detected non-monotone features (JSON) here");
    sweep_cmd->add_option("--prominence-tol", cfg.prominence_tol, "minimum feature prominence")->capture_default_str();
    sweep_cmd->add_flag("--no-confirm", cfg.no_confirm, "skip cross-method confirmation of features");

    auto* compare = app.add_subcommand("compare", "spectral vs lap-growth entropy over a p grid");
    add_branch_options(compare, cfg);
    add_point_option(compare, cfg);
    add_range_options(compare, cfg);
    add_numeric_options(compare, cfg);
    compare->add_option("--n", cfg.n, "spectral truncation order (default 500)");
    compare->add_option("--laps-n", cfg.laps_n, "lap iterate count")->capture_default_str();
    compare->add_option("--window", cfg.window, "lap-growth window")->capture_default_str();

    std::vector<std::string> argv_storage = args;
    std::vector<char*> argv;
    for (auto& a : argv_storage) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidParameters;
    }

    try {
        if (entropy->parsed()) return cmd_entropy(cfg, out);
        if (kneading->parsed()) return cmd_kneading(cfg, out);
        if (laps->parsed()) return cmd_laps(cfg, out);
        if (sweep_cmd->parsed()) return cmd_sweep(cfg, out, err);
        if (compare->parsed()) return cmd_compare(cfg, out);
    } catch (const NoRootFound& e) {
        err << "NoRootFound: " << e.what() << '\n';
        return kNoRootFound;
    } catch (const ResourceLimit& e) {
        err << "ResourceLimit: " << e.what() << '\n';
        return kResourceLimit;
    } catch (const LorenzError& e) {
        err << e.kind() << ": " << e.what() << '\n';
        return kInvalidParameters;
    }
    return kInvalidParameters;
}

int run(int argc, char** argv) {
    return run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

}  // namespace lorenz::cli
