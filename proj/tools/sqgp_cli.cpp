// Batch experiment runner: limits, convergence tables, Wiener-Hopf
// diagnostics, decomposition reports, hypothesis diagnostics and Monte Carlo
// validation, with CSV or JSON output for downstream plotting.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sqgp/sqgp.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::size_t kMaxDenseT = 4096;  // dense-storage budget

std::vector<double> parse_real_list(const std::string& key, const std::string& text) {
    return sqgp::detail::parse_double_list(key, text);
}

std::vector<std::size_t> parse_t_grid(const std::string& text) {
    std::vector<std::size_t> out;
    auto push = [&out](double v) {
        if (!(v >= 1.0) || v != std::floor(v))
            throw sqgp::ConfigError("t values must be positive integers");
        if (v > static_cast<double>(kMaxDenseT))
            throw sqgp::ConfigError("t = " + std::to_string(static_cast<long long>(v)) +
                                    " exceeds the dense budget of 4096");
        out.push_back(static_cast<std::size_t>(v));
    };
    if (text.find(':') != std::string::npos) {
        double lo = 0, hi = 0, step = 0;
        if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0)
            throw sqgp::ConfigError("t range must be LO:HI:STEP");
        for (double v = lo; v <= hi + 1e-9; v += step) push(v);
    } else {
        for (double v : parse_real_list("t", text)) push(v);
    }
    if (out.empty()) throw sqgp::ConfigError("empty t grid");
    return out;
}

struct Resolver {
    sqgp::KeyValues* cfg;
    CLI::App* app;

    std::optional<std::string> get(const std::string& flag, const std::string& key) {
        const CLI::Option* opt = app->get_option("--" + flag);
        if (opt->count() > 0) {
            if (cfg) cfg->erase(key);
            return opt->as<std::string>();
        }
        if (cfg) {
            auto it = cfg->find(key);
            if (it != cfg->end()) {
                std::string v = it->second;
                cfg->erase(it);
                return v;
            }
        }
        return std::nullopt;
    }

    std::string require(const std::string& flag, const std::string& key) {
        auto v = get(flag, key);
        if (!v) throw sqgp::ConfigError("missing '" + key + "' (flag --" + flag + ")");
        return *v;
    }

    std::string get_or(const std::string& flag, const std::string& key,
                       const std::string& fallback) {
        auto v = get(flag, key);
        return v ? *v : fallback;
    }
};

void check_finite(const ordered_json& rows) {
    for (const auto& row : rows)
        for (const auto& [key, value] : row.items())
            if (value.is_number_float() && !std::isfinite(value.get<double>()))
                throw sqgp::FactorizationFailure("non-finite value in column '" + key + "'");
}

void write_table(const std::vector<std::string>& columns, const ordered_json& rows,
                 const std::string& format, const std::string& out_path) {
    check_finite(rows);
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw sqgp::ConfigError("cannot open output file '" + out_path + "'");
        os = &file;
    }
    if (format == "obj") {
        *os << rows.dump(2) << "\n";
        return;
    }
    for (std::size_t c = 0; c < columns.size(); ++c)
        *os << columns[c] << (c + 1 < columns.size() ? "," : "\n");
    char buf[64];
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            const auto& cell = row.at(columns[c]);
            if (cell.is_number_float()) {
                std::snprintf(buf, sizeof buf, "%.17g", cell.get<double>());
                *os << buf;
            } else if (cell.is_number_unsigned()) {
                *os << cell.get<std::uint64_t>();
            } else if (cell.is_number_integer()) {
                *os << cell.get<std::int64_t>();
            } else {
                *os << cell.get<std::string>();
            }
            *os << (c + 1 < columns.size() ? "," : "\n");
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"limits for summed squares of asymptotically stationary Gaussian processes"};
    app.require_subcommand(1);

    std::string flag_sink;  // flags are re-read through the resolver
    app.add_option("--config", flag_sink, "model/run config file (key = value lines)");
    app.add_option("--alpha", flag_sink, "alpha list A[,A...]");
    app.add_option("--t", flag_sink, "t grid: LO:HI:STEP or T[,T...]");
    app.add_option("--nodes", flag_sink, "quadrature nodes (default 4096)");
    app.add_option("--tol", flag_sink, "wienerhopf doubling tolerance (default 1e-8)");
    app.add_option("--seed", flag_sink, "monte carlo seed (default 1)");
    app.add_option("--samples", flag_sink, "monte carlo paths (default 100000)");
    app.add_option("--x", flag_sink, "start values X[,X...] (conditioned runs, density grid)");
    app.add_option("--format", flag_sink, "csv | obj (default csv)");
    app.add_option("--out", flag_sink, "output path (default stdout)");

    const char* names[] = {"limit",     "converge",  "converge-conditioned",
                           "wienerhopf", "decompose", "mc-check",
                           "hypotheses", "ar1-density"};
    for (const char* name : names) app.add_subcommand(name)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    const std::string sub = app.get_subcommands().front()->get_name();

    try {
        sqgp::KeyValues cfg;
        Resolver res{&cfg, &app};
        const auto config_path = res.get("config", "config");
        if (config_path) cfg = sqgp::parse_config_file(*config_path);
        const sqgp::ProcessModel model = sqgp::model_from_keys(cfg);

        using sqgp::detail::parse_double;
        const std::string format = res.get_or("format", "format", "csv");
        if (format != "csv" && format != "obj")
            throw sqgp::ConfigError("format must be csv or obj");
        const std::string out_path = res.get_or("out", "out", "");
        const std::size_t nodes = static_cast<std::size_t>(
            parse_double("nodes", res.get_or("nodes", "nodes", "4096")));
        const double tol = parse_double("tol", res.get_or("tol", "tol", "1e-8"));
        const auto seed = static_cast<std::uint64_t>(
            parse_double("seed", res.get_or("seed", "seed", "1")));
        const auto samples = static_cast<std::size_t>(
            parse_double("samples", res.get_or("samples", "samples", "100000")));
        const auto alpha_str = res.get("alpha", "alpha");
        const auto t_str = res.get("t", "t");
        const auto x_str = res.get("x", "x");

        for (const auto& [key, value] : cfg)
            throw sqgp::ConfigError("unknown key '" + key + "'");

        auto alphas = [&] {
            if (!alpha_str) throw sqgp::ConfigError("missing 'alpha' (flag --alpha)");
            auto list = parse_real_list("alpha", *alpha_str);
            for (double a : list)
                if (!(a >= 0.0)) throw sqgp::ConfigError("alpha must be >= 0");
            return list;
        };
        auto one_alpha = [&] {
            auto list = alphas();
            if (list.size() != 1)
                throw sqgp::ConfigError("this subcommand takes a single alpha");
            return list.front();
        };
        auto t_grid = [&] {
            if (!t_str) throw sqgp::ConfigError("missing 't' (flag --t)");
            return parse_t_grid(*t_str);
        };
        auto x_list = [&] {
            if (!x_str) throw sqgp::ConfigError("missing 'x' (flag --x)");
            return parse_real_list("x", *x_str);
        };

        std::vector<std::string> columns;
        ordered_json rows = ordered_json::array();

        if (sub == "limit") {
            columns = {"alpha", "ell0", "ell1", "ell", "lambda_star", "nodes"};
            for (double a : alphas()) {
                const sqgp::LimitResult lim = sqgp::limit(model.kernel, model.mean, a, nodes);
                rows.push_back({{"alpha", a},
                                {"ell0", lim.ell0},
                                {"ell1", lim.ell1},
                                {"ell", lim.ell},
                                {"lambda_star", lim.lambda_star},
                                {"nodes", lim.nodes}});
            }
        } else if (sub == "converge") {
            columns = {"t", "scaled_log_laplace", "neg_ell", "abs_error"};
            for (const auto& r : sqgp::convergence_table(model, one_alpha(), t_grid(), nodes))
                rows.push_back({{"t", r.t},
                                {"scaled_log_laplace", r.scaled_log_laplace},
                                {"neg_ell", r.neg_ell},
                                {"abs_error", r.abs_error}});
        } else if (sub == "converge-conditioned") {
            columns = {"x", "t", "scaled_log_laplace", "neg_ell", "abs_error"};
            const double a = one_alpha();
            const auto grid = t_grid();
            for (double x : x_list())
                for (const auto& r : sqgp::convergence_table_conditioned(model, x, a, grid, nodes))
                    rows.push_back({{"x", x},
                                    {"t", r.t},
                                    {"scaled_log_laplace", r.scaled_log_laplace},
                                    {"neg_ell", r.neg_ell},
                                    {"abs_error", r.abs_error}});
        } else if (sub == "wienerhopf") {
            columns = {"alpha",       "kernel_abs_sum", "truncation",
                       "g0",          "g0_closed",      "g0_abs_err",
                       "sum_g",       "sum_closed",     "sum_abs_err"};
            for (double a : alphas()) {
                const sqgp::WienerHopfSolution sol = sqgp::wiener_hopf(model.kernel, a, tol);
                rows.push_back({{"alpha", a},
                                {"kernel_abs_sum", sol.kernel_abs_sum},
                                {"truncation", sol.truncation},
                                {"g0", sol.g[0]},
                                {"g0_closed", sol.g0_closed},
                                {"g0_abs_err", std::abs(sol.g[0] - sol.g0_closed)},
                                {"sum_g", sol.sum()},
                                {"sum_closed", sol.sum_closed},
                                {"sum_abs_err", std::abs(sol.sum() - sol.sum_closed)}});
            }
        } else if (sub == "decompose") {
            columns = {"t", "source", "kind", "shape", "scale", "rate", "exp_mean", "shift"};
            for (std::size_t t : t_grid()) {
                const sqgp::IDDecomposition dec = sqgp::decompose(model, t);
                for (const auto& c : dec.components) {
                    const char* kind = c.kind == sqgp::ComponentKind::gamma ? "gamma"
                                       : c.kind == sqgp::ComponentKind::compound_poisson
                                           ? "compound_poisson"
                                           : "deterministic";
                    rows.push_back({{"t", t},
                                    {"source", c.source},
                                    {"kind", kind},
                                    {"shape", c.shape},
                                    {"scale", c.scale},
                                    {"rate", c.rate},
                                    {"exp_mean", c.exp_mean},
                                    {"shift", c.shift}});
                }
            }
        } else if (sub == "mc-check") {
            columns = {"alpha", "t", "n_samples", "seed", "estimate", "std_error",
                       "exact", "abs_error"};
            for (double a : alphas()) {
                for (std::size_t t : t_grid()) {
                    const sqgp::MCEstimate est =
                        sqgp::estimate_log_laplace(model, a, t, samples, seed);
                    const double exact = std::exp(sqgp::log_laplace(model, a, t).log_value);
                    rows.push_back({{"alpha", a},
                                    {"t", t},
                                    {"n_samples", est.n_samples},
                                    {"seed", est.seed},
                                    {"estimate", est.estimate},
                                    {"std_error", est.std_error},
                                    {"exact", exact},
                                    {"abs_error", std::abs(est.estimate - exact)}});
                }
            }
        } else if (sub == "hypotheses") {
            columns = {"t", "h1_sup_mean_abs", "h2_max_row_abs_sum", "h3_kernel_abs_sum",
                       "h4_mean_avg_dev", "h5_weak_gap"};
            for (std::size_t t : t_grid()) {
                const sqgp::HypothesisReport rep = sqgp::hypothesis_report(model, t);
                rows.push_back({{"t", rep.t},
                                {"h1_sup_mean_abs", rep.h1_sup_mean_abs},
                                {"h2_max_row_abs_sum", rep.h2_max_row_abs_sum},
                                {"h3_kernel_abs_sum", rep.h3_kernel_abs_sum},
                                {"h4_mean_avg_dev", rep.h4_mean_avg_dev},
                                {"h5_weak_gap", rep.h5_weak_gap}});
            }
        } else {  // ar1-density
            if (model.kernel.kind() != sqgp::KernelKind::ar1)
                throw sqgp::ConfigError("ar1-density requires kernel.kind = ar1");
            columns = {"x", "f0"};
            for (double x : x_list())
                rows.push_back({{"x", x},
                                {"f0", sqgp::ar1_limit_density(model.kernel.theta(), x)}});
        }

        write_table(columns, rows, format, out_path);
        return 0;
    } catch (const sqgp::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const sqgp::Error& e) {
        std::cerr << e.what() << "\n";
        return 3;
    }
}
