// Command-line front end: weight tables, invariant verification, single
// solves, table reproduction, and noise-free order studies.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "abel/harness.hpp"
#include "abel/quadrature.hpp"
#include "abel/solver.hpp"
#include "abel/verify.hpp"
#include "abel/weights.hpp"

namespace {

using nlohmann::json;

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

std::string format_weights_csv(const abel::WeightTable& t) {
    std::ostringstream os;
    os.precision(17);
    // row s carries beta_{s+1} and the correction pair (w_{s+1,1}, w_{s+1,2})
    os << "index,omega,omega_inv,tau,beta,w1,w2\n";
    for (std::size_t s = 0; s <= t.n_max; ++s) {
        os << s << ',' << t.omega[s] << ',' << t.omega_inv[s] << ',' << t.tau[s] << ','
           << t.beta[s];
        if (s < t.w_start.size()) {
            os << ',' << t.w_start[s][0] << ',' << t.w_start[s][1];
        } else {
            os << ",,";
        }
        os << '\n';
    }
    return os.str();
}

json weights_json(const abel::WeightTable& t) {
    json j;
    j["alpha"] = t.alpha;
    j["n_max"] = t.n_max;
    j["omega"] = t.omega;
    j["omega_inv"] = t.omega_inv;
    j["tau"] = t.tau;
    j["beta"] = t.beta;
    auto& w = j["w_start"] = json::array();
    for (const auto& pair : t.w_start) w.push_back({pair[0], pair[1]});
    return j;
}

abel::ExperimentConfig config_from_json(const json& j) {
    abel::ExperimentConfig config;
    config.alpha = j.at("alpha").get<double>();
    config.q = j.at("q").get<double>();
    if (j.contains("use_corrections")) config.use_corrections = j["use_corrections"].get<bool>();
    if (j.contains("n_list")) config.n_list = j["n_list"].get<std::vector<std::size_t>>();
    if (j.contains("noise_c")) config.noise_c = j["noise_c"].get<double>();
    config.noise_p = j.at("noise_p").get<double>();
    if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("output_path")) config.output_path = j["output_path"].get<std::string>();
    return config;
}

int run_verify(double alpha, std::size_t n) {
    const auto results = abel::run_invariant_suite(alpha, n);
    bool all_pass = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name;
        if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
        std::cout << '\n';
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 1;
}

int run_solve(const std::string& config_path, const std::string& out_override) {
    std::ifstream in(config_path);
    if (!in) throw std::runtime_error("cannot open config file: " + config_path);
    json j = json::parse(in);

    const double alpha = j.at("alpha").get<double>();
    const double q = j.at("q").get<double>();
    const std::size_t n = j.at("n").get<std::size_t>();
    const bool corrections = j.value("use_corrections", false);
    const std::uint64_t seed = j.value("seed", std::uint64_t{1});
    const bool diagnostics = j.value("diagnostics", false);

    const abel::ProblemSpec problem = abel::test_problem(alpha, q);
    const abel::Grid grid = abel::Grid::uniform(problem.interval_end, n);
    double delta = 0.0;
    if (j.contains("delta")) {
        delta = j["delta"].get<double>();
    } else if (j.contains("noise_p")) {
        delta = j.value("noise_c", 0.3) * std::pow(grid.h, j["noise_p"].get<double>() + alpha);
    }

    std::vector<double> exact(n);
    for (std::size_t i = 1; i <= n; ++i) exact[i - 1] = problem.rhs(grid.full(i));
    const abel::NoisyRhs rhs = abel::inject_noise(exact, delta, seed);

    const abel::WeightTable weights = abel::WeightTable::build(alpha, n);
    abel::SolveReport report = corrections ? abel::solve_modified(problem, grid, rhs, weights)
                                           : abel::solve_plain(problem, grid, rhs, weights);
    report.seed = seed;
    if (diagnostics) {
        if (n > 1024) throw std::runtime_error("solve: diagnostics limited to n <= 1024");
        auto [A, D] = abel::build_matrices(problem, grid, weights);
        report.stability = abel::stability_diagnostics(A, D, grid.h, alpha);
    }

    json out;
    out["alpha"] = alpha;
    out["q"] = q;
    out["n"] = n;
    out["h"] = grid.h;
    out["delta"] = delta;
    out["seed"] = seed;
    out["used_corrections"] = report.used_corrections;
    if (report.max_error) out["max_error"] = *report.max_error;
    out["u_mid"] = report.u_mid;
    if (report.stability) {
        out["stability"] = {{"norm_D", report.stability->norm_D},
                            {"norm_DA_inv", report.stability->norm_DA_inv},
                            {"norm_A_inv", report.stability->norm_A_inv}};
    }
    const std::string path = !out_override.empty() ? out_override
                                                   : j.value("out", std::string{});
    write_output(path, out.dump(2) + "\n");
    return 0;
}

int run_rates(const std::string& example, const std::string& out_path) {
    abel::ExperimentConfig config = abel::example_config(example);
    config.noise_c = 0.0;
    config.n_list = {64, 128, 256, 512, 1024, 2048};
    const auto rows = abel::run_experiment(config);

    std::ostringstream os;
    os.precision(17);
    os << "N,h,max_error\n";
    std::vector<double> hs, errs;
    for (const auto& row : rows) {
        const double h = 1.0 / static_cast<double>(row.n);
        hs.push_back(h);
        errs.push_back(row.max_error);
        os << row.n << ',' << h << ',' << row.max_error << '\n';
    }
    os << "fitted_order," << abel::fit_rate(hs, errs) << '\n';
    write_output(out_path, os.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Product midpoint rule for weakly singular first-kind "
                 "Volterra integral equations with noisy data"};
    app.require_subcommand(1);

    double alpha = 0.5;
    std::size_t n = 1024;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string config_path, out_path, example;
    bool as_json = false, as_csv = false;

    const auto alpha_range = CLI::Range(1e-9, 1.0);

    auto* weights_cmd = app.add_subcommand("weights", "dump a weight table");
    weights_cmd->add_option("--alpha", alpha, "alpha in (0, 1]")->required()->check(alpha_range);
    weights_cmd->add_option("--n", n, "truncation length")->required();
    weights_cmd->add_flag("--json", as_json, "JSON output (default)");
    weights_cmd->add_flag("--csv", as_csv, "CSV output");
    weights_cmd->add_option("--out", out_path, "output file (default stdout)");

    auto* verify_cmd = app.add_subcommand("verify", "run the invariant suite");
    verify_cmd->add_option("--alpha", alpha, "alpha in (0, 1]")->required()->check(alpha_range);
    verify_cmd->add_option("--n", n, "truncation length")->required();

    auto* solve_cmd = app.add_subcommand("solve", "run one solve from a JSON config");
    solve_cmd->add_option("--config", config_path, "JSON config file")->required();
    solve_cmd->add_option("--out", out_path, "output file (default: config 'out' or stdout)");

    auto* exp_cmd = app.add_subcommand("experiment", "reproduce a table as CSV");
    exp_cmd->add_option("--example", example, "one of 1, 2, 3, 4, 4c");
    exp_cmd->add_option("--config", config_path, "JSON config file");
    exp_cmd->add_option("--seed", seed, "base seed")->each([&](const std::string&) {
        seed_set = true;
    });
    exp_cmd->add_option("--out", out_path, "output file (default stdout)");

    auto* rates_cmd = app.add_subcommand("rates", "noise-free order study");
    rates_cmd->add_option("--example", example, "one of 1, 2, 3, 4, 4c")->required();
    rates_cmd->add_option("--out", out_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (weights_cmd->parsed()) {
            const abel::WeightTable table = abel::WeightTable::build(alpha, n);
            write_output(out_path, as_csv ? format_weights_csv(table)
                                          : weights_json(table).dump(2) + "\n");
            return 0;
        }
        if (verify_cmd->parsed()) {
            return run_verify(alpha, n);
        }
        if (solve_cmd->parsed()) {
            return run_solve(config_path, out_path);
        }
        if (exp_cmd->parsed()) {
            abel::ExperimentConfig config;
            if (!config_path.empty()) {
                std::ifstream in(config_path);
                if (!in) throw std::runtime_error("cannot open config file: " + config_path);
                config = config_from_json(json::parse(in));
            } else if (!example.empty()) {
                config = abel::example_config(example);
            } else {
                std::cerr << "experiment: need --example or --config\n";
                return 2;
            }
            if (seed_set) config.seed = seed;
            if (!out_path.empty()) config.output_path = out_path;
            const auto rows = abel::run_experiment(config);
            write_output(config.output_path, abel::to_csv(rows));
            return 0;
        }
        if (rates_cmd->parsed()) {
            return run_rates(example, out_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
