#include "abel/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "abel/gamma.hpp"

namespace abel {

ProblemSpec test_problem(double alpha, double q) {
    if (!(alpha > 0.0) || alpha >= 1.0) {
        throw std::invalid_argument("test_problem: alpha must lie in (0, 1)");
    }
    if (!(q > 0.0) || q > 2.0) {
        throw std::invalid_argument("test_problem: q must lie in (0, 2]");
    }
    const double gq1 = gamma_fn(q + 1.0);
    const double gq2a = gamma_fn(q + 2.0 + alpha);

    ProblemSpec problem;
    problem.alpha = alpha;
    problem.gamma = q;
    problem.interval_end = 1.0;
    problem.kernel = [](double x, double y) { return (1.0 + x * y) / (1.0 + x * x); };
    problem.rhs = [alpha, q, gq2a](double x) {
        return std::pow(x, q + alpha) * (q + 1.0 + alpha + (q + 1.0) * x * x) /
               (gq2a * (1.0 + x * x));
    };
    problem.exact_solution = [q, gq1](double y) { return std::pow(y, q) / gq1; };
    return problem;
}

namespace {

// splitmix64: one additive state step and a 3-stage mix per draw.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform on [0, 1) with 53 random bits
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

} // namespace

NoisyRhs inject_noise(std::span<const double> exact_values, double delta,
                      std::uint64_t seed) {
    if (delta < 0.0) throw std::invalid_argument("inject_noise: delta must be >= 0");
    NoisyRhs rhs;
    rhs.delta = delta;
    rhs.values.assign(exact_values.begin(), exact_values.end());
    if (delta == 0.0) return rhs;
    SplitMix64 rng(seed);
    for (double& v : rhs.values) {
        v += delta * (2.0 * rng.next_unit() - 1.0);
    }
    return rhs;
}

namespace {

std::size_t worker_cap(std::size_t rows) {
    std::size_t cap = std::max<unsigned>(1, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("ABEL_MIDPOINT_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) cap = static_cast<std::size_t>(v);
    }
    return std::min(cap, rows);
}

ExperimentRow run_row(const ExperimentConfig& config, const ProblemSpec& problem,
                      const WeightTable& weights, std::size_t row_index) {
    const std::size_t n = config.n_list[row_index];
    const Grid grid = Grid::uniform(problem.interval_end, n);
    const double delta = config.noise_c * std::pow(grid.h, config.noise_p + config.alpha);

    std::vector<double> exact(n);
    double f_norm = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        exact[i - 1] = problem.rhs(grid.full(i));
        f_norm = std::max(f_norm, std::abs(exact[i - 1]));
    }
    const NoisyRhs rhs = inject_noise(exact, delta, config.seed + row_index);

    const SolveReport report = config.use_corrections
                                   ? solve_modified(problem, grid, rhs, weights)
                                   : solve_plain(problem, grid, rhs, weights);

    ExperimentRow row;
    row.n = n;
    row.delta = delta;
    row.delta_rel_percent = f_norm > 0.0 ? 100.0 * delta / f_norm : 0.0;
    row.max_error = report.max_error.value_or(0.0);
    const double exponent = config.noise_p / (config.noise_p + config.alpha);
    row.ratio = delta > 0.0 ? row.max_error / std::pow(delta, exponent) : 0.0;
    return row;
}

} // namespace

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config) {
    if (config.n_list.empty()) {
        throw std::invalid_argument("run_experiment: empty n_list");
    }
    const ProblemSpec problem = test_problem(config.alpha, config.q);
    const std::size_t n_top = *std::max_element(config.n_list.begin(), config.n_list.end());
    const WeightTable weights = WeightTable::build(config.alpha, n_top);

    const std::size_t rows = config.n_list.size();
    std::vector<ExperimentRow> out(rows);
    std::vector<std::string> failures(rows);

    const std::size_t workers = worker_cap(rows);
    if (workers <= 1) {
        for (std::size_t i = 0; i < rows; ++i) {
            try {
                out[i] = run_row(config, problem, weights, i);
            } catch (const std::exception& e) {
                failures[i] = e.what();
            }
        }
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> cursor{0};
        for (std::size_t t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = cursor.fetch_add(1); i < rows; i = cursor.fetch_add(1)) {
                    try {
                        out[i] = run_row(config, problem, weights, i);
                    } catch (const std::exception& e) {
                        failures[i] = e.what();
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    for (std::size_t i = 0; i < rows; ++i) {
        if (!failures[i].empty()) {
            throw std::runtime_error("run_experiment: row N=" +
                                     std::to_string(config.n_list[i]) + ": " + failures[i]);
        }
    }
    // seeds are tied to n_list positions; emission order is by grid size
    std::stable_sort(out.begin(), out.end(),
                     [](const ExperimentRow& a, const ExperimentRow& b) { return a.n < b.n; });
    return out;
}

ExperimentConfig example_config(const std::string& id) {
    ExperimentConfig config;
    if (id == "1") {
        config.alpha = 0.5; config.q = 2.0; config.noise_p = 1.5;
    } else if (id == "2") {
        config.alpha = 0.9; config.q = 0.4; config.noise_p = 0.3;
    } else if (id == "3") {
        config.alpha = 0.2; config.q = 0.5; config.noise_p = 0.3;
    } else if (id == "4") {
        config.alpha = 0.5; config.q = 1.0; config.noise_p = 1.0;
    } else if (id == "4c") {
        config.alpha = 0.5; config.q = 1.0; config.noise_p = 1.5;
        config.use_corrections = true;
    } else {
        throw std::invalid_argument("example_config: unknown example '" + id + "'");
    }
    return config;
}

double fit_rate(std::span<const double> h, std::span<const double> error) {
    if (h.size() != error.size()) {
        throw std::invalid_argument("fit_rate: length mismatch");
    }
    if (h.size() < 4) {
        throw std::invalid_argument("fit_rate: at least 4 points required");
    }
    // order by decreasing h, then drop the two coarsest
    std::vector<std::size_t> idx(h.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return h[a] > h[b]; });

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t m = 0;
    for (std::size_t r = 2; r < idx.size(); ++r) {
        const double lx = std::log(h[idx[r]]);
        const double ly = std::log(error[idx[r]]);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        ++m;
    }
    const double denom = m * sxx - sx * sx;
    return (m * sxy - sx * sy) / denom;
}

std::string to_csv(std::span<const ExperimentRow> rows) {
    std::ostringstream os;
    os.precision(17);
    os << "N,delta,delta_rel_percent,max_error,ratio\n";
    for (const auto& row : rows) {
        os << row.n << ',' << row.delta << ',' << row.delta_rel_percent << ','
           << row.max_error << ',' << row.ratio << '\n';
    }
    return os.str();
}

} // namespace abel
