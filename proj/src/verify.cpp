#include "abel/verify.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "abel/gamma.hpp"
#include "abel/series.hpp"
#include "abel/weights.hpp"

namespace abel {

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("loglog_slope: need matching spans with >= 2 points");
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(std::abs(y[i]));
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    const double m = static_cast<double>(x.size());
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

void add(std::vector<CheckResult>& out, std::string name, bool pass, std::string detail) {
    out.push_back({std::move(name), pass, std::move(detail)});
}

} // namespace

std::vector<CheckResult> run_invariant_suite(double alpha, std::size_t n_max) {
    if (n_max < 16) throw std::invalid_argument("run_invariant_suite: n_max >= 16 required");
    const WeightTable table = WeightTable::build(alpha, n_max);
    const double g1 = gamma_fn(alpha + 1.0);
    std::vector<CheckResult> out;

    // positivity and strictly increasing consecutive ratios of omega
    {
        bool positive = true;
        for (double w : table.omega) positive = positive && w > 0.0;
        bool monotone = true;
        std::size_t bad = 0;
        for (std::size_t n = 1; n + 1 <= n_max && monotone; ++n) {
            if (!(table.omega[n + 1] * table.omega[n - 1] > table.omega[n] * table.omega[n])) {
                monotone = false;
                bad = n;
            }
        }
        if (alpha == 1.0) monotone = true;  // ratios are constant in the classical case
        add(out, "omega positive", positive, "");
        add(out, "omega ratio monotone", monotone,
            monotone ? "" : "violated at n=" + std::to_string(bad));
    }

    // sign pattern of the inverse weights
    {
        bool ok = table.omega_inv[0] > 0.0;
        for (std::size_t n = 1; n <= n_max && ok; ++n) {
            if (alpha < 1.0) {
                ok = table.omega_inv[n] < 0.0;
            } else {
                ok = n == 1 ? table.omega_inv[n] == -1.0 : table.omega_inv[n] == 0.0;
            }
        }
        add(out, "omega_inv sign pattern", ok, "");
    }

    // omega_inv[0] = Gamma(alpha+1), and sum |omega_inv[n]| increasing toward it
    {
        const double gap0 = std::abs(table.omega_inv[0] - g1);
        add(out, "omega_inv0 equals Gamma(alpha+1)", gap0 <= 1e-12, "gap=" + fmt(gap0));

        bool increasing = true;
        double partial = 0.0;
        for (std::size_t n = 1; n <= n_max && increasing; ++n) {
            const double next = partial + std::abs(table.omega_inv[n]);
            increasing = next > partial && next <= g1 * (1.0 + 1e-12);
            partial = next;
        }
        if (alpha == 1.0) increasing = partial == 1.0;
        // the gap Gamma(alpha+1) - partial must shrink under truncation growth
        double half = 0.0;
        for (std::size_t n = 1; n <= n_max / 2; ++n) half += std::abs(table.omega_inv[n]);
        const bool approaching = (g1 - partial) < (g1 - half) || alpha == 1.0;
        add(out, "sum |omega_inv| increasing toward Gamma(alpha+1)",
            increasing && approaching,
            "sum=" + fmt(partial) + " target=" + fmt(g1));
    }

    // decay slopes: omega_inv ~ n^{-(alpha+1)}, beta ~ n^{-alpha}
    if (alpha < 1.0) {
        std::vector<double> ns, inv_vals, beta_vals;
        for (std::size_t n = n_max / 4; n <= n_max; ++n) {
            ns.push_back(static_cast<double>(n));
            inv_vals.push_back(table.omega_inv[n]);
            beta_vals.push_back(table.beta[n - 1]);
        }
        const double slope_inv = loglog_slope(ns, inv_vals);
        const double slope_beta = loglog_slope(ns, beta_vals);
        add(out, "omega_inv decay slope", std::abs(slope_inv + alpha + 1.0) <= 0.1,
            "slope=" + fmt(slope_inv) + " expected=" + fmt(-(alpha + 1.0)));
        add(out, "beta decay slope", std::abs(slope_beta + alpha) <= 0.1,
            "slope=" + fmt(slope_beta) + " expected=" + fmt(-alpha));
    }

    // beta nonnegative and non-increasing
    {
        bool ok = true;
        double prev = table.beta[0];
        ok = prev >= 0.0;
        for (std::size_t i = 1; i < table.beta.size() && ok; ++i) {
            ok = table.beta[i] >= -1e-15 && table.beta[i] <= prev * (1.0 + 1e-12) + 1e-15;
            prev = table.beta[i];
        }
        add(out, "beta nonnegative and non-increasing", ok, "");
    }

    // convolution identity omega * omega_inv = unit sequence
    {
        double worst = 0.0;
        for (std::size_t n = 0; n <= n_max; ++n) {
            double acc = 0.0;
            for (std::size_t j = 0; j <= n; ++j) acc += table.omega[j] * table.omega_inv[n - j];
            worst = std::max(worst, std::abs(acc - (n == 0 ? 1.0 : 0.0)));
        }
        add(out, "convolution identity", worst <= 1e-10, "max deviation=" + fmt(worst));
    }

    // correction weights: antisymmetric pairs, bounded
    {
        bool anti = true;
        double bound = 0.0;
        for (const auto& w : table.w_start) {
            anti = anti && w[0] == -w[1];
            bound = std::max(bound, std::abs(w[1]));
        }
        add(out, "correction weights antisymmetric and bounded", anti && bound < 1.0,
            "sup |w|=" + fmt(bound));
    }

    if (alpha < 1.0) {
        // Kaluza certificate for p = 2 Gamma(alpha+1) omega
        PowerSeries p;
        p.coeffs.resize(n_max + 1);
        for (std::size_t n = 0; n <= n_max; ++n) p.coeffs[n] = 2.0 * g1 * table.omega[n];
        bool kaluza_pass = false;
        std::string detail;
        try {
            const KaluzaCertificate cert = kaluza_certificate(p);
            bool strictly_positive = cert.c0 > 0.0;
            for (double cs : cert.c) strictly_positive = strictly_positive && cs > 0.0;
            kaluza_pass = cert.holds() && strictly_positive &&
                          std::abs(cert.c0 - 0.5) <= 1e-12;
            detail = "c0=" + fmt(cert.c0) + " max partial sum=" + fmt(cert.max_partial_sum);
        } catch (const KaluzaPreconditionError& e) {
            detail = std::string("precondition: ") + e.what();
        }
        add(out, "Kaluza certificate for 2 Gamma(alpha+1) omega", kaluza_pass, detail);

        // lower bound |omega(xi)| >= 1/(2 Gamma(alpha+1)) on the sampled circle
        PowerSeries w(std::vector<double>(table.omega.begin(), table.omega.end()));
        const double min_mod = disc_min_modulus(w, 0.99, 4096);
        const double lower = 1.0 / (2.0 * g1);
        add(out, "disc lower bound for |omega|", min_mod >= lower,
            "min=" + fmt(min_mod) + " bound=" + fmt(lower));
    }

    return out;
}

} // namespace abel
