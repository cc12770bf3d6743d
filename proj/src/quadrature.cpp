#include "abel/quadrature.hpp"

#include <cmath>
#include <utility>

#include "abel/gamma.hpp"

namespace abel {

double abel_monomial_exact(double alpha, double q, double x) {
    if (x == 0.0) return 0.0;
    return gamma_fn(q + 1.0) / gamma_fn(q + 1.0 + alpha) * std::pow(x, q + alpha);
}

std::vector<double> midpoint_apply(const WeightTable& weights, const Grid& grid,
                                   std::span<const double> phi_mid) {
    const std::size_t n = grid.n;
    if (phi_mid.size() != n) {
        throw std::invalid_argument("midpoint_apply: phi_mid length must equal grid.n");
    }
    if (weights.n_max + 1 < n) {
        throw std::invalid_argument("midpoint_apply: weight table too short");
    }
    const double ha = std::pow(grid.h, weights.alpha);
    std::vector<double> out(n);
    for (std::size_t row = 1; row <= n; ++row) {
        double acc = 0.0;
        for (std::size_t j = 1; j <= row; ++j) {
            acc += weights.omega[row - j] * phi_mid[j - 1];
        }
        out[row - 1] = ha * acc;
    }
    return out;
}

std::vector<double> midpoint_apply_modified(const WeightTable& weights, const Grid& grid,
                                            std::span<const double> phi_mid) {
    if (grid.n < 2) {
        throw std::invalid_argument("midpoint_apply_modified: grid.n >= 2 required");
    }
    std::vector<double> out = midpoint_apply(weights, grid, phi_mid);
    const double ha = std::pow(grid.h, weights.alpha);
    for (std::size_t row = 1; row <= grid.n; ++row) {
        const auto& w = weights.w_start[row - 1];
        out[row - 1] += ha * (w[0] * phi_mid[0] + w[1] * phi_mid[1]);
    }
    return out;
}

std::vector<double> quadrature_error(const WeightTable& weights, const Grid& grid,
                                     const std::function<double(double)>& phi,
                                     const std::function<double(double)>& exact_value) {
    std::vector<double> phi_mid(grid.n);
    for (std::size_t j = 1; j <= grid.n; ++j) phi_mid[j - 1] = phi(grid.mid(j));
    std::vector<double> disc = midpoint_apply(weights, grid, phi_mid);
    for (std::size_t row = 1; row <= grid.n; ++row) {
        disc[row - 1] = exact_value(grid.full(row)) - disc[row - 1];
    }
    return disc;
}

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct GkEstimate {
    double integral;
    double error;
};

template <typename F>
GkEstimate gk15(const F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double halflen = 0.5 * (b - a);
    const double fc = f(center);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = halflen * kXgk[j];
        const double fsum = f(center - dx) + f(center + dx);
        resk += kWgk[j] * fsum;
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    }
    return {resk * halflen, std::abs((resk - resg) * halflen)};
}

// Adaptive bisection with a fixed absolute tolerance per call. The budget
// counts panel evaluations so pathological integrands terminate.
template <typename F>
double adapt(const F& f, double a, double b, double abs_tol, int depth,
             long& budget, bool& converged) {
    const GkEstimate est = gk15(f, a, b);
    --budget;
    if (est.error <= abs_tol || depth >= 52 || budget <= 0) {
        if (est.error > abs_tol) converged = false;
        return est.integral;
    }
    const double mid = 0.5 * (a + b);
    return adapt(f, a, mid, 0.5 * abs_tol, depth + 1, budget, converged) +
           adapt(f, mid, b, 0.5 * abs_tol, depth + 1, budget, converged);
}

} // namespace

double singular_quadrature_oracle(double alpha, const std::function<double(double)>& phi,
                                  double x, double rel_tol) {
    if (!(alpha > 0.0) || alpha > 1.0) {
        throw std::domain_error("singular_quadrature_oracle: alpha must lie in (0, 1]");
    }
    if (x < 0.0) throw std::domain_error("singular_quadrature_oracle: x must be >= 0");
    if (x == 0.0) return 0.0;

    const double inv_alpha = 1.0 / alpha;
    auto integrand = [&](double t) { return phi(x * (1.0 - std::pow(t, inv_alpha))); };
    const double scale = std::pow(x, alpha) / gamma_fn(alpha + 1.0);

    const double magnitude = std::max(std::abs(gk15(integrand, 0.0, 1.0).integral), 1e-30);
    double prev = 0.0;
    bool have_prev = false;
    for (double pass_tol : {1e-8, 1e-10, 1e-12, 1e-13, 1e-14}) {
        long budget = 300000;
        bool converged = true;
        const double val = adapt(integrand, 0.0, 1.0, magnitude * pass_tol, 0, budget, converged);
        if (have_prev) {
            const double agree_tol = 0.1 * rel_tol * std::max(std::abs(val), 1e-30);
            if (std::abs(val - prev) <= agree_tol) return scale * val;
        }
        prev = val;
        have_prev = true;
    }
    throw QuadratureAccuracyError(scale * prev,
                                  "singular_quadrature_oracle: refinement did not converge");
}

} // namespace abel
