#pragma once

#include <cmath>

#include "allocator.hpp"

namespace cma {

// Controls for the quadrature cross-check.
struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-11;
    long max_subdivisions = 200000;  // interval splits before giving up
};

namespace detail {

struct SimpsonFrame {
    double xk;
    const LinearParams* params;
    long splits_left;
};

inline double adaptive_simpson(SimpsonFrame& fr, double a, double m, double b,
                               double fa, double fm, double fb, double whole,
                               double tol) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = rate(lm, fr.xk, *fr.params);
    const double frm = rate(rm, fr.xk, *fr.params);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    if (--fr.splits_left < 0)
        throw std::runtime_error("quadrature did not meet tolerance within the subdivision budget");
    return adaptive_simpson(fr, a, lm, m, fa, flm, fm, left, 0.5 * tol) +
           adaptive_simpson(fr, m, rm, b, fm, frm, fb, right, 0.5 * tol);
}

}  // namespace detail

// Average throughput over [b_lo_m, b_hi_m] by adaptive Simpson integration.
// Integrates rate() directly and never touches rate_antiderivative(), so
// the closed form has an independent reference.
inline double quad_throughput(double b_lo_m, double b_hi_m, double xk_m,
                              double traj_length_m, const LinearParams& params,
                              const QuadratureSpec& spec = {}) {
    if (!(traj_length_m > 0.0))
        throw std::invalid_argument("traj_length_m must be > 0");
    if (b_lo_m > b_hi_m)
        throw std::invalid_argument("segment bounds out of order");
    if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0))
        throw std::invalid_argument("quadrature tolerances must be > 0");
    if (spec.max_subdivisions < 1)
        throw std::invalid_argument("max_subdivisions must be >= 1");
    if (b_lo_m == b_hi_m) return 0.0;

    detail::SimpsonFrame fr{xk_m, &params, spec.max_subdivisions};
    const double m = 0.5 * (b_lo_m + b_hi_m);
    const double fa = rate(b_lo_m, xk_m, params);
    const double fm = rate(m, xk_m, params);
    const double fb = rate(b_hi_m, xk_m, params);
    const double s0 = (b_hi_m - b_lo_m) / 6.0 * (fa + 4.0 * fm + fb);
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::fabs(s0));
    return detail::adaptive_simpson(fr, b_lo_m, m, b_hi_m, fa, fm, fb, s0, tol) /
           traj_length_m;
}

struct BruteForceResult {
    std::vector<double> delimiters;  // K+1 values, endpoints included
    double min_throughput = 0.0;
};

// Exhausts every ordered delimiter tuple on a uniform grid over the
// trajectory. Cross-check for small instances only; the tuple count grows
// as grid_n^(K-1), so K is capped at 3.
inline BruteForceResult brute_force_maxmin(const Scenario& s, int grid_n) {
    const int count = s.num_terminals;
    if (count != 2 && count != 3)
        throw std::invalid_argument("brute force supports 2 or 3 terminals only");
    if (grid_n < 100)
        throw std::invalid_argument("grid_n must be >= 100");
    if (!(s.traj_length_m > 0.0))
        throw std::invalid_argument("traj_length_m must be > 0");

    const double d = s.traj_length_m;
    const TerminalLayout layout = place_terminals(count, s.span_m);
    const LinearParams params = to_linear(s);

    std::vector<double> xg(grid_n + 1);
    const double step = d / grid_n;
    for (int i = 0; i <= grid_n; ++i)
        xg[i] = -0.5 * d + i * step;
    xg.front() = -0.5 * d;
    xg.back() = 0.5 * d;

    // precompute each terminal's antiderivative on the grid; every candidate
    // throughput is then a table difference
    std::vector<std::vector<double>> table(count, std::vector<double>(grid_n + 1));
    for (int k = 0; k < count; ++k)
        for (int i = 0; i <= grid_n; ++i)
            table[k][i] = rate_antiderivative(xg[i], layout.positions_m[k], params);

    double best = -1.0;
    int best_i = 0;
    int best_j = 0;

    if (count == 2) {
        for (int i = 0; i <= grid_n; ++i) {
            const double t1 = (table[0][i] - table[0][0]) / d;
            const double t2 = (table[1][grid_n] - table[1][i]) / d;
            const double m = std::min(t1, t2);
            if (m > best) {
                best = m;
                best_i = i;
            }
        }
        return {{xg[0], xg[best_i], xg[grid_n]}, best};
    }

    for (int i = 0; i <= grid_n; ++i) {
        const double t1 = (table[0][i] - table[0][0]) / d;
        if (t1 <= best) continue;  // min over the tuple cannot exceed t1
        for (int j = i; j <= grid_n; ++j) {
            const double t2 = (table[1][j] - table[1][i]) / d;
            const double t3 = (table[2][grid_n] - table[2][j]) / d;
            const double m = std::min({t1, t2, t3});
            if (m > best) {
                best = m;
                best_i = i;
                best_j = j;
            }
        }
    }
    return {{xg[0], xg[best_i], xg[best_j], xg[grid_n]}, best};
}

}  // namespace cma
