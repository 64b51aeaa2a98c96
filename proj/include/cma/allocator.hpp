#pragma once

#include <algorithm>
#include <cstdlib>
#include <vector>

#include "model.hpp"

namespace cma {

inline constexpr double kDefaultEpsilon = 1e-5;    // throughput gap target (bps/Hz)
inline constexpr double kBoundaryBracketM = 1e-9;  // bisection stops below this bracket width
inline constexpr long kMaxBalancingSteps = 1000000;

// One time split of the one-way trajectory. delimiters holds b_0..b_K with
// b_0 = -D/2 and b_K = D/2; terminal k serves while the base station is in
// [delimiters[k], delimiters[k+1]].
struct Allocation {
    std::vector<double> delimiters;   // K+1 values, non-decreasing (m)
    std::vector<double> throughputs;  // per terminal (bps/Hz)
    std::vector<double> portions;     // per-terminal share of D, sums to 1
    double min_throughput = 0.0;      // bps/Hz
    long iterations = 0;              // balancing steps performed
};

// Moves the delimiter between terminals k-1 and k (0-based positions; k is
// the delimiter index, 1 <= k <= K-1) to the point where both sides gain
// the same antiderivative increment over their segments ending/starting at
// b. The increment difference is strictly increasing in b, so plain
// bisection on [b_prev_m, b_next_m] suffices.
inline double solve_boundary(int k, double b_prev_m, double b_next_m,
                             const TerminalLayout& layout,
                             const LinearParams& params) {
    const int count = static_cast<int>(layout.positions_m.size());
    if (k < 1 || k > count - 1)
        throw std::invalid_argument("delimiter index out of range");
    if (b_prev_m > b_next_m)
        throw std::invalid_argument("bracket out of order");

    const double x_left = layout.positions_m[k - 1];
    const double x_right = layout.positions_m[k];
    const double left_base = rate_antiderivative(b_prev_m, x_left, params);
    const double right_base = rate_antiderivative(b_next_m, x_right, params);

    double lo = b_prev_m;
    double hi = b_next_m;
    while (hi - lo > kBoundaryBracketM) {
        const double mid = 0.5 * (lo + hi);
        const double diff =
            (rate_antiderivative(mid, x_left, params) - left_base) -
            (right_base - rate_antiderivative(mid, x_right, params));
        if (diff < 0.0)
            lo = mid;
        else
            hi = mid;
    }

    // One Newton step past the bracket floor. The residual imbalance a
    // 1e-9 m bracket leaves behind scales with the local rates and would
    // cap how far the caller can push epsilon; the polish removes it.
    double b = 0.5 * (lo + hi);
    const double residual =
        (rate_antiderivative(b, x_left, params) - left_base) -
        (right_base - rate_antiderivative(b, x_right, params));
    const double slope = rate(b, x_left, params) + rate(b, x_right, params);
    if (slope > 0.0) {
        b -= residual / slope;
        if (b < b_prev_m) b = b_prev_m;
        if (b > b_next_m) b = b_next_m;
    }
    return b;
}

namespace detail {

inline std::vector<double> uniform_delimiters(int count, double traj_length_m) {
    std::vector<double> b(count + 1);
    const double step = traj_length_m / count;
    for (int k = 0; k <= count; ++k)
        b[k] = -0.5 * traj_length_m + k * step;
    b.front() = -0.5 * traj_length_m;
    b.back() = 0.5 * traj_length_m;
    return b;
}

inline Allocation finish_allocation(std::vector<double> b,
                                    std::vector<double> th,
                                    double traj_length_m, long steps) {
    Allocation out;
    out.iterations = steps;
    out.min_throughput = *std::min_element(th.begin(), th.end());
    out.portions.resize(th.size());
    for (std::size_t k = 0; k < th.size(); ++k)
        out.portions[k] = (b[k + 1] - b[k]) / traj_length_m;
    out.delimiters = std::move(b);
    out.throughputs = std::move(th);
    return out;
}

}  // namespace detail

// Max-min time allocation. Starts from the uniform split and repeatedly
// re-balances the neighbor pair with the largest throughput gap until every
// neighbor gap is below epsilon; ties go to the smallest index so runs are
// reproducible. Optionally records max(theta)-min(theta) once per pass
// (including the converged state) into *spread_trace.
inline Allocation maxmin_allocate(const Scenario& s,
                                  double epsilon = kDefaultEpsilon,
                                  std::vector<double>* spread_trace = nullptr) {
    if (!(s.traj_length_m > 0.0))
        throw std::invalid_argument("traj_length_m must be > 0");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw std::invalid_argument("epsilon must be > 0");

    const int count = s.num_terminals;
    const double d = s.traj_length_m;
    const TerminalLayout layout = place_terminals(count, s.span_m);
    const LinearParams params = to_linear(s);

    std::vector<double> b = detail::uniform_delimiters(count, d);
    std::vector<double> th(count);
    for (int k = 0; k < count; ++k)
        th[k] = segment_throughput(b[k], b[k + 1], layout.positions_m[k], d, params);

    long steps = 0;
    while (count > 1) {
        if (spread_trace) {
            const auto [lo, hi] = std::minmax_element(th.begin(), th.end());
            spread_trace->push_back(*hi - *lo);
        }

        double gap_max = 0.0;
        int idx = -1;
        for (int k = 0; k + 1 < count; ++k) {
            const double gap = std::abs(th[k + 1] - th[k]);
            if (gap > gap_max) {
                gap_max = gap;
                idx = k;
            }
        }
        if (gap_max < epsilon) break;

        if (++steps > kMaxBalancingSteps)
            throw std::runtime_error("time allocation did not converge");

        // theta_k depends on (b_k, b_k+1) alone, so only the two segments
        // touching the moved delimiter need recomputing.
        b[idx + 1] = solve_boundary(idx + 1, b[idx], b[idx + 2], layout, params);
        th[idx] = segment_throughput(b[idx], b[idx + 1],
                                     layout.positions_m[idx], d, params);
        th[idx + 1] = segment_throughput(b[idx + 1], b[idx + 2],
                                         layout.positions_m[idx + 1], d, params);
    }

    return detail::finish_allocation(std::move(b), std::move(th), d, steps);
}

// Uniform split benchmark: every terminal gets the same 1/K share of the
// trajectory regardless of its link quality.
inline Allocation equal_allocation(const Scenario& s) {
    if (!(s.traj_length_m > 0.0))
        throw std::invalid_argument("traj_length_m must be > 0");

    const int count = s.num_terminals;
    const double d = s.traj_length_m;
    const TerminalLayout layout = place_terminals(count, s.span_m);
    const LinearParams params = to_linear(s);

    std::vector<double> b = detail::uniform_delimiters(count, d);
    std::vector<double> th(count);
    for (int k = 0; k < count; ++k)
        th[k] = segment_throughput(b[k], b[k + 1], layout.positions_m[k], d, params);

    Allocation out = detail::finish_allocation(std::move(b), std::move(th), d, 0);
    std::fill(out.portions.begin(), out.portions.end(), 1.0 / count);
    return out;
}

// Hovering benchmark: base station parked over the row center, terminals
// time-share the channel. Weighting slots inversely to the fixed rates
// equalizes everyone at 1 / sum(1/r_k).
inline double static_maxmin(const Scenario& s) {
    const TerminalLayout layout = place_terminals(s.num_terminals, s.span_m);
    const LinearParams params = to_linear(s);
    double inv_sum = 0.0;
    for (double xk : layout.positions_m)
        inv_sum += 1.0 / rate(0.0, xk, params);
    return 1.0 / inv_sum;
}

}  // namespace cma
