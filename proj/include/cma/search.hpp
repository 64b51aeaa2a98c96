#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "allocator.hpp"
#include "delay.hpp"

namespace cma {

enum class Scheme { optimal, equal };

inline const char* to_string(Scheme s) {
    return s == Scheme::optimal ? "optimal" : "equal";
}

// One evaluated trajectory length: the throughput it buys and the RMS
// access delay it costs. d_bar is traj_length / span.
struct TradeoffPoint {
    double d_bar = 0.0;
    double traj_length_m = 0.0;
    double max_min_throughput = 0.0;  // bps/Hz
    double rms_delay_s = 0.0;
    Scheme scheme = Scheme::optimal;
};

struct SweepResult {
    std::vector<TradeoffPoint> points;  // ascending d_bar
    TradeoffPoint best;                 // max throughput with rms <= tolerance
    double tolerance_s = 0.0;
};

inline std::vector<double> make_dbar_grid(double d_bar_max, double step) {
    if (!(step > 0.0) || !std::isfinite(step))
        throw std::invalid_argument("grid step must be > 0");
    if (!(d_bar_max >= 0.0) || !std::isfinite(d_bar_max))
        throw std::invalid_argument("d_bar_max must be >= 0");
    std::vector<double> grid;
    // i * step accumulates no drift; the slack keeps the intended last point
    // (e.g. 200 * 0.01 = 2.0000000000000004) on the grid.
    for (long i = 0;; ++i) {
        const double v = static_cast<double>(i) * step;
        if (v > d_bar_max + step * 1e-9) break;
        grid.push_back(v);
    }
    return grid;
}

inline TradeoffPoint evaluate_tradeoff(const Scenario& base, Scheme scheme,
                                       double d_bar, double epsilon) {
    TradeoffPoint pt;
    pt.d_bar = d_bar;
    pt.traj_length_m = d_bar * base.span_m;
    pt.scheme = scheme;
    if (pt.traj_length_m == 0.0) {
        // hovering: slots can be made arbitrarily fine, so both schemes
        // degenerate to the static optimum and nobody waits
        pt.max_min_throughput = static_maxmin(base);
        pt.rms_delay_s = 0.0;
        return pt;
    }
    const Scenario s = base.with_traj_length(pt.traj_length_m);
    const Allocation alloc = scheme == Scheme::optimal
                                 ? maxmin_allocate(s, epsilon)
                                 : equal_allocation(s);
    pt.max_min_throughput = alloc.min_throughput;
    pt.rms_delay_s = access_delays(alloc, s.speed_mps).rms_s;
    return pt;
}

// Evaluates every grid point for one scheme. Points are independent, so the
// grid may be spread over threads; each worker writes its own slots and the
// output is identical for any thread count. threads = 0 means one per core.
inline std::vector<TradeoffPoint> sweep(const Scenario& base, Scheme scheme,
                                        std::span<const double> d_bar_grid,
                                        double epsilon = kDefaultEpsilon,
                                        unsigned threads = 1) {
    if (d_bar_grid.empty())
        throw std::invalid_argument("d_bar grid is empty");
    if (!(d_bar_grid.front() >= 0.0))
        throw std::invalid_argument("d_bar grid values must be >= 0");
    for (std::size_t i = 1; i < d_bar_grid.size(); ++i)
        if (!(d_bar_grid[i] > d_bar_grid[i - 1]))
            throw std::invalid_argument("d_bar grid must be strictly ascending");
    if (!(base.span_m > 0.0))
        throw std::invalid_argument("span_m must be > 0 to normalize trajectory lengths");

    std::vector<TradeoffPoint> points(d_bar_grid.size());

    unsigned n = threads != 0 ? threads : std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (static_cast<std::size_t>(n) > points.size())
        n = static_cast<unsigned>(points.size());

    if (n <= 1) {
        for (std::size_t i = 0; i < points.size(); ++i)
            points[i] = evaluate_tradeoff(base, scheme, d_bar_grid[i], epsilon);
        return points;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) {
        pool.emplace_back([&] {
            try {
                for (std::size_t i = next.fetch_add(1); i < points.size();
                     i = next.fetch_add(1))
                    points[i] = evaluate_tradeoff(base, scheme, d_bar_grid[i], epsilon);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return points;
}

// Highest-throughput point whose RMS delay fits the tolerance; equal
// throughputs resolve to the shorter trajectory. Throws when nothing fits.
inline TradeoffPoint best_under_tolerance(std::span<const TradeoffPoint> points,
                                          double tolerance_s) {
    if (points.empty())
        throw std::invalid_argument("no tradeoff points");
    if (!(tolerance_s >= 0.0))
        throw std::invalid_argument("tolerance must be >= 0");
    const TradeoffPoint* best = nullptr;
    for (const TradeoffPoint& pt : points) {
        if (pt.rms_delay_s > tolerance_s) continue;
        if (!best || pt.max_min_throughput > best->max_min_throughput ||
            (pt.max_min_throughput == best->max_min_throughput &&
             pt.d_bar < best->d_bar))
            best = &pt;
    }
    if (!best)
        throw std::runtime_error("no trajectory length satisfies the delay tolerance");
    return *best;
}

inline SweepResult select_best(std::vector<TradeoffPoint> points,
                               double tolerance_s) {
    SweepResult r;
    r.best = best_under_tolerance(points, tolerance_s);
    r.points = std::move(points);
    r.tolerance_s = tolerance_s;
    return r;
}

}  // namespace cma
