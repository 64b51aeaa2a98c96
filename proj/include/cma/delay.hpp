#pragma once

#include <cmath>

#include "allocator.hpp"

namespace cma {

// Waiting pattern induced by one shuttle period: per terminal, the longest
// stretch of the period during which its segment is not being served.
struct DelayProfile {
    double period_s = 0.0;               // round trip, 2D/V
    std::vector<double> per_terminal_s;  // worst wait per terminal, in [0, period]
    double rms_s = 0.0;
};

inline double rms_delay(const DelayProfile& profile) {
    if (profile.per_terminal_s.empty())
        throw std::invalid_argument("delay profile is empty");
    double sq = 0.0;
    for (double v : profile.per_terminal_s) sq += v * v;
    return std::sqrt(sq / static_cast<double>(profile.per_terminal_s.size()));
}

// The base station passes segment k twice per period (outbound and return).
// Between consecutive visits the terminal waits for the shuttle to cover
// everything left of b_k twice, or everything right of b_{k+1} twice; the
// worse of the two is its access delay.
inline DelayProfile access_delays(const Allocation& alloc, double speed_mps) {
    if (!(speed_mps > 0.0) || !std::isfinite(speed_mps))
        throw std::invalid_argument("speed_mps must be > 0");
    const std::size_t count = alloc.throughputs.size();
    if (count == 0 || alloc.delimiters.size() != count + 1)
        throw std::invalid_argument("allocation has inconsistent shape");

    const auto& b = alloc.delimiters;
    const double half = 0.5 * (b[count] - b[0]);  // D/2

    DelayProfile p;
    p.period_s = 2.0 * (b[count] - b[0]) / speed_mps;
    p.per_terminal_s.resize(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double left = 2.0 * (half + b[k]) / speed_mps;
        const double right = 2.0 * (half - b[k + 1]) / speed_mps;
        p.per_terminal_s[k] = std::max(left, right);
    }
    p.rms_s = rms_delay(p);
    return p;
}

}  // namespace cma
