#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cma {

// Deployment under study: K terminals equally spaced on a line segment of
// span_m meters, served over a shared channel by an aerial base station
// that shuttles along a straight trajectory of traj_length_m meters,
// centered above the terminal row at fixed altitude and speed.
struct Scenario {
    int num_terminals;     // K >= 1
    double span_m;         // distance between the outermost terminals
    double altitude_m;     // H (m)
    double power_dbm;      // transmit power (dBm)
    double ref_snr_db;     // SNR at 1 m reference distance (dB)
    double speed_mps;      // V (m/s)
    double traj_length_m;  // D (m), 0 = hovering at the center

    Scenario(int num_terminals, double span_m, double altitude_m,
             double power_dbm, double ref_snr_db, double speed_mps,
             double traj_length_m = 0.0)
        : num_terminals(num_terminals),
          span_m(span_m),
          altitude_m(altitude_m),
          power_dbm(power_dbm),
          ref_snr_db(ref_snr_db),
          speed_mps(speed_mps),
          traj_length_m(traj_length_m) {
        if (num_terminals < 1)
            throw std::invalid_argument("num_terminals must be >= 1");
        if (num_terminals > 1 && !(span_m > 0.0))
            throw std::invalid_argument("span_m must be > 0 for two or more terminals");
        if (!std::isfinite(span_m))
            throw std::invalid_argument("span_m must be finite");
        if (!std::isfinite(altitude_m) || !(altitude_m > 0.0))
            throw std::invalid_argument("altitude_m must be > 0");
        if (!std::isfinite(power_dbm))
            throw std::invalid_argument("power_dbm must be finite");
        if (!std::isfinite(ref_snr_db))
            throw std::invalid_argument("ref_snr_db must be finite");
        if (!std::isfinite(speed_mps) || !(speed_mps > 0.0))
            throw std::invalid_argument("speed_mps must be > 0");
        if (!std::isfinite(traj_length_m) || traj_length_m < 0.0)
            throw std::invalid_argument("traj_length_m must be >= 0");
    }

    Scenario with_traj_length(double d) const {
        Scenario copy = *this;
        if (!std::isfinite(d) || d < 0.0)
            throw std::invalid_argument("traj_length_m must be >= 0");
        copy.traj_length_m = d;
        return copy;
    }
};

// Link budget folded to linear scale: snr_product / dist^2 is the receive
// SNR at dist meters, so the two dB inputs collapse into one number.
struct LinearParams {
    double snr_product;  // P * gamma_0 (m^2)
    double altitude_m;   // H (m)
};

inline LinearParams to_linear(const Scenario& s) {
    // dBm -> dBW and the reference SNR share one power of ten; summing the
    // exponents first keeps integer-dB inputs exact (10 dBm, 80 dB -> 1e6).
    return {std::pow(10.0, (s.power_dbm - 30.0 + s.ref_snr_db) / 10.0), s.altitude_m};
}

struct TerminalLayout {
    std::vector<double> positions_m;  // ascending, symmetric about 0
};

// Equal spacing over [-span/2, span/2]; a single terminal sits at 0.
inline TerminalLayout place_terminals(int num_terminals, double span_m) {
    if (num_terminals < 1)
        throw std::invalid_argument("num_terminals must be >= 1");
    if (num_terminals == 1) return {{0.0}};
    if (!(span_m > 0.0) || !std::isfinite(span_m))
        throw std::invalid_argument("span_m must be > 0 for two or more terminals");
    std::vector<double> xs(num_terminals);
    const double step = span_m / (num_terminals - 1);
    for (int k = 0; k < num_terminals; ++k)
        xs[k] = -0.5 * span_m + k * step;
    xs.front() = -0.5 * span_m;
    xs.back() = 0.5 * span_m;
    return {std::move(xs)};
}

// Spectral efficiency (bps/Hz) of the terminal at xk_m while the base
// station is overhead position x_m.
inline double rate(double x_m, double xk_m, const LinearParams& p) {
    const double u = x_m - xk_m;
    return std::log2(1.0 + p.snr_product / (u * u + p.altitude_m * p.altitude_m));
}

// Antiderivative of rate() in x, zero at x = xk_m. Strictly increasing and
// odd around xk_m.
inline double rate_antiderivative(double x_m, double xk_m, const LinearParams& p) {
    const double u = x_m - xk_m;
    const double h = p.altitude_m;
    const double s = std::sqrt(h * h + p.snr_product);
    const double log_term =
        u * std::log2(1.0 + p.snr_product / (u * u + h * h));
    const double atan_term = h * std::atan(-u / h) - s * std::atan(-u / s);
    return log_term + 2.0 * atan_term / std::numbers::ln2;
}

// Average throughput (bps/Hz) the terminal at xk_m collects while the base
// station sweeps [b_lo_m, b_hi_m] once per one-way pass of traj_length_m.
inline double segment_throughput(double b_lo_m, double b_hi_m, double xk_m,
                                 double traj_length_m, const LinearParams& p) {
    if (!(traj_length_m > 0.0))
        throw std::invalid_argument("traj_length_m must be > 0");
    if (b_lo_m > b_hi_m)
        throw std::invalid_argument("segment bounds out of order");
    return (rate_antiderivative(b_hi_m, xk_m, p) -
            rate_antiderivative(b_lo_m, xk_m, p)) /
           traj_length_m;
}

}  // namespace cma
