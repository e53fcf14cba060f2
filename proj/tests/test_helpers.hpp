#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "ebnd/spectrum.hpp"

namespace thelp {

// Oscillator levels 0,1,2,... with an explicit 8-level head.
inline ebnd::Spectrum oscillator() {
    return ebnd::validate({0, 1, 2, 3, 4, 5, 6, 7}, ebnd::LinearTail{1.0, 0.0}, "oscillator");
}

inline ebnd::Spectrum two_level() { return ebnd::validate({0, 1}, std::nullopt, "two-level"); }

inline ebnd::Spectrum two_level_degenerate() {
    return ebnd::validate({0, 2, 2}, std::nullopt, "two-level-m2");
}

inline ebnd::Spectrum three_level() {
    return ebnd::validate({0, 1, 5}, std::nullopt, "three-level");
}

inline ebnd::Spectrum power_law() {
    return ebnd::validate({0, 1, 4, 9}, ebnd::PowerTail{2.0, 1.0}, "power-law");
}

inline ebnd::Spectrum degenerate_ground() {
    return ebnd::validate({0, 0, 1, 2}, ebnd::LinearTail{1.0, -1.0}, "degenerate-ground");
}

// Independent oracles: plain direct summation, no shared code with the library.
inline double direct_log_partition(const ebnd::Spectrum& s, double beta, std::size_t terms) {
    double sum = 0.0;
    const std::size_t n = s.is_finite() ? s.size() : terms;
    for (std::size_t i = 0; i < n; ++i) sum += std::exp(-beta * s.level(i));
    return std::log(sum);
}

inline double direct_mean_energy(const ebnd::Spectrum& s, double beta, std::size_t terms) {
    double s0 = 0.0, s1 = 0.0;
    const std::size_t n = s.is_finite() ? s.size() : terms;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = std::exp(-beta * s.level(i));
        s0 += w;
        s1 += s.level(i) * w;
    }
    return s1 / s0;
}

inline double binary_h_nats(double e) {
    if (e <= 0.0 || e >= 1.0) return 0.0;
    return -e * std::log(e) - (1.0 - e) * std::log(1.0 - e);
}

// Example 1 closed forms for the oscillator.
inline double osc_g(double E) { return (E + 1.0) * std::log(E + 1.0) - E * std::log(E); }
inline double osc_f_plus(double E) { return E * binary_h_nats(1.0 / E); }

inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace thelp
