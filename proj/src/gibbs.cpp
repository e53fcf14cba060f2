#include "ebnd/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ebnd/config.hpp"
#include "ebnd/errors.hpp"

namespace ebnd {
namespace detail {

namespace {

// Exact geometric tail sums for a linear continuation l(i) = c i + d,
// i >= n, with exponents taken relative to the ground level h0:
//   S0 = sum e^{-beta (l(i) - h0)},  S1 = sum (l(i) - h0) e^{-beta (l(i) - h0)}.
struct TailSums {
    double s0 = 0.0;
    double s1 = 0.0;
};

TailSums linear_tail_sums(const AffineFloor& fl, std::size_t n, double beta, double h0) {
    const double l0 = fl.at(static_cast<double>(n)) - h0;
    const double q = std::exp(-beta * fl.slope);
    const double one_minus_q = -std::expm1(-beta * fl.slope);
    const double e0 = std::exp(-beta * l0);
    TailSums ts;
    ts.s0 = e0 / one_minus_q;
    ts.s1 = e0 * (l0 / one_minus_q + fl.slope * q / (one_minus_q * one_minus_q));
    return ts;
}

}  // namespace

PartitionSums partition_sums(const Spectrum& s, double beta, double tol) {
    if (!std::isfinite(beta)) throw DomainError("beta must be finite");
    const double h0 = s.min_level();

    if (s.is_finite()) {
        // any real beta; max-shift the exponents so nothing overflows
        double m = 0.0;
        for (double h : s.head()) m = std::max(m, -beta * (h - h0));
        double s0 = 0.0, s1 = 0.0;
        for (double h : s.head()) {
            const double x = h - h0;
            const double w = std::exp(-beta * x - m);
            s0 += w;
            s1 += x * w;
        }
        return {m + std::log(s0), s1 / s0};
    }

    if (!(beta >= limits::beta_floor))
        throw BetaTooSmall("beta under the 1e-12 floor for an infinite spectrum");

    // grounded exponents are <= 0, so the shift is zero
    double s0 = 0.0, s1 = 0.0;
    std::size_t upto = s.head_size();
    const auto* lin = s.tail_rule() ? std::get_if<LinearTail>(&*s.tail_rule()) : nullptr;
    if (!lin) {
        // power or floor-only: certified truncation
        const TruncationPlan plan = plan_truncation(s, beta, tol / 4.0);
        upto = plan.cutoff_index;
    }
    for (std::size_t i = 0; i < upto; ++i) {
        const double x = s.level(i) - h0;
        const double w = std::exp(-beta * x);
        s0 += w;
        s1 += x * w;
    }
    if (lin) {
        // linear continuation sums in closed form: no truncation error at all
        const TailSums ts = linear_tail_sums(s.affine_floor(upto), upto, beta, h0);
        s0 += ts.s0;
        s1 += ts.s1;
    }
    return {std::log(s0), s1 / s0};
}

}  // namespace detail

double log_partition(const Spectrum& s, double beta, double tol) {
    if (!(tol > 0.0)) throw DomainError("tol must be positive");
    const auto ps = detail::partition_sums(s, beta, tol);
    return ps.log_s0_rel - beta * s.min_level();
}

double mean_energy(const Spectrum& s, double beta, double tol) {
    if (!(tol > 0.0)) throw DomainError("tol must be positive");
    const auto ps = detail::partition_sums(s, beta, tol);
    return s.min_level() + ps.excess_mean;
}

GibbsSolution solve_beta(const Spectrum& s, double E, double tol) {
    if (!(tol > 0.0)) throw DomainError("tol must be positive");
    const double h0 = s.min_level();
    const double target = E - h0;  // excess over the ground level
    if (!(target > 0.0)) {
        std::ostringstream os;
        os << "target energy " << E << " at or below the minimum level " << h0;
        throw TargetEnergyUnattainable(os.str());
    }
    if (s.is_finite()) {
        if (s.max_level() <= h0)
            throw TargetEnergyUnattainable("all levels equal; only the ground energy is attainable");
        if (!(E < s.max_level()))
            throw TargetEnergyUnattainable("target at or above the supremum of attainable mean energies");
    }

    const double sum_tol = tol / 10.0;  // summation error must not dominate root finding
    const auto excess = [&](double beta) {
        return detail::partition_sums(s, beta, sum_tol).excess_mean;
    };

    // phi(beta) = excess_mean(beta) - target is strictly decreasing.
    double beta0 = 1.0 / E;
    double lo, hi;
    double phi0 = excess(beta0) - target;
    constexpr int kMaxExpand = 200;
    if (phi0 == 0.0) {
        lo = hi = beta0;
    } else if (phi0 > 0.0) {
        lo = beta0;
        hi = beta0;
        int k = 0;
        do {
            if (++k > kMaxExpand) throw NonConvergence("bracket expansion exceeded the cap");
            hi *= 4.0;
        } while (excess(hi) - target > 0.0);
    } else {
        hi = beta0;
        lo = beta0;
        int k = 0;
        while (true) {
            if (++k > kMaxExpand) throw NonConvergence("bracket expansion exceeded the cap");
            if (s.is_finite()) {
                // cross into beta <= 0 once the positive side is exhausted
                lo = (lo > beta0 * 1e-6) ? lo / 4.0 : (lo > 0.0 ? -beta0 : lo * 4.0);
            } else {
                lo /= 4.0;
                if (lo < limits::beta_floor)
                    throw BetaTooSmall("solution requires beta under the floor (E too large)");
            }
            if (excess(lo) - target > 0.0) break;
        }
    }

    const double resid_tol = tol * std::max(1.0, E);
    double beta = 0.5 * (lo + hi);
    double best_beta = beta0, best_abs = std::abs(phi0);
    if (lo == hi) {
        beta = lo;
        best_beta = lo;
    } else {
        for (int it = 0; it < 300; ++it) {
            beta = 0.5 * (lo + hi);
            const double phi = excess(beta) - target;
            if (std::abs(phi) < best_abs) {
                best_abs = std::abs(phi);
                best_beta = beta;
            }
            if (std::abs(phi) <= 0.5 * resid_tol) break;
            if ((hi - lo) <= std::ldexp(std::max({1.0, std::abs(lo), std::abs(hi)}), -60)) break;
            if (phi > 0.0)
                lo = beta;
            else
                hi = beta;
        }
        beta = best_beta;
    }

    const auto ps = detail::partition_sums(s, beta, sum_tol);
    GibbsSolution sol;
    sol.beta = beta;
    sol.log_z = ps.log_s0_rel - beta * h0;
    sol.mean_energy = h0 + ps.excess_mean;
    // S = beta*mean + ln Z, computed on excesses so huge beta*h0 cancels exactly
    sol.entropy = from_nats(beta * ps.excess_mean + ps.log_s0_rel);
    sol.residual = std::abs(ps.excess_mean - target);
    return sol;
}

double gibbs_entropy(const Spectrum& s, double E, double tol) {
    return solve_beta(s, E, tol).entropy;
}

}  // namespace ebnd
