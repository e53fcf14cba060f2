#include "ebnd/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ebnd/bounds.hpp"
#include "ebnd/errors.hpp"
#include "ebnd/gibbs.hpp"

namespace ebnd {

namespace {

// Gibbs weights e^{-beta (h_i - h_0)} / S0 over the truncation plan for the
// solved beta; the complement of the represented mass is the certified tail.
Distribution gibbs_weights(const Spectrum& s, double E, double tol, std::size_t offset) {
    const double head_tol = std::min(tol, 1e-13);
    const GibbsSolution sol = solve_beta(s, E, tol);
    const auto ps = detail::partition_sums(s, sol.beta, head_tol);

    std::size_t upto;
    if (s.is_finite()) {
        upto = s.size();
    } else if (sol.beta >= limits::beta_floor) {
        upto = plan_truncation(s, sol.beta, head_tol).cutoff_index;
    } else {
        throw BetaTooSmall("witness construction needs beta above the floor");
    }

    const double h0 = s.min_level();
    std::vector<double> w(upto);
    double sum = 0.0;
    for (std::size_t i = 0; i < upto; ++i) {
        w[i] = std::exp(-sol.beta * (s.level(i) - h0) - ps.log_s0_rel);
        sum += w[i];
    }
    const double tail = std::clamp(1.0 - sum, 0.0, 1.0);
    return Distribution::from_weights(offset, std::move(w), tail);
}

}  // namespace

Distribution max_entropy_distribution(const Spectrum& s, double E, double tol) {
    return gibbs_weights(s, E, tol, 0);
}

Distribution shifted_max_entropy(const Spectrum& s, double x, double tol) {
    const Spectrum sp = shift_plus(s);
    const double h1 = sp.min_level();
    if (x < h1 * (1.0 - 1e-10) || (h1 == 0.0 && x < 0.0))
        throw ArgumentBelowGap("shifted witness argument below the spectral gap");
    if (x <= h1 * (1.0 + 1e-10) || x <= h1) {
        // pinned onto the lowest shifted level(s)
        const std::size_t g = sp.ground_multiplicity();
        return Distribution::from_weights(1, std::vector<double>(g, 1.0), 0.0);
    }
    if (sp.is_finite()) {
        const auto& head = sp.head();
        const double mean0 =
            std::accumulate(head.begin(), head.end(), 0.0) / static_cast<double>(head.size());
        if (x >= mean0)
            return Distribution::from_weights(1, std::vector<double>(head.size(), 1.0), 0.0);
    }
    return gibbs_weights(sp, x, tol, 1);
}

ExtremalPair extremal_pair(const Spectrum& s, double E, double eps, double tol) {
    if (!(E > 0.0)) throw DomainError("extremal pair requires E > 0");
    if (!(eps >= 0.0) || !(eps <= 1.0)) throw DomainError("eps outside [0,1]");

    if (eps == 0.0) {
        return {Distribution::point_mass(0), Distribution::point_mass(0)};
    }
    const double a = threshold_a(s, E, tol);
    Distribution rho = [&] {
        if (eps <= a) {
            const Distribution wt = shifted_max_entropy(s, E / eps, tol);
            std::vector<double> w(wt.size() + 1);
            w[0] = 1.0 - eps;
            for (std::size_t i = 0; i < wt.size(); ++i) w[i + 1] = eps * wt.probs()[i];
            return Distribution::from_weights(0, std::move(w), eps * wt.certified_tail());
        }
        return max_entropy_distribution(s, E, tol);
    }();
    return {std::move(rho), Distribution::point_mass(0)};
}

JointDistribution extremal_joint(const Spectrum& s, double E, double eps, double tol) {
    if (!(E > 0.0)) throw DomainError("extremal joint requires E > 0");
    if (!(eps >= 0.0) || !(eps <= 1.0)) throw DomainError("eps outside [0,1]");

    if (eps == 0.0) {
        return JointDistribution::from_weights(1, 1, {1.0}, 0.0);
    }
    const double a = threshold_a(s, E, tol);
    const double eps_star = std::min(eps, a);
    const Distribution wt = shifted_max_entropy(s, E / eps_star, tol);
    std::vector<double> w(wt.size() + 1);  // single column: Y = 0
    w[0] = 1.0 - eps_star;
    for (std::size_t i = 0; i < wt.size(); ++i) w[i + 1] = eps_star * wt.probs()[i];
    return JointDistribution::from_weights(wt.size() + 1, 1, std::move(w),
                                           eps_star * wt.certified_tail());
}

}  // namespace ebnd
