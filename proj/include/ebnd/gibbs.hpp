#pragma once

#include "ebnd/spectrum.hpp"

namespace ebnd {

// Solved Gibbs multiplier for the equation  sum h_i e^{-beta h_i} = E sum e^{-beta h_i}.
// Classically lambda = -beta, lambda_0 = -log_z, with w_E(x) = e^{lambda_0 + lambda f(x)}.
struct GibbsSolution {
    double beta = 0.0;
    double log_z = 0.0;        // natural-log partition value
    double mean_energy = 0.0;  // achieved mean, reproduces the target within tol
    double entropy = 0.0;      // in the configured log base
    double residual = 0.0;     // |mean_energy - target|

    double lambda() const { return -beta; }
    double lambda0() const { return -log_z; }
};

// ln sum_i e^{-beta h_i}, max-shifted, absolute error certified < tol.
// beta > 0 required for infinite spectra (BetaTooSmall under the floor);
// any real beta for finite spectra.
double log_partition(const Spectrum& s, double beta, double tol);

// (sum h_i e^{-beta h_i}) / (sum e^{-beta h_i}); strictly decreasing in beta.
double mean_energy(const Spectrum& s, double beta, double tol);

// Solves the mean-energy equation by bracketing bisection: start from
// beta_0 = 1/E, expand the bracket by factors of 4 until the sign changes,
// then bisect to 2^-60 relative bracket width or |mean - E| <= tol*max(1,E),
// whichever comes first. Finite spectra admit beta <= 0 (E at or above the
// beta = 0 arithmetic mean); infinite spectra require beta above the floor.
GibbsSolution solve_beta(const Spectrum& s, double E, double tol);

// F_H(E) = S(gamma_H(E)) = beta_H(E) E + ln Z_H(E), in the configured base.
double gibbs_entropy(const Spectrum& s, double E, double tol);

namespace detail {
// Partition sums relative to the minimum level: ln sum e^{-beta (h_i - h_0)}
// and sum (h_i - h_0) e^{-beta (h_i - h_0)} / sum e^{-beta (h_i - h_0)}.
// Formulated on excesses so targets close to the minimum do not cancel.
struct PartitionSums {
    double log_s0_rel = 0.0;
    double excess_mean = 0.0;
};
PartitionSums partition_sums(const Spectrum& s, double beta, double tol);
}  // namespace detail

}  // namespace ebnd
