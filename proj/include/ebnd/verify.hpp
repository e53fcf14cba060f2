#pragma once

#include <cstdint>
#include <string>

#include "ebnd/density_matrix.hpp"
#include "ebnd/spectrum.hpp"

namespace ebnd {

// Aggregate of a randomized no-violation run. A trial counts as a violation
// when achieved - bound > rtol * max(1, bound) + atol (atol = rtol = tol).
struct VerificationReport {
    std::uint64_t trials = 0;
    std::uint64_t violations = 0;
    double max_slack = 0.0;  // largest bound - achieved over trials
    double min_slack = 0.0;  // smallest (negative on a violation)
    std::uint64_t seed = 0;
    std::string notes;
};

// Numerically maximized H(X) over the truncated simplex
//   { p in Delta_N : sum f(i) p(i) <= E, p(0) >= 1 - eps }
// by projected ascent in the simplex geometry (multiplicative gradient
// steps with an exact feasibility projection per iterate), 10 random
// restarts and a decaying 1/k-type step schedule. Deliberately independent
// of the bound formula; used to cross-validate kappa.
double delta_oracle(const Spectrum& s, double E, double eps, std::size_t cutoff_n, double tol);

// Random pairs (p, q), p conditioned to mean f <= E: checks
// H(p) - H(q) <= kappa_E(TV(p,q)) and the two-sided form when q also
// satisfies the constraint. The report carries failures; nothing throws.
VerificationReport sample_verify_classical(const Spectrum& s, double E, std::uint64_t trials,
                                           std::uint64_t seed, double tol);

// Random joint distributions with the X marginal conditioned to mean f <= E:
// checks H(X|Y) <= kappa_E(P(X != Y)).
VerificationReport sample_verify_fano(const Spectrum& s, double E, std::uint64_t trials,
                                      std::uint64_t seed, double tol);

// Random density matrices (projected Gaussian, diagonal, near-extremal and
// exact extremal draws) on the first dim levels of s, with rho conditioned
// to Tr H rho <= E: checks S(rho) - S(sigma) <= kappa_E(trace distance) and
// the two-sided form when both energies are constrained.
VerificationReport sample_verify_quantum(const Spectrum& s, double E, std::size_t dim,
                                         std::uint64_t trials, std::uint64_t seed, double tol);

namespace detail {
// Per-trial deterministic substream: results do not depend on scheduling.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);
}

}  // namespace ebnd
