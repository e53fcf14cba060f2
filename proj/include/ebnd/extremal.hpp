#pragma once

#include "ebnd/distribution.hpp"
#include "ebnd/spectrum.hpp"

namespace ebnd {

// The entropy-maximizing distribution w_E(x) = e^{lambda_0 + lambda f(x)}
// on the truncation plan; entropy matches gibbs_entropy within 2 tol and the
// expected level matches E within tol.
Distribution max_entropy_distribution(const Spectrum& s, double E, double tol);

// Max-entropy distribution for the shifted constraint f(x+1) at mean x,
// tagged with support_offset 1. Handles the x = h_1 pinned case and the
// finite saturation regime (uniform) consistently with capacity_F_plus.
Distribution shifted_max_entropy(const Spectrum& s, double x, double tol);

// Extremal semicontinuity witnesses: rho majorizes the bound, sigma is the
// ground point mass. For eps <= a: rho = (1-eps, eps * w~_{E/eps}(.-1));
// for eps > a: rho = w_E, realizing TV distance a <= eps.
struct ExtremalPair {
    Distribution rho_diag;
    Distribution sigma_diag;
};
ExtremalPair extremal_pair(const Spectrum& s, double E, double eps, double tol);

// Extremal joint distribution for the Fano bound: mass (1 - eps') at (0,0)
// and eps' w~_{E/eps'}(n-1) at (n, 0), with eps' = min(eps, a).
JointDistribution extremal_joint(const Spectrum& s, double E, double eps, double tol);

}  // namespace ebnd
