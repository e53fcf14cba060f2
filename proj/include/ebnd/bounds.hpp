#pragma once

#include <optional>

#include "ebnd/gibbs.hpp"
#include "ebnd/spectrum.hpp"

namespace ebnd {

enum class BoundBranch { SubThreshold, Saturated };

inline const char* to_string(BoundBranch b) {
    return b == BoundBranch::SubThreshold ? "SubThreshold" : "Saturated";
}

// The bound kappa_E(eps) together with its branch and diagnostics.
// Invariants: branch == SubThreshold iff eps <= threshold_a (ties resolve to
// SubThreshold; the two branches agree there), value <= F_H(E) with equality
// when Saturated, and value is non-decreasing in both eps and E.
struct BoundResult {
    double value = 0.0;  // configured log base
    BoundBranch branch = BoundBranch::SubThreshold;
    double threshold_a = 0.0;
    double epsilon = 0.0;
    double E = 0.0;
    double F = 0.0;  // diagnostic: F_H(E), the saturated value
    std::optional<double> f_plus_argument;  // E/eps when SubThreshold and eps > 0
};

// Binary entropy h(eps) with the continuous extension h(0) = h(1) = 0.
double binary_entropy(double eps);

// a_H(E) = 1 - 1/Z_H(E), strictly inside (0,1).
double threshold_a(const Spectrum& s, double E, double tol);

// F_H(E); alias of gibbs_entropy, re-exported for bound composition.
double capacity_F(const Spectrum& s, double E, double tol);

// F^+_H(E) = F for the shifted spectrum H_plus, solved without re-grounding.
// Defined for E >= h_1; at E = h_1 the constraint pins all mass onto the
// lowest shifted level(s), giving log of its multiplicity. For finite
// spectra the value saturates at log of the shifted alphabet size once E
// reaches the beta = 0 mean of H_plus (the constrained supremum stops
// growing there).
double capacity_F_plus(const Spectrum& s, double E, double tol);

// kappa_E(eps): eps F^+(E/eps) + h(eps) below the threshold, F_H(E) above.
BoundResult kappa(const Spectrum& s, double E, double eps, double tol);

// G_E(delta) = delta F^+(E/delta) + h(delta) on (0, min(1, E/h_1)];
// identical arithmetic to the sub-threshold branch of kappa.
double g_profile(const Spectrum& s, double E, double delta, double tol);

// Maximizer of G_E over its domain by golden-section search (G_E is
// concave); located to absolute precision 1e-8.
double argmax_G(const Spectrum& s, double E, double tol);

// |a F^+(E/a) + h(a) - F(E)| at a = threshold_a(s, E).
double identity_residual(const Spectrum& s, double E, double tol);

// Closed forms for the oscillator spectrum {0, 1, 2, ...}, used as
// regression oracles against the generic pipeline.
struct OscillatorReference {
    double g = 0.0;       // (E+1) log(E+1) - E log E
    double F_plus = 0.0;  // E h(1/E), defined for E >= 1
    double Z = 0.0;       // 1 + E
    double a = 0.0;       // E / (1 + E)
    double kappa = 0.0;   // E h(eps/E) + h(eps) below a, g(E) above
};
OscillatorReference oscillator_reference(double E, double eps);

}  // namespace ebnd
