#include "ebnd/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "ebnd/bounds.hpp"
#include "ebnd/config.hpp"
#include "ebnd/distribution.hpp"
#include "ebnd/errors.hpp"
#include "ebnd/extremal.hpp"
#include "ebnd/gibbs.hpp"

namespace ebnd {

namespace detail {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 finalizer over the pair
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double normal(std::mt19937_64& rng) {
    // Box-Muller; hand-rolled so streams are identical across standard libraries
    double u1 = uniform01(rng);
    while (u1 <= 0.0) u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

double entropy_nats(const std::vector<double>& p) {
    double h = 0.0;
    for (double x : p)
        if (x > 0.0) h -= x * std::log(x);
    return h;
}

// ---- delta_oracle machinery ------------------------------------------------

struct OracleProblem {
    std::vector<double> f;  // level values; f[0] = 0
    double E = 0.0;
    double floor0 = 0.0;  // 1 - eps
};

// Exact KL (information) projection of weights v onto
//   { p >= 0, sum p = 1, p0 >= floor0, <f,p> <= E }.
// The projection tilts v by e^{-mu f} with the floor handled by case
// analysis; the energy is monotone decreasing in mu, so a warm-started
// bisection pins the active multiplier.
class KlProjection {
public:
    explicit KlProjection(const OracleProblem& prob) : prob_(prob) {}

    void operator()(std::vector<double>& v) {
        if (build(0.0, v) <= prob_.E) {
            v = out_;
            mu_ = 0.0;
            return;
        }
        double lo = 0.0;
        double hi = std::max(mu_, 1e-6);
        int guard = 0;
        while (build(hi, v) > prob_.E) {
            lo = hi;
            hi *= 2.0;
            if (++guard > 400) throw NonConvergence("energy tilt multiplier diverged");
        }
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (build(mid, v) > prob_.E)
                lo = mid;
            else
                hi = mid;
            if (hi - lo < 1e-16 * std::max(1.0, hi)) break;
        }
        build(hi, v);
        v = out_;
        mu_ = hi;
    }

private:
    double build(double mu, const std::vector<double>& v) {
        const std::size_t n = v.size();
        out_.resize(n);
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            out_[i] = v[i] * std::exp(-mu * prob_.f[i]);
            sum += out_[i];
        }
        if (out_[0] / sum < prob_.floor0) {
            const double rest = sum - out_[0];
            const double scale = (1.0 - prob_.floor0) / rest;
            out_[0] = prob_.floor0;
            for (std::size_t i = 1; i < n; ++i) out_[i] *= scale;
        } else {
            for (std::size_t i = 0; i < n; ++i) out_[i] /= sum;
        }
        double energy = 0.0;
        for (std::size_t i = 0; i < n; ++i) energy += prob_.f[i] * out_[i];
        return energy;
    }

    const OracleProblem& prob_;
    std::vector<double> out_;
    double mu_ = 0.0;
};

// Multiplicative (entropic mirror) ascent: the gradient step in the
// simplex geometry is p -> p^(1-eta) up to normalization, followed by the
// exact feasibility projection. The decaying step keeps the early moves
// aggressive and the late ones contractive.
double ascend(const OracleProblem& prob, std::vector<double> p, int iterations, double tol,
              bool require_converged) {
    KlProjection project(prob);
    project(p);
    double best = entropy_nats(p);
    double sweep_ref = best;
    for (int k = 1; k <= iterations; ++k) {
        const double eta = 12.0 / (12.0 + k);
        for (double& x : p) x = std::pow(std::max(x, 1e-300), 1.0 - eta);
        project(p);
        const double h = entropy_nats(p);
        best = std::max(best, h);
        if (k % 25 == 0) {
            if (h - sweep_ref < tol) return best;
            sweep_ref = h;
        }
    }
    if (require_converged)
        throw NonConvergence("oracle ascent hit the iteration cap");
    return best;
}

}  // namespace

double delta_oracle(const Spectrum& s, double E, double eps, std::size_t cutoff_n, double tol) {
    if (!(E > 0.0)) throw DomainError("delta_oracle requires E > 0");
    if (!(eps >= 0.0) || !(eps <= 1.0)) throw DomainError("eps outside [0,1]");
    if (eps == 0.0) return 0.0;

    OracleProblem prob;
    const std::size_t n = s.is_finite() ? std::min(s.size(), cutoff_n + 1) : cutoff_n + 1;
    prob.f.resize(n);
    for (std::size_t i = 0; i < n; ++i) prob.f[i] = s.level(i);
    prob.E = E;
    prob.floor0 = 1.0 - eps;

    const double conv_tol = std::min(tol, 1e-11);

    // concave objective: restarts only guard the implementation, all
    // converge to the same maximum
    double best = 0.0;
    std::mt19937_64 rng(detail::mix_seed(0x5eedu, 0));
    for (int restart = 0; restart < 10; ++restart) {
        std::vector<double> start(n);
        if (restart == 0) {
            for (std::size_t i = 0; i < n; ++i) start[i] = 1.0 / static_cast<double>(n);
        } else {
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                start[i] = -std::log(std::max(uniform01(rng), 1e-300));
                sum += start[i];
            }
            for (std::size_t i = 0; i < n; ++i) start[i] /= sum;
        }
        best = std::max(best, ascend(prob, std::move(start), 400, conv_tol, false));
    }
    // long polish from the uniform start
    std::vector<double> start(n, 1.0 / static_cast<double>(n));
    best = std::max(best, ascend(prob, std::move(start), 4000, conv_tol, true));
    return from_nats(best);
}

namespace {

// ---- sampling helpers -------------------------------------------------------

std::vector<double> random_distribution(std::mt19937_64& rng, std::size_t n, bool spiky) {
    std::vector<double> p(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double w = -std::log(std::max(uniform01(rng), 1e-300));
        if (spiky) w = w * w * w;
        p[i] = w;
        sum += w;
    }
    for (double& x : p) x /= sum;
    return p;
}

// Mix with the ground point mass at the minimal coefficient reaching
// mean f <= E; keeps boundary states in the sample.
void condition_energy(std::vector<double>& p, const std::vector<double>& f, double E) {
    double mean = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) mean += f[i] * p[i];
    if (mean <= E) return;
    const double keep = E / mean;
    for (double& x : p) x *= keep;
    p[0] += 1.0 - keep;
}

double tv(const std::vector<double>& p, const std::vector<double>& q) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return 0.5 * s;
}

struct SlackTracker {
    VerificationReport rep;
    double atol, rtol;
    bool any = false;

    SlackTracker(std::uint64_t seed, double tol) : atol(tol), rtol(tol) { rep.seed = seed; }

    void record(double bound, double achieved) {
        const double slack = bound - achieved;
        if (!any) {
            rep.max_slack = rep.min_slack = slack;
            any = true;
        } else {
            rep.max_slack = std::max(rep.max_slack, slack);
            rep.min_slack = std::min(rep.min_slack, slack);
        }
        if (achieved - bound > rtol * std::max(1.0, bound) + atol) ++rep.violations;
    }
};

// kappa with everything independent of epsilon precomputed once.
class KappaEvaluator {
public:
    KappaEvaluator(const Spectrum& s, double E, double tol)
        : s_(s), E_(E), tol_(tol), a_(threshold_a(s, E, tol)), f_(capacity_F(s, E, tol)) {}

    double operator()(double eps) const {
        if (eps <= 0.0) return 0.0;
        if (eps > a_) return f_;
        return eps * capacity_F_plus(s_, E_ / eps, tol_) + binary_entropy(eps);
    }

    double threshold() const { return a_; }

private:
    const Spectrum& s_;
    double E_, tol_;
    double a_, f_;
};

std::size_t classical_support(const Spectrum& s, double E, double tol) {
    if (s.is_finite()) return s.size();
    const GibbsSolution sol = solve_beta(s, E, tol);
    const std::size_t cut = plan_truncation(s, sol.beta, 1e-10).cutoff_index;
    return std::min<std::size_t>(std::max<std::size_t>(2 * cut, 16), 512);
}

}  // namespace

VerificationReport sample_verify_classical(const Spectrum& s, double E, std::uint64_t trials,
                                           std::uint64_t seed, double tol) {
    SlackTracker tracker(seed, tol);
    tracker.rep.notes = "classical semicontinuity/continuity sampling";
    if (trials == 0) return tracker.rep;

    const KappaEvaluator kap(s, E, tol);
    const std::size_t n = classical_support(s, E, tol);
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = s.level(i);

    for (std::uint64_t t = 0; t < trials; ++t) {
        std::mt19937_64 rng(detail::mix_seed(seed, t));
        const std::size_t np = 2 + rng() % (n - 1);
        const std::size_t nq = 2 + rng() % (n - 1);
        std::vector<double> p = random_distribution(rng, np, (t % 3) == 1);
        std::vector<double> q = random_distribution(rng, nq, (t % 3) == 2);
        p.resize(n, 0.0);
        q.resize(n, 0.0);
        condition_energy(p, f, E);

        const double eps = tv(p, q);
        const double bound = kap(eps);
        const double hp = from_nats(entropy_nats(p));
        const double hq = from_nats(entropy_nats(q));
        tracker.record(bound, hp - hq);
        ++tracker.rep.trials;

        double mean_q = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean_q += f[i] * q[i];
        if (mean_q <= E) {
            tracker.record(bound, std::abs(hp - hq));
            ++tracker.rep.trials;
        }
    }
    return tracker.rep;
}

VerificationReport sample_verify_fano(const Spectrum& s, double E, std::uint64_t trials,
                                      std::uint64_t seed, double tol) {
    SlackTracker tracker(seed, tol);
    tracker.rep.notes = "Fano-type conditional entropy sampling";
    if (trials == 0) return tracker.rep;

    const KappaEvaluator kap(s, E, tol);
    const std::size_t n = std::min<std::size_t>(classical_support(s, E, tol), 48);
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = s.level(i);

    for (std::uint64_t t = 0; t < trials; ++t) {
        std::mt19937_64 rng(detail::mix_seed(seed ^ 0xfa70ULL, t));
        const std::size_t rows = 2 + rng() % (n - 1);
        const std::size_t cols = 2 + rng() % 7;
        std::vector<double> j = random_distribution(rng, rows * cols, (t % 2) == 1);

        // condition the X marginal: mix toward the (0,0) point mass
        double mean_x = 0.0;
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t k = 0; k < cols; ++k) mean_x += f[i] * j[i * cols + k];
        if (mean_x > E) {
            const double keep = E / mean_x;
            for (double& x : j) x *= keep;
            j[0] += 1.0 - keep;
        }

        double p_neq = 0.0;
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t k = 0; k < cols; ++k)
                if (i != k) p_neq += j[i * cols + k];

        // H(X|Y) = H(XY) - H(Y)
        std::vector<double> py(cols, 0.0);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t k = 0; k < cols; ++k) py[k] += j[i * cols + k];
        const double achieved = from_nats(entropy_nats(j) - entropy_nats(py));

        tracker.record(kap(std::min(p_neq, 1.0)), achieved);
        ++tracker.rep.trials;
    }
    return tracker.rep;
}

namespace {

HermitianMatrix random_gue(std::mt19937_64& rng, std::size_t dim) {
    HermitianMatrix m = HermitianMatrix::zero(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m.at(i, i) = normal(rng);
        for (std::size_t j = i + 1; j < dim; ++j) {
            const cplx x{normal(rng) * 0.7071067811865476, normal(rng) * 0.7071067811865476};
            m.at(i, j) = x;
            m.at(j, i) = std::conj(x);
        }
    }
    return m;
}

// Gaussian Hermitian draw projected to the PSD unit-trace cone: negative
// eigenvalues clamped to zero, then renormalized.
DensityMatrix random_state(std::mt19937_64& rng, std::size_t dim) {
    const HermitianMatrix g = random_gue(rng, dim);
    const EigenSystem es = jacobi_eigensystem(g);
    std::vector<double> lam(dim);
    double sum = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        lam[i] = std::max(es.values[i], 0.0);
        sum += lam[i];
    }
    if (sum <= 1e-12) {
        // every eigenvalue clamped away (possible at small dim): fall back
        // to the maximally mixed state
        std::fill(lam.begin(), lam.end(), 1.0 / static_cast<double>(dim));
        sum = 1.0;
    }
    for (double& x : lam) x /= sum;

    HermitianMatrix m = HermitianMatrix::zero(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i; j < dim; ++j) {
            cplx v{0.0, 0.0};
            for (std::size_t k = 0; k < dim; ++k)
                v += lam[k] * es.vectors.at(i, k) * std::conj(es.vectors.at(j, k));
            if (i == j) {
                m.at(i, i) = v.real();
            } else {
                m.at(i, j) = v;
                m.at(j, i) = std::conj(v);
            }
        }
    }
    return DensityMatrix::from_matrix(std::move(m));
}

DensityMatrix random_diagonal_state(std::mt19937_64& rng, std::size_t dim, bool spiky) {
    return DensityMatrix::diagonal(random_distribution(rng, dim, spiky));
}

// Mix with the ground projector at the minimal coefficient achieving
// Tr H rho <= E.
DensityMatrix condition_state(const DensityMatrix& rho, const std::vector<double>& h, double E) {
    double energy = 0.0;
    const auto pops = rho.populations();
    for (std::size_t i = 0; i < rho.dim(); ++i) energy += h[i] * pops[i];
    if (energy <= E) return rho;
    const double keep = E / energy;
    HermitianMatrix m = rho.matrix();
    for (cplx& x : m.a) x *= keep;
    m.at(0, 0) += 1.0 - keep;
    return DensityMatrix::from_matrix(std::move(m));
}

std::vector<double> truncated_probs(const Distribution& d, std::size_t dim) {
    std::vector<double> p(dim, 0.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        p[i] = d.at(i);
        sum += p[i];
    }
    for (double& x : p) x /= sum;
    return p;
}

}  // namespace

VerificationReport sample_verify_quantum(const Spectrum& s, double E, std::size_t dim,
                                         std::uint64_t trials, std::uint64_t seed, double tol) {
    SlackTracker tracker(seed, tol);
    tracker.rep.notes = "quantum semicontinuity/continuity sampling";
    if (trials == 0) return tracker.rep;
    if (dim < 2) throw DomainError("quantum sampling needs dim >= 2");
    if (dim > 64) throw DimensionTooLarge("quantum sampling is desk-scale: dim <= 64");
    if (s.is_finite() && s.size() < dim)
        throw DimensionMismatch("spectrum has fewer levels than the sampling dimension");

    const KappaEvaluator kap(s, E, tol);
    std::vector<double> h(dim);
    for (std::size_t i = 0; i < dim; ++i) h[i] = s.level(i);

    for (std::uint64_t t = 0; t < trials; ++t) {
        std::mt19937_64 rng(detail::mix_seed(seed ^ 0x9a77ULL, t));
        DensityMatrix rho = [&]() -> DensityMatrix {
            switch (t % 4) {
                case 0: return random_state(rng, dim);
                case 1: return random_diagonal_state(rng, dim, false);
                case 2: {
                    // near-extremal: witness head perturbed toward uniform
                    const double eps_w = 0.05 + 0.9 * uniform01(rng);
                    const auto pair = extremal_pair(s, E, eps_w, tol);
                    auto p = truncated_probs(pair.rho_diag, dim);
                    const double mix = 1e-3 * uniform01(rng);
                    for (double& x : p)
                        x = (1.0 - mix) * x + mix / static_cast<double>(dim);
                    return DensityMatrix::diagonal(std::move(p));
                }
                default: {
                    const double eps_w = 0.05 + 0.9 * uniform01(rng);
                    const auto pair = extremal_pair(s, E, eps_w, tol);
                    return DensityMatrix::diagonal(truncated_probs(pair.rho_diag, dim));
                }
            }
        }();
        rho = condition_state(rho, h, E);

        DensityMatrix sigma = (t % 2 == 0) ? random_state(rng, dim)
                                           : random_diagonal_state(rng, dim, (t % 4) == 1);

        const double eps = trace_distance(rho, sigma);
        const double bound = kap(eps);
        const double sr = von_neumann_entropy(rho);
        const double ss = von_neumann_entropy(sigma);
        tracker.record(bound, sr - ss);
        ++tracker.rep.trials;

        double energy_sigma = 0.0;
        const auto pops = sigma.populations();
        for (std::size_t i = 0; i < dim; ++i) energy_sigma += h[i] * pops[i];
        if (energy_sigma <= E) {
            tracker.record(bound, std::abs(sr - ss));
            ++tracker.rep.trials;
        }
    }
    return tracker.rep;
}

}  // namespace ebnd
