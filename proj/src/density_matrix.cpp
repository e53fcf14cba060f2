#include "ebnd/density_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "ebnd/config.hpp"
#include "ebnd/errors.hpp"

namespace ebnd {

namespace {

constexpr double kHermTol = 1e-12;

double frobenius(const HermitianMatrix& m) {
    double s = 0.0;
    for (const cplx& x : m.a) s += std::norm(x);
    return std::sqrt(s);
}

double off_diagonal_frobenius(const HermitianMatrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.dim; ++i)
        for (std::size_t j = 0; j < m.dim; ++j)
            if (i != j) s += std::norm(m.at(i, j));
    return std::sqrt(s);
}

void require_hermitian(const HermitianMatrix& m) {
    if (m.dim == 0 || m.a.size() != m.dim * m.dim)
        throw DimensionMismatch("matrix storage does not match its dimension");
    for (std::size_t i = 0; i < m.dim; ++i) {
        for (std::size_t j = i; j < m.dim; ++j) {
            const cplx d = m.at(i, j) - std::conj(m.at(j, i));
            if (std::abs(d) > kHermTol) throw NonHermitianInput("matrix is not Hermitian");
        }
    }
}

double eta(double x) { return x > 0.0 ? -x * std::log(x) : 0.0; }

}  // namespace

DensityMatrix DensityMatrix::from_matrix(HermitianMatrix m) {
    require_hermitian(m);
    double tr = 0.0;
    bool diag = true;
    for (std::size_t i = 0; i < m.dim; ++i) {
        tr += m.at(i, i).real();
        for (std::size_t j = 0; j < m.dim; ++j)
            if (i != j && std::abs(m.at(i, j)) > 0.0) diag = false;
    }
    if (std::abs(tr - 1.0) > kHermTol) throw DomainError("density matrix trace is not 1");
    DensityMatrix rho;
    rho.m_ = std::move(m);
    rho.diagonal_ = diag;
    return rho;
}

DensityMatrix DensityMatrix::diagonal(std::vector<double> probs) {
    HermitianMatrix m = HermitianMatrix::zero(probs.size());
    double tr = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        m.at(i, i) = probs[i];
        tr += probs[i];
    }
    if (std::abs(tr - 1.0) > kHermTol) throw DomainError("diagonal entries do not sum to 1");
    DensityMatrix rho;
    rho.m_ = std::move(m);
    rho.diagonal_ = true;
    return rho;
}

std::vector<double> DensityMatrix::populations() const {
    std::vector<double> p(dim());
    for (std::size_t i = 0; i < dim(); ++i) p[i] = m_.at(i, i).real();
    return p;
}

EigenSystem jacobi_eigensystem(const HermitianMatrix& input) {
    require_hermitian(input);
    if (input.dim > limits::max_eigen_dim)
        throw DimensionTooLarge("Jacobi eigensolver capped at dim 256");

    const std::size_t n = input.dim;
    HermitianMatrix a = input;
    HermitianMatrix q = HermitianMatrix::zero(n);
    for (std::size_t i = 0; i < n; ++i) q.at(i, i) = 1.0;

    const double norm = frobenius(a);
    const double target = 1e-13 * std::max(norm, 1e-300);

    for (int sweep = 0; sweep < 100 && off_diagonal_frobenius(a) > target; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t r = p + 1; r < n; ++r) {
                const cplx apr = a.at(p, r);
                const double mag = std::abs(apr);
                if (mag <= 1e-300) continue;
                const cplx phase = apr / mag;
                const double app = a.at(p, p).real();
                const double arr = a.at(r, r).real();
                // rotation angle from the symmetric Schur decomposition of
                // the phase-aligned 2x2 block
                const double tau = (arr - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const cplx s = t * c * phase;

                // A <- R^dag A R with R = [[c, s],[-conj(s), c]] on (p, r)
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a.at(k, p);
                    const cplx akr = a.at(k, r);
                    a.at(k, p) = c * akp - std::conj(s) * akr;
                    a.at(k, r) = s * akp + c * akr;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a.at(p, k);
                    const cplx ark = a.at(r, k);
                    a.at(p, k) = c * apk - s * ark;
                    a.at(r, k) = std::conj(s) * apk + c * ark;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx qkp = q.at(k, p);
                    const cplx qkr = q.at(k, r);
                    q.at(k, p) = c * qkp - std::conj(s) * qkr;
                    q.at(k, r) = s * qkp + c * qkr;
                }
            }
        }
    }

    EigenSystem es;
    es.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) es.values[i] = a.at(i, i).real();
    es.vectors = std::move(q);
    return es;
}

EigenResult jacobi_eigenvalues(const HermitianMatrix& input) {
    const EigenSystem es = jacobi_eigensystem(input);
    const std::size_t n = input.dim;
    const HermitianMatrix& q = es.vectors;

    EigenResult res;
    res.values = es.values;
    std::sort(res.values.begin(), res.values.end(), std::greater<>());

    // residual of the similarity transform against the original matrix:
    // Q^dag M Q in two passes
    double resid = 0.0;
    std::vector<cplx> mq(n * n, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const cplx mik = input.at(i, k);
            if (mik == cplx{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < n; ++j) mq[i * n + j] += mik * q.at(k, j);
        }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            cplx v{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k) v += std::conj(q.at(k, i)) * mq[k * n + j];
            if (i == j) v -= es.values[i];
            resid += std::norm(v);
        }
    }
    res.similarity_residual = std::sqrt(resid);
    return res;
}

EigenResult jacobi_eigenvalues(const DensityMatrix& m) {
    if (m.is_diagonal()) {
        EigenResult res;
        res.values = m.populations();
        std::sort(res.values.begin(), res.values.end(), std::greater<>());
        return res;
    }
    return jacobi_eigenvalues(m.matrix());
}

double von_neumann_entropy(const DensityMatrix& rho) {
    double h = 0.0;
    if (rho.is_diagonal()) {
        for (double p : rho.populations()) h += eta(std::max(p, 0.0));
        return from_nats(h);
    }
    for (double lam : jacobi_eigenvalues(rho).values) h += eta(std::max(lam, 0.0));
    return from_nats(h);
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw DimensionMismatch("trace distance needs equal dims");
    if (rho.is_diagonal() && sigma.is_diagonal()) {
        const auto p = rho.populations();
        const auto q = sigma.populations();
        double s = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
        return 0.5 * s;
    }
    HermitianMatrix d = rho.matrix();
    for (std::size_t i = 0; i < d.a.size(); ++i) d.a[i] -= sigma.matrix().a[i];
    double s = 0.0;
    for (double lam : jacobi_eigenvalues(d).values) s += std::abs(lam);
    return 0.5 * s;
}

MirskyCheck mirsky_passive_check(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw DimensionMismatch("Mirsky check needs equal dims");
    auto r = jacobi_eigenvalues(rho).values;
    auto s = jacobi_eigenvalues(sigma).values;
    double tv = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) tv += std::abs(r[i] - s[i]);
    return {0.5 * tv, trace_distance(rho, sigma)};
}

PassiveEnergy passive_energy_check(const DensityMatrix& rho, const Spectrum& s) {
    const std::size_t n = rho.dim();
    if (s.is_finite() && s.size() < n)
        throw DimensionMismatch("spectrum has fewer levels than the state dimension");
    PassiveEnergy pe;
    const auto pops = rho.populations();
    auto sorted = jacobi_eigenvalues(rho).values;  // non-increasing
    for (std::size_t i = 0; i < n; ++i) {
        pe.energy += s.level(i) * pops[i];
        pe.sorted_energy += s.level(i) * std::max(sorted[i], 0.0);
    }
    return pe;
}

}  // namespace ebnd
