#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "ebnd/spectrum.hpp"

namespace ebnd {

using cplx = std::complex<double>;

// Dense Hermitian matrix, row-major dim x dim.
struct HermitianMatrix {
    std::size_t dim = 0;
    std::vector<cplx> a;

    cplx& at(std::size_t i, std::size_t j) { return a[i * dim + j]; }
    const cplx& at(std::size_t i, std::size_t j) const { return a[i * dim + j]; }
    static HermitianMatrix zero(std::size_t dim) {
        return {dim, std::vector<cplx>(dim * dim, cplx{0.0, 0.0})};
    }
};

// Small dense quantum state: Hermitian within 1e-12, unit trace within
// 1e-12; eigenvalues may dip to -1e-10 from sampling round-off and are
// clamped to zero wherever entropies are taken. is_diagonal marks the fast
// path used by large diagonal witnesses.
class DensityMatrix {
public:
    static DensityMatrix from_matrix(HermitianMatrix m);
    static DensityMatrix diagonal(std::vector<double> probs);

    std::size_t dim() const { return m_.dim; }
    bool is_diagonal() const { return diagonal_; }
    const HermitianMatrix& matrix() const { return m_; }
    // Diagonal entries as reals (the Hamiltonian-basis populations).
    std::vector<double> populations() const;

private:
    DensityMatrix() = default;
    HermitianMatrix m_;
    bool diagonal_ = false;
};

struct EigenResult {
    std::vector<double> values;  // non-increasing
    double similarity_residual = 0.0;  // ||Q^dag M Q - diag|| over the original M
};

// Full spectral decomposition: values[k] belongs to column k of vectors.
struct EigenSystem {
    std::vector<double> values;
    HermitianMatrix vectors;  // unitary, columns are eigenvectors
};

// Eigenvalues by cyclic complex Jacobi rotations, iterated until the
// off-diagonal Frobenius norm falls below 1e-13 ||m||. dim <= 256.
EigenResult jacobi_eigenvalues(const HermitianMatrix& m);
EigenResult jacobi_eigenvalues(const DensityMatrix& m);
EigenSystem jacobi_eigensystem(const HermitianMatrix& m);

// S(rho) = sum eta(lambda_i), configured base; diagonal fast path sums directly.
double von_neumann_entropy(const DensityMatrix& rho);

// Half the trace norm of rho - sigma.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// TV distance between the non-increasingly sorted spectra, and the trace
// distance; the first never exceeds the second (Mirsky).
struct MirskyCheck {
    double tv_sorted = 0.0;
    double td = 0.0;
};
MirskyCheck mirsky_passive_check(const DensityMatrix& rho, const DensityMatrix& sigma);

// Energies of the passive rearrangement and of the state itself against the
// first dim(rho) levels of s: Tr(H rho_sorted) <= Tr(H rho).
struct PassiveEnergy {
    double sorted_energy = 0.0;
    double energy = 0.0;
};
PassiveEnergy passive_energy_check(const DensityMatrix& rho, const Spectrum& s);

namespace limits {
inline constexpr std::size_t max_eigen_dim = 256;
}

}  // namespace ebnd
