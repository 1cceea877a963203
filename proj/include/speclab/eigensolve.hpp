#pragma once

#include "speclab/assembly.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace speclab {

struct SolverInfo {
    std::string method;
    int iterations = 0;
    double tolerance = 0.0;
    double shift = 0.0;
    int block_size = 0;
    Eigen::Index basis_size = 0;
};

/// Lowest eigenpairs of A x = λ B x: ascending eigenvalues, B-orthonormal
/// eigenvectors (one column per pair, in dof numbering) with the
/// largest-magnitude component made positive.
struct SpectralResult {
    std::vector<double> eigenvalues;
    Eigen::MatrixXd eigenvectors;
    std::vector<double> residuals;  // ‖A x − λ B x‖₂
    SolverInfo info;

    std::size_t size() const { return eigenvalues.size(); }
};

/// Dense reference: Cholesky reduction B = LLᵀ and a symmetric eigensolve of
/// L⁻¹AL⁻ᵀ restricted to the lowest k pairs (LAPACK dsygvx).
SpectralResult solve_dense(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, int k);
SpectralResult solve_dense(const SparseSymMatrix& A, const SparseSymMatrix& B, int k);

struct SparseOptions {
    double shift = 0.0;
    double tolerance = 1e-8;  // on ‖Ax − λBx‖ / ((‖A‖∞ + |λ|‖B‖∞)‖x‖)
    int max_iterations = 0;  // block steps; 0 means 50·k
    int block_size = 4;
    std::uint64_t seed = 0x5eedu;
};

/// Block shift-invert Lanczos in the B-inner product with full
/// reorthogonalization. The factorization of A − σB is computed once and
/// reused for every application of (A − σB)⁻¹B.
SpectralResult solve_sparse(const SparseSymMatrix& A, const SparseSymMatrix& B, int k, const SparseOptions& options = {});

/// ‖A x − λ B x‖₂.
double residual_norm(const SparseSymMatrix& A, const SparseSymMatrix& B, double lambda, const Eigen::VectorXd& x);

/// Makes the largest-magnitude component of every column positive.
void normalize_signs(Eigen::MatrixXd& vectors);

}  // namespace speclab
