#include "speclab/eigensolve.hpp"

#include "speclab/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace speclab {

void normalize_signs(Eigen::MatrixXd& vectors)
{
    for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
        Eigen::Index imax = 0;
        vectors.col(c).cwiseAbs().maxCoeff(&imax);
        if (vectors(imax, c) < 0.0) vectors.col(c) *= -1.0;
    }
}

double residual_norm(const SparseSymMatrix& A, const SparseSymMatrix& B, double lambda, const Eigen::VectorXd& x)
{
    return (A.multiply(x) - lambda * B.multiply(x)).norm();
}

// ---------------------------------------------------------------- dense

SpectralResult solve_dense(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, int k)
{
    const Eigen::Index n = A.rows();
    if (A.cols() != n || B.rows() != n || B.cols() != n) raise(ErrorKind::parameter, "A and B must be square and equal-sized");
    if (k < 0 || k > n) raise(ErrorKind::parameter, "requested " + std::to_string(k) + " pairs of a size-" + std::to_string(n) + " problem");

    SpectralResult result;
    result.info.method = "dense-cholesky-dsygvx";
    result.eigenvectors.resize(n, k);
    if (k == 0) return result;

    Eigen::MatrixXd a = A;
    Eigen::MatrixXd b = B;
    const auto ln = static_cast<lapack_int>(n);
    std::vector<double> w(static_cast<std::size_t>(n));
    std::vector<lapack_int> ifail(static_cast<std::size_t>(n));
    Eigen::MatrixXd z(n, k);
    lapack_int found = 0;
    const double abstol = 2.0 * LAPACKE_dlamch('S');
    const lapack_int info = LAPACKE_dsygvx(LAPACK_COL_MAJOR, 1, 'V', 'I', 'U', ln, a.data(), ln, b.data(), ln, 0.0, 0.0, 1,
                                           static_cast<lapack_int>(k), abstol, &found, w.data(), z.data(), ln, ifail.data());
    if (info > ln) raise(ErrorKind::not_spd, "Cholesky factorization of B failed at leading minor " + std::to_string(info - ln));
    if (info != 0) raise(ErrorKind::convergence, "dsygvx returned info " + std::to_string(info));

    result.eigenvalues.assign(w.begin(), w.begin() + k);
    result.eigenvectors = z;
    normalize_signs(result.eigenvectors);
    result.residuals.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const Eigen::VectorXd x = result.eigenvectors.col(i);
        result.residuals[static_cast<std::size_t>(i)] = (A * x - result.eigenvalues[static_cast<std::size_t>(i)] * (B * x)).norm();
    }
    result.info.basis_size = n;
    return result;
}

SpectralResult solve_dense(const SparseSymMatrix& A, const SparseSymMatrix& B, int k)
{
    if (A.dimension() > 4000) raise(ErrorKind::parameter, "dense oracle limited to dimension 4000");
    return solve_dense(A.to_dense(), B.to_dense(), k);
}

// ---------------------------------------------------------------- sparse

namespace {

using SpMat = Eigen::SparseMatrix<double>;

// B-orthonormalizes the columns of X against the basis V (with BV = B·V) and
// among themselves. Columns that collapse are replaced by random directions.
void b_orthonormalize(Eigen::MatrixXd& X, const Eigen::MatrixXd& V, const Eigen::MatrixXd& BV, Eigen::Index basis,
                      const SparseSymMatrix& B, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    const Eigen::Index n = X.rows();
    for (Eigen::Index c = 0; c < X.cols(); ++c) {
        for (int attempt = 0;; ++attempt) {
            Eigen::VectorXd x = X.col(c);
            const double start = std::sqrt(std::max(B.quadratic_form(x, x), 0.0));
            for (int pass = 0; pass < 2; ++pass) {
                if (basis > 0) x -= V.leftCols(basis) * (BV.leftCols(basis).transpose() * x);
                for (Eigen::Index q = 0; q < c; ++q) x -= X.col(q) * B.quadratic_form(X.col(q), x);
            }
            const double norm = std::sqrt(std::max(B.quadratic_form(x, x), 0.0));
            if (norm > 1e-10 * start && norm > 0.0) {
                X.col(c) = x / norm;
                break;
            }
            if (attempt > 8) raise(ErrorKind::convergence, "cannot extend the Krylov basis");
            for (Eigen::Index i = 0; i < n; ++i) X(i, c) = uni(rng);
        }
    }
}

}  // namespace

SpectralResult solve_sparse(const SparseSymMatrix& A, const SparseSymMatrix& B, int k, const SparseOptions& options)
{
    const Eigen::Index n = A.dimension();
    if (B.dimension() != n) raise(ErrorKind::parameter, "A and B must be equal-sized");
    if (k < 0 || k > n) raise(ErrorKind::parameter, "requested " + std::to_string(k) + " pairs of a size-" + std::to_string(n) + " problem");

    SpectralResult result;
    result.info.method = "block-shift-invert-lanczos";
    result.info.tolerance = options.tolerance;
    result.info.shift = options.shift;
    result.eigenvectors.resize(n, k);
    if (k == 0) return result;

    const double sigma = options.shift;
    const SpMat shifted = A.upper() - sigma * B.upper();
    Eigen::SimplicialLDLT<SpMat, Eigen::Upper> ldlt(shifted);
    if (ldlt.info() != Eigen::Success) raise(ErrorKind::shift, "factorization of A - sigma*B failed");
    const Eigen::VectorXd D = ldlt.vectorD();
    const double dmax = D.cwiseAbs().maxCoeff();
    if ((D.cwiseAbs().array() <= 1e-14 * dmax).any())
        raise(ErrorKind::shift, "A - sigma*B is singular to working precision; shift too close to the spectrum");
    if ((D.array() < 0.0).any()) raise(ErrorKind::shift, "shift lies above the lowest eigenvalue");

    const int p = static_cast<int>(std::min<Eigen::Index>(std::max(options.block_size, 1), n));
    const int max_iter = options.max_iterations > 0 ? options.max_iterations : 50 * k;
    result.info.block_size = p;

    // backward-error scale: ‖A‖∞ and ‖B‖∞ of the full symmetric matrices
    auto inf_norm = [](const SparseSymMatrix& M) {
        const SpMat full = M.full();
        return (full.cwiseAbs() * Eigen::VectorXd::Ones(full.cols())).maxCoeff();
    };
    const double norm_A = inf_norm(A);
    const double norm_B = inf_norm(B);

    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);

    const Eigen::Index cap = std::min<Eigen::Index>(n, static_cast<Eigen::Index>(max_iter) * p + p);
    Eigen::MatrixXd V(n, cap);
    Eigen::MatrixXd BV(n, cap);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(cap, cap);

    Eigen::MatrixXd block(n, p);
    for (Eigen::Index i = 0; i < n; ++i)
        for (int c = 0; c < p; ++c) block(i, c) = uni(rng);
    b_orthonormalize(block, V, BV, 0, B, rng);

    Eigen::Index basis = 0;
    std::vector<double> best(static_cast<std::size_t>(k), std::numeric_limits<double>::infinity());
    Eigen::VectorXd theta;
    Eigen::MatrixXd ritz;
    for (int iter = 1;; ++iter) {
        const Eigen::Index width = block.cols();
        V.middleCols(basis, width) = block;
        BV.middleCols(basis, width) = B.multiply(block);
        Eigen::MatrixXd W(n, width);
        for (Eigen::Index c = 0; c < width; ++c) W.col(c) = ldlt.solve(BV.col(basis + c));
        basis += width;
        const Eigen::MatrixXd coupling = BV.leftCols(basis).transpose() * W;
        H.block(0, basis - width, basis, width) = coupling;
        H.block(basis - width, 0, width, basis) = coupling.transpose();
        result.info.iterations = iter;

        if (basis >= k) {
            Eigen::MatrixXd Hs = H.topLeftCorner(basis, basis);
            Hs = 0.5 * (Hs + Hs.transpose()).eval();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Hs);
            theta = es.eigenvalues();
            ritz = V.leftCols(basis) * es.eigenvectors().rightCols(k);

            bool converged = true;
            for (int i = 0; i < k; ++i) {
                const Eigen::VectorXd x = ritz.col(i);
                const Eigen::VectorXd Bx = B.multiply(x);
                const Eigen::VectorXd Ax = A.multiply(x);
                const double lambda = x.dot(Ax) / x.dot(Bx);
                const double scale = (norm_A + std::abs(lambda) * norm_B) * x.norm();
                const double r = (Ax - lambda * Bx).norm() / scale;
                best[static_cast<std::size_t>(i)] = std::min(best[static_cast<std::size_t>(i)], r);
                if (r > options.tolerance) converged = false;
            }
            if (converged || basis == n) break;
        }
        if (iter >= max_iter || basis + 1 > cap) {
            throw ConvergenceError("no convergence after " + std::to_string(iter) + " block steps", best);
        }
        block = W.leftCols(std::min<Eigen::Index>(width, cap - basis));
        b_orthonormalize(block, V, BV, basis, B, rng);
    }

    // Ritz vectors come out with ascending θ; λ = σ + 1/θ reverses the order.
    std::vector<std::pair<double, Eigen::Index>> order;
    for (int i = 0; i < k; ++i) {
        const Eigen::VectorXd x = ritz.col(i);
        order.emplace_back(A.quadratic_form(x, x) / B.quadratic_form(x, x), i);
    }
    std::sort(order.begin(), order.end());
    result.eigenvalues.resize(static_cast<std::size_t>(k));
    result.residuals.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const auto [lambda, col] = order[static_cast<std::size_t>(i)];
        Eigen::VectorXd x = ritz.col(col);
        x /= std::sqrt(B.quadratic_form(x, x));
        result.eigenvalues[static_cast<std::size_t>(i)] = lambda;
        result.eigenvectors.col(i) = x;
    }
    normalize_signs(result.eigenvectors);
    for (int i = 0; i < k; ++i)
        result.residuals[static_cast<std::size_t>(i)] =
            residual_norm(A, B, result.eigenvalues[static_cast<std::size_t>(i)], result.eigenvectors.col(i));
    result.info.basis_size = basis;
    return result;
}

}  // namespace speclab
