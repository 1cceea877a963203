#pragma once

#include "speclab/geometry.hpp"
#include "speclab/mesh.hpp"

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <array>
#include <iosfwd>
#include <vector>

namespace speclab {

/// Symmetric sparse matrix stored as its upper triangle (row ≤ col).
class SparseSymMatrix {
public:
    SparseSymMatrix() = default;
    explicit SparseSymMatrix(Eigen::SparseMatrix<double> upper);

    Eigen::Index dimension() const { return upper_.rows(); }
    const Eigen::SparseMatrix<double>& upper() const { return upper_; }

    Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;
    Eigen::MatrixXd multiply(const Eigen::MatrixXd& x) const;
    double quadratic_form(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
    /// Full symmetric matrix, for oracles and small problems.
    Eigen::MatrixXd to_dense() const;
    Eigen::SparseMatrix<double> full() const;

    /// Entry (i, j) of the symmetric matrix.
    double coeff(Eigen::Index i, Eigen::Index j) const;

private:
    Eigen::SparseMatrix<double> upper_;
};

/// Coordinate listing `i j value` (0-based, upper triangle, 17 significant digits).
void write_coordinate(std::ostream& os, const SparseSymMatrix& m);

/// Interior vertices numbered in vertex order; boundary vertices map to -1.
struct DofMap {
    std::vector<int> vertex_to_dof;
    std::vector<int> dof_to_vertex;

    std::size_t size() const { return dof_to_vertex.size(); }
    /// Scatters a dof vector to vertex values, zero on the Dirichlet boundary.
    Eigen::VectorXd expand(const Eigen::VectorXd& dof_values) const;
};

DofMap make_dof_map(const Mesh& mesh, bool eliminate_dirichlet = true);

struct QuadraturePoint {
    ChartPoint xi;
    double weight = 0.0;  // chart-coordinate quadrature weight
    std::array<double, 3> shape{};
};

/// Per-cell P1 data: constant shape gradients in chart coordinates and the
/// quadrature rule (3 edge midpoints for triangles, 2-point Gauss for segments).
struct CellQuadrature {
    std::array<Eigen::Vector2d, 3> grads;
    std::vector<QuadraturePoint> points;
};

CellQuadrature cell_quadrature(const Mesh& mesh, std::size_t cell);

struct DiscreteProblem {
    SparseSymMatrix stiffness;  // A: ∫ T(∇φ_a, ∇φ_b) dm
    SparseSymMatrix mass;       // B: ∫ φ_a φ_b dm
    DofMap dofs;
};

/// Assembles A and B with dm = e^{-η} √det g dξ, eliminating Dirichlet
/// vertices unless `eliminate_dirichlet` is false. Cells are visited in index
/// order so the matrices are bit-identical across runs.
DiscreteProblem assemble(const Chart& chart, const Mesh& mesh, bool eliminate_dirichlet = true);

/// 𝓛h at every mesh vertex.
std::vector<double> apply_Lh(const Chart& chart, const Mesh& mesh, const ScalarField& h);

/// The ℓ-th ambient coordinate x_ℓ of the immersion as a scalar field.
ScalarField ambient_coordinate(const Chart& chart, int l);

}  // namespace speclab
