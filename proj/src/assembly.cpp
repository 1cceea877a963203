#include "speclab/assembly.hpp"

#include "speclab/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include <cmath>
#include <ostream>

namespace speclab {

SparseSymMatrix::SparseSymMatrix(Eigen::SparseMatrix<double> upper) : upper_(std::move(upper))
{
    upper_.makeCompressed();
}

Eigen::VectorXd SparseSymMatrix::multiply(const Eigen::VectorXd& x) const
{
    return upper_.selfadjointView<Eigen::Upper>() * x;
}

Eigen::MatrixXd SparseSymMatrix::multiply(const Eigen::MatrixXd& x) const
{
    return upper_.selfadjointView<Eigen::Upper>() * x;
}

double SparseSymMatrix::quadratic_form(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const
{
    return x.dot(multiply(y));
}

Eigen::MatrixXd SparseSymMatrix::to_dense() const
{
    Eigen::MatrixXd d = Eigen::MatrixXd(upper_);
    d.triangularView<Eigen::StrictlyLower>() = d.transpose().triangularView<Eigen::StrictlyLower>();
    return d;
}

Eigen::SparseMatrix<double> SparseSymMatrix::full() const
{
    Eigen::SparseMatrix<double> f = upper_.selfadjointView<Eigen::Upper>();
    return f;
}

double SparseSymMatrix::coeff(Eigen::Index i, Eigen::Index j) const
{
    return i <= j ? upper_.coeff(i, j) : upper_.coeff(j, i);
}

void write_coordinate(std::ostream& os, const SparseSymMatrix& m)
{
    const auto old = os.precision(17);
    const Eigen::SparseMatrix<double, Eigen::RowMajor> rows = m.upper();
    for (Eigen::Index i = 0; i < rows.outerSize(); ++i)
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(rows, i); it; ++it)
            os << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
    os.precision(old);
}

Eigen::VectorXd DofMap::expand(const Eigen::VectorXd& dof_values) const
{
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(vertex_to_dof.size()));
    for (std::size_t d = 0; d < dof_to_vertex.size(); ++d) v[dof_to_vertex[d]] = dof_values[static_cast<Eigen::Index>(d)];
    return v;
}

DofMap make_dof_map(const Mesh& mesh, bool eliminate_dirichlet)
{
    DofMap map;
    map.vertex_to_dof.assign(mesh.vertices.size(), -1);
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
        if (eliminate_dirichlet && mesh.boundary[v]) continue;
        map.vertex_to_dof[v] = static_cast<int>(map.dof_to_vertex.size());
        map.dof_to_vertex.push_back(static_cast<int>(v));
    }
    return map;
}

CellQuadrature cell_quadrature(const Mesh& mesh, std::size_t cell)
{
    CellQuadrature cq;
    const auto& idx = mesh.cells[cell];
    auto vertex = [&](int i) -> const ChartPoint& { return mesh.vertices[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])]; };
    const double measure = mesh.cell_measure(cell);
    if (!(measure > 0.0)) raise(ErrorKind::mesh, "cell " + std::to_string(cell) + " has non-positive measure");

    if (mesh.dim == 1) {
        const double a = vertex(0)[0];
        const double len = measure;
        cq.grads[0] = Eigen::Vector2d(-1.0 / len, 0.0);
        cq.grads[1] = Eigen::Vector2d(1.0 / len, 0.0);
        cq.grads[2] = Eigen::Vector2d::Zero();
        const double g = 0.5 / std::sqrt(3.0);
        for (double t : {0.5 - g, 0.5 + g}) cq.points.push_back({ChartPoint(a + t * len, 0.0), 0.5 * len, {1.0 - t, t, 0.0}});
        return cq;
    }

    Eigen::Matrix2d J;
    J.col(0) = vertex(1) - vertex(0);
    J.col(1) = vertex(2) - vertex(0);
    const Eigen::Matrix2d JinvT = J.inverse().transpose();
    cq.grads[1] = JinvT.col(0);
    cq.grads[2] = JinvT.col(1);
    cq.grads[0] = -cq.grads[1] - cq.grads[2];
    for (int e = 0; e < 3; ++e) {
        const int i = e;
        const int j = (e + 1) % 3;
        QuadraturePoint qp;
        qp.xi = 0.5 * (vertex(i) + vertex(j));
        qp.weight = measure / 3.0;
        qp.shape = {0.0, 0.0, 0.0};
        qp.shape[static_cast<std::size_t>(i)] = 0.5;
        qp.shape[static_cast<std::size_t>(j)] = 0.5;
        cq.points.push_back(qp);
    }
    return cq;
}

DiscreteProblem assemble(const Chart& chart, const Mesh& mesh, bool eliminate_dirichlet)
{
    if (mesh.dim != chart.dim_n) raise(ErrorKind::parameter, "mesh dimension does not match chart");
    DiscreteProblem problem;
    problem.dofs = make_dof_map(mesh, eliminate_dirichlet);
    const auto ndof = static_cast<Eigen::Index>(problem.dofs.size());
    if (ndof == 0) raise(ErrorKind::mesh, "mesh too coarse: no interior degrees of freedom");

    const int nodes = mesh.nodes_per_cell();
    const int n = chart.dim_n;
    std::vector<Eigen::Triplet<double>> a_trip;
    std::vector<Eigen::Triplet<double>> b_trip;
    a_trip.reserve(mesh.cells.size() * 6);
    b_trip.reserve(mesh.cells.size() * 6);

    for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
        const CellQuadrature cq = cell_quadrature(mesh, c);
        Eigen::Matrix3d a_loc = Eigen::Matrix3d::Zero();
        Eigen::Matrix3d b_loc = Eigen::Matrix3d::Zero();
        for (const auto& qp : cq.points) {
            const LocalGeometry lg = evaluate_local(chart, qp.xi, false);
            Eigen::LLT<Eigen::MatrixXd> llt(lg.K);
            if (llt.info() != Eigen::Success)
                raise(ErrorKind::tensor, "T is not positive definite in cell " + std::to_string(c));
            const double w = qp.weight * lg.weight();
            for (int a = 0; a < nodes; ++a) {
                const Eigen::VectorXd ga = cq.grads[static_cast<std::size_t>(a)].head(n);
                for (int b = 0; b < nodes; ++b) {
                    const Eigen::VectorXd gb = cq.grads[static_cast<std::size_t>(b)].head(n);
                    a_loc(a, b) += w * ga.dot(lg.K * gb);
                    b_loc(a, b) += w * qp.shape[static_cast<std::size_t>(a)] * qp.shape[static_cast<std::size_t>(b)];
                }
            }
        }
        for (int a = 0; a < nodes; ++a) {
            const int da = problem.dofs.vertex_to_dof[static_cast<std::size_t>(mesh.cells[c][static_cast<std::size_t>(a)])];
            if (da < 0) continue;
            for (int b = 0; b < nodes; ++b) {
                const int db = problem.dofs.vertex_to_dof[static_cast<std::size_t>(mesh.cells[c][static_cast<std::size_t>(b)])];
                if (db < 0 || db < da) continue;
                // a_loc is symmetric up to rounding; use the same operand order for both triangles
                const int lo = std::min(a, b);
                const int hi = std::max(a, b);
                a_trip.emplace_back(da, db, a_loc(lo, hi));
                b_trip.emplace_back(da, db, b_loc(lo, hi));
            }
        }
    }

    Eigen::SparseMatrix<double> A(ndof, ndof);
    Eigen::SparseMatrix<double> B(ndof, ndof);
    A.setFromTriplets(a_trip.begin(), a_trip.end());
    B.setFromTriplets(b_trip.begin(), b_trip.end());
    problem.stiffness = SparseSymMatrix(std::move(A));
    problem.mass = SparseSymMatrix(std::move(B));
    return problem;
}

std::vector<double> apply_Lh(const Chart& chart, const Mesh& mesh, const ScalarField& h)
{
    if (!h) raise(ErrorKind::evaluation, "test function is not evaluable");
    std::vector<double> values;
    values.reserve(mesh.vertices.size());
    for (const auto& xi : mesh.vertices) {
        const LocalGeometry lg = evaluate_local(chart, xi, false);
        const double v = apply_L(lg, h(seed(xi)));
        if (!std::isfinite(v)) raise(ErrorKind::evaluation, "non-finite test function derivative");
        values.push_back(v);
    }
    return values;
}

ScalarField ambient_coordinate(const Chart& chart, int l)
{
    if (l < 0 || l >= chart.dim_m) raise(ErrorKind::parameter, "ambient coordinate index out of range");
    return [immersion = chart.immersion, l](const JetPoint& p) { return immersion(p)[static_cast<std::size_t>(l)]; };
}

}  // namespace speclab
