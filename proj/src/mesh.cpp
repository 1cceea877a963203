#include "speclab/mesh.hpp"

#include "speclab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

namespace speclab {

double Mesh::cell_measure(std::size_t c) const
{
    const auto& cell = cells[c];
    const ChartPoint& a = vertices[static_cast<std::size_t>(cell[0])];
    const ChartPoint& b = vertices[static_cast<std::size_t>(cell[1])];
    if (dim == 1) return b[0] - a[0];
    const ChartPoint& p = vertices[static_cast<std::size_t>(cell[2])];
    return 0.5 * ((b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]));
}

double Mesh::cell_diameter(std::size_t c) const
{
    const auto& cell = cells[c];
    double d = 0.0;
    for (int i = 0; i < nodes_per_cell(); ++i)
        for (int j = i + 1; j < nodes_per_cell(); ++j)
            d = std::max(d, (vertices[static_cast<std::size_t>(cell[static_cast<std::size_t>(i)])] -
                             vertices[static_cast<std::size_t>(cell[static_cast<std::size_t>(j)])])
                                .norm());
    return d;
}

std::size_t Mesh::interior_count() const
{
    return static_cast<std::size_t>(std::count(boundary.begin(), boundary.end(), false));
}

namespace {

Mesh interval_mesh(const Domain& d, int r)
{
    Mesh mesh;
    mesh.dim = 1;
    const double a = d.lower[0];
    const double b = d.upper[0];
    for (int i = 0; i <= r; ++i) {
        mesh.vertices.emplace_back(i == r ? b : a + (b - a) * i / r, 0.0);
        mesh.boundary.push_back(i == 0 || i == r);
    }
    for (int i = 0; i < r; ++i) mesh.cells.push_back({i, i + 1, -1});
    return mesh;
}

Mesh rectangle_mesh(const Domain& d, int r)
{
    Mesh mesh;
    mesh.dim = 2;
    auto coord = [r](double lo, double hi, int i) { return i == r ? hi : lo + (hi - lo) * i / r; };
    for (int j = 0; j <= r; ++j)
        for (int i = 0; i <= r; ++i) {
            mesh.vertices.emplace_back(coord(d.lower[0], d.upper[0], i), coord(d.lower[1], d.upper[1], j));
            mesh.boundary.push_back(i == 0 || j == 0 || i == r || j == r);
        }
    auto id = [r](int i, int j) { return j * (r + 1) + i; };
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < r; ++i) {
            const int ll = id(i, j);
            const int lr = id(i + 1, j);
            const int ul = id(i, j + 1);
            const int ur = id(i + 1, j + 1);
            mesh.cells.push_back({ll, lr, ur});
            mesh.cells.push_back({ll, ur, ul});
        }
    return mesh;
}

Mesh disk_mesh(const Domain& d, int r)
{
    Mesh mesh;
    mesh.dim = 2;
    mesh.vertices.push_back(d.center);
    mesh.boundary.push_back(false);
    std::vector<int> ring_start{0};
    for (int j = 1; j <= r; ++j) {
        ring_start.push_back(static_cast<int>(mesh.vertices.size()));
        const double rho = d.radius * j / r;
        const int count = 6 * j;
        for (int t = 0; t < count; ++t) {
            const double phi = 2.0 * std::numbers::pi * t / count;
            mesh.vertices.push_back(d.center + rho * ChartPoint(std::cos(phi), std::sin(phi)));
            mesh.boundary.push_back(j == r);
        }
    }
    // Innermost fan.
    for (int t = 0; t < 6; ++t) mesh.cells.push_back({0, ring_start[1] + t, ring_start[1] + (t + 1) % 6});
    // Zip consecutive rings by angle; angles are t/count fractions of a turn.
    for (int j = 2; j <= r; ++j) {
        const int inner_n = 6 * (j - 1);
        const int outer_n = 6 * j;
        const int in0 = ring_start[static_cast<std::size_t>(j - 1)];
        const int out0 = ring_start[static_cast<std::size_t>(j)];
        int a = 0;
        int b = 0;
        while (a < inner_n || b < outer_n) {
            // compare next angles a+1/inner_n vs b+1/outer_n without rounding
            const long next_inner = static_cast<long>(a + 1) * outer_n;
            const long next_outer = static_cast<long>(b + 1) * inner_n;
            const bool advance_outer = b < outer_n && (a >= inner_n || next_outer <= next_inner);
            if (advance_outer) {
                mesh.cells.push_back({in0 + a % inner_n, out0 + b, out0 + (b + 1) % outer_n});
                ++b;
            } else {
                mesh.cells.push_back({in0 + a, out0 + b % outer_n, in0 + (a + 1) % inner_n});
                ++a;
            }
        }
    }
    return mesh;
}

}  // namespace

Mesh build_structured(const Domain& domain, int resolution)
{
    if (resolution < 2) raise(ErrorKind::parameter, "mesh resolution must be >= 2");
    Mesh mesh;
    switch (domain.kind) {
    case Domain::Kind::interval: mesh = interval_mesh(domain, resolution); break;
    case Domain::Kind::rectangle: mesh = rectangle_mesh(domain, resolution); break;
    case Domain::Kind::disk: mesh = disk_mesh(domain, resolution); break;
    }
    for (std::size_t c = 0; c < mesh.cells.size(); ++c) mesh.h_max = std::max(mesh.h_max, mesh.cell_diameter(c));
    return mesh;
}

void write_mesh(std::ostream& os, const Mesh& mesh)
{
    const auto old = os.precision(17);
    for (const auto& v : mesh.vertices) {
        os << "v " << v[0];
        if (mesh.dim == 2) os << ' ' << v[1];
        os << '\n';
    }
    for (const auto& c : mesh.cells) {
        os << "c " << c[0] << ' ' << c[1];
        if (mesh.dim == 2) os << ' ' << c[2];
        os << '\n';
    }
    for (std::size_t i = 0; i < mesh.boundary.size(); ++i)
        if (mesh.boundary[i]) os << "b " << i << '\n';
    os.precision(old);
}

}  // namespace speclab
