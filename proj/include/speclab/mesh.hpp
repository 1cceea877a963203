#pragma once

#include "speclab/geometry.hpp"

#include <array>
#include <iosfwd>
#include <vector>

namespace speclab {

/// Simplicial mesh of a chart parameter domain. Cells are segments (n = 1,
/// third index unused) or counterclockwise triangles (n = 2).
struct Mesh {
    int dim = 2;
    std::vector<ChartPoint> vertices;
    std::vector<std::array<int, 3>> cells;
    std::vector<bool> boundary;  // true = Dirichlet vertex
    double h_max = 0.0;

    int nodes_per_cell() const { return dim + 1; }
    /// Signed length/area in chart coordinates.
    double cell_measure(std::size_t c) const;
    double cell_diameter(std::size_t c) const;
    std::size_t interior_count() const;
};

/// Rectangles: uniform grid, two triangles per quad split along the
/// lower-left/upper-right diagonal. Disks: central vertex plus `resolution`
/// rings at spacing radius/resolution, ring j carrying 6j vertices.
/// Intervals: uniform segments. resolution ≥ 2.
Mesh build_structured(const Domain& domain, int resolution);

/// Plain-text listing: `v x1 [x2]`, `c i j [k]`, `b i` records, one per line.
void write_mesh(std::ostream& os, const Mesh& mesh);

}  // namespace speclab
