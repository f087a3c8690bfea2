#pragma once

// Filtered simplicial 2-complexes built over a GphField.
//
// Simplices share one id space: vertices [0, V), edges [V, V+E), triangles [V+E, V+E+F).
// A simplex's height is the minimum of its vertex heights, so it enters the superlevel
// set {f >= t} exactly when its lowest vertex does.

#include "superpov/field.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace superpov {

using SimplexId = std::uint32_t;

enum class Topology { grid, polar };

std::string_view to_string(Topology t);
Topology parse_topology(std::string_view text);

class FilteredComplex {
public:
    /// Every edge of every triangle must be listed in `edges`; throws Error otherwise.
    FilteredComplex(std::vector<double> vertex_heights, std::vector<std::array<SimplexId, 2>> edges,
                    std::vector<std::array<SimplexId, 3>> triangles);

    std::size_t num_vertices() const { return vertex_heights_.size(); }
    std::size_t num_edges() const { return edges_.size(); }
    std::size_t num_triangles() const { return triangles_.size(); }
    std::size_t size() const { return heights_.size(); }

    std::span<const double> vertex_heights() const { return vertex_heights_; }
    std::span<const std::array<SimplexId, 2>> edges() const { return edges_; }
    std::span<const std::array<SimplexId, 3>> triangles() const { return triangles_; }
    /// Global ids of the three edges of each triangle.
    std::span<const std::array<SimplexId, 3>> triangle_edges() const { return triangle_edges_; }

    /// Filtration height of any simplex, by global id.
    double height(SimplexId s) const { return heights_[s]; }
    std::span<const double> heights() const { return heights_; }
    int dimension(SimplexId s) const { return s < edge_begin() ? 0 : s < triangle_begin() ? 1 : 2; }

    SimplexId edge_begin() const { return static_cast<SimplexId>(vertex_heights_.size()); }
    SimplexId triangle_begin() const { return static_cast<SimplexId>(vertex_heights_.size() + edges_.size()); }

    /// Boundary of a simplex as global ids (empty for vertices).
    std::vector<SimplexId> boundary(SimplexId s) const;

    long euler_characteristic() const {
        return static_cast<long>(num_vertices()) - static_cast<long>(num_edges()) + static_cast<long>(num_triangles());
    }

    /// `dim,height,v0,v1,v2` rows, one per simplex in id order; unused vertex slots are empty.
    std::string to_csv() const;

private:
    std::vector<double> vertex_heights_;
    std::vector<std::array<SimplexId, 2>> edges_;
    std::vector<std::array<SimplexId, 3>> triangles_;
    std::vector<std::array<SimplexId, 3>> triangle_edges_;
    std::vector<double> heights_;
};

/// Flat rectangle: grid neighbours joined, no longitude wraparound, quads split along
/// (i,j)-(i+1,j+1). Vertex (i,j) has id i*nlon + j.
FilteredComplex build_grid_complex(const GphField& field);

/// Grid complex over a bare rows x cols value matrix (row-major); rows, cols >= 1.
FilteredComplex build_grid_complex(std::size_t rows, std::size_t cols, std::span<const double> values);

/// Pole-centred disk: the grid complex plus the longitude seam, with the pole collapsed to a
/// single vertex (last id) whose height is the mean of the topmost row. A lat=90 row is
/// replaced by the pole; otherwise the pole is appended above the top ring.
FilteredComplex build_polar_complex(const GphField& field);

FilteredComplex build_complex(const GphField& field, Topology topology);

/// Simplices sorted by height descending, then dimension ascending, then id ascending.
std::vector<SimplexId> filtration_order(const FilteredComplex& complex);

} // namespace superpov
