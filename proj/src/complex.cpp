#include "superpov/complex.hpp"

#include "superpov/error.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

namespace superpov {

std::string_view to_string(Topology t) { return t == Topology::grid ? "grid" : "polar"; }

Topology parse_topology(std::string_view text) {
    if (text == "grid") return Topology::grid;
    if (text == "polar") return Topology::polar;
    throw Error(fmt::format("unknown topology '{}' (expected grid or polar)", text));
}

namespace {

std::uint64_t edge_key(SimplexId a, SimplexId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

} // namespace

FilteredComplex::FilteredComplex(std::vector<double> vertex_heights, std::vector<std::array<SimplexId, 2>> edges,
                                 std::vector<std::array<SimplexId, 3>> triangles)
    : vertex_heights_{std::move(vertex_heights)}, edges_{std::move(edges)}, triangles_{std::move(triangles)} {
    const auto nv = static_cast<SimplexId>(vertex_heights_.size());
    std::vector<std::pair<std::uint64_t, SimplexId>> index;
    index.reserve(edges_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        auto [a, b] = edges_[e];
        if (a >= nv || b >= nv || a == b) throw Error(fmt::format("edge {} has invalid vertices ({}, {})", e, a, b));
        index.emplace_back(edge_key(a, b), static_cast<SimplexId>(e));
    }
    std::sort(index.begin(), index.end());
    for (std::size_t k = 1; k < index.size(); ++k)
        if (index[k].first == index[k - 1].first) throw Error("duplicate edge in complex");

    auto find_edge = [&](SimplexId a, SimplexId b) {
        auto key = edge_key(a, b);
        auto it = std::lower_bound(index.begin(), index.end(), std::pair{key, SimplexId{0}});
        if (it == index.end() || it->first != key)
            throw Error(fmt::format("triangle face ({}, {}) missing from edge list", a, b));
        return static_cast<SimplexId>(nv + it->second);
    };

    triangle_edges_.reserve(triangles_.size());
    for (const auto& t : triangles_) {
        for (SimplexId v : t)
            if (v >= nv) throw Error(fmt::format("triangle references invalid vertex {}", v));
        triangle_edges_.push_back({find_edge(t[0], t[1]), find_edge(t[1], t[2]), find_edge(t[0], t[2])});
    }

    heights_.reserve(vertex_heights_.size() + edges_.size() + triangles_.size());
    heights_.insert(heights_.end(), vertex_heights_.begin(), vertex_heights_.end());
    for (const auto& [a, b] : edges_) heights_.push_back(std::min(vertex_heights_[a], vertex_heights_[b]));
    for (const auto& t : triangles_)
        heights_.push_back(std::min({vertex_heights_[t[0]], vertex_heights_[t[1]], vertex_heights_[t[2]]}));
}

std::vector<SimplexId> FilteredComplex::boundary(SimplexId s) const {
    switch (dimension(s)) {
    case 0: return {};
    case 1: {
        const auto& e = edges_[s - edge_begin()];
        return {e[0], e[1]};
    }
    default: {
        const auto& t = triangle_edges_[s - triangle_begin()];
        return {t[0], t[1], t[2]};
    }
    }
}

std::string FilteredComplex::to_csv() const {
    std::string out = "dim,height,v0,v1,v2\n";
    for (SimplexId v = 0; v < num_vertices(); ++v) out += fmt::format("0,{},{},,\n", heights_[v], v);
    for (std::size_t e = 0; e < edges_.size(); ++e)
        out += fmt::format("1,{},{},{},\n", heights_[edge_begin() + e], edges_[e][0], edges_[e][1]);
    for (std::size_t t = 0; t < triangles_.size(); ++t)
        out += fmt::format("2,{},{},{},{}\n", heights_[triangle_begin() + t], triangles_[t][0], triangles_[t][1],
                           triangles_[t][2]);
    return out;
}

// ---------------------------------------------------------------------------

FilteredComplex build_grid_complex(const GphField& field) {
    return build_grid_complex(field.nlat(), field.nlon(), field.values());
}

FilteredComplex build_grid_complex(std::size_t nrows, std::size_t ncols, std::span<const double> values) {
    if (nrows == 0 || ncols == 0 || values.size() != nrows * ncols)
        throw Error(fmt::format("grid complex: {} values for a {}x{} grid", values.size(), nrows, ncols));
    const auto rows = static_cast<SimplexId>(nrows);
    const auto cols = static_cast<SimplexId>(ncols);
    auto id = [cols](SimplexId i, SimplexId j) { return i * cols + j; };

    std::vector<double> heights(values.begin(), values.end());
    std::vector<std::array<SimplexId, 2>> edges;
    std::vector<std::array<SimplexId, 3>> triangles;
    edges.reserve(3 * rows * cols);
    triangles.reserve(2 * rows * cols);

    for (SimplexId i = 0; i < rows; ++i)
        for (SimplexId j = 0; j + 1 < cols; ++j) edges.push_back({id(i, j), id(i, j + 1)});
    for (SimplexId i = 0; i + 1 < rows; ++i)
        for (SimplexId j = 0; j < cols; ++j) edges.push_back({id(i, j), id(i + 1, j)});
    for (SimplexId i = 0; i + 1 < rows; ++i)
        for (SimplexId j = 0; j + 1 < cols; ++j) {
            edges.push_back({id(i, j), id(i + 1, j + 1)});
            triangles.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
            triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
        }
    return FilteredComplex{std::move(heights), std::move(edges), std::move(triangles)};
}

FilteredComplex build_polar_complex(const GphField& field) {
    const auto cols = static_cast<SimplexId>(field.nlon());
    const bool has_pole_row = field.lats().back() == 90.0;
    const auto rings = static_cast<SimplexId>(has_pole_row ? field.nlat() - 1 : field.nlat());
    const SimplexId pole = rings * cols;
    auto id = [cols](SimplexId i, SimplexId j) { return i * cols + (j % cols); };

    std::vector<double> heights(field.values().begin(), field.values().begin() + static_cast<std::ptrdiff_t>(pole));
    auto top_row = field.values().subspan((field.nlat() - 1) * cols);
    // sorted before summing so the mean is the same wherever the seam falls
    std::vector<double> top(top_row.begin(), top_row.end());
    std::sort(top.begin(), top.end());
    double sum = 0.0;
    for (double v : top) sum += v;
    heights.push_back(sum / static_cast<double>(cols));

    std::vector<std::array<SimplexId, 2>> edges;
    std::vector<std::array<SimplexId, 3>> triangles;
    edges.reserve(3 * rings * cols);
    triangles.reserve(2 * rings * cols);

    for (SimplexId i = 0; i < rings; ++i)
        for (SimplexId j = 0; j < cols; ++j) edges.push_back({id(i, j), id(i, j + 1)});
    for (SimplexId i = 0; i + 1 < rings; ++i)
        for (SimplexId j = 0; j < cols; ++j) edges.push_back({id(i, j), id(i + 1, j)});
    for (SimplexId i = 0; i + 1 < rings; ++i)
        for (SimplexId j = 0; j < cols; ++j) {
            edges.push_back({id(i, j), id(i + 1, j + 1)});
            triangles.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
            triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
        }
    for (SimplexId j = 0; j < cols; ++j) {
        edges.push_back({id(rings - 1, j), pole});
        triangles.push_back({id(rings - 1, j), id(rings - 1, j + 1), pole});
    }
    return FilteredComplex{std::move(heights), std::move(edges), std::move(triangles)};
}

FilteredComplex build_complex(const GphField& field, Topology topology) {
    return topology == Topology::grid ? build_grid_complex(field) : build_polar_complex(field);
}

std::vector<SimplexId> filtration_order(const FilteredComplex& complex) {
    std::vector<SimplexId> order(complex.size());
    std::iota(order.begin(), order.end(), SimplexId{0});
    // ids are grouped by dimension, so id order already encodes the dimension tiebreak
    auto heights = complex.heights();
    std::sort(order.begin(), order.end(), [heights](SimplexId a, SimplexId b) {
        if (heights[a] != heights[b]) return heights[a] > heights[b];
        return a < b;
    });
    return order;
}

} // namespace superpov
