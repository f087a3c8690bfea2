#include "superpov/persistence.hpp"

#include <numeric>

namespace superpov {

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), SimplexId{0}); }

    SimplexId find(SimplexId x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(SimplexId a, SimplexId b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[std::max(a, b)] = std::min(a, b);
        return true;
    }

private:
    std::vector<SimplexId> parent_;
};

} // namespace

Betti betti_at(const FilteredComplex& complex, double t) {
    long vertices = 0, edges = 0, triangles = 0;
    DisjointSets sets{complex.num_vertices()};
    for (SimplexId v = 0; v < complex.num_vertices(); ++v)
        if (complex.height(v) >= t) ++vertices;
    long components = vertices;
    for (std::size_t e = 0; e < complex.num_edges(); ++e) {
        if (complex.height(complex.edge_begin() + static_cast<SimplexId>(e)) < t) continue;
        ++edges;
        if (sets.unite(complex.edges()[e][0], complex.edges()[e][1])) --components;
    }
    for (std::size_t f = 0; f < complex.num_triangles(); ++f)
        if (complex.height(complex.triangle_begin() + static_cast<SimplexId>(f)) >= t) ++triangles;
    const long chi = vertices - edges + triangles;
    return Betti{static_cast<int>(components), static_cast<int>(components - chi)};
}

} // namespace superpov
