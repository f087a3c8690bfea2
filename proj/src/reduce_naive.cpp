#include "superpov/persistence.hpp"

#include <map>
#include <set>

namespace superpov {

PersistenceDiagram reduce_naive(const FilteredComplex& complex) {
    const auto order = filtration_order(complex);
    const std::size_t n = order.size();

    std::map<SimplexId, std::size_t> position;
    for (std::size_t k = 0; k < n; ++k) position[order[k]] = k;

    std::vector<std::set<std::size_t>> columns(n);
    for (std::size_t k = 0; k < n; ++k)
        for (SimplexId f : complex.boundary(order[k])) columns[k].insert(position.at(f));

    // low -> column that owns it
    std::map<std::size_t, std::size_t> owner;
    for (std::size_t j = 0; j < n; ++j) {
        auto& col = columns[j];
        while (!col.empty()) {
            auto it = owner.find(*col.rbegin());
            if (it == owner.end()) break;
            for (std::size_t row : columns[it->second]) {
                if (!col.erase(row)) col.insert(row);
            }
        }
        if (!col.empty()) owner.emplace(*col.rbegin(), j);
    }

    PersistenceDiagram diagram;
    std::vector<bool> paired(n, false);
    for (const auto& [low, j] : owner) {
        paired[low] = paired[j] = true;
        diagram.pairs.push_back({complex.dimension(order[low]), complex.height(order[low]), complex.height(order[j])});
    }
    for (std::size_t k = 0; k < n; ++k)
        if (!paired[k]) diagram.pairs.push_back({complex.dimension(order[k]), complex.height(order[k]), kEssentialDeath});
    return diagram;
}

} // namespace superpov
