#include "superpov/persistence.hpp"

#include <algorithm>
#include <cstdint>

namespace superpov {

namespace {

// Sorted sparse Z/2 column; low() is the largest row index.
using Column = std::vector<std::uint32_t>;

void add_into(Column& target, const Column& source, Column& scratch) {
    scratch.clear();
    std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                  std::back_inserter(scratch));
    target.swap(scratch);
}

} // namespace

PersistenceDiagram reduce(const FilteredComplex& complex) {
    const auto order = filtration_order(complex);
    const std::size_t n = order.size();

    std::vector<std::uint32_t> position(n);
    for (std::size_t k = 0; k < n; ++k) position[order[k]] = static_cast<std::uint32_t>(k);

    constexpr std::uint32_t kNone = UINT32_MAX;
    std::vector<std::uint32_t> pivot_column(n, kNone); // row -> column whose low it is
    std::vector<bool> cleared(n, false);                // positive, known without reducing
    std::vector<bool> negative(n, false);
    std::vector<Column> reduced(n);

    PersistenceDiagram diagram;
    Column column, scratch;

    for (int dim = 2; dim >= 1; --dim) {
        for (std::size_t k = 0; k < n; ++k) {
            const SimplexId s = order[k];
            if (complex.dimension(s) != dim || cleared[k]) continue;

            column.clear();
            for (SimplexId f : complex.boundary(s)) column.push_back(position[f]);
            std::sort(column.begin(), column.end());

            while (!column.empty()) {
                const std::uint32_t owner = pivot_column[column.back()];
                if (owner == kNone) break;
                add_into(column, reduced[owner], scratch);
            }
            if (column.empty()) continue;

            const std::uint32_t low = column.back();
            pivot_column[low] = static_cast<std::uint32_t>(k);
            cleared[low] = true;
            negative[k] = true;
            diagram.pairs.push_back({dim - 1, complex.height(order[low]), complex.height(s)});
            reduced[k].swap(column);
        }
        // columns of this dimension are never read again once the pass is over
        for (std::size_t k = 0; k < n; ++k)
            if (complex.dimension(order[k]) == dim) Column{}.swap(reduced[k]);
    }

    for (std::size_t k = 0; k < n; ++k)
        if (!negative[k] && pivot_column[k] == kNone)
            diagram.pairs.push_back({complex.dimension(order[k]), complex.height(order[k]), kEssentialDeath});
    return diagram;
}

} // namespace superpov
