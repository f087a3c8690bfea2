#include "superpov/persistence.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace superpov {

std::size_t PersistenceDiagram::finite_count() const {
    return static_cast<std::size_t>(
        std::count_if(pairs.begin(), pairs.end(), [](const PersistencePair& p) { return !p.essential(); }));
}

std::size_t PersistenceDiagram::essential_count() const { return pairs.size() - finite_count(); }

std::vector<PersistencePair> PersistenceDiagram::sorted() const {
    auto out = pairs;
    std::sort(out.begin(), out.end());
    return out;
}

std::string PersistenceDiagram::to_csv() const {
    std::string out = "dim,birth,death,lifespan\n";
    for (const auto& p : sorted()) {
        if (p.essential())
            out += fmt::format("{},{},-inf,inf\n", p.dim, p.birth);
        else
            out += fmt::format("{},{},{},{}\n", p.dim, p.birth, p.death, p.lifespan());
    }
    return out;
}

std::vector<PersistencePair> h1_pairs_by_lifespan(const PersistenceDiagram& diagram) {
    std::vector<PersistencePair> h1;
    for (const auto& p : diagram.pairs)
        if (p.dim == 1 && !p.essential()) h1.push_back(p);
    std::sort(h1.begin(), h1.end(), [](const PersistencePair& a, const PersistencePair& b) {
        if (a.lifespan() != b.lifespan()) return a.lifespan() > b.lifespan();
        if (a.birth != b.birth) return a.birth > b.birth;
        return a.death > b.death;
    });
    return h1;
}

std::vector<double> h1_lifespans(const PersistenceDiagram& diagram) {
    std::vector<double> out;
    for (const auto& p : h1_pairs_by_lifespan(diagram)) out.push_back(p.lifespan());
    return out;
}

} // namespace superpov
