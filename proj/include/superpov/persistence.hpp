#pragma once

// Superlevel-set persistent homology of a FilteredComplex over Z/2.

#include "superpov/complex.hpp"

#include <limits>
#include <vector>

namespace superpov {

inline constexpr double kEssentialDeath = -std::numeric_limits<double>::infinity();

/// A class born at `birth` while sweeping heights downward and killed at `death`
/// (`kEssentialDeath` if it never dies).
struct PersistencePair {
    int dim = 0;
    double birth = 0.0;
    double death = kEssentialDeath;

    bool essential() const { return death == kEssentialDeath; }
    double lifespan() const { return birth - death; }

    friend auto operator<=>(const PersistencePair&, const PersistencePair&) = default;
};

struct PersistenceDiagram {
    std::vector<PersistencePair> pairs;

    std::size_t finite_count() const;
    std::size_t essential_count() const;

    /// Pairs in canonical (sorted) order, for multiset comparison.
    std::vector<PersistencePair> sorted() const;

    /// `dim,birth,death,lifespan` rows; essential deaths print as `-inf`.
    std::string to_csv() const;
};

/// Column reduction in filtration order, dimensions high to low, with clearing.
PersistenceDiagram reduce(const FilteredComplex& complex);

/// Reference reduction: every column, left to right, no clearing. Slow and obvious.
PersistenceDiagram reduce_naive(const FilteredComplex& complex);

struct Betti {
    int b0 = 0;
    int b1 = 0;
    friend bool operator==(const Betti&, const Betti&) = default;
};

/// Betti numbers of the superlevel subcomplex {simplices with height >= t}: b0 from a
/// union-find over its vertices and edges, b1 = b0 - chi (b2 is zero inside a disk).
Betti betti_at(const FilteredComplex& complex, double t);

/// Finite H1 pairs ordered by lifespan descending, higher birth first on ties.
std::vector<PersistencePair> h1_pairs_by_lifespan(const PersistenceDiagram& diagram);

/// Lifespans of `h1_pairs_by_lifespan`.
std::vector<double> h1_lifespans(const PersistenceDiagram& diagram);

} // namespace superpov
