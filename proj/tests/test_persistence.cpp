#include "superpov/complex.hpp"
#include "superpov/persistence.hpp"
#include "superpov/scores.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <set>

using namespace superpov;
using namespace superpov::testing;

namespace {

FilteredComplex ring3x3() {
    const std::vector<double> v{10, 10, 10, 10, 0, 10, 10, 10, 10};
    return build_grid_complex(3, 3, v);
}

bool contains(const PersistenceDiagram& d, PersistencePair p) {
    return std::find(d.pairs.begin(), d.pairs.end(), p) != d.pairs.end();
}

Betti alive_at(const PersistenceDiagram& d, double t) {
    Betti b;
    for (const auto& p : d.pairs)
        if (p.birth >= t && t > p.death) {
            if (p.dim == 0) ++b.b0;
            if (p.dim == 1) ++b.b1;
        }
    return b;
}

} // namespace

TEST_CASE("3x3 ring: one H1 class born at 10, dying at 0") {
    auto c = ring3x3();
    auto d = reduce(c);
    CHECK(contains(d, {1, 10.0, 0.0}));
    CHECK(contains(reduce_naive(c), {1, 10.0, 0.0}));
    auto l = h1_lifespans(d);
    REQUIRE_FALSE(l.empty());
    CHECK(l.front() == 10.0);
    CHECK(std::all_of(l.begin() + 1, l.end(), [](double x) { return x == 0.0; }));
    CHECK(betti_at(c, 10.0) == Betti{1, 1});
    CHECK(betti_at(c, 0.0) == Betti{1, 0});
    CHECK(betti_at(c, 10.5) == Betti{0, 0});
    CHECK(d.essential_count() == 1);
}

TEST_CASE("constant field: zero lifespans and one essential H0") {
    for (auto topo : {Topology::grid, Topology::polar}) {
        auto c = build_complex(make_field(4, 5, std::vector<double>(20, 7.0)), topo);
        auto d = reduce(c);
        CHECK(d.essential_count() == 1);
        CHECK(d.pairs.size() * 2 - d.essential_count() == c.size());
        for (const auto& p : d.pairs) {
            if (p.essential()) {
                CHECK(p.dim == 0);
                CHECK(p.birth == 7.0);
            } else {
                CHECK(p.lifespan() == 0.0);
            }
        }
        CHECK(d.sorted() == reduce_naive(c).sorted());
    }
}

TEST_CASE("twin tent depressions of depth 300 give two long H1 classes in the polar complex") {
    auto f = synth_field(SynthSpec::split(300.0, 300.0));
    auto c = build_polar_complex(f);
    auto fast = reduce(c), slow = reduce_naive(c);
    CHECK(fast.sorted() == slow.sorted());
    auto l = h1_lifespans(slow);
    REQUIRE(l.size() >= 2);
    CHECK(l[0] >= 270.0);
    CHECK(l[1] >= 270.0);
    if (l.size() > 2) CHECK(l[2] < 270.0);
}

TEST_CASE("h1 lifespans ordering") {
    PersistenceDiagram d{{{1, 10, 0}, {1, 6, 5}, {0, 20, 3}}};
    CHECK(h1_lifespans(d) == std::vector<double>{10, 1});
    CHECK(h1_lifespans(PersistenceDiagram{{{0, 20, 3}, {0, 5, kEssentialDeath}}}).empty());

    PersistenceDiagram ties{{{1, 9, 4}, {1, 12, 7}, {1, 3, 3}, {1, 20, 0}}};
    auto pairs = h1_pairs_by_lifespan(ties);
    REQUIRE(pairs.size() == 4);
    CHECK(pairs[0].birth == 20);
    CHECK(pairs[1].birth == 12);
    CHECK(pairs[2].birth == 9);
    CHECK(pairs[3].lifespan() == 0.0);
    // essential H1 classes never count
    PersistenceDiagram ess{{{1, 5, kEssentialDeath}, {1, 5, 4}}};
    CHECK(h1_lifespans(ess) == std::vector<double>{1});
}

TEST_CASE("diagram csv") {
    PersistenceDiagram d{{{1, 10, 0}, {0, 12.5, kEssentialDeath}}};
    CHECK(d.to_csv() == "dim,birth,death,lifespan\n0,12.5,-inf,inf\n1,10,0,10\n");
    CHECK(d.finite_count() == 1);
    CHECK(d.essential_count() == 1);
}

TEST_CASE("reduce matches the naive reduction on random fields") {
    std::mt19937_64 rng{101};
    std::uniform_int_distribution<std::size_t> nlat{3, 9}, nlon{4, 11};
    for (int trial = 0; trial < 60; ++trial) {
        auto f = random_field(rng, nlat(rng), nlon(rng), static_cast<FieldStyle>(trial % 3), trial % 4 != 0);
        for (auto topo : {Topology::grid, Topology::polar}) {
            auto c = build_complex(f, topo);
            auto fast = reduce(c), slow = reduce_naive(c);
            CHECK(fast.sorted() == slow.sorted());
            // zero-lifespan pairs show up identically too
            auto zeros = [](const PersistenceDiagram& d) {
                return std::count_if(d.pairs.begin(), d.pairs.end(),
                                     [](const PersistencePair& p) { return !p.essential() && p.lifespan() == 0.0; });
            };
            CHECK(zeros(fast) == zeros(slow));
        }
    }
}

TEST_CASE("pair count conservation and a single essential class") {
    std::mt19937_64 rng{5};
    for (int trial = 0; trial < 20; ++trial) {
        auto f = random_field(rng, 6, 8, static_cast<FieldStyle>(trial % 3), true);
        for (auto topo : {Topology::grid, Topology::polar}) {
            auto c = build_complex(f, topo);
            auto d = reduce(c);
            CHECK(c.size() == 2 * d.finite_count() + d.essential_count());
            CHECK(d.essential_count() == 1);
            for (const auto& p : d.pairs) CHECK(p.birth >= p.death);
        }
    }
}

TEST_CASE("pairs alive at each height agree with betti_at") {
    std::mt19937_64 rng{77};
    for (int trial = 0; trial < 12; ++trial) {
        auto f = random_field(rng, 5, 7, static_cast<FieldStyle>(trial % 3), trial % 2 == 0);
        for (auto topo : {Topology::grid, Topology::polar}) {
            auto c = build_complex(f, topo);
            auto d = reduce(c);
            std::set<double> heights(c.heights().begin(), c.heights().end());
            for (double t : heights) CHECK(alive_at(d, t) == betti_at(c, t));
            CHECK(betti_at(c, *heights.rbegin() + 1.0) == Betti{0, 0});
        }
    }
}

TEST_CASE("affine height maps move every pair the same way") {
    std::mt19937_64 rng{31};
    for (int trial = 0; trial < 10; ++trial) {
        // integer heights and a power-of-two ring keep 2h + 8 and the pole mean exact
        auto f = random_field(rng, 6, 8, FieldStyle::coarse, true);
        auto g = f.transformed([](double h) { return 2.0 * h + 8.0; });
        for (auto topo : {Topology::grid, Topology::polar}) {
            auto before = reduce(build_complex(f, topo));
            auto after = reduce(build_complex(g, topo));
            std::vector<PersistencePair> mapped;
            for (auto p : before.pairs) {
                p.birth = 2.0 * p.birth + 8.0;
                if (!p.essential()) p.death = 2.0 * p.death + 8.0;
                mapped.push_back(p);
            }
            std::sort(mapped.begin(), mapped.end());
            CHECK(mapped == after.sorted());
        }
    }
}

TEST_CASE("longest H1 lifespan moves by at most twice the perturbation") {
    std::mt19937_64 rng{55};
    const double eps = 5.0;
    auto base = synth_field(SynthSpec::displaced());
    std::uniform_real_distribution<double> noise{-eps, eps};
    for (int trial = 0; trial < 15; ++trial) {
        auto g = base.transformed([&](double h) { return h + noise(rng); });
        for (auto topo : {Topology::grid, Topology::polar}) {
            const double a = longest_h1(reduce(build_complex(base, topo)));
            const double b = longest_h1(reduce(build_complex(g, topo)));
            CHECK(std::abs(a - b) <= 2 * eps);
        }
    }
}
