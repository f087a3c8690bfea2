// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
//
// usage: acceptance [path/to/superpov]   (the binary is needed for the determinism check)

#include "superpov/complex.hpp"
#include "superpov/persistence.hpp"
#include "superpov/scores.hpp"
#include "test_util.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <omp.h>
#include <set>

using namespace superpov;
using namespace superpov::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(std::string_view name, const std::function<Outcome()>& check) {
    Outcome o;
    try {
        o = check();
    } catch (const std::exception& e) {
        o = {false, fmt::format("exception: {}", e.what())};
    }
    if (!o.pass) ++failures;
    fmt::print("{}  {:<22} {}\n", o.pass ? "PASS" : "FAIL", name, o.detail);
    std::fflush(stdout);
}

struct Lifespans {
    double longest = 0.0;
    double second = 0.0;
};

Lifespans naive_lifespans(const FilteredComplex& c) {
    auto l = h1_lifespans(reduce_naive(c));
    return {l.size() > 0 ? l[0] : 0.0, l.size() > 1 ? l[1] : 0.0};
}

Outcome oracle_equivalence() {
    std::mt19937_64 rng{20240601};
    std::uniform_int_distribution<std::size_t> nlat{4, 12}, nlon{6, 16};
    const auto t0 = Clock::now();
    int fields = 0, mismatches = 0;
    std::size_t pairs = 0;
    for (; fields < 240; ++fields) {
        const auto style = fields % 2 == 0 ? FieldStyle::uniform : FieldStyle::basins;
        auto f = random_field(rng, nlat(rng), nlon(rng), style, fields % 3 != 0);
        for (auto topo : {Topology::grid, Topology::polar}) {
            auto c = build_complex(f, topo);
            auto fast = reduce(c).sorted();
            mismatches += fast != reduce_naive(c).sorted();
            pairs += fast.size();
        }
    }
    const double secs = seconds_since(t0);
    return {mismatches == 0 && secs < 60.0,
            fmt::format("{} fields x 2 topologies, {} pairs, {} mismatches, {:.2f} s (limit 60 s)", fields, pairs,
                        mismatches, secs)};
}

Outcome betti_consistency() {
    std::mt19937_64 rng{77001};
    int checks = 0, mismatches = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto style = static_cast<FieldStyle>(trial % 3);
        auto f = random_field(rng, 6, 8, style, trial % 2 == 0);
        for (auto topo : {Topology::grid, Topology::polar}) {
            auto c = build_complex(f, topo);
            auto d = reduce(c);
            std::set<double> heights(c.heights().begin(), c.heights().end());
            for (double t : heights) {
                Betti alive;
                for (const auto& p : d.pairs)
                    if (p.birth >= t && t > p.death) {
                        if (p.dim == 0) ++alive.b0;
                        if (p.dim == 1) ++alive.b1;
                    }
                ++checks;
                mismatches += !(alive == betti_at(c, t));
            }
        }
    }
    return {mismatches == 0, fmt::format("20 fields x 2 topologies, {} heights checked, {} mismatches", checks, mismatches)};
}

Outcome normal_vortex() {
    auto f = synth_field(SynthSpec::normal(500.0));
    auto s = score_day(f);
    const bool fields_ok = f.nlat() == 19 && f.nlon() == 36;
    return {fields_ok && s.displacement < 0.1 && s.split < 0.05,
            fmt::format("19x36 depth 500: displacement {:.4f} (< 0.1), split {:.4f} (< 0.05)", s.displacement, s.split)};
}

Outcome displaced_vortex() {
    auto f = synth_field(SynthSpec::displaced(30.0));
    auto s = score_day(f);
    auto grid = naive_lifespans(build_grid_complex(f));
    auto polar = naive_lifespans(build_polar_complex(f));
    const double disp = polar.longest > 0 ? grid.longest / polar.longest : 0.0;
    const double split = polar.longest > 0 ? polar.second / polar.longest : 0.0;
    const bool agree = disp == s.displacement && split == s.split;
    return {agree && disp >= 0.8 && split < 0.2,
            fmt::format("colat 30: displacement {:.4f} (>= 0.8), split {:.4f} (< 0.2), naive oracle {}", disp, split,
                        agree ? "agrees" : "DISAGREES")};
}

Outcome twin_cones() {
    auto equal = synth_field(SynthSpec::split(500.0, 500.0));
    auto uneven = synth_field(SynthSpec::split(300.0, 150.0));
    auto a = naive_lifespans(build_polar_complex(equal));
    auto b = naive_lifespans(build_polar_complex(uneven));
    const double split_equal = a.second / a.longest;
    const double split_uneven = b.second / b.longest;
    const bool agree = split_equal == score_day(equal).split && split_uneven == score_day(uneven).split;
    return {agree && split_equal >= 0.9 && std::abs(split_uneven - 0.5) <= 0.05,
            fmt::format("equal depths split {:.4f} (>= 0.9); 300/150 split {:.4f} (0.5 +- 0.05); naive oracle {}",
                        split_equal, split_uneven, agree ? "agrees" : "DISAGREES")};
}

Outcome invariance() {
    std::vector<GphField> fields;
    std::uint64_t seed = 1;
    for (auto spec : {SynthSpec::normal(), SynthSpec::displaced(), SynthSpec::split(), SynthSpec::split(300, 150),
                      SynthSpec::displaced(45.0, 60.0, 350.0)}) {
        spec.noise_amplitude = 12.0;
        spec.seed = seed++;
        fields.push_back(synth_field(spec));
    }
    std::mt19937_64 rng{99};
    for (int k = 0; k < 5; ++k) fields.push_back(random_field(rng, 10, 24, FieldStyle::basins, k % 2 == 0));

    double worst_affine = 0.0, worst_rotation = 0.0;
    int comparisons = 0;
    const std::vector<std::pair<double, double>> maps{{2.0, 0.0}, {0.5, -100.0}, {3.7, 1234.5}, {1e-3, 7.0}, {9.81, 0.0}};
    for (const auto& f : fields) {
        const auto base = score_day(f);
        for (auto [a, b] : maps) {
            auto g = score_day(f.transformed([a = a, b = b](double h) { return a * h + b; }));
            worst_affine = std::max({worst_affine, std::abs(g.split - base.split),
                                     std::abs(g.displacement - base.displacement)});
            ++comparisons;
        }
        for (std::size_t shift = 1; shift < f.nlon(); ++shift) {
            auto r = score_day(f.rotated_columns(shift));
            worst_rotation = std::max({worst_rotation, std::abs(r.split - base.split), std::abs(r.h_cyl - base.h_cyl)});
            ++comparisons;
        }
    }
    return {worst_affine <= 1e-12 && worst_rotation <= 1e-12,
            fmt::format("{} comparisons; max affine score change {:.3g}, max rotation change {:.3g} (limit 1e-12)",
                        comparisons, worst_affine, worst_rotation)};
}

Outcome stability() {
    const double eps = 5.0;
    auto base = synth_field(SynthSpec::displaced());
    const double grid0 = longest_h1(reduce(build_grid_complex(base)));
    const double polar0 = longest_h1(reduce(build_polar_complex(base)));
    std::mt19937_64 rng{5150};
    std::uniform_real_distribution<double> noise{-eps, eps};
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        auto g = base.transformed([&](double h) { return h + noise(rng); });
        worst = std::max(worst, std::abs(longest_h1(reduce(build_grid_complex(g))) - grid0));
        worst = std::max(worst, std::abs(longest_h1(reduce(build_polar_complex(g))) - polar0));
    }
    return {worst <= 2 * eps, fmt::format("100 trials, eps 5 m: max change in longest H1 lifespan {:.3f} m (bound {} m)",
                                          worst, 2 * eps)};
}

GphField winter_day(Date date, int k) {
    // a mix of vortex states so the winter is not one repeated field
    SynthSpec spec = k % 9 == 4   ? SynthSpec::split(450.0, 380.0, 28.0, 40.0 + k)
                     : k % 5 == 2 ? SynthSpec::displaced(20.0 + k % 25, 3.0 * k, 480.0)
                                  : SynthSpec::normal(420.0 + k % 90);
    spec.nlat = 91;
    spec.nlon = 360;
    spec.noise_amplitude = 5.0;
    spec.seed = static_cast<std::uint64_t>(k) + 1;
    spec.date = date;
    return synth_field(spec);
}

Outcome performance() {
    const auto day = winter_day(Date{1987, 12, 5}, 7);
    double worst_day = 0.0;
    for (int rep = 0; rep < 3; ++rep) {
        const auto t0 = Clock::now();
        auto s = score_day(day);
        worst_day = std::max(worst_day, seconds_since(t0));
        if (s.degenerate) return {false, "91x360 test day scored as degenerate"};
    }

    TempDir dir{"acceptance_winter"};
    const Date first{1987, 11, 1};
    const auto manifest = load_manifest(write_manifest(dir, first, 180, 10.0, [&](int k) { return winter_day(first + k, k); }));
    SeriesRequest req;
    req.focal_date = first + 90;
    req.days_before = 90;
    req.days_after = 89;
    const auto t0 = Clock::now();
    auto series = score_series(manifest, req);
    const double winter = seconds_since(t0);
    const bool complete = series.days.size() == 180 && series.warnings.empty();
    return {complete && worst_day < 1.0 && winter < 60.0,
            fmt::format("91x360 day {:.3f} s (< 1 s, worst of 3); 180-day winter {:.2f} s on {} thread(s) (< 60 s)",
                        worst_day, winter, omp_get_max_threads())};
}

Outcome determinism(const std::string& binary) {
    if (binary.empty()) return {false, "no superpov binary given on the command line"};
    TempDir dir{"acceptance_determinism"};
    const Date first{1987, 11, 30};
    const auto manifest = write_manifest(dir, first, 12, 10.0, [&](int k) {
        SynthSpec spec = k == 6 ? SynthSpec::split(500.0, 420.0) : k == 8 ? SynthSpec::displaced() : SynthSpec::normal();
        spec.noise_amplitude = 8.0;
        spec.seed = static_cast<std::uint64_t>(k);
        spec.date = first + k;
        return synth_field(spec);
    });
    spit(dir / "wind.csv", "date,u_ms\n1987-12-06,-4\n1987-12-07,3\n");
    for (const char* run : {"a", "b"}) {
        const auto cmd = fmt::format(
            "'{}' series --manifest '{}' --date 1987-12-05 --before 5 --after 6 --wind '{}' --out-csv '{}' "
            "--out-svg '{}' > /dev/null",
            binary, manifest.string(), (dir / "wind.csv").string(), (dir / (std::string{run} + ".csv")).string(),
            (dir / (std::string{run} + ".svg")).string());
        if (std::system(cmd.c_str()) != 0) return {false, fmt::format("series run '{}' failed", run)};
    }
    const auto csv_a = slurp(dir / "a.csv"), csv_b = slurp(dir / "b.csv");
    const auto svg_a = slurp(dir / "a.svg"), svg_b = slurp(dir / "b.svg");
    const bool same = !csv_a.empty() && !svg_a.empty() && csv_a == csv_b && svg_a == svg_b;
    return {same, fmt::format("two `series` runs: CSV {} bytes {}, SVG {} bytes {}", csv_a.size(),
                              csv_a == csv_b ? "identical" : "DIFFER", svg_a.size(), svg_a == svg_b ? "identical" : "DIFFER")};
}

} // namespace

int main(int argc, char** argv) {
    const std::string binary = argc > 1 ? argv[1] : "";
    report("oracle-equivalence", oracle_equivalence);
    report("betti-consistency", betti_consistency);
    report("normal-vortex", normal_vortex);
    report("displaced-vortex", displaced_vortex);
    report("split-vortex", twin_cones);
    report("invariance", invariance);
    report("stability", stability);
    report("performance", performance);
    report("determinism", [&] { return determinism(binary); });
    fmt::print("{} criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
