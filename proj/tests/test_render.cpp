#include "superpov/error.hpp"
#include "superpov/render.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <fmt/format.h>

#include <regex>
#include <set>

using namespace superpov;
using namespace superpov::testing;

namespace {

ScoreSeries make_series(int days, double pressure = 10.0, Date first = Date{1987, 11, 30}, int focal_index = 5) {
    ScoreSeries s;
    s.pressure_hpa = pressure;
    s.focal_date = first + focal_index;
    for (int k = 0; k < days; ++k) {
        DayScores d;
        d.date = first + k;
        d.pressure_hpa = pressure;
        d.h_cyl = 400.0 + 10.0 * k;
        d.l2_cyl = 20.0 * k;
        d.split = 0.05 * k / days;
        d.displacement = 0.1 * k;
        s.days.push_back(d);
    }
    return s;
}

std::size_t points_in(const std::string& svg, std::string_view panel) {
    return count_occurrences(svg, fmt::format("class=\"pt\" data-panel=\"{}\"", panel));
}

} // namespace

TEST_CASE("series plot: every day plotted in every panel") {
    auto s = make_series(12);
    auto svg = render_series_svg(s);
    CHECK(points_in(svg, "lifespans") == 24); // longest and second longest
    CHECK(points_in(svg, "split") == 12);
    CHECK(points_in(svg, "displacement") == 12);
    CHECK(count_occurrences(svg, "<g class=\"panel\"") == 3);
    for (const auto& d : s.days)
        CHECK(count_occurrences(svg, fmt::format("data-panel=\"split\" data-series=\"split\" data-date=\"{}\"",
                                                 d.date.iso())) == 1);
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.ends_with("</svg>\n"));
}

TEST_CASE("series plot: labels thinned, all points kept") {
    auto s = make_series(40, 10.0, Date{1987, 11, 1}, 25);
    auto svg = render_series_svg(s);
    CHECK(points_in(svg, "split") == 40);
    const std::size_t labels_per_panel = count_occurrences(svg, "class=\"tick-label\"") / 3;
    CHECK(labels_per_panel <= 16);
    CHECK(labels_per_panel >= 10);
    // the focal day is labelled, in bold, once per panel
    CHECK(count_occurrences(svg, "font-weight=\"bold\">" + s.focal_date->iso() + "<") == 3);
    CHECK(count_occurrences(svg, "font-weight=\"bold\"") == 3);

    PlotSpec plain;
    plain.emphasize_focal = false;
    CHECK(count_occurrences(render_series_svg(s, plain), "font-weight=\"bold\"") == 0);
}

TEST_CASE("label indices") {
    CHECK(label_indices(12, 5) == std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11});
    for (std::size_t n : {1u, 16u, 17u, 40u, 180u, 365u})
        for (std::size_t anchor : {std::size_t{0}, n / 2, n - 1}) {
            auto idx = label_indices(n, anchor);
            CHECK(idx.size() <= 16);
            CHECK(std::find(idx.begin(), idx.end(), anchor) != idx.end());
            CHECK(std::is_sorted(idx.begin(), idx.end()));
            for (std::size_t k = 1; k < idx.size(); ++k) CHECK(idx[k] - idx[k - 1] == idx[1] - idx[0]);
        }
    CHECK(label_indices(0, std::nullopt).empty());
    CHECK(label_indices(100, std::nullopt).front() == 0);
}

TEST_CASE("wind markers") {
    auto s = make_series(12);
    CHECK(count_occurrences(render_series_svg(s), "class=\"wind-neg\"") == 0);
    s.days[2].wind_negative = true;
    s.days[3].wind_negative = false;
    s.days[7].wind_negative = true;
    auto svg = render_series_svg(s);
    // split and displacement panels each mark both days
    CHECK(count_occurrences(svg, "class=\"wind-neg\"") == 4);
    CHECK(count_occurrences(svg, "class=\"wind-neg\" data-panel=\"split\" data-date=\"" + s.days[7].date.iso()) == 1);
}

TEST_CASE("baseline lines") {
    auto s = make_series(12);
    auto none = render_series_svg(s);
    CHECK(count_occurrences(none, "baseline-mean") == 0);
    CHECK(count_occurrences(none, "baseline-std") == 0);

    s.baseline = Baseline{450.0, 20.0};
    auto svg = render_series_svg(s);
    CHECK(count_occurrences(svg, "class=\"baseline-mean\"") == 1);
    CHECK(count_occurrences(svg, "class=\"baseline-std\"") == 2);
    CHECK(count_occurrences(svg, "stroke-dasharray=\"6 4\"") == 1);
    CHECK(count_occurrences(svg, "stroke-dasharray=\"2 3\"") == 2);
}

TEST_CASE("rendering is deterministic") {
    auto s = make_series(12);
    s.baseline = Baseline{450.0, 20.0};
    s.days[4].wind_negative = true;
    CHECK(render_series_svg(s) == render_series_svg(s));
    std::vector<ScoreSeries> multi{make_series(10, 10), make_series(10, 50), make_series(10, 100)};
    CHECK(render_multi_pressure_svg(multi) == render_multi_pressure_svg(multi));
}

TEST_CASE("series plot errors") {
    CHECK_THROWS_AS(render_series_svg(ScoreSeries{}), Error);
    PlotSpec bad;
    bad.width = 0;
    CHECK_THROWS_AS(render_series_svg(make_series(3), bad), Error);
    PlotSpec empty;
    empty.panels.clear();
    CHECK_THROWS_AS(validate(empty), Error);
    PlotSpec scatter;
    scatter.panels = {Panel::scatter};
    CHECK_THROWS_AS(render_series_svg(make_series(3), scatter), Error);
    CHECK_NOTHROW(validate(PlotSpec{}));
}

TEST_CASE("custom panel selection") {
    PlotSpec spec;
    spec.panels = {Panel::displacement};
    auto svg = render_series_svg(make_series(6), spec);
    CHECK(points_in(svg, "displacement") == 6);
    CHECK(points_in(svg, "split") == 0);
    CHECK(count_occurrences(svg, "<g class=\"panel\"") == 1);
}

TEST_CASE("multi-pressure plot") {
    SUBCASE("three levels, 24 days") {
        std::vector<ScoreSeries> s{make_series(24, 10), make_series(24, 50), make_series(24, 100)};
        auto svg = render_multi_pressure_svg(s);
        CHECK(count_occurrences(svg, "class=\"legend-entry\"") == 3);
        CHECK(points_in(svg, "split") == 72);
        CHECK(points_in(svg, "displacement") == 72);
        for (const char* label : {">10 hPa<", ">50 hPa<", ">100 hPa<"}) CHECK(count_occurrences(svg, label) == 1);
    }
    SUBCASE("two levels") {
        auto svg = render_multi_pressure_svg({make_series(8, 10), make_series(8, 100)});
        CHECK(count_occurrences(svg, "class=\"legend-entry\"") == 2);
    }
    SUBCASE("custom labels") {
        PlotSpec spec;
        spec.series_labels = {"upper", "lower"};
        auto svg = render_multi_pressure_svg({make_series(8, 10), make_series(8, 100)}, spec);
        CHECK(count_occurrences(svg, ">upper<") == 1);
        CHECK(count_occurrences(svg, ">lower<") == 1);
    }
    SUBCASE("mismatched dates") {
        CHECK_THROWS_AS(render_multi_pressure_svg({make_series(8, 10), make_series(9, 50)}), Error);
        CHECK_THROWS_AS(render_multi_pressure_svg({make_series(8, 10), make_series(8, 50, Date{1987, 12, 1})}), Error);
        CHECK_THROWS_AS(render_multi_pressure_svg({make_series(8, 10)}), Error);
    }
}

TEST_CASE("event scatter") {
    const Date d{1980, 1, 1};
    SUBCASE("five events from two definitions") {
        std::vector<EventScore> ev{{"CP07", d, 0.1, 0.9},       {"CP07", d + 100, 0.2, 0.8}, {"CP07", d + 200, 0.3, 1.1},
                                   {"U&M", d + 300, 0.05, 0.7}, {"U&M", d + 400, 0.6, 0.5}};
        auto svg = render_scatter_svg(ev);
        CHECK(count_occurrences(svg, "class=\"pt\"") == 5);
        CHECK(count_occurrences(svg, "class=\"legend-entry\"") >= 2);
        CHECK(count_occurrences(svg, "data-label=\"U&amp;M\"") == 2);
        CHECK(svg.find("width=\"640\"") != std::string::npos);
    }
    SUBCASE("one date claimed by three definitions") {
        auto svg = render_scatter_svg({{"CP07", d, 0.1, 0.9}, {"U&M", d, 0.2, 0.8}, {"ZPOL", d, 0.3, 0.7}});
        CHECK(count_occurrences(svg, "class=\"pt\"") == 1);
        CHECK(count_occurrences(svg, "data-label=\"Multi\"") == 1);
        CHECK(count_occurrences(svg, "class=\"legend-entry\"") == 1);
    }
    SUBCASE("coordinates") {
        auto svg = render_scatter_svg({{"CP07", d, 0.28, 0.92}});
        CHECK(count_occurrences(svg, "data-x=\"0.92\" data-y=\"0.28\"") == 1);
    }
    SUBCASE("empty input") { CHECK_THROWS_AS(render_scatter_svg({}), Error); }
    SUBCASE("marker position follows the value") {
        auto svg = render_scatter_svg({{"A", d, 0.0, 0.0}, {"A", d + 1, 1.0, 1.0}});
        std::regex circle{R"re(<circle class="pt"[^>]*cx="([0-9.]+)" cy="([0-9.]+)")re"};
        std::vector<std::pair<double, double>> xy;
        for (auto it = std::sregex_iterator(svg.begin(), svg.end(), circle); it != std::sregex_iterator(); ++it)
            xy.emplace_back(std::stod((*it)[1]), std::stod((*it)[2]));
        REQUIRE(xy.size() == 2);
        CHECK(xy[1].first > xy[0].first);   // larger displacement further right
        CHECK(xy[1].second < xy[0].second); // larger split higher up
    }
}
