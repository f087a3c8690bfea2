#include "superpov/scores.hpp"

#include "csv.hpp"
#include "superpov/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <fmt/format.h>

namespace superpov {

std::string_view to_string(SplitSource s) { return s == SplitSource::polar ? "polar" : "grid"; }

SplitSource parse_split_source(std::string_view text) {
    if (text == "polar") return SplitSource::polar;
    if (text == "grid") return SplitSource::grid;
    throw Error(fmt::format("unknown split source '{}' (expected grid or polar)", text));
}

namespace {

double longest(const std::vector<double>& lifespans, std::size_t rank) {
    return lifespans.size() > rank ? lifespans[rank] : 0.0;
}

} // namespace

double split_score(const PersistenceDiagram& diagram) {
    const auto l = h1_lifespans(diagram);
    if (l.size() < 2 || !(l[0] > 0)) return 0.0;
    return l[1] / l[0];
}

double displacement_score(const PersistenceDiagram& grid, const PersistenceDiagram& polar) {
    const double h_cyl = longest(h1_lifespans(polar), 0);
    if (!(h_cyl > 0)) return 0.0;
    return longest(h1_lifespans(grid), 0) / h_cyl;
}

DayScores score_day(const GphField& input, const ScoreOptions& options) {
    const GphField field = options.min_lat ? crop_min_lat(input, *options.min_lat) : input;
    const auto grid = reduce(build_grid_complex(field));
    const auto polar = reduce(build_polar_complex(field));
    const auto grid_l = h1_lifespans(grid);
    const auto polar_l = h1_lifespans(polar);

    DayScores d;
    d.date = field.date();
    d.pressure_hpa = field.pressure_hpa();
    d.h_grid = longest(grid_l, 0);
    d.h_cyl = longest(polar_l, 0);
    d.l2_cyl = longest(polar_l, 1);
    d.degenerate = !(d.h_cyl > 0);
    if (!d.degenerate) {
        d.displacement = d.h_grid / d.h_cyl;
        d.split = split_score(options.split_source == SplitSource::polar ? polar : grid);
    }
    return d;
}

std::optional<Baseline> normal_baseline(const std::vector<DayScores>& days) {
    std::vector<double> h;
    for (const auto& d : days)
        if (!d.degenerate && d.displacement < 0.1 && d.split < 0.05) h.push_back(d.h_cyl);
    if (h.empty()) return std::nullopt;
    double mean = 0.0;
    for (double x : h) mean += x;
    mean /= static_cast<double>(h.size());
    double var = 0.0;
    for (double x : h) var += (x - mean) * (x - mean);
    var /= static_cast<double>(h.size());
    return Baseline{mean, std::sqrt(var)};
}

// --- series -------------------------------------------------------------------

ScoreSeries score_series(const DatasetManifest& manifest, const SeriesRequest& request, const WindSeries* wind) {
    if (request.days_before < 0 || request.days_after < 0)
        throw Error("days before/after must be non-negative");

    ScoreSeries series;
    series.pressure_hpa = request.pressure_hpa;
    series.focal_date = request.focal_date;

    std::vector<DayTask> tasks;
    for (Date d = request.focal_date - request.days_before; d <= request.focal_date + request.days_after; d = d + 1) {
        if (auto path = manifest.find(d, request.pressure_hpa))
            tasks.push_back({d, request.pressure_hpa, *path});
        else
            series.warnings.push_back(fmt::format("{}: no manifest entry at {} hPa, day skipped", d.iso(),
                                                  request.pressure_hpa));
    }

    auto results = score_tasks(tasks, request.options, request.jobs);
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (!results[i].scores) {
            series.warnings.push_back(fmt::format("{}: {}, day skipped", tasks[i].date.iso(), results[i].error));
            continue;
        }
        DayScores day = *results[i].scores;
        if (wind) day.wind_negative = wind->negative_on(day.date);
        series.days.push_back(day);
    }
    if (series.days.empty())
        throw Error(fmt::format("no day in {} .. {} at {} hPa could be scored",
                                (request.focal_date - request.days_before).iso(),
                                (request.focal_date + request.days_after).iso(), request.pressure_hpa));
    series.baseline = normal_baseline(series.days);
    return series;
}

std::string scores_csv_header() {
    return "date,pressure_hpa,split,displacement,h_grid,h_cyl,l2_cyl,degenerate,wind_negative\n";
}

std::string scores_csv_row(const DayScores& d) {
    return fmt::format("{},{},{},{},{},{},{},{},{}\n", d.date.iso(), csv::format_double(d.pressure_hpa),
                       csv::format_double(d.split), csv::format_double(d.displacement), csv::format_double(d.h_grid),
                       csv::format_double(d.h_cyl), csv::format_double(d.l2_cyl), d.degenerate ? 1 : 0,
                       d.wind_negative ? (*d.wind_negative ? "1" : "0") : "");
}

// --- events ---------------------------------------------------------------------

std::vector<EventPoint> group_events(const std::vector<EventScore>& scores) {
    std::map<Date, std::pair<std::set<std::string>, EventPoint>> by_date;
    for (const auto& s : scores) {
        auto [it, fresh] = by_date.try_emplace(s.event_date);
        auto& [labels, point] = it->second;
        labels.insert(s.definition);
        if (fresh) {
            point = EventPoint{s.definition, s.event_date, s.max_split, s.max_displacement};
        } else {
            point.max_split = std::max(point.max_split, s.max_split);
            point.max_displacement = std::max(point.max_displacement, s.max_displacement);
        }
        point.label = labels.size() > 1 ? "Multi" : *labels.begin();
    }
    std::vector<EventPoint> out;
    for (auto& [date, entry] : by_date) out.push_back(entry.second);
    return out;
}

EventComparison event_window_max(const DayScoresProvider& provider, const EventList& events) {
    EventComparison result;
    for (const auto& ev : events) {
        std::optional<EventScore> score;
        for (Date d = ev.window_start; d <= ev.window_end; d = d + 1) {
            auto day = provider(d);
            if (!day) continue;
            if (!score) {
                score = EventScore{ev.definition, ev.event_date, day->split, day->displacement};
            } else {
                score->max_split = std::max(score->max_split, day->split);
                score->max_displacement = std::max(score->max_displacement, day->displacement);
            }
        }
        if (score)
            result.scores.push_back(*score);
        else
            result.errors.push_back(fmt::format("event {} ({}): no scored day in window {} .. {}",
                                                ev.event_date.iso(), ev.definition, ev.window_start.iso(),
                                                ev.window_end.iso()));
    }
    const auto points = group_events(result.scores);
    if (!points.empty()) {
        for (const auto& p : points) {
            result.mean_max_displacement += p.max_displacement;
            result.mean_max_split += p.max_split;
        }
        result.mean_max_displacement /= static_cast<double>(points.size());
        result.mean_max_split /= static_cast<double>(points.size());
    }
    return result;
}

std::string event_scores_csv(const std::vector<EventScore>& scores) {
    std::string out = "definition,event_date,max_displacement,max_split\n";
    for (const auto& s : scores)
        out += fmt::format("{},{},{},{}\n", s.definition, s.event_date.iso(), csv::format_double(s.max_displacement),
                           csv::format_double(s.max_split));
    return out;
}

} // namespace superpov
