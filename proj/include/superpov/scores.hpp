#pragma once

// Split and displacement scores, per-day records, series over date windows, the normal-day
// baseline and event-window maxima.

#include "superpov/field.hpp"
#include "superpov/persistence.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace superpov {

enum class SplitSource { polar, grid };

std::string_view to_string(SplitSource s);
SplitSource parse_split_source(std::string_view text);

struct ScoreOptions {
    SplitSource split_source = SplitSource::polar;
    /// Latitude rows below this are dropped before building complexes.
    std::optional<double> min_lat;
};

struct DayScores {
    Date date;
    double pressure_hpa = 0.0;
    double split = 0.0;
    double displacement = 0.0;
    double h_grid = 0.0; ///< longest H1 lifespan, grid complex
    double h_cyl = 0.0;  ///< longest H1 lifespan, polar complex
    double l2_cyl = 0.0; ///< second longest H1 lifespan, polar complex
    bool degenerate = false;
    std::optional<bool> wind_negative;

    friend bool operator==(const DayScores&, const DayScores&) = default;
};

/// Second-longest over longest H1 lifespan; 0 with fewer than two H1 pairs or a zero longest.
double split_score(const PersistenceDiagram& diagram);

/// h_grid / h_cyl; 0 when h_cyl is 0. May exceed 1.
double displacement_score(const PersistenceDiagram& grid, const PersistenceDiagram& polar);

DayScores score_day(const GphField& field, const ScoreOptions& options = {});

struct Baseline {
    double mean = 0.0;
    double std = 0.0; ///< population convention
};

/// Mean and standard deviation of h_cyl over normal days (displacement < 0.1 and split < 0.05).
/// Degenerate days are not vortices and never count.
std::optional<Baseline> normal_baseline(const std::vector<DayScores>& days);

// --- day-parallel kernels ---------------------------------------------------

struct DayTask {
    Date date;
    double pressure_hpa = 0.0;
    std::filesystem::path path;
};

/// Outcome of one task: scores, or the message of the error that stopped it.
struct DayResult {
    std::optional<DayScores> scores;
    std::string error;
};

/// Loads and scores every task; OpenMP over tasks, `jobs` <= 0 means the runtime default.
/// Results are in task order.
std::vector<DayResult> score_tasks(const std::vector<DayTask>& tasks, const ScoreOptions& options, int jobs = 0);

/// Single-threaded reference for `score_tasks`.
std::vector<DayResult> score_tasks_serial(const std::vector<DayTask>& tasks, const ScoreOptions& options);

// --- series -----------------------------------------------------------------

struct ScoreSeries {
    double pressure_hpa = 0.0;
    std::vector<DayScores> days; ///< ordered by date
    std::optional<Date> focal_date;
    std::optional<Baseline> baseline;
    std::vector<std::string> warnings; ///< one per skipped day
};

struct SeriesRequest {
    double pressure_hpa = 10.0;
    Date focal_date;
    int days_before = 0;
    int days_after = 0;
    ScoreOptions options;
    int jobs = 0;
};

/// One DayScores per day of [focal - before, focal + after] present in the manifest. Missing or
/// unreadable days become warnings; a window with no scored day throws Error.
ScoreSeries score_series(const DatasetManifest& manifest, const SeriesRequest& request,
                         const WindSeries* wind = nullptr);

/// Scores CSV: `date,pressure_hpa,split,displacement,h_grid,h_cyl,l2_cyl,degenerate,wind_negative`.
std::string scores_csv_header();
std::string scores_csv_row(const DayScores& day);

// --- event comparison ---------------------------------------------------------

struct EventScore {
    std::string definition;
    Date event_date;
    double max_split = 0.0;
    double max_displacement = 0.0;
};

/// Events sharing an event date collapse into one point; `label` is the definition, or
/// "Multi" when several definitions claim the date.
struct EventPoint {
    std::string label;
    Date event_date;
    double max_split = 0.0;
    double max_displacement = 0.0;
};

std::vector<EventPoint> group_events(const std::vector<EventScore>& scores);

struct EventComparison {
    std::vector<EventScore> scores;
    std::vector<std::string> errors; ///< rows that could not be scored
    double mean_max_displacement = 0.0; ///< over distinct event dates
    double mean_max_split = 0.0;
};

using DayScoresProvider = std::function<std::optional<DayScores>(Date)>;

EventComparison event_window_max(const DayScoresProvider& provider, const EventList& events);

/// Event scores CSV: `definition,event_date,max_displacement,max_split`.
std::string event_scores_csv(const std::vector<EventScore>& scores);

} // namespace superpov
