#include "superpov/cli.hpp"

#include "superpov/error.hpp"
#include "superpov/render.hpp"
#include "superpov/scores.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <map>
#include <set>

#include <fmt/format.h>

namespace superpov::cli {

namespace {

using nlohmann::json;

json to_json(const DayScores& d) {
    json j{{"date", d.date.iso()},    {"pressure_hpa", d.pressure_hpa}, {"split", d.split},
           {"displacement", d.displacement}, {"h_grid", d.h_grid},     {"h_cyl", d.h_cyl},
           {"l2_cyl", d.l2_cyl},      {"degenerate", d.degenerate}};
    j["wind_negative"] = d.wind_negative ? json(*d.wind_negative) : json(nullptr);
    return j;
}

// Artifacts are collected first and written together once the command has succeeded.
class Outputs {
public:
    void add(const std::filesystem::path& path, std::string content) {
        if (!path.empty()) files_.emplace_back(path, std::move(content));
    }

    void write_all() const {
        for (const auto& [path, content] : files_) {
            std::ofstream f{path, std::ios::binary};
            f << content;
            if (!f) throw Error(fmt::format("cannot write '{}'", path.string()));
        }
    }

private:
    std::vector<std::pair<std::filesystem::path, std::string>> files_;
};

template <class Parse>
auto read_file(const std::filesystem::path& path, std::string_view what, Parse&& parse) {
    std::ifstream in{path};
    if (!in) throw Error(fmt::format("cannot open {} file '{}'", what, path.string()));
    return parse(in);
}

Date require_date(const CliConfig& c) {
    if (c.date.empty()) throw Error(fmt::format("`{}` needs --date YYYY-MM-DD", c.command));
    return Date::parse(c.date);
}

double first_pressure(const CliConfig& c) { return c.pressures.empty() ? 10.0 : c.pressures.front(); }

ScoreOptions score_options(const CliConfig& c) {
    return ScoreOptions{parse_split_source(c.split_source), c.min_lat};
}

std::optional<WindSeries> load_wind(const CliConfig& c) {
    if (c.wind.empty()) return std::nullopt;
    return read_file(c.wind, "wind", [](std::istream& in) { return parse_wind_csv(in); });
}

FieldMeta input_meta(const CliConfig& c) {
    return FieldMeta{c.date.empty() ? Date{} : Date::parse(c.date), first_pressure(c)};
}

int cmd_score(const CliConfig& c, std::ostream& out) {
    if (c.before != 0 || c.after != 0)
        throw Error("`score` covers a single day; use `series` for --before/--after windows");
    if (c.input.empty() == c.manifest.empty()) throw Error("`score` needs exactly one of --input or --manifest");

    GphField field = [&] {
        if (!c.input.empty()) return load_field(c.input, input_meta(c));
        const Date date = require_date(c);
        const auto manifest = load_manifest(c.manifest);
        auto path = manifest.find(date, first_pressure(c));
        if (!path)
            throw Error(fmt::format("manifest has no entry for {} at {} hPa", date.iso(), first_pressure(c)));
        return load_field(*path, {date, first_pressure(c)});
    }();

    DayScores day = score_day(field, score_options(c));
    if (auto wind = load_wind(c)) day.wind_negative = wind->negative_on(day.date);

    Outputs outputs;
    const std::string doc = to_json(day).dump(2) + "\n";
    if (c.out_json.empty()) out << doc;
    outputs.add(c.out_json, doc);
    outputs.add(c.out_csv, scores_csv_header() + scores_csv_row(day));
    outputs.write_all();
    return 0;
}

std::optional<Baseline> manifest_baseline(const DatasetManifest& manifest, double pressure, const CliConfig& c,
                                          std::ostream& err) {
    std::vector<DayTask> tasks;
    for (const auto& [key, path] : manifest.entries)
        if (key.second == pressure) tasks.push_back({key.first, pressure, path});
    std::vector<DayScores> days;
    for (auto& r : score_tasks(tasks, score_options(c), c.jobs)) {
        if (r.scores)
            days.push_back(*r.scores);
        else
            err << "warning: baseline: " << r.error << "\n";
    }
    return normal_baseline(days);
}

int cmd_series(const CliConfig& c, std::ostream& out, std::ostream& err) {
    if (c.manifest.empty()) throw Error("`series` needs --manifest");
    if (c.baseline != "window" && c.baseline != "all")
        throw Error(fmt::format("unknown --baseline '{}' (expected window or all)", c.baseline));
    const Date focal = require_date(c);
    const auto manifest = load_manifest(c.manifest);
    const auto wind = load_wind(c);

    std::vector<double> pressures = c.pressures.empty() ? std::vector<double>{10.0} : c.pressures;
    std::vector<ScoreSeries> all;
    for (double p : pressures) {
        SeriesRequest req{p, focal, c.before, c.after, score_options(c), c.jobs};
        auto series = score_series(manifest, req, wind ? &*wind : nullptr);
        if (c.baseline == "all") series.baseline = manifest_baseline(manifest, p, c, err);
        for (const auto& w : series.warnings) err << "warning: " << w << "\n";
        out << fmt::format("scored {} day(s) at {} hPa\n", series.days.size(), p);
        all.push_back(std::move(series));
    }

    Outputs outputs;
    std::string csv = scores_csv_header();
    json doc = json::array();
    for (const auto& s : all) {
        json days = json::array();
        for (const auto& d : s.days) {
            csv += scores_csv_row(d);
            days.push_back(to_json(d));
        }
        json entry{{"pressure_hpa", s.pressure_hpa}, {"focal_date", focal.iso()}, {"days", days}};
        entry["baseline"] = s.baseline ? json{{"mean", s.baseline->mean}, {"std", s.baseline->std}} : json(nullptr);
        entry["warnings"] = s.warnings;
        doc.push_back(entry);
    }
    if (c.out_csv.empty() && c.out_json.empty() && c.out_svg.empty()) out << csv;
    outputs.add(c.out_csv, csv);
    outputs.add(c.out_json, doc.dump(2) + "\n");
    outputs.add(c.out_svg, render_series_svg(all.front()));
    if (all.size() > 1) {
        auto multi = c.out_multi_svg;
        if (multi.empty() && !c.out_svg.empty())
            multi = c.out_svg.parent_path() / (c.out_svg.stem().string() + "_multi.svg");
        if (!multi.empty()) {
            // the multi-pressure overlay needs one date axis; keep the dates every level has
            std::set<Date> common;
            for (const auto& d : all.front().days) common.insert(d.date);
            for (const auto& s : all) {
                std::set<Date> mine;
                for (const auto& d : s.days)
                    if (common.count(d.date)) mine.insert(d.date);
                common = std::move(mine);
            }
            auto aligned = all;
            for (auto& s : aligned)
                std::erase_if(s.days, [&](const DayScores& d) { return !common.count(d.date); });
            if (common.empty()) throw Error("pressure levels share no scored day; cannot overlay them");
            outputs.add(multi, render_multi_pressure_svg(aligned));
        }
    }
    outputs.write_all();
    return 0;
}

int cmd_compare(const CliConfig& c, std::ostream& out, std::ostream& err) {
    if (c.manifest.empty() || c.events.empty()) throw Error("`compare` needs --manifest and --events");
    const auto manifest = load_manifest(c.manifest);
    const auto events = read_file(c.events, "events", [](std::istream& in) { return parse_events_csv(in); });
    if (events.empty()) throw Error("events file has no rows");
    const double p = first_pressure(c);

    std::set<Date> wanted;
    for (const auto& ev : events)
        for (Date d = ev.window_start; d <= ev.window_end; d = d + 1) wanted.insert(d);
    std::vector<DayTask> tasks;
    for (Date d : wanted)
        if (auto path = manifest.find(d, p)) tasks.push_back({d, p, *path});

    std::map<Date, DayScores> scored;
    auto results = score_tasks(tasks, score_options(c), c.jobs);
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (results[i].scores)
            scored.emplace(tasks[i].date, *results[i].scores);
        else
            err << "warning: " << tasks[i].date.iso() << ": " << results[i].error << "\n";
    }
    auto comparison = event_window_max(
        [&](Date d) -> std::optional<DayScores> {
            auto it = scored.find(d);
            return it == scored.end() ? std::nullopt : std::optional{it->second};
        },
        events);
    for (const auto& e : comparison.errors) err << "error: " << e << "\n";

    Outputs outputs;
    const std::string csv = event_scores_csv(comparison.scores);
    if (c.out_csv.empty()) out << csv;
    outputs.add(c.out_csv, csv);
    if (!comparison.scores.empty()) {
        out << fmt::format("mean_max_displacement={} mean_max_split={} events={}\n", comparison.mean_max_displacement,
                           comparison.mean_max_split, group_events(comparison.scores).size());
        outputs.add(c.out_svg, render_scatter_svg(comparison.scores));
    }
    json doc{{"mean_max_displacement", comparison.mean_max_displacement},
             {"mean_max_split", comparison.mean_max_split},
             {"errors", comparison.errors}};
    json rows = json::array();
    for (const auto& s : comparison.scores)
        rows.push_back({{"definition", s.definition},
                        {"event_date", s.event_date.iso()},
                        {"max_displacement", s.max_displacement},
                        {"max_split", s.max_split}});
    doc["events"] = rows;
    outputs.add(c.out_json, doc.dump(2) + "\n");
    outputs.write_all();
    return comparison.errors.empty() ? 0 : 1;
}

int cmd_synth(const CliConfig& c, std::ostream& out) {
    if (c.kind.empty()) throw Error("`synth` needs --kind normal|displaced|split");
    if (c.out.empty()) throw Error("`synth` needs --out <file.sppv|file.csv>");
    SynthSpec spec;
    switch (parse_vortex_kind(c.kind)) {
    case VortexKind::normal: spec = SynthSpec::normal(c.depth); break;
    case VortexKind::displaced: spec = SynthSpec::displaced(c.colat.value_or(30.0), c.lon.value_or(180.0), c.depth); break;
    case VortexKind::split:
        spec = SynthSpec::split(c.depth, c.depth2.value_or(c.depth), c.colat.value_or(30.0), c.lon.value_or(90.0));
        break;
    }
    if (spec.kind == VortexKind::normal && (c.colat || c.lon)) spec.centers[0] = Cone{c.colat.value_or(0.0), c.lon.value_or(0.0), c.depth};
    spec.nlat = c.nlat;
    spec.nlon = c.nlon;
    spec.base_height = c.base;
    spec.cone_radius = c.radius;
    spec.noise_amplitude = c.noise;
    spec.seed = c.seed;
    const auto meta = input_meta(c);
    spec.date = meta.date;
    spec.pressure_hpa = meta.pressure_hpa;
    save_field(c.out, synth_field(spec));
    out << fmt::format("wrote {} field {}x{} to {}\n", c.kind, spec.nlat, spec.nlon, c.out.string());
    return 0;
}

int cmd_pairs(const CliConfig& c, std::ostream& out) {
    if (c.input.empty()) throw Error("`pairs` needs --input");
    GphField field = load_field(c.input, input_meta(c));
    if (c.min_lat) field = crop_min_lat(field, *c.min_lat);
    const auto complex = build_complex(field, parse_topology(c.topology));
    const auto diagram = reduce(complex);
    Outputs outputs;
    if (c.out_csv.empty()) out << diagram.to_csv();
    outputs.add(c.out_csv, diagram.to_csv());
    if (!c.complex_csv.empty()) outputs.add(c.complex_csv, complex.to_csv());
    outputs.write_all();
    return 0;
}

void add_common(CLI::App* cmd, CliConfig& c) {
    cmd->add_option("--date", c.date, "Focal/field date, YYYY-MM-DD");
    cmd->add_option("--pressure", c.pressures, "Pressure level in hPa (repeatable; default 10)");
    cmd->add_option("--min-lat", c.min_lat, "Drop latitude rows below this before building complexes");
}

void add_scoring(CLI::App* cmd, CliConfig& c) {
    cmd->add_option("--split-source", c.split_source, "Complex whose diagram gives the split score")
        ->check(CLI::IsMember({"polar", "grid"}))
        ->capture_default_str();
    cmd->add_option("--jobs", c.jobs, "Days scored in parallel (0 = all cores)")->check(CLI::NonNegativeNumber);
}

} // namespace

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.command == "score") return cmd_score(config, out);
        if (config.command == "series") return cmd_series(config, out, err);
        if (config.command == "compare") return cmd_compare(config, out, err);
        if (config.command == "synth") return cmd_synth(config, out);
        if (config.command == "pairs") return cmd_pairs(config, out);
        throw Error(fmt::format("unknown command '{}'", config.command));
    } catch (const std::exception& e) {
        err << "superpov: error: " << e.what() << "\n";
        return 1;
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CliConfig c;
    CLI::App app{"Split and displacement scores of the stratospheric polar vortex, computed from "
                 "superlevel-set persistent homology of daily geopotential height fields",
                 "superpov"};
    app.require_subcommand(1);

    auto* score = app.add_subcommand("score", "Score one day (JSON, optional CSV row)");
    score->add_option("--input", c.input, "Field file (.sppv or .csv)");
    score->add_option("--manifest", c.manifest, "Manifest CSV (date,pressure_hpa,path); use with --date");
    score->add_option("--before", c.before, "Must be 0 (single day)")->check(CLI::NonNegativeNumber);
    score->add_option("--after", c.after, "Must be 0 (single day)")->check(CLI::NonNegativeNumber);
    score->add_option("--wind", c.wind, "Wind CSV (date,u_ms); marks negative-wind days");
    score->add_option("--out-json", c.out_json, "Write DayScores JSON here instead of stdout");
    score->add_option("--out-csv", c.out_csv, "Write a scores CSV (header + one row)");
    add_common(score, c);
    add_scoring(score, c);

    auto* series = app.add_subcommand("series", "Score a window of days around --date");
    series->add_option("--manifest", c.manifest, "Manifest CSV (date,pressure_hpa,path)")->required();
    series->add_option("--before", c.before, "Days before the focal date")->check(CLI::NonNegativeNumber);
    series->add_option("--after", c.after, "Days after the focal date")->check(CLI::NonNegativeNumber);
    series->add_option("--wind", c.wind, "Wind CSV (date,u_ms); red markers on negative-wind days");
    series->add_option("--baseline", c.baseline,
                       "Normal-day baseline source: 'window' (days in the series) or 'all' (every manifest day "
                       "at that pressure)")
        ->capture_default_str();
    series->add_option("--out-csv", c.out_csv, "Scores CSV for all pressure levels");
    series->add_option("--out-json", c.out_json, "Series JSON including baselines and warnings");
    series->add_option("--out-svg", c.out_svg, "Series plot for the first pressure level");
    series->add_option("--out-multi-svg", c.out_multi_svg,
                       "Multi-pressure overlay (default: <out-svg stem>_multi.svg when several --pressure given)");
    add_common(series, c);
    add_scoring(series, c);

    auto* compare = app.add_subcommand("compare", "Maximum scores over event windows");
    compare->add_option("--manifest", c.manifest, "Manifest CSV (date,pressure_hpa,path)")->required();
    compare->add_option("--events", c.events, "Events CSV (definition,event_date,window_start,window_end)")->required();
    compare->add_option("--out-csv", c.out_csv, "Event scores CSV (default stdout)");
    compare->add_option("--out-svg", c.out_svg, "Scatter plot of event maxima");
    compare->add_option("--out-json", c.out_json, "Event scores and grand means as JSON");
    add_common(compare, c);
    add_scoring(compare, c);

    auto* synth = app.add_subcommand("synth", "Write a synthetic vortex field");
    synth->add_option("--kind", c.kind, "normal | displaced | split")->required()
        ->check(CLI::IsMember({"normal", "displaced", "split"}));
    synth->add_option("--out", c.out, "Output field (.sppv binary, or .csv)")->required();
    synth->add_option("--seed", c.seed, "Noise RNG seed")->capture_default_str();
    synth->add_option("--nlat", c.nlat, "Latitudes, evenly spaced over [0, 90]")->capture_default_str();
    synth->add_option("--nlon", c.nlon, "Longitudes, evenly spaced from 0")->capture_default_str();
    synth->add_option("--base", c.base, "Background height (m)")->capture_default_str();
    synth->add_option("--depth", c.depth, "Depth of the (first) cone (m)")->capture_default_str();
    synth->add_option("--depth2", c.depth2, "Depth of the second cone for split (default --depth)");
    synth->add_option("--colat", c.colat, "Center colatitude (deg; default 0 normal, 30 otherwise)");
    synth->add_option("--lon", c.lon, "Center longitude (deg; default 180 displaced, 90 split; the second split "
                                      "cone sits 180 deg away)");
    synth->add_option("--radius", c.radius, "Cone radius (deg great-circle)")->capture_default_str();
    synth->add_option("--noise", c.noise, "Uniform noise amplitude (m)")->capture_default_str();
    add_common(synth, c);

    auto* pairs = app.add_subcommand("pairs", "Dump the persistence diagram of one field");
    pairs->add_option("--input", c.input, "Field file (.sppv or .csv)")->required();
    pairs->add_option("--topology", c.topology, "grid | polar")
        ->check(CLI::IsMember({"grid", "polar"}))
        ->capture_default_str();
    pairs->add_option("--out-csv", c.out_csv, "Diagram CSV dim,birth,death,lifespan (default stdout)");
    pairs->add_option("--complex-csv", c.complex_csv, "Also dump the complex as dim,height,v0,v1,v2");
    add_common(pairs, c);

    // top-level help expands every subcommand so no flag is left out
    app.set_help_flag();
    app.set_help_all_flag("-h,--help", "Print this help, including every subcommand's flags, and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }
    for (auto* sub : app.get_subcommands()) c.command = sub->get_name();
    return run(c, out, err);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"superpov"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace superpov::cli
