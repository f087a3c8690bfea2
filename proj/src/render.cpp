#include "superpov/render.hpp"

#include "superpov/error.hpp"

#include <algorithm>
#include <array>
#include <map>

#include <fmt/format.h>

namespace superpov {

std::string_view to_string(Panel p) {
    switch (p) {
    case Panel::lifespans: return "lifespans";
    case Panel::split: return "split";
    case Panel::displacement: return "displacement";
    case Panel::scatter: return "scatter";
    }
    return "?";
}

void validate(const PlotSpec& spec) {
    if (spec.width <= 0 || spec.height <= 0)
        throw Error(fmt::format("plot dimensions must be positive, got {}x{}", spec.width, spec.height));
    if (spec.panels.empty()) throw Error("plot needs at least one panel");
}

std::vector<std::size_t> label_indices(std::size_t count, std::optional<std::size_t> anchor, std::size_t max_labels) {
    std::vector<std::size_t> out;
    if (count == 0 || max_labels == 0) return out;
    const std::size_t stride = (count + max_labels - 1) / max_labels;
    const std::size_t start = anchor && *anchor < count ? *anchor % stride : 0;
    for (std::size_t i = start; i < count; i += stride) out.push_back(i);
    return out;
}

namespace {

constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd",
                                              "#8c564b", "#e377c2", "#17becf", "#bcbd22"};
constexpr const char* kWindColor = "#d62728";

std::string num(double v) {
    auto s = fmt::format("{:.2f}", v);
    return s == "-0.00" ? "0.00" : s;
}

std::string escape(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

class Svg {
public:
    Svg(int width, int height, std::string_view title) {
        out_ = fmt::format("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                           "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{1}\" "
                           "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\" font-size=\"11\">\n"
                           "<rect x=\"0\" y=\"0\" width=\"{0}\" height=\"{1}\" fill=\"white\"/>\n",
                           width, height);
        if (!title.empty())
            out_ += fmt::format("<text class=\"title\" x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
                                width / 2, escape(title));
    }

    void add(std::string_view element) {
        out_ += element;
        out_ += '\n';
    }

    std::string finish() && {
        out_ += "</svg>\n";
        return std::move(out_);
    }

private:
    std::string out_;
};

// Plot area of one panel with a linear y scale.
struct Frame {
    double x0, y0, w, h;
    double ymin, ymax;

    double y(double v) const { return y0 + h - (v - ymin) / (ymax - ymin) * h; }
    double x(std::size_t i, std::size_t n) const { return x0 + (static_cast<double>(i) + 0.5) * w / static_cast<double>(n); }
};

double nice_max(double v, double floor_value) {
    v = std::max(v, floor_value);
    return v > 0 ? v * 1.05 : 1.0;
}

void draw_axes(Svg& svg, const Frame& f, std::string_view panel, std::string_view heading) {
    svg.add(fmt::format("<g class=\"panel\" data-panel=\"{}\">", panel));
    svg.add(fmt::format("<text class=\"panel-title\" x=\"{}\" y=\"{}\" font-size=\"13\">{}</text>", num(f.x0),
                        num(f.y0 - 8), escape(heading)));
    svg.add(fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#444\"/>", num(f.x0),
                        num(f.y0), num(f.w), num(f.h)));
    for (int k = 0; k <= 4; ++k) {
        const double v = f.ymin + (f.ymax - f.ymin) * k / 4.0;
        const double y = f.y(v);
        svg.add(fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"#ddd\"/>", num(f.x0), num(y),
                            num(f.x0 + f.w)));
        svg.add(fmt::format("<text class=\"y-label\" x=\"{}\" y=\"{}\" text-anchor=\"end\">{:.3g}</text>", num(f.x0 - 6),
                            num(y + 4), v));
    }
    svg.add("</g>");
}

void draw_day_labels(Svg& svg, const Frame& f, const std::vector<Date>& dates, std::optional<std::size_t> focal,
                     bool emphasize) {
    for (std::size_t i : label_indices(dates.size(), focal)) {
        const double x = f.x(i, dates.size());
        const double y = f.y0 + f.h + 14;
        const bool bold = emphasize && focal && *focal == i;
        svg.add(fmt::format("<text class=\"tick-label\" x=\"{0}\" y=\"{1}\" text-anchor=\"end\" "
                            "transform=\"rotate(-40 {0} {1})\"{2}>{3}</text>",
                            num(x), num(y), bold ? " font-weight=\"bold\"" : "", dates[i].iso()));
    }
}

struct Curve {
    std::string name;
    std::string color;
    std::vector<double> values;
};

void draw_curve(Svg& svg, const Frame& f, std::string_view panel, const Curve& c, const std::vector<Date>& dates) {
    const std::size_t n = c.values.size();
    std::string points;
    for (std::size_t i = 0; i < n; ++i) {
        if (i) points += ' ';
        points += num(f.x(i, n)) + "," + num(f.y(c.values[i]));
    }
    svg.add(fmt::format("<polyline class=\"curve\" data-panel=\"{}\" data-series=\"{}\" points=\"{}\" fill=\"none\" "
                        "stroke=\"{}\" stroke-width=\"1.5\"/>",
                        panel, escape(c.name), points, c.color));
    for (std::size_t i = 0; i < n; ++i)
        svg.add(fmt::format("<circle class=\"pt\" data-panel=\"{}\" data-series=\"{}\" data-date=\"{}\" data-value=\"{}\" "
                            "cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{}\"/>",
                            panel, escape(c.name), dates[i].iso(), c.values[i], num(f.x(i, n)), num(f.y(c.values[i])),
                            c.color));
}

void draw_hline(Svg& svg, const Frame& f, std::string_view cls, double v, std::string_view dash) {
    if (v < f.ymin || v > f.ymax) return;
    svg.add(fmt::format("<line class=\"{0}\" x1=\"{1}\" y1=\"{2}\" x2=\"{3}\" y2=\"{2}\" stroke=\"#555\" "
                        "stroke-dasharray=\"{4}\"/>",
                        cls, num(f.x0), num(f.y(v)), num(f.x0 + f.w), dash));
}

void draw_legend(Svg& svg, double x, double y, const std::vector<Curve>& curves) {
    for (std::size_t k = 0; k < curves.size(); ++k) {
        const double yy = y + 16.0 * static_cast<double>(k);
        svg.add(fmt::format("<g class=\"legend-entry\"><line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"{3}\" "
                            "stroke-width=\"2\"/><text x=\"{4}\" y=\"{5}\">{6}</text></g>",
                            num(x), num(yy), num(x + 18), curves[k].color, num(x + 24), num(yy + 4),
                            escape(curves[k].name)));
    }
}

std::string_view panel_heading(Panel p) {
    switch (p) {
    case Panel::lifespans: return "Two longest H1 lifespans (m)";
    case Panel::split: return "Split score";
    case Panel::displacement: return "Displacement score";
    case Panel::scatter: return "Event maxima";
    }
    return "";
}

std::vector<Frame> stack_frames(const PlotSpec& spec, std::size_t panels) {
    constexpr double left = 70, right = 150, top = 48, bottom_pad = 84, gap = 26;
    const double slot = (spec.height - top) / static_cast<double>(panels);
    std::vector<Frame> frames;
    for (std::size_t p = 0; p < panels; ++p) {
        const double y0 = top + slot * static_cast<double>(p) + gap;
        frames.push_back(Frame{left, y0, std::max(10.0, spec.width - left - right),
                               std::max(10.0, slot - gap - bottom_pad), 0.0, 1.0});
    }
    return frames;
}

std::vector<double> pick(const std::vector<DayScores>& days, double DayScores::*field) {
    std::vector<double> v;
    for (const auto& d : days) v.push_back(d.*field);
    return v;
}

double max_of(const std::vector<Curve>& curves) {
    double m = 0.0;
    for (const auto& c : curves)
        for (double v : c.values) m = std::max(m, v);
    return m;
}

} // namespace

std::string render_series_svg(const ScoreSeries& series, const PlotSpec& spec) {
    validate(spec);
    if (series.days.empty()) throw Error("cannot render an empty series");

    std::vector<Date> dates;
    std::optional<std::size_t> focal;
    for (std::size_t i = 0; i < series.days.size(); ++i) {
        dates.push_back(series.days[i].date);
        if (series.focal_date && series.days[i].date == *series.focal_date) focal = i;
    }

    const std::string title =
        spec.title.empty() ? fmt::format("Scores at {} hPa", series.pressure_hpa) : spec.title;
    Svg svg{spec.width, spec.height, title};
    auto frames = stack_frames(spec, spec.panels.size());

    for (std::size_t p = 0; p < spec.panels.size(); ++p) {
        const Panel panel = spec.panels[p];
        Frame& f = frames[p];
        std::vector<Curve> curves;
        switch (panel) {
        case Panel::lifespans:
            curves = {{"longest", kPalette[0], pick(series.days, &DayScores::h_cyl)},
                      {"second longest", kPalette[1], pick(series.days, &DayScores::l2_cyl)}};
            break;
        case Panel::split: curves = {{"split", kPalette[2], pick(series.days, &DayScores::split)}}; break;
        case Panel::displacement:
            curves = {{"displacement", kPalette[3], pick(series.days, &DayScores::displacement)}};
            break;
        case Panel::scatter: throw Error("scatter panel is not available in a series plot");
        }
        double top = max_of(curves);
        if (panel == Panel::lifespans && series.baseline) top = std::max(top, series.baseline->mean + series.baseline->std);
        f.ymax = nice_max(top, panel == Panel::lifespans ? 0.0 : 1.0);

        draw_axes(svg, f, to_string(panel), panel_heading(panel));
        draw_day_labels(svg, f, dates, focal, spec.emphasize_focal);
        if (panel == Panel::lifespans && series.baseline) {
            draw_hline(svg, f, "baseline-mean", series.baseline->mean, "6 4");
            draw_hline(svg, f, "baseline-std", series.baseline->mean + series.baseline->std, "2 3");
            draw_hline(svg, f, "baseline-std", series.baseline->mean - series.baseline->std, "2 3");
        }
        for (const auto& c : curves) draw_curve(svg, f, to_string(panel), c, dates);
        if (panel != Panel::lifespans) {
            const auto& values = curves.front().values;
            for (std::size_t i = 0; i < series.days.size(); ++i) {
                if (!series.days[i].wind_negative.value_or(false)) continue;
                const double x = f.x(i, dates.size()), y = f.y(values[i]);
                svg.add(fmt::format("<rect class=\"wind-neg\" data-panel=\"{}\" data-date=\"{}\" x=\"{}\" y=\"{}\" "
                                    "width=\"8\" height=\"8\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>",
                                    to_string(panel), dates[i].iso(), num(x - 4), num(y - 4), kWindColor));
            }
        }
        draw_legend(svg, f.x0 + f.w + 14, f.y0 + 8, curves);
    }
    return std::move(svg).finish();
}

std::string render_multi_pressure_svg(const std::vector<ScoreSeries>& series, PlotSpec spec) {
    if (series.size() < 2) throw Error("multi-pressure plot needs at least two series");
    if (spec.panels == PlotSpec{}.panels) spec.panels = {Panel::split, Panel::displacement};
    validate(spec);
    std::vector<Date> dates;
    for (const auto& d : series.front().days) dates.push_back(d.date);
    if (dates.empty()) throw Error("cannot render an empty series");
    for (const auto& s : series) {
        bool same = s.days.size() == dates.size();
        for (std::size_t i = 0; same && i < dates.size(); ++i) same = s.days[i].date == dates[i];
        if (!same)
            throw Error(fmt::format("series at {} hPa does not share the date axis of the series at {} hPa",
                                    s.pressure_hpa, series.front().pressure_hpa));
    }
    std::optional<std::size_t> focal;
    if (series.front().focal_date)
        for (std::size_t i = 0; i < dates.size(); ++i)
            if (dates[i] == *series.front().focal_date) focal = i;

    Svg svg{spec.width, spec.height, spec.title.empty() ? "Scores by pressure level" : spec.title};
    auto frames = stack_frames(spec, spec.panels.size());
    for (std::size_t p = 0; p < spec.panels.size(); ++p) {
        const Panel panel = spec.panels[p];
        double DayScores::*field = nullptr;
        switch (panel) {
        case Panel::lifespans: field = &DayScores::h_cyl; break;
        case Panel::split: field = &DayScores::split; break;
        case Panel::displacement: field = &DayScores::displacement; break;
        case Panel::scatter: throw Error("scatter panel is not available in a multi-pressure plot");
        }
        std::vector<Curve> curves;
        for (std::size_t k = 0; k < series.size(); ++k) {
            std::string label = k < spec.series_labels.size() ? spec.series_labels[k]
                                                              : fmt::format("{} hPa", series[k].pressure_hpa);
            curves.push_back({std::move(label), kPalette[k % kPalette.size()], pick(series[k].days, field)});
        }
        Frame& f = frames[p];
        f.ymax = nice_max(max_of(curves), panel == Panel::lifespans ? 0.0 : 1.0);
        draw_axes(svg, f, to_string(panel), panel == Panel::lifespans ? "Longest H1 lifespan (m)" : panel_heading(panel));
        draw_day_labels(svg, f, dates, focal, spec.emphasize_focal);
        for (const auto& c : curves) draw_curve(svg, f, to_string(panel), c, dates);
        // curves keep their colour across panels, so one legend serves them all
        if (p == 0) draw_legend(svg, f.x0 + f.w + 14, f.y0 + 8, curves);
    }
    return std::move(svg).finish();
}

std::string render_scatter_svg(const std::vector<EventScore>& scores, PlotSpec spec) {
    if (scores.empty()) throw Error("cannot render a scatter of zero events");
    spec.panels = {Panel::scatter};
    if (spec.width == PlotSpec{}.width && spec.height == PlotSpec{}.height) spec.width = spec.height = 640;
    validate(spec);

    const auto points = group_events(scores);
    std::map<std::string, std::size_t> classes;
    for (const auto& p : points) classes.emplace(p.label, 0);
    std::size_t next = 0;
    for (auto& [label, index] : classes) index = next++;

    double xmax = 1.0, ymax = 1.0;
    for (const auto& p : points) {
        xmax = std::max(xmax, p.max_displacement);
        ymax = std::max(ymax, p.max_split);
    }
    constexpr double left = 70, right = 150, top = 48, bottom = 60;
    Frame f{left, top, std::max(10.0, spec.width - left - right), std::max(10.0, spec.height - top - bottom), 0.0,
            ymax * 1.05};
    const double x_hi = xmax * 1.05;
    auto px = [&](double v) { return f.x0 + v / x_hi * f.w; };

    Svg svg{spec.width, spec.height, spec.title.empty() ? "Event-window maxima" : spec.title};
    draw_axes(svg, f, "scatter", "Split (vertical) vs displacement (horizontal)");
    for (int k = 0; k <= 4; ++k) {
        const double v = x_hi * k / 4.0;
        svg.add(fmt::format("<text class=\"x-label\" x=\"{}\" y=\"{}\" text-anchor=\"middle\">{:.3g}</text>", num(px(v)),
                            num(f.y0 + f.h + 16), v));
    }
    svg.add(fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">Displacement score</text>", num(f.x0 + f.w / 2),
                        num(f.y0 + f.h + 36)));

    auto marker = [&](std::size_t cls, double x, double y, std::string_view attrs) {
        const char* color = kPalette[cls % kPalette.size()];
        switch (cls % 3) {
        case 0: return fmt::format("<circle {} cx=\"{}\" cy=\"{}\" r=\"5\" fill=\"{}\"/>", attrs, num(x), num(y), color);
        case 1:
            return fmt::format("<rect {} x=\"{}\" y=\"{}\" width=\"9\" height=\"9\" fill=\"{}\"/>", attrs, num(x - 4.5),
                               num(y - 4.5), color);
        default:
            return fmt::format("<polygon {} points=\"{},{} {},{} {},{}\" fill=\"{}\"/>", attrs, num(x), num(y - 5),
                               num(x - 5), num(y + 4), num(x + 5), num(y + 4), color);
        }
    };
    for (const auto& p : points) {
        const auto attrs = fmt::format("class=\"pt\" data-label=\"{}\" data-date=\"{}\" data-x=\"{}\" data-y=\"{}\"",
                                       escape(p.label), p.event_date.iso(), p.max_displacement, p.max_split);
        svg.add(marker(classes.at(p.label), px(p.max_displacement), f.y(p.max_split), attrs));
    }
    double ly = f.y0 + 8;
    for (const auto& [label, cls] : classes) {
        svg.add("<g class=\"legend-entry\">" + marker(cls, f.x0 + f.w + 22, ly, "") +
                fmt::format("<text x=\"{}\" y=\"{}\">{}</text></g>", num(f.x0 + f.w + 34), num(ly + 4), escape(label)));
        ly += 18;
    }
    return std::move(svg).finish();
}

} // namespace superpov
