#pragma once

// Deterministic SVG 1.1 plots: score series, multi-pressure overlays and the event scatter.
//
// Every plotted datum is one element carrying `class="pt"` plus `data-*` attributes, so
// documents can be inspected (and diffed) without a rasteriser.

#include "superpov/scores.hpp"

#include <optional>
#include <string>
#include <vector>

namespace superpov {

enum class Panel { lifespans, split, displacement, scatter };

std::string_view to_string(Panel p);

struct PlotSpec {
    int width = 960;
    int height = 900;
    std::vector<Panel> panels{Panel::lifespans, Panel::split, Panel::displacement};
    bool emphasize_focal = true;
    /// Curve labels for multi-series plots; defaults to "<p> hPa".
    std::vector<std::string> series_labels;
    std::string title;
};

/// Throws Error on non-positive dimensions or an empty panel list.
void validate(const PlotSpec& spec);

/// Indices of the day labels to draw: at most `max_labels`, evenly strided, always including
/// `anchor` (the focal day) when given.
std::vector<std::size_t> label_indices(std::size_t count, std::optional<std::size_t> anchor,
                                       std::size_t max_labels = 16);

std::string render_series_svg(const ScoreSeries& series, const PlotSpec& spec = {});

/// One curve per series; all series must share the same dates. Defaults to the split and
/// displacement panels when `spec.panels` is the series default.
std::string render_multi_pressure_svg(const std::vector<ScoreSeries>& series, PlotSpec spec = {});

/// Displacement (x) against split (y), one point per distinct event date.
std::string render_scatter_svg(const std::vector<EventScore>& scores, PlotSpec spec = {});

} // namespace superpov
