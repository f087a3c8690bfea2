#include "superpov/error.hpp"
#include "superpov/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

namespace superpov {

SynthSpec SynthSpec::normal(double depth) {
    SynthSpec s;
    s.kind = VortexKind::normal;
    s.centers = {Cone{0.0, 0.0, depth}};
    return s;
}

SynthSpec SynthSpec::displaced(double colat, double lon, double depth) {
    SynthSpec s;
    s.kind = VortexKind::displaced;
    s.centers = {Cone{colat, lon, depth}};
    return s;
}

SynthSpec SynthSpec::split(double depth1, double depth2, double colat, double lon) {
    SynthSpec s;
    s.kind = VortexKind::split;
    s.centers = {Cone{colat, lon, depth1}, Cone{colat, std::fmod(lon + 180.0, 360.0), depth2}};
    return s;
}

void validate(const SynthSpec& spec) {
    const std::size_t want = spec.kind == VortexKind::split ? 2 : 1;
    if (spec.centers.size() != want)
        throw Error(fmt::format("synth: kind '{}' needs {} center(s), got {}", to_string(spec.kind), want,
                                spec.centers.size()));
    if (spec.nlat < 3 || spec.nlon < 4) throw Error("synth: grid must be at least 3x4");
    if (!(spec.cone_radius > 0)) throw Error("synth: cone radius must be positive");
    if (!(spec.noise_amplitude >= 0) || !std::isfinite(spec.noise_amplitude))
        throw Error("synth: noise amplitude must be finite and non-negative");
    if (!std::isfinite(spec.base_height)) throw Error("synth: base height must be finite");
    for (const auto& c : spec.centers) {
        if (!(c.depth > 0) || !std::isfinite(c.depth)) throw Error("synth: cone depth must be positive");
        if (!(c.colat_deg >= 0 && c.colat_deg <= 90)) throw Error("synth: center colatitude must be in [0, 90]");
        if (!std::isfinite(c.lon_deg)) throw Error("synth: center longitude must be finite");
    }
}

double great_circle_deg(double lat1, double lon1, double lat2, double lon2) {
    constexpr double rad = std::numbers::pi / 180.0;
    const double p1 = lat1 * rad, p2 = lat2 * rad;
    const double dl = (lon2 - lon1) * rad;
    // haversine keeps precision at short range
    const double a = std::pow(std::sin((p2 - p1) / 2), 2) + std::cos(p1) * std::cos(p2) * std::pow(std::sin(dl / 2), 2);
    return 2.0 * std::asin(std::min(1.0, std::sqrt(a))) / rad;
}

GphField synth_field(const SynthSpec& spec) {
    validate(spec);
    std::vector<double> lats(spec.nlat), lons(spec.nlon);
    for (std::size_t i = 0; i < spec.nlat; ++i)
        lats[i] = i + 1 == spec.nlat ? 90.0 : 90.0 * static_cast<double>(i) / static_cast<double>(spec.nlat - 1);
    for (std::size_t j = 0; j < spec.nlon; ++j) lons[j] = 360.0 * static_cast<double>(j) / static_cast<double>(spec.nlon);

    std::mt19937_64 rng{spec.seed};
    // explicit 53-bit mapping: std::uniform_real_distribution is not portable bit-for-bit
    auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    std::vector<double> values(spec.nlat * spec.nlon);
    for (std::size_t i = 0; i < spec.nlat; ++i) {
        for (std::size_t j = 0; j < spec.nlon; ++j) {
            double v = spec.base_height;
            for (const auto& c : spec.centers) {
                const double d = great_circle_deg(lats[i], lons[j], 90.0 - c.colat_deg, c.lon_deg);
                v -= c.depth * std::max(0.0, 1.0 - d / spec.cone_radius);
            }
            if (spec.noise_amplitude > 0) v += spec.noise_amplitude * (2.0 * uniform() - 1.0);
            values[i * spec.nlon + j] = v;
        }
    }
    return GphField{spec.date, spec.pressure_hpa, std::move(lats), std::move(lons), std::move(values)};
}

std::string_view to_string(VortexKind kind) {
    switch (kind) {
    case VortexKind::normal: return "normal";
    case VortexKind::displaced: return "displaced";
    case VortexKind::split: return "split";
    }
    return "?";
}

VortexKind parse_vortex_kind(std::string_view text) {
    if (text == "normal") return VortexKind::normal;
    if (text == "displaced") return VortexKind::displaced;
    if (text == "split") return VortexKind::split;
    throw Error(fmt::format("unknown vortex kind '{}' (expected normal, displaced or split)", text));
}

} // namespace superpov
