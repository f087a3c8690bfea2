#pragma once

// Daily geopotential-height grids and the auxiliary inputs of a run:
// dataset manifests, wind series and event lists.

#include "superpov/date.hpp"

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace superpov {

/// One day's regular latitude/longitude grid of geopotential height (m) at one pressure level.
///
/// Latitudes are strictly increasing within [0, 90], longitudes strictly increasing within
/// [0, 360). Values are row-major by latitude. Construction validates everything, so a
/// GphField that exists is always well formed.
class GphField {
public:
    GphField(Date date, double pressure_hpa, std::vector<double> lats, std::vector<double> lons,
             std::vector<double> values);

    Date date() const { return date_; }
    double pressure_hpa() const { return pressure_hpa_; }
    std::size_t nlat() const { return lats_.size(); }
    std::size_t nlon() const { return lons_.size(); }
    std::span<const double> lats() const { return lats_; }
    std::span<const double> lons() const { return lons_; }
    std::span<const double> values() const { return values_; }
    double at(std::size_t lat_index, std::size_t lon_index) const { return values_[lat_index * nlon() + lon_index]; }

    /// Same grid with different metadata.
    GphField with_metadata(Date date, double pressure_hpa) const;

    /// Same grid with every value mapped through `fn`.
    template <class Fn>
    GphField transformed(Fn&& fn) const {
        std::vector<double> v(values_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(values_[i]);
        return GphField{date_, pressure_hpa_, lats_, lons_, std::move(v)};
    }

    /// Longitude columns rotated so that column `shift` becomes column 0. Longitudes keep their
    /// original positions; only the values move.
    GphField rotated_columns(std::size_t shift) const;

    /// Bit-exact comparison of grid and values (metadata ignored).
    bool same_grid_and_values(const GphField& other) const;

private:
    Date date_;
    double pressure_hpa_;
    std::vector<double> lats_;
    std::vector<double> lons_;
    std::vector<double> values_;
};

/// Metadata that the SPPV format does not carry; supplied by the manifest.
struct FieldMeta {
    Date date{};
    double pressure_hpa = 10.0;
};

GphField parse_field_csv(std::istream& in, const FieldMeta& meta);
std::string write_field_csv(const GphField& field);

std::vector<std::uint8_t> write_field_bin(const GphField& field);
GphField parse_field_bin(std::span<const std::uint8_t> bytes, const FieldMeta& meta = {});

/// Loads a field by extension: `.csv` is the text format, anything else is SPPV.
GphField load_field(const std::filesystem::path& path, const FieldMeta& meta);
void save_field(const std::filesystem::path& path, const GphField& field);

/// Drops latitude rows strictly below `min_lat`. Throws if fewer than 3 rows remain.
GphField crop_min_lat(const GphField& field, double min_lat);

// ---------------------------------------------------------------------------

struct DatasetManifest {
    using Key = std::pair<Date, double>; // (date, pressure_hpa)
    std::map<Key, std::filesystem::path> entries;

    std::optional<std::filesystem::path> find(Date date, double pressure_hpa) const;
};

/// Relative paths in the manifest are resolved against `base_dir`.
DatasetManifest parse_manifest_csv(std::istream& in, const std::filesystem::path& base_dir);
DatasetManifest load_manifest(const std::filesystem::path& path);

/// Zonal-mean zonal wind at 60N, m/s.
struct WindSeries {
    std::map<Date, double> samples;

    std::optional<bool> negative_on(Date date) const;
};

WindSeries parse_wind_csv(std::istream& in);

struct EventRow {
    std::string definition;
    Date event_date;
    Date window_start;
    Date window_end;
};

using EventList = std::vector<EventRow>;

EventList parse_events_csv(std::istream& in);

// ---------------------------------------------------------------------------

enum class VortexKind { normal, displaced, split };

/// One tent-shaped depression: height drops by `depth` at the center, linearly to zero at
/// `SynthSpec::cone_radius` degrees of great-circle distance.
struct Cone {
    double colat_deg = 0.0;
    double lon_deg = 0.0;
    double depth = 500.0;
};

/// Parameters of a synthetic vortex field on a grid with `nlat` latitudes evenly spaced over
/// [0, 90] and `nlon` longitudes evenly spaced from 0.
struct SynthSpec {
    VortexKind kind = VortexKind::normal;
    std::size_t nlat = 19;
    std::size_t nlon = 36;
    double base_height = 31000.0;
    std::vector<Cone> centers{Cone{}};
    double cone_radius = 25.0;
    double noise_amplitude = 0.0;
    std::uint64_t seed = 0;
    Date date{};
    double pressure_hpa = 10.0;

    static SynthSpec normal(double depth = 500.0);
    static SynthSpec displaced(double colat = 30.0, double lon = 180.0, double depth = 500.0);
    static SynthSpec split(double depth1 = 500.0, double depth2 = 500.0, double colat = 30.0, double lon = 90.0);
};

/// Throws Error if the SynthSpec violates its invariants.
void validate(const SynthSpec& spec);

/// value = base - sum(depth * max(0, 1 - d / radius)) + noise, noise uniform in
/// [-noise_amplitude, noise_amplitude] from a seeded 64-bit Mersenne twister.
GphField synth_field(const SynthSpec& spec);

double great_circle_deg(double lat1, double lon1, double lat2, double lon2);

std::string_view to_string(VortexKind kind);
VortexKind parse_vortex_kind(std::string_view text);

} // namespace superpov
