#include "superpov/field.hpp"

#include "csv.hpp"
#include "superpov/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>

namespace superpov {

GphField::GphField(Date date, double pressure_hpa, std::vector<double> lats, std::vector<double> lons,
                   std::vector<double> values)
    : date_{date}, pressure_hpa_{pressure_hpa}, lats_{std::move(lats)}, lons_{std::move(lons)},
      values_{std::move(values)} {
    if (!(std::isfinite(pressure_hpa_) && pressure_hpa_ > 0))
        throw ParseError(fmt::format("pressure must be positive, got {}", pressure_hpa_));
    if (lats_.size() < 3) throw ParseError(fmt::format("need at least 3 latitudes, got {}", lats_.size()));
    if (lons_.size() < 4) throw ParseError(fmt::format("need at least 4 longitudes, got {}", lons_.size()));
    for (std::size_t i = 0; i < lats_.size(); ++i) {
        if (!(lats_[i] >= 0.0 && lats_[i] <= 90.0))
            throw ParseError(fmt::format("latitude {} outside [0, 90]", lats_[i]));
        if (i > 0 && !(lats_[i] > lats_[i - 1]))
            throw ParseError(fmt::format("latitudes not strictly increasing at {}", lats_[i]));
    }
    for (std::size_t j = 0; j < lons_.size(); ++j) {
        if (!(lons_[j] >= 0.0 && lons_[j] < 360.0))
            throw ParseError(fmt::format("longitude {} outside [0, 360)", lons_[j]));
        if (j > 0 && !(lons_[j] > lons_[j - 1]))
            throw ParseError(fmt::format("longitudes not strictly increasing at {}", lons_[j]));
    }
    if (values_.size() != lats_.size() * lons_.size())
        throw ParseError(fmt::format("dimension mismatch: {}x{} grid but {} values", lats_.size(), lons_.size(),
                                     values_.size()));
    for (std::size_t k = 0; k < values_.size(); ++k)
        if (!std::isfinite(values_[k]))
            throw ParseError(fmt::format("non-finite value at lat={} lon={}", lats_[k / lons_.size()],
                                         lons_[k % lons_.size()]));
}

GphField GphField::with_metadata(Date date, double pressure_hpa) const {
    return GphField{date, pressure_hpa, lats_, lons_, values_};
}

GphField GphField::rotated_columns(std::size_t shift) const {
    const std::size_t n = nlon();
    std::vector<double> v(values_.size());
    for (std::size_t i = 0; i < nlat(); ++i)
        for (std::size_t j = 0; j < n; ++j) v[i * n + j] = values_[i * n + (j + shift) % n];
    return GphField{date_, pressure_hpa_, lats_, lons_, std::move(v)};
}

bool GphField::same_grid_and_values(const GphField& other) const {
    auto bits_equal = [](std::span<const double> a, std::span<const double> b) {
        return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](double x, double y) {
            return std::bit_cast<std::uint64_t>(x) == std::bit_cast<std::uint64_t>(y);
        });
    };
    return bits_equal(lats_, other.lats_) && bits_equal(lons_, other.lons_) && bits_equal(values_, other.values_);
}

// --- CSV ---------------------------------------------------------------------

GphField parse_field_csv(std::istream& in, const FieldMeta& meta) {
    csv::Reader reader{in, "field csv", {"lat", "lon", "value"}};
    std::map<std::pair<double, double>, double> cells;
    std::vector<std::string_view> f;
    while (reader.next(f)) {
        const double lat = csv::to_double(f[0], reader.what(), reader.line());
        const double lon = csv::to_double(f[1], reader.what(), reader.line());
        const double value = csv::to_double(f[2], reader.what(), reader.line());
        if (!std::isfinite(lat) || !std::isfinite(lon))
            throw ParseError(fmt::format("field csv: line {}: non-finite coordinate", reader.line()));
        if (!std::isfinite(value))
            throw ParseError(fmt::format("non-finite value at lat={} lon={}", lat, lon));
        if (!cells.emplace(std::pair{lat, lon}, value).second)
            throw ParseError(fmt::format("duplicate grid cell lat={} lon={}", lat, lon));
    }
    if (cells.empty()) throw ParseError("field csv: no data rows");

    std::vector<double> lats, lons;
    for (const auto& [key, v] : cells) {
        lats.push_back(key.first);
        lons.push_back(key.second);
    }
    auto unique_sorted = [](std::vector<double>& xs) {
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    };
    unique_sorted(lats);
    unique_sorted(lons);

    std::vector<double> values;
    values.reserve(lats.size() * lons.size());
    for (double lat : lats)
        for (double lon : lons) {
            auto it = cells.find({lat, lon});
            if (it == cells.end()) throw ParseError(fmt::format("missing grid cell lat={} lon={}", lat, lon));
            values.push_back(it->second);
        }
    return GphField{meta.date, meta.pressure_hpa, std::move(lats), std::move(lons), std::move(values)};
}

std::string write_field_csv(const GphField& field) {
    std::string out = "lat,lon,value\n";
    for (std::size_t i = 0; i < field.nlat(); ++i)
        for (std::size_t j = 0; j < field.nlon(); ++j)
            out += fmt::format("{},{},{}\n", field.lats()[i], field.lons()[j], field.at(i, j));
    return out;
}

// --- SPPV binary ----------------------------------------------------------------

namespace {

constexpr std::uint16_t kSppvVersion = 1;
constexpr std::size_t kSppvHeader = 4 + 2 + 4 + 4;

template <class T>
void put_le(std::vector<std::uint8_t>& out, T v) {
    for (std::size_t b = 0; b < sizeof(T); ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

template <class T>
T get_le(const std::uint8_t* p) {
    T v = 0;
    for (std::size_t b = 0; b < sizeof(T); ++b) v |= static_cast<T>(p[b]) << (8 * b);
    return v;
}

} // namespace

std::vector<std::uint8_t> write_field_bin(const GphField& field) {
    std::vector<std::uint8_t> out;
    out.reserve(kSppvHeader + 8 * (field.nlat() + field.nlon() + field.values().size()));
    for (char c : {'S', 'P', 'P', 'V'}) out.push_back(static_cast<std::uint8_t>(c));
    put_le<std::uint16_t>(out, kSppvVersion);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(field.nlat()));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(field.nlon()));
    for (auto span : {field.lats(), field.lons(), field.values()})
        for (double v : span) put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
    return out;
}

GphField parse_field_bin(std::span<const std::uint8_t> bytes, const FieldMeta& meta) {
    if (bytes.size() < 4 || bytes[0] != 'S' || bytes[1] != 'P' || bytes[2] != 'P' || bytes[3] != 'V')
        throw ParseError("sppv: bad magic");
    if (bytes.size() < kSppvHeader)
        throw ParseError(fmt::format("sppv: truncated header ({} bytes)", bytes.size()));
    const auto version = get_le<std::uint16_t>(bytes.data() + 4);
    if (version != kSppvVersion) throw ParseError(fmt::format("sppv: unsupported version {}", version));
    const std::uint64_t nlat = get_le<std::uint32_t>(bytes.data() + 6);
    const std::uint64_t nlon = get_le<std::uint32_t>(bytes.data() + 10);
    const std::uint64_t count = nlat + nlon + nlat * nlon;
    const std::uint64_t expected = kSppvHeader + 8 * count;
    if (bytes.size() < expected)
        throw ParseError(fmt::format("sppv: truncated payload: {}x{} grid needs {} bytes, got {}", nlat, nlon,
                                     expected, bytes.size()));
    if (bytes.size() > expected)
        throw ParseError(fmt::format("sppv: dimension mismatch: {} trailing bytes after {}x{} grid",
                                     bytes.size() - expected, nlat, nlon));
    const std::uint8_t* p = bytes.data() + kSppvHeader;
    auto read = [&p](std::size_t n) {
        std::vector<double> v(n);
        for (auto& x : v) {
            x = std::bit_cast<double>(get_le<std::uint64_t>(p));
            p += 8;
        }
        return v;
    };
    auto lats = read(nlat);
    auto lons = read(nlon);
    auto values = read(nlat * nlon);
    return GphField{meta.date, meta.pressure_hpa, std::move(lats), std::move(lons), std::move(values)};
}

GphField load_field(const std::filesystem::path& path, const FieldMeta& meta) {
    std::ifstream in{path, std::ios::binary};
    if (!in) throw Error(fmt::format("cannot open field file '{}'", path.string()));
    try {
        if (path.extension() == ".csv") return parse_field_csv(in, meta);
        std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>{in}, std::istreambuf_iterator<char>{}};
        return parse_field_bin(bytes, meta);
    } catch (const ParseError& e) {
        throw ParseError(fmt::format("{}: {}", path.string(), e.what()));
    }
}

void save_field(const std::filesystem::path& path, const GphField& field) {
    std::ofstream out{path, std::ios::binary};
    if (!out) throw Error(fmt::format("cannot write '{}'", path.string()));
    if (path.extension() == ".csv") {
        out << write_field_csv(field);
    } else {
        auto bytes = write_field_bin(field);
        out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    }
    if (!out) throw Error(fmt::format("failed writing '{}'", path.string()));
}

GphField crop_min_lat(const GphField& field, double min_lat) {
    auto lats = field.lats();
    const auto first = static_cast<std::size_t>(std::lower_bound(lats.begin(), lats.end(), min_lat) - lats.begin());
    if (lats.size() - first < 3)
        throw Error(fmt::format("--min-lat {} leaves {} latitude rows; need at least 3", min_lat, lats.size() - first));
    std::vector<double> new_lats(lats.begin() + static_cast<std::ptrdiff_t>(first), lats.end());
    auto vals = field.values();
    std::vector<double> new_vals(vals.begin() + static_cast<std::ptrdiff_t>(first * field.nlon()), vals.end());
    return GphField{field.date(), field.pressure_hpa(), std::move(new_lats),
                    std::vector<double>(field.lons().begin(), field.lons().end()), std::move(new_vals)};
}

// --- manifest / wind / events ------------------------------------------------

std::optional<std::filesystem::path> DatasetManifest::find(Date date, double pressure_hpa) const {
    auto it = entries.find({date, pressure_hpa});
    if (it == entries.end()) return std::nullopt;
    return it->second;
}

DatasetManifest parse_manifest_csv(std::istream& in, const std::filesystem::path& base_dir) {
    csv::Reader reader{in, "manifest csv", {"date", "pressure_hpa", "path"}};
    DatasetManifest m;
    std::vector<std::string_view> f;
    while (reader.next(f)) {
        Date date;
        try {
            date = Date::parse(f[0]);
        } catch (const ParseError& e) {
            throw ParseError(fmt::format("manifest csv: line {}: {}", reader.line(), e.what()));
        }
        const double p = csv::to_double(f[1], reader.what(), reader.line());
        if (!(std::isfinite(p) && p > 0))
            throw ParseError(fmt::format("manifest csv: line {}: pressure must be positive", reader.line()));
        if (f[2].empty()) throw ParseError(fmt::format("manifest csv: line {}: empty path", reader.line()));
        std::filesystem::path path{std::string{f[2]}};
        if (path.is_relative()) path = base_dir / path;
        if (!m.entries.emplace(DatasetManifest::Key{date, p}, path).second)
            throw ParseError(fmt::format("manifest csv: line {}: duplicate entry for {} at {} hPa", reader.line(),
                                         date.iso(), p));
    }
    return m;
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in{path};
    if (!in) throw Error(fmt::format("cannot open manifest '{}'", path.string()));
    return parse_manifest_csv(in, path.parent_path());
}

std::optional<bool> WindSeries::negative_on(Date date) const {
    auto it = samples.find(date);
    if (it == samples.end()) return std::nullopt;
    return it->second < 0.0;
}

WindSeries parse_wind_csv(std::istream& in) {
    csv::Reader reader{in, "wind csv", {"date", "u_ms"}};
    WindSeries w;
    std::vector<std::string_view> f;
    while (reader.next(f)) {
        Date date;
        try {
            date = Date::parse(f[0]);
        } catch (const ParseError& e) {
            throw ParseError(fmt::format("wind csv: line {}: {}", reader.line(), e.what()));
        }
        const double u = csv::to_double(f[1], reader.what(), reader.line());
        if (!std::isfinite(u)) throw ParseError(fmt::format("wind csv: line {}: non-finite wind", reader.line()));
        if (!w.samples.emplace(date, u).second)
            throw ParseError(fmt::format("wind csv: line {}: duplicate date {}", reader.line(), date.iso()));
    }
    return w;
}

EventList parse_events_csv(std::istream& in) {
    csv::Reader reader{in, "events csv", {"definition", "event_date", "window_start", "window_end"}};
    EventList events;
    std::vector<std::string_view> f;
    while (reader.next(f)) {
        EventRow row;
        try {
            row = EventRow{std::string{f[0]}, Date::parse(f[1]), Date::parse(f[2]), Date::parse(f[3])};
        } catch (const ParseError& e) {
            throw ParseError(fmt::format("events csv: line {}: {}", reader.line(), e.what()));
        }
        if (row.definition.empty())
            throw ParseError(fmt::format("events csv: line {}: empty definition label", reader.line()));
        if (!(row.window_start <= row.event_date && row.event_date <= row.window_end))
            throw ParseError(fmt::format("events csv: line {}: window [{}, {}] does not contain event date {}",
                                         reader.line(), row.window_start.iso(), row.window_end.iso(),
                                         row.event_date.iso()));
        events.push_back(std::move(row));
    }
    return events;
}

} // namespace superpov
