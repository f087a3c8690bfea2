#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace superpov::cli {

struct CliConfig {
    std::string command; ///< score | series | compare | synth | pairs

    std::filesystem::path input;
    std::filesystem::path manifest;
    std::filesystem::path wind;
    std::filesystem::path events;
    std::string date;
    int before = 0;
    int after = 0;
    std::vector<double> pressures;
    std::optional<double> min_lat;
    std::string split_source = "polar";
    std::string topology = "polar";
    std::string baseline = "window";
    int jobs = 0;

    std::filesystem::path out_csv;
    std::filesystem::path out_json;
    std::filesystem::path out_svg;
    std::filesystem::path out_multi_svg;
    std::filesystem::path out;
    std::filesystem::path complex_csv;

    // synth
    std::string kind;
    std::uint64_t seed = 0;
    std::size_t nlat = 19;
    std::size_t nlon = 36;
    double base = 31000.0;
    double depth = 500.0;
    std::optional<double> depth2;
    std::optional<double> colat;
    std::optional<double> lon;
    double radius = 25.0;
    double noise = 0.0;
};

/// Parses arguments (argv[0] is the program name) and runs the command. Returns the exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Runs an already-parsed configuration.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

} // namespace superpov::cli
