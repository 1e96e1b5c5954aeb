#pragma once

// The subcommand layer behind the `ubm` tool. Every command is a pure
// function of the input bytes and the configuration.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ubm/dataset.hpp"
#include "ubm/serialize.hpp"
#include "ubm/simulate.hpp"

namespace ubm {

enum class Subcommand { codelength, density, indep, forest, simulate };

Subcommand subcommand_from_string(const std::string& s);
const char* to_string(Subcommand c);

struct GridSpec {
    double lower = 0.0;
    double upper = 1.0;
    std::size_t count = 11;
};

struct RunConfig {
    Subcommand command = Subcommand::codelength;
    std::string input;
    int levels = kDefaultLevels;
    int joint_levels = 8;
    double prior_p = 0.5;
    std::map<std::string, double> mu;
    std::map<std::string, double> sigma;
    std::uint64_t seed = 0;
    std::optional<std::string> schema_path;
    std::optional<std::string> output;

    std::vector<std::string> columns;  // codelength (empty = all), forest subset
    std::string column;                // density
    std::optional<GridSpec> grid;      // density
    std::vector<double> points;        // density
    std::string x;                     // indep
    std::string y;
    Generator generator = Generator::gaussian;  // simulate
    std::size_t rows = 1000;
};

// Throws std::invalid_argument for invalid flag combinations or values.
void validate(const RunConfig& config);

// Runs an analysis subcommand on an already parsed table.
json run_on_table(const RunConfig& config, const Table& table);

// Full subcommand: reads config.input (or, for simulate, writes the CSV to
// config.output) and returns the JSON report.
json run_subcommand(const RunConfig& config);

// Writes through a sibling temp file and renames it into place.
void write_file_atomically(const std::string& path, const std::string& contents);

// The canonical text form of a report.
std::string render(const json& report);

}  // namespace ubm
