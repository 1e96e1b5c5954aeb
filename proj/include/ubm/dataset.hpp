#pragma once

// Delimited-text ingestion, column-kind inference and per-column schemas.

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ubm/measure.hpp"
#include "ubm/partition.hpp"

namespace ubm {

struct Table {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;

    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
    // Throws std::invalid_argument naming the column if absent.
    std::size_t index_of(const std::string& name) const;
};

// Comma-delimited text with a header row. Throws std::invalid_argument for an
// empty input, duplicate or empty column names, ragged rows, blank cells and
// non-numeric cells (the message names row and column).
Table parse_table(std::istream& in);
Table parse_table_file(const std::string& path);

enum class ColumnKind { discrete, continuous, mixed };

const char* to_string(ColumnKind k);
ColumnKind column_kind_from_string(const std::string& s);

struct KindInference {
    ColumnKind kind = ColumnKind::continuous;
    std::vector<double> atoms;  // repeated values, for mixed columns
};

// discrete: all integers with at most max(20, sqrt(n)) distinct values.
// mixed: some values occur more than once and in more than 5% of rows and every other value is
// non-integer; those values become atoms. continuous otherwise.
KindInference infer_column_kind(std::span<const double> values);
inline ColumnKind infer_kind(std::span<const double> values) { return infer_column_kind(values).kind; }

struct ColumnSchema {
    std::string name;
    ColumnKind kind = ColumnKind::continuous;
    ReferenceMeasure measure = ReferenceMeasure::lebesgue();
    double center = 0.0;
    double scale = 1.0;
    // Custom partition (cuts per level, level 1 first) replacing the
    // universal recursion.
    std::optional<std::vector<std::vector<double>>> cut_points;

    HistogramSequence partition(int max_level) const;
};

// Default measure per kind: unit counting on Z, Lebesgue on R, or Lebesgue
// plus unit atoms.
ReferenceMeasure default_measure(const KindInference& inference);

// Sample mean and (n-1) standard deviation; the scale falls back to 1 for
// constant or single-row columns.
std::pair<double, double> center_and_scale(std::span<const double> values);

ColumnSchema infer_schema(const std::string& name, std::span<const double> values);

struct SchemaOverrides {
    std::vector<ColumnSchema> columns;  // replace inferred schemas by name
    std::map<std::string, double> center;
    std::map<std::string, double> scale;
};

// Inferred schemas with overrides applied. Throws std::invalid_argument for
// overrides naming unknown columns.
std::vector<ColumnSchema> resolve_schema(const Table& table, const SchemaOverrides& overrides = {});

}  // namespace ubm
