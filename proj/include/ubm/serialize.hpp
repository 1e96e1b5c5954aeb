#pragma once

// JSON forms of measures, schemas, estimator state and reports. Infinite
// endpoints are written as the strings "-inf" / "inf"; infinite logs as null.

#include <span>
#include <vector>

#include "json.hpp"
#include "ubm/dataset.hpp"
#include "ubm/estimator.hpp"
#include "ubm/joint.hpp"

namespace ubm {

using json = nlohmann::ordered_json;

json to_json(const Interval& c);
Interval interval_from_json(const json& j);

json to_json(const ReferenceMeasure& m);
ReferenceMeasure measure_from_json(const json& j);

json to_json(const ColumnSchema& s);
ColumnSchema column_schema_from_json(const json& j);
json schema_to_json(std::span<const ColumnSchema> columns);
std::vector<ColumnSchema> schema_from_json(const json& j);

json to_json(const PairReport& r);
json to_json(const Edge& e);
json estimator_state(const MixtureEstimator& est);

// Finite values as numbers, non-finite as null.
json number_or_null(double v);

}  // namespace ubm
