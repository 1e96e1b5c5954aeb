#include "ubm/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string_view>
#include <unordered_map>

namespace ubm {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(',', start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

bool is_integer(double v) { return std::isfinite(v) && std::floor(v) == v; }

}  // namespace

std::size_t Table::index_of(const std::string& name) const {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw std::invalid_argument("unknown column '" + name + "'");
    return static_cast<std::size_t>(it - names.begin());
}

Table parse_table(std::istream& in) {
    std::string line;
    Table t;
    if (!std::getline(in, line) || trim(line).empty()) throw std::invalid_argument("empty dataset");
    std::set<std::string> seen;
    for (auto field : split(line)) {
        std::string name(field);
        if (name.empty()) throw std::invalid_argument("empty column name in header");
        if (!seen.insert(name).second) throw std::invalid_argument("duplicate column name '" + name + "'");
        t.names.push_back(std::move(name));
    }
    t.columns.resize(t.names.size());

    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        ++row;
        auto fields = split(line);
        if (fields.size() != t.names.size())
            throw std::invalid_argument("row " + std::to_string(row) + " has " +
                                        std::to_string(fields.size()) + " cells, expected " +
                                        std::to_string(t.names.size()));
        for (std::size_t c = 0; c < fields.size(); ++c) {
            const auto where = "row " + std::to_string(row) + ", column '" + t.names[c] + "'";
            if (fields[c].empty()) throw std::invalid_argument("blank cell at " + where);
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(fields[c].data(), fields[c].data() + fields[c].size(), v);
            if (ec != std::errc{} || ptr != fields[c].data() + fields[c].size() || !std::isfinite(v))
                throw std::invalid_argument("non-numeric cell '" + std::string(fields[c]) + "' at " + where);
            t.columns[c].push_back(v);
        }
    }
    if (row == 0) throw std::invalid_argument("dataset has a header but no rows");
    return t;
}

Table parse_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    return parse_table(in);
}

const char* to_string(ColumnKind k) {
    switch (k) {
    case ColumnKind::discrete: return "discrete";
    case ColumnKind::continuous: return "continuous";
    case ColumnKind::mixed: return "mixed";
    }
    return "continuous";
}

ColumnKind column_kind_from_string(const std::string& s) {
    if (s == "discrete") return ColumnKind::discrete;
    if (s == "continuous") return ColumnKind::continuous;
    if (s == "mixed") return ColumnKind::mixed;
    throw std::invalid_argument("unknown column kind '" + s + "'");
}

KindInference infer_column_kind(std::span<const double> values) {
    const double n = static_cast<double>(values.size());
    std::unordered_map<double, std::size_t> freq;
    bool all_integer = true;
    for (double v : values) {
        ++freq[v];
        all_integer = all_integer && is_integer(v);
    }
    if (all_integer && static_cast<double>(freq.size()) <= std::max(20.0, std::sqrt(n)))
        return {ColumnKind::discrete, {}};

    std::vector<double> atoms;
    bool rest_non_integer = true;
    for (const auto& [v, c] : freq) {
        if (c > 1 && static_cast<double>(c) > 0.05 * n) atoms.push_back(v);
        else rest_non_integer = rest_non_integer && !is_integer(v);
    }
    if (!atoms.empty() && rest_non_integer) {
        std::sort(atoms.begin(), atoms.end());
        return {ColumnKind::mixed, std::move(atoms)};
    }
    return {ColumnKind::continuous, {}};
}

ReferenceMeasure default_measure(const KindInference& inference) {
    switch (inference.kind) {
    case ColumnKind::discrete: return ReferenceMeasure::integers();
    case ColumnKind::continuous: return ReferenceMeasure::lebesgue();
    case ColumnKind::mixed: {
        std::vector<Atom> atoms;
        for (double a : inference.atoms) atoms.push_back({a, 1.0});
        return sum_measure(ReferenceMeasure::lebesgue(), ReferenceMeasure::counting(std::move(atoms)));
    }
    }
    return ReferenceMeasure::lebesgue();
}

std::pair<double, double> center_and_scale(std::span<const double> values) {
    if (values.empty()) return {0.0, 1.0};
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    if (values.size() < 2) return {mean, 1.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
    if (!(sd > 0.0) || !std::isfinite(sd)) sd = 1.0;
    return {mean, sd};
}

ColumnSchema infer_schema(const std::string& name, std::span<const double> values) {
    auto inference = infer_column_kind(values);
    auto [center, scale] = center_and_scale(values);
    ColumnSchema s;
    s.name = name;
    s.kind = inference.kind;
    s.measure = default_measure(inference);
    s.center = center;
    s.scale = scale;
    return s;
}

HistogramSequence ColumnSchema::partition(int max_level) const {
    if (cut_points) {
        auto cuts = *cut_points;
        if (static_cast<int>(cuts.size()) > max_level) cuts.resize(static_cast<std::size_t>(max_level));
        return HistogramSequence::from_cut_points(std::move(cuts), measure);
    }
    return HistogramSequence(center, scale, max_level, measure);
}

std::vector<ColumnSchema> resolve_schema(const Table& table, const SchemaOverrides& overrides) {
    std::vector<ColumnSchema> out;
    out.reserve(table.names.size());
    for (std::size_t c = 0; c < table.names.size(); ++c)
        out.push_back(infer_schema(table.names[c], table.columns[c]));
    for (const auto& o : overrides.columns) out[table.index_of(o.name)] = o;
    for (const auto& [name, v] : overrides.center) out[table.index_of(name)].center = v;
    for (const auto& [name, v] : overrides.scale) {
        if (!(v > 0.0)) throw std::invalid_argument("sigma override for '" + name + "' must be positive");
        out[table.index_of(name)].scale = v;
    }
    return out;
}

}  // namespace ubm
