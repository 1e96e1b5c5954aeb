#include "ubm/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ubm {

namespace {

json bound(double v) {
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    return v;
}

double bound_from_json(const json& j) {
    if (j.is_string()) {
        auto s = j.get<std::string>();
        if (s == "inf" || s == "+inf") return kInf;
        if (s == "-inf") return -kInf;
        throw std::invalid_argument("bad bound '" + s + "'");
    }
    return j.get<double>();
}

const char* rule_name(IntegerRule r) {
    return r == IntegerRule::unit ? "unit" : "harmonic-telescoping";
}

IntegerRule rule_from_name(const std::string& s) {
    if (s == "unit") return IntegerRule::unit;
    if (s == "harmonic-telescoping") return IntegerRule::harmonic_telescoping;
    throw std::invalid_argument("unknown counting rule '" + s + "'");
}

json part_to_json(const MeasurePart& part) {
    if (auto* leb = std::get_if<LebesgueOnSupport>(&part))
        return {{"type", "lebesgue"}, {"support", to_json(leb->support)}, {"factor", leb->factor}};
    if (auto* fin = std::get_if<FiniteCounting>(&part)) {
        json atoms = json::array(), weights = json::array();
        for (const auto& a : fin->atoms) {
            atoms.push_back(a.location);
            weights.push_back(a.weight);
        }
        return {{"type", "counting"}, {"atoms", atoms}, {"weights", weights}};
    }
    const auto& r = std::get<RuleCounting>(part);
    return {{"type", "counting"},
            {"rule", rule_name(r.rule)},
            {"first", bound(r.first)},
            {"last", bound(r.last)},
            {"factor", r.factor}};
}

}  // namespace

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json to_json(const Interval& c) {
    return {{"lower", bound(c.lower())},
            {"upper", bound(c.upper())},
            {"lower_closed", c.lower_closed()},
            {"upper_closed", c.upper_closed()}};
}

Interval interval_from_json(const json& j) {
    return {bound_from_json(j.at("lower")), bound_from_json(j.at("upper")),
            j.value("lower_closed", false), j.value("upper_closed", false)};
}

json to_json(const ReferenceMeasure& m) {
    if (m.parts().size() == 1) return part_to_json(m.parts().front());
    if (m.parts().empty()) return {{"type", "counting"}, {"atoms", json::array()}, {"weights", json::array()}};
    json parts = json::array();
    for (const auto& p : m.parts()) parts.push_back(part_to_json(p));
    return {{"type", "sum"}, {"parts", parts}};
}

ReferenceMeasure measure_from_json(const json& j) {
    const auto type = j.at("type").get<std::string>();
    if (type == "lebesgue") {
        Interval support = j.contains("support") ? interval_from_json(j.at("support")) : Interval::real_line();
        return ReferenceMeasure::lebesgue(support, j.value("factor", 1.0));
    }
    if (type == "counting") {
        if (j.contains("rule"))
            return ReferenceMeasure::counting(rule_from_name(j.at("rule").get<std::string>()),
                                              bound_from_json(j.value("first", json("-inf"))),
                                              bound_from_json(j.value("last", json("inf"))),
                                              j.value("factor", 1.0));
        auto locations = j.at("atoms").get<std::vector<double>>();
        std::vector<double> weights = j.contains("weights") ? j.at("weights").get<std::vector<double>>()
                                                            : std::vector<double>(locations.size(), 1.0);
        if (weights.size() != locations.size())
            throw std::invalid_argument("counting measure needs one weight per atom");
        std::vector<Atom> atoms;
        for (std::size_t i = 0; i < locations.size(); ++i) atoms.push_back({locations[i], weights[i]});
        return ReferenceMeasure::counting(std::move(atoms));
    }
    if (type == "sum") {
        ReferenceMeasure acc = ReferenceMeasure::zero();
        for (const auto& p : j.at("parts")) acc = sum_measure(acc, measure_from_json(p));
        return acc;
    }
    throw std::invalid_argument("unknown measure type '" + type + "'");
}

json to_json(const ColumnSchema& s) {
    json j = {{"name", s.name},
              {"kind", to_string(s.kind)},
              {"center", s.center},
              {"scale", s.scale},
              {"measure", to_json(s.measure)}};
    if (s.cut_points) j["cut_points"] = *s.cut_points;
    return j;
}

ColumnSchema column_schema_from_json(const json& j) {
    ColumnSchema s;
    s.name = j.at("name").get<std::string>();
    s.kind = column_kind_from_string(j.at("kind").get<std::string>());
    s.center = j.value("center", 0.0);
    s.scale = j.value("scale", 1.0);
    s.measure = j.contains("measure") ? measure_from_json(j.at("measure"))
                                      : default_measure(KindInference{s.kind, {}});
    if (j.contains("cut_points")) s.cut_points = j.at("cut_points").get<std::vector<std::vector<double>>>();
    return s;
}

json schema_to_json(std::span<const ColumnSchema> columns) {
    json arr = json::array();
    for (const auto& c : columns) arr.push_back(to_json(c));
    return {{"columns", arr}};
}

std::vector<ColumnSchema> schema_from_json(const json& j) {
    std::vector<ColumnSchema> out;
    const json& arr = j.is_array() ? j : j.at("columns");
    for (const auto& c : arr) out.push_back(column_schema_from_json(c));
    return out;
}

json to_json(const PairReport& r) {
    return {{"log_gx", number_or_null(r.log_gx)},
            {"log_gy", number_or_null(r.log_gy)},
            {"log_gxy", number_or_null(r.log_gxy)},
            {"log_bayes_factor", number_or_null(r.log_bayes_factor)},
            {"mi_per_sample", number_or_null(r.mi_per_sample)},
            {"decision", to_string(r.decision)},
            {"prior_p", r.prior_p}};
}

json to_json(const Edge& e) {
    return {{"x", e.first}, {"y", e.second}, {"weight", e.weight}};
}

json estimator_state(const MixtureEstimator& est) {
    json levels = json::array();
    const auto& states = est.level_states();
    for (std::size_t k = 0; k < states.size(); ++k) {
        std::vector<std::pair<Symbol, std::uint64_t>> counts(states[k].counts().begin(),
                                                            states[k].counts().end());
        std::sort(counts.begin(), counts.end());
        json c = json::array();
        for (const auto& [cell, n] : counts) c.push_back({cell, n});
        levels.push_back({{"level", k},
                          {"cells", states[k].alphabet_size()},
                          {"weight", est.weights()[k]},
                          {"log_density", number_or_null(est.level_log_density()[k])},
                          {"counts", c}});
    }
    return {{"n", est.n()},
            {"log_density", number_or_null(est.log_density())},
            {"codelength_bits", number_or_null(est.codelength_bits())},
            {"levels", levels}};
}

}  // namespace ubm
