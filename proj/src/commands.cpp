#include "ubm/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ubm/estimator.hpp"
#include "ubm/joint.hpp"

namespace ubm {

namespace {

constexpr std::pair<Subcommand, const char*> kCommands[] = {
    {Subcommand::codelength, "codelength"}, {Subcommand::density, "density"},
    {Subcommand::indep, "indep"},           {Subcommand::forest, "forest"},
    {Subcommand::simulate, "simulate"},
};

SchemaOverrides load_overrides(const RunConfig& cfg) {
    SchemaOverrides o;
    if (cfg.schema_path) {
        std::ifstream in(*cfg.schema_path);
        if (!in) throw std::invalid_argument("cannot open schema '" + *cfg.schema_path + "'");
        o.columns = schema_from_json(json::parse(in));
    }
    o.center = cfg.mu;
    o.scale = cfg.sigma;
    return o;
}

const ColumnSchema& schema_for(const std::vector<ColumnSchema>& schema, const Table& t,
                               const std::string& name) {
    return schema[t.index_of(name)];
}

json codelength_report(const RunConfig& cfg, const Table& t, const std::vector<ColumnSchema>& schema) {
    std::vector<std::string> names = cfg.columns.empty() ? t.names : cfg.columns;
    json cols = json::array();
    json used = json::array();
    for (const auto& name : names) {
        const auto& s = schema_for(schema, t, name);
        MixtureEstimator est(s.partition(cfg.levels), s.measure);
        for (double v : t.columns[t.index_of(name)]) est.observe(v);
        const double bits = est.codelength_bits();
        json posterior = nullptr;
        if (std::isfinite(est.log_density())) posterior = est.level_posterior();
        cols.push_back({{"name", name},
                        {"kind", to_string(s.kind)},
                        {"n", est.n()},
                        {"codelength_bits", number_or_null(bits)},
                        {"bits_per_sample", number_or_null(bits / double(est.n()))},
                        {"log_density", number_or_null(est.log_density())},
                        {"level_posterior", posterior}});
        used.push_back(to_json(s));
    }
    return {{"command", "codelength"}, {"levels", cfg.levels}, {"columns", cols}, {"schema", {{"columns", used}}}};
}

json density_report(const RunConfig& cfg, const Table& t, const std::vector<ColumnSchema>& schema) {
    const auto& s = schema_for(schema, t, cfg.column);
    MixtureEstimator est(s.partition(cfg.levels), s.measure);
    for (double v : t.columns[t.index_of(cfg.column)]) est.observe(v);

    std::vector<double> ys = cfg.points;
    if (cfg.grid) {
        const auto& g = *cfg.grid;
        for (std::size_t i = 0; i < g.count; ++i)
            ys.push_back(g.count == 1 ? g.lower
                                      : g.lower + (g.upper - g.lower) * double(i) / double(g.count - 1));
    }
    json grid = json::array();
    for (double y : ys) {
        json d = nullptr;
        if (s.measure.in_support(y) && std::isfinite(est.log_density())) {
            try {
                d = est.density_at(y);
            } catch (const std::domain_error&) {
                d = nullptr;  // null cell
            }
        }
        grid.push_back({{"y", y}, {"density", d}});
    }
    return {{"command", "density"},
            {"column", cfg.column},
            {"levels", cfg.levels},
            {"grid", grid},
            {"state", estimator_state(est)},
            {"schema", {{"columns", json::array({to_json(s)})}}}};
}

PairConfig pair_config(const RunConfig& cfg, const ColumnSchema& x, const ColumnSchema& y) {
    return {VariableModel{x.partition(cfg.joint_levels), x.measure},
            VariableModel{y.partition(cfg.joint_levels), y.measure}, cfg.prior_p};
}

json indep_report(const RunConfig& cfg, const Table& t, const std::vector<ColumnSchema>& schema) {
    const auto& sx = schema_for(schema, t, cfg.x);
    const auto& sy = schema_for(schema, t, cfg.y);
    auto report = analyze_pair(t.columns[t.index_of(cfg.x)], t.columns[t.index_of(cfg.y)],
                               pair_config(cfg, sx, sy));
    return {{"command", "indep"},
            {"x", cfg.x},
            {"y", cfg.y},
            {"n", t.rows()},
            {"joint_levels", cfg.joint_levels},
            {"report", to_json(report)},
            {"schema", {{"columns", json::array({to_json(sx), to_json(sy)})}}}};
}

json forest_report(const RunConfig& cfg, const Table& t, const std::vector<ColumnSchema>& schema) {
    std::vector<std::string> names = cfg.columns.empty() ? t.names : cfg.columns;
    std::vector<PairEntry> pairs;
    json pair_json = json::array();
    json used = json::array();
    for (std::size_t i = 0; i < names.size(); ++i) {
        used.push_back(to_json(schema_for(schema, t, names[i])));
        for (std::size_t j = i + 1; j < names.size(); ++j) {
            const auto& sx = schema_for(schema, t, names[i]);
            const auto& sy = schema_for(schema, t, names[j]);
            auto r = analyze_pair(t.columns[t.index_of(names[i])], t.columns[t.index_of(names[j])],
                                  pair_config(cfg, sx, sy));
            pairs.push_back({names[i], names[j], r});
            pair_json.push_back({{"x", names[i]}, {"y", names[j]}, {"report", to_json(r)}});
        }
    }
    json edges = json::array();
    for (const auto& e : build_forest(pairs)) edges.push_back(to_json(e));
    return {{"command", "forest"},
            {"n", t.rows()},
            {"joint_levels", cfg.joint_levels},
            {"pairs", pair_json},
            {"edges", edges},
            {"schema", {{"columns", used}}}};
}

}  // namespace

Subcommand subcommand_from_string(const std::string& s) {
    for (const auto& [c, name] : kCommands)
        if (s == name) return c;
    throw std::invalid_argument("unknown subcommand '" + s + "'");
}

const char* to_string(Subcommand c) {
    for (const auto& [cmd, name] : kCommands)
        if (cmd == c) return name;
    return "?";
}

void validate(const RunConfig& cfg) {
    if (cfg.levels < 0 || cfg.levels > kMaxSupportedLevel)
        throw std::invalid_argument("--levels must lie in [0, " + std::to_string(kMaxSupportedLevel) + "]");
    if (cfg.joint_levels < 0 || cfg.joint_levels > kMaxSupportedLevel)
        throw std::invalid_argument("--joint-levels must lie in [0, " + std::to_string(kMaxSupportedLevel) + "]");
    if (!(cfg.prior_p > 0.0 && cfg.prior_p < 1.0)) throw std::invalid_argument("--prior-p must lie in (0, 1)");
    switch (cfg.command) {
    case Subcommand::simulate:
        if (!cfg.output) throw std::invalid_argument("simulate requires --output");
        if (cfg.rows == 0) throw std::invalid_argument("simulate requires --rows >= 1");
        break;
    case Subcommand::density:
        if (cfg.column.empty()) throw std::invalid_argument("density requires --column");
        if (!cfg.grid && cfg.points.empty()) throw std::invalid_argument("density requires --grid or --at");
        if (cfg.grid && (cfg.grid->count == 0 || !(cfg.grid->lower <= cfg.grid->upper)))
            throw std::invalid_argument("--grid needs lower <= upper and count >= 1");
        break;
    case Subcommand::indep:
        if (cfg.x.empty() || cfg.y.empty()) throw std::invalid_argument("indep requires --x and --y");
        if (cfg.x == cfg.y) throw std::invalid_argument("indep needs two distinct columns");
        break;
    default: break;
    }
}

json run_on_table(const RunConfig& cfg, const Table& table) {
    validate(cfg);
    const auto schema = resolve_schema(table, load_overrides(cfg));
    switch (cfg.command) {
    case Subcommand::codelength: return codelength_report(cfg, table, schema);
    case Subcommand::density: return density_report(cfg, table, schema);
    case Subcommand::indep: return indep_report(cfg, table, schema);
    case Subcommand::forest: return forest_report(cfg, table, schema);
    case Subcommand::simulate: break;
    }
    throw std::invalid_argument("simulate does not take an input table");
}

json run_subcommand(const RunConfig& cfg) {
    validate(cfg);
    if (cfg.command == Subcommand::simulate) {
        Table t = simulate(cfg.generator, cfg.rows, cfg.seed);
        std::ostringstream csv;
        write_csv(csv, t);
        write_file_atomically(*cfg.output, csv.str());
        return {{"command", "simulate"},
                {"generator", to_string(cfg.generator)},
                {"rows", cfg.rows},
                {"seed", cfg.seed},
                {"columns", t.names},
                {"output", *cfg.output}};
    }
    if (cfg.input.empty())
        throw std::invalid_argument(std::string(to_string(cfg.command)) + " requires an input dataset");
    return run_on_table(cfg, parse_table_file(cfg.input));
}

void write_file_atomically(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << contents;
        if (!out.flush()) throw std::runtime_error("failed writing '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

std::string render(const json& report) { return report.dump(2) + "\n"; }

}  // namespace ubm
