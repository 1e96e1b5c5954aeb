#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "ubm/dataset.hpp"
#include "ubm/serialize.hpp"
#include "ubm/simulate.hpp"

using namespace ubm;

namespace {

Table parse(const std::string& text) {
    std::istringstream in(text);
    return parse_table(in);
}

std::string error_of(const std::string& text) {
    try {
        parse(text);
    } catch (const std::invalid_argument& e) {
        return e.what();
    }
    return "";
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("parsing") {
    auto t = parse("a, b\n1.5,2\r\n-3e2 , 0.25\n\n");
    REQUIRE(t.names == std::vector<std::string>{"a", "b"});
    CHECK(t.rows() == 2);
    CHECK(t.columns[0] == std::vector<double>{1.5, -300});
    CHECK(t.columns[1] == std::vector<double>{2, 0.25});
    CHECK(t.index_of("b") == 1);
    CHECK_THROWS_AS(t.index_of("c"), std::invalid_argument);

    CHECK(contains(error_of(""), "empty"));
    CHECK(contains(error_of("a,a\n1,2\n"), "duplicate"));
    CHECK(contains(error_of("a,\n1,2\n"), "empty"));
    CHECK(contains(error_of("a,b\n"), "no rows"));
    CHECK(contains(error_of("a,b\n1,2\n3\n"), "row 2"));
    const auto blank = error_of("a,b\n1,2\n3, \n");
    CHECK(contains(blank, "row 2"));
    CHECK(contains(blank, "'b'"));
    const auto bad = error_of("a,b\n1,x7\n");
    CHECK(contains(bad, "row 1"));
    CHECK(contains(bad, "'b'"));
    CHECK(contains(error_of("a\n1.5abc\n"), "row 1"));
    CHECK_THROWS_AS(parse_table_file("/nonexistent/file.csv"), std::invalid_argument);
}

TEST_CASE("column kind inference") {
    std::vector<double> bits = {0, 1, 1, 0, 1};
    CHECK(infer_kind(bits) == ColumnKind::discrete);
    std::vector<double> small = {0, 1, 2, 2, 1, 0, 2};
    CHECK(infer_kind(small) == ColumnKind::discrete);

    std::mt19937_64 rng(3);
    std::normal_distribution<double> n01;
    std::vector<double> gauss(500);
    for (auto& v : gauss) v = n01(rng);
    CHECK(infer_kind(gauss) == ColumnKind::continuous);

    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> zeros(400);
    for (std::size_t i = 0; i < zeros.size(); ++i) zeros[i] = i % 2 ? u(rng) : 0.0;
    auto inf = infer_column_kind(zeros);
    CHECK(inf.kind == ColumnKind::mixed);
    CHECK(inf.atoms == std::vector<double>{0.0});

    // many distinct integers: more than max(20, sqrt n)
    std::vector<double> wide(100);
    for (std::size_t i = 0; i < wide.size(); ++i) wide[i] = double(i);
    CHECK(infer_kind(wide) == ColumnKind::continuous);

    // a repeated value alongside non-repeating integers is not mixed
    std::vector<double> ints(200);
    for (std::size_t i = 0; i < ints.size(); ++i) ints[i] = i % 2 ? 0.0 : double(i);
    CHECK(infer_kind(ints) == ColumnKind::continuous);

    CHECK(column_kind_from_string("mixed") == ColumnKind::mixed);
    CHECK(std::string(to_string(ColumnKind::discrete)) == "discrete");
    CHECK_THROWS_AS(column_kind_from_string("ordinal"), std::invalid_argument);
}

TEST_CASE("default measures and histogram parameters") {
    CHECK(default_measure({ColumnKind::discrete, {}}).kind() == MeasureKind::counting);
    CHECK(default_measure({ColumnKind::continuous, {}}).kind() == MeasureKind::lebesgue);
    auto mixed = default_measure({ColumnKind::mixed, {0.0, 2.0}});
    CHECK(mixed.kind() == MeasureKind::sum);
    CHECK(mixed.measure_of(Interval::point(2.0)) == 1.0);
    CHECK(mixed.measure_of(Interval::left_open(-1, 3)) == 6.0);

    std::vector<double> v = {1, 2, 3, 4};
    auto [c, s] = center_and_scale(v);
    CHECK(c == 2.5);
    CHECK(s == doctest::Approx(std::sqrt(5.0 / 3)));
    std::vector<double> flat = {7, 7, 7};
    CHECK(center_and_scale(flat) == std::pair{7.0, 1.0});
    std::vector<double> one = {3};
    CHECK(center_and_scale(one) == std::pair{3.0, 1.0});

    auto schema = infer_schema("x", v);
    CHECK(schema.kind == ColumnKind::discrete);
    CHECK(schema.center == 2.5);
    auto p = schema.partition(4);
    CHECK(p.max_level() == 4);
    CHECK(p.cut_points(1)[0] == 2.5);
}

TEST_CASE("schema overrides") {
    auto t = parse("x,y\n1,0.5\n2,0.25\n3,0.125\n");
    auto base = resolve_schema(t);
    REQUIRE(base.size() == 2);
    CHECK(base[0].kind == ColumnKind::discrete);
    CHECK(base[1].kind == ColumnKind::continuous);

    SchemaOverrides o;
    o.center["y"] = 0.0;
    o.scale["y"] = 2.0;
    auto r = resolve_schema(t, o);
    CHECK(r[1].center == 0.0);
    CHECK(r[1].scale == 2.0);
    CHECK(r[0].center == base[0].center);

    ColumnSchema custom{"x", ColumnKind::discrete, ReferenceMeasure::naturals_harmonic(), 1.0, 1.0,
                        std::vector<std::vector<double>>{{1.5}, {1.5, 2.5}}};
    o.columns.push_back(custom);
    r = resolve_schema(t, o);
    CHECK(r[0].measure.measure_of(Interval::point(1.0)) == doctest::Approx(0.5));
    auto p = r[0].partition(6);
    CHECK(p.max_level() == 2);
    CHECK_FALSE(p.is_universal());

    o.scale["y"] = 0.0;
    CHECK_THROWS_AS(resolve_schema(t, o), std::invalid_argument);
    o.scale.clear();
    o.center["nope"] = 1.0;
    CHECK_THROWS_AS(resolve_schema(t, o), std::invalid_argument);
}

TEST_CASE("JSON round trips") {
    for (const auto& c : {Interval::real_line(), Interval::point(2.0), Interval::left_open(0, 1),
                          Interval::right_open(-kInf, 3), Interval(0, 1, true, true)}) {
        auto j = to_json(c);
        CHECK(interval_from_json(j) == c);
        CHECK(interval_from_json(json::parse(j.dump())) == c);
    }
    CHECK(to_json(Interval::real_line())["lower"] == "-inf");

    const std::vector<ReferenceMeasure> measures = {
        ReferenceMeasure::lebesgue(),
        ReferenceMeasure::lebesgue(Interval::right_open(0, 1), 2.5),
        ReferenceMeasure::integers(),
        ReferenceMeasure::naturals_harmonic(),
        ReferenceMeasure::counting({{0.0, 1.0}, {0.5, 0.25}}),
        sum_measure(ReferenceMeasure::lebesgue(), ReferenceMeasure::integers()),
        ReferenceMeasure::zero(),
    };
    const std::vector<Interval> probes = {Interval::left_open(-2, 3), Interval::point(1.0),
                                          Interval::left_open(0.2, 0.7), Interval::left_open(1, kInf)};
    for (const auto& m : measures) {
        auto back = measure_from_json(json::parse(to_json(m).dump()));
        CHECK(back.kind() == m.kind());
        for (const auto& c : probes) CHECK(back.measure_of(c) == m.measure_of(c));
        CHECK(to_json(back) == to_json(m));
    }
    CHECK_THROWS(measure_from_json(json{{"type", "gamma"}}));

    auto t = parse("x,z\n1,0\n2,0.5\n3,0\n1,0.75\n");
    auto schema = resolve_schema(t);
    schema[0].cut_points = std::vector<std::vector<double>>{{2}};
    auto j = schema_to_json(schema);
    auto back = schema_from_json(json::parse(j.dump()));
    CHECK(schema_to_json(back) == j);
    CHECK(schema_from_json(j["columns"]).size() == 2);
}

TEST_CASE("report serialization") {
    PairReport r;
    r.log_gx = -1;
    r.log_gy = -2;
    r.log_gxy = -2.5;
    r.log_bayes_factor = -0.5;
    r.mi_per_sample = 0.1;
    r.decision = Decision::dependent;
    auto j = to_json(r);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"log_gx", "log_gy", "log_gxy", "log_bayes_factor", "mi_per_sample",
                                           "decision", "prior_p"});
    CHECK(j["decision"] == "dependent");
    CHECK(to_json(Edge{"a", "b", 2.0}) == json{{"x", "a"}, {"y", "b"}, {"weight", 2.0}});
    CHECK(number_or_null(kNegInf).is_null());
    CHECK(number_or_null(1.5) == 1.5);
}

TEST_CASE("simulation") {
    for (auto g : {Generator::uniform, Generator::gaussian, Generator::bernoulli, Generator::mixed_atom,
                   Generator::duplicated, Generator::noisy_copy}) {
        CHECK(generator_from_string(to_string(g)) == g);
        auto a = simulate(g, 200, 7);
        auto b = simulate(g, 200, 7);
        CHECK(a.names == b.names);
        CHECK(a.columns == b.columns);
        CHECK(a.rows() == 200);

        std::ostringstream out;
        write_csv(out, a);
        auto back = parse(out.str());
        CHECK(back.names == a.names);
        CHECK(back.columns == a.columns);
    }
    CHECK(simulate(Generator::gaussian, 50, 1).columns != simulate(Generator::gaussian, 50, 2).columns);

    auto d = simulate(Generator::duplicated, 100, 3);
    CHECK(d.columns[0] == d.columns[1]);
    auto m = simulate(Generator::mixed_atom, 4000, 3);
    int atoms = 0;
    for (double v : m.columns[0]) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        atoms += v == 1.0;
    }
    CHECK(atoms == doctest::Approx(2000).epsilon(0.05));
    auto coins = simulate(Generator::bernoulli, 100, 3);
    for (double v : coins.columns[1]) CHECK((v == 0.0 || v == 1.0));
    CHECK_THROWS_AS(generator_from_string("poisson"), std::invalid_argument);
    CHECK_THROWS_AS(simulate(Generator::uniform, 0, 1), std::invalid_argument);
}
