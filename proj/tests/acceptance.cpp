// End-to-end acceptance run. One line per criterion; nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <unistd.h>

#include "oracles.hpp"
#include "ubm/commands.hpp"
#include "ubm/estimator.hpp"
#include "ubm/joint.hpp"
#include "ubm/kt.hpp"
#include "ubm/partition.hpp"
#include "ubm/simulate.hpp"

using namespace ubm;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool ok;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

// mean negative log density per sample, nats
double cross_entropy(const MixtureEstimator& est) { return -est.log_density() / double(est.n()); }

MixtureEstimator default_estimator(std::span<const double> ys, int levels) {
    auto schema = infer_schema("y", ys);
    return {schema.partition(levels), schema.measure};
}

Outcome kraft_equality() {
    double worst = 0.0;
    for (std::size_t m : {2, 3}) {
        for (std::size_t n = 1; n <= 6; ++n) {
            double total = 0.0;
            oracle::for_each_sequence(m, n, [&](const std::vector<std::size_t>& seq) {
                KtState s(m);
                for (auto x : seq) s.observe(x);
                total += std::exp(s.log_prob());
            });
            worst = std::max(worst, std::abs(total - 1.0));
        }
    }
    return {worst <= 1e-12, fmt("max |sum Q^n - 1| = %.3g over m in {2,3}, n <= 6", worst)};
}

Outcome kt_closed_form() {
    std::mt19937_64 rng(2);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 12)(rng);
        const std::size_t n = std::uniform_int_distribution<std::size_t>(0, 10000)(rng);
        std::vector<std::size_t> seq(n);
        std::uniform_int_distribution<std::size_t> sym(0, m - 1);
        for (auto& x : seq) x = sym(rng);
        KtState s(m);
        std::unordered_map<std::size_t, std::size_t> counts;
        for (auto x : seq) {
            s.observe(x);
            ++counts[x];
        }
        worst = std::max(worst, std::abs(s.log_prob() - kt_log_prob_closed_form(counts, m)));
    }
    return {worst <= 1e-10, fmt("max |sequential - closed form| = %.3g nats", worst)};
}

Outcome entropy_convergence() {
    std::mt19937_64 rng(3);
    std::bernoulli_distribution b(0.2);
    KtState s(2);
    const std::size_t n = 1u << 17;
    for (std::size_t i = 0; i < n; ++i) s.observe(b(rng) ? 1 : 0);
    const double rate = -s.log_prob() / double(n);
    const double h = oracle::bernoulli_entropy(0.2);
    return {std::abs(rate - h) <= 0.02, fmt("-(1/n) ln Q = %.5f, H(0.2) = %.5f nats", rate, h)};
}

Outcome histogram_structure() {
    bool ok = true;
    HistogramSequence seq(0.0, 1.0, 12);
    for (int k = 1; k <= 12; ++k) {
        auto c = seq.cut_points(k);
        ok = ok && c.size() == (std::size_t(1) << k) - 1;
        for (std::size_t i = 1; i < c.size(); ++i) ok = ok && c[i - 1] < c[i];
    }
    auto eq = [&](int k, std::vector<double> want) {
        auto c = seq.cut_points(k);
        return std::vector<double>(c.begin(), c.end()) == want;
    };
    ok = ok && eq(1, {0}) && eq(2, {-1, 0, 1}) && eq(3, {-2, -1, -0.5, 0, 0.5, 1, 2});
    const bool refines = verify_refinement(seq);
    return {ok && refines, std::string("2^k - 1 increasing cuts for k <= 12, exact lists for k <= 3, refinement ") +
                               (refines ? "holds" : "fails")};
}

Outcome gaussian_convergence() {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> d;
    std::vector<double> ys(1u << 16);
    for (auto& y : ys) y = d(rng);
    auto est = default_estimator(ys, 16);
    for (double y : ys) est.observe(y);
    const double target = 0.5 * std::log(2 * std::numbers::pi * std::numbers::e);
    const double ce = cross_entropy(est);
    return {std::abs(ce - target) <= 0.15, fmt("-(1/n) ln g^n = %.4f, target %.4f nats", ce, target)};
}

Outcome uniform_convergence() {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u;
    std::vector<double> ys(1u << 15);
    for (auto& y : ys) y = u(rng);
    auto [center, scale] = center_and_scale(ys);
    auto m = ReferenceMeasure::lebesgue(Interval::right_open(0.0, 1.0));
    MixtureEstimator est(HistogramSequence(center, scale, kDefaultLevels, m), m);
    for (double y : ys) est.observe(y);
    const double ce = cross_entropy(est);
    return {std::abs(ce) <= 0.10, fmt("-(1/n) ln g^n = %.4f, target 0 nats", ce)};
}

Outcome mixed_convergence() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u;
    std::vector<double> zs(1u << 15);
    for (auto& z : zs) z = u(rng) < 0.5 ? 1.0 : u(rng);
    // Lebesgue measure plus counting measure on the integers
    auto xi = sum_measure(ReferenceMeasure::lebesgue(), ReferenceMeasure::integers());
    auto [center, scale] = center_and_scale(zs);
    MixtureEstimator est(HistogramSequence(center, scale, kDefaultLevels, xi), xi);
    for (double z : zs) est.observe(z);
    const double ce = cross_entropy(est);
    return {std::abs(ce - std::log(2.0)) <= 0.10, fmt("-(1/n) ln g^n = %.4f, target ln 2 = %.4f nats", ce, std::log(2.0))};
}

Outcome super_martingale() {
    const int trials = 1000;
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u;
    auto m = ReferenceMeasure::lebesgue(Interval::right_open(0.0, 1.0));
    const HistogramSequence p(0.5, 0.25, kDefaultLevels, m);
    std::vector<double> ratio(trials);
    for (int t = 0; t < trials; ++t) {
        MixtureEstimator est(p, m);
        for (int i = 0; i < 50; ++i) est.observe(u(rng));
        ratio[t] = std::exp(est.log_density());  // f = 1
    }
    double mean = 0.0;
    for (double r : ratio) mean += r / trials;
    double var = 0.0;
    for (double r : ratio) var += (r - mean) * (r - mean) / (trials - 1);
    const double se = std::sqrt(var / trials);
    return {mean <= 1.0 + 3.0 * se, fmt("mean g^n/f^n = %.4f, bound 1 + 3*se = %.4f", mean, 1.0 + 3.0 * se)};
}

PairReport default_pair(const Table& t, std::size_t a, std::size_t b, double prior_p) {
    auto sx = infer_schema(t.names[a], t.columns[a]);
    auto sy = infer_schema(t.names[b], t.columns[b]);
    return analyze_pair(t.columns[a], t.columns[b],
                        {{sx.partition(8), sx.measure}, {sy.partition(8), sy.measure}, prior_p});
}

Outcome independence_decision() {
    int independent = 0;
    int dependent = 0;
    for (int t = 0; t < 100; ++t) {
        auto coins = simulate(Generator::bernoulli, 1000, 9000 + t);
        independent += default_pair(coins, 0, 1, 0.5).decision == Decision::independent;
        auto dup = simulate(Generator::duplicated, 1000, 9500 + t);
        dependent += default_pair(dup, 0, 1, 0.5).decision == Decision::dependent;
    }
    return {independent >= 90 && dependent >= 95,
            fmt("Bernoulli pair independent %g/100, duplicated column dependent %g/100", independent, dependent)};
}

Outcome scale_invariance() {
    auto t = simulate(Generator::noisy_copy, 1000, 10);
    double worst = 0.0;
    for (auto [a, b] : {std::pair{0, 1}, {0, 2}}) {
        auto sx = infer_schema(t.names[a], t.columns[a]);
        auto sy = infer_schema(t.names[b], t.columns[b]);
        VariableModel x{sx.partition(8), sx.measure};
        VariableModel y{sy.partition(8), sy.measure};
        const double base = analyze_pair(t.columns[a], t.columns[b], {x, y}).log_bayes_factor;
        for (double c : {0.1, 10.0}) {
            VariableModel xc{x.partition, x.measure.scaled(c)};
            const double scaled = analyze_pair(t.columns[a], t.columns[b], {xc, y}).log_bayes_factor;
            worst = std::max(worst, std::abs(scaled - base));
        }
    }
    return {worst <= 1e-9, fmt("max |change in log_bayes_factor| = %.3g for c in {0.1, 10}", worst)};
}

Outcome forest_recovery() {
    int exact = 0;
    for (int s = 0; s < 20; ++s) {
        RunConfig cfg;
        cfg.command = Subcommand::forest;
        auto report = run_on_table(cfg, simulate(Generator::noisy_copy, 500, 1100 + s));
        const auto& edges = report["edges"];
        exact += edges.size() == 1 && edges[0]["x"] == "x" && edges[0]["y"] == "y";
    }
    return {exact >= 18, fmt("forest = {x, y} in %g/20 runs", exact)};
}

Outcome cli_determinism() {
    const fs::path dir = fs::temp_directory_path() / ("ubm_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::string fixture = std::string(UBM_FIXTURE_DIR) + "/fixture.csv";
    const std::vector<std::pair<std::string, std::string>> runs = {
        {"codelength", "codelength " + fixture},
        {"density", "density " + fixture + " --column level --grid -1:6:50 --at 0"},
        {"indep", "indep " + fixture + " --x x --y y"},
        {"forest", "forest " + fixture},
        {"simulate", "simulate --generator mixed-atom --rows 500 --seed 7 --output " + (dir / "sim.csv").string()},
    };
    int identical = 0;
    std::string failed;
    for (const auto& [name, args] : runs) {
        std::string outputs[2];
        bool ran = true;
        for (int rep = 0; rep < 2; ++rep) {
            const auto out = (dir / ("out" + std::to_string(rep))).string();
            const std::string cmd = std::string(UBM_CLI_PATH) + " " + args + " > " + out + " 2>/dev/null";
            ran = ran && std::system(cmd.c_str()) == 0;
            outputs[rep] = slurp(out);
            if (name == "simulate") outputs[rep] += slurp((dir / "sim.csv").string());
        }
        if (ran && !outputs[0].empty() && outputs[0] == outputs[1]) ++identical;
        else failed += " " + name;
    }
    fs::remove_all(dir);
    return {identical == int(runs.size()),
            fmt("%g/%g subcommands byte-identical across runs", identical, double(runs.size())) +
                (failed.empty() ? "" : "; differing:" + failed)};
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "Kraft equality", 1, kraft_equality},
        {2, "KT closed form", 1, kt_closed_form},
        {3, "entropy convergence", 5, entropy_convergence},
        {4, "histogram structure", 1, histogram_structure},
        {5, "Gaussian convergence", 60, gaussian_convergence},
        {6, "uniform convergence", 30, uniform_convergence},
        {7, "mixed convergence", 30, mixed_convergence},
        {8, "super-martingale", 30, super_martingale},
        {9, "independence decision", 300, independence_decision},
        {10, "scale invariance", 10, scale_invariance},
        {11, "forest recovery", 120, forest_recovery},
        {12, "CLI determinism", 10, cli_determinism},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool pass = o.ok && secs <= c.budget_seconds;
        failures += !pass;
        std::printf("[%s] %2d %s: %s (%.2f s, budget %.0f s)\n", pass ? "PASS" : "FAIL", c.id, c.name,
                    o.detail.c_str(), secs, c.budget_seconds);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
