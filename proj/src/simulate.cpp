#include "ubm/simulate.hpp"

#include <charconv>
#include <random>
#include <stdexcept>

namespace ubm {

namespace {

struct NamedGenerator {
    Generator g;
    const char* name;
};

constexpr NamedGenerator kGenerators[] = {
    {Generator::uniform, "uniform"},       {Generator::gaussian, "gaussian"},
    {Generator::bernoulli, "bernoulli"},   {Generator::mixed_atom, "mixed-atom"},
    {Generator::duplicated, "duplicated"}, {Generator::noisy_copy, "noisy-copy"},
};

}  // namespace

Generator generator_from_string(const std::string& s) {
    for (const auto& g : kGenerators)
        if (s == g.name) return g.g;
    throw std::invalid_argument("unknown generator '" + s + "'");
}

const char* to_string(Generator g) {
    for (const auto& n : kGenerators)
        if (n.g == g) return n.name;
    return "?";
}

Table simulate(Generator g, std::size_t rows, std::uint64_t seed) {
    if (rows == 0) throw std::invalid_argument("simulate needs at least one row");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::bernoulli_distribution coin(0.5);

    Table t;
    switch (g) {
    case Generator::uniform:
    case Generator::gaussian:
    case Generator::bernoulli:
    case Generator::duplicated: t.names = {"x", "y"}; break;
    case Generator::mixed_atom: t.names = {"z"}; break;
    case Generator::noisy_copy: t.names = {"x", "y", "z"}; break;
    }
    t.columns.assign(t.names.size(), {});
    for (auto& c : t.columns) c.reserve(rows);

    for (std::size_t i = 0; i < rows; ++i) {
        switch (g) {
        case Generator::uniform:
            t.columns[0].push_back(unif(rng));
            t.columns[1].push_back(unif(rng));
            break;
        case Generator::gaussian:
            t.columns[0].push_back(normal(rng));
            t.columns[1].push_back(normal(rng));
            break;
        case Generator::bernoulli:
            t.columns[0].push_back(coin(rng) ? 1.0 : 0.0);
            t.columns[1].push_back(coin(rng) ? 1.0 : 0.0);
            break;
        case Generator::mixed_atom:
            t.columns[0].push_back(coin(rng) ? 1.0 : unif(rng));
            break;
        case Generator::duplicated: {
            double x = normal(rng);
            t.columns[0].push_back(x);
            t.columns[1].push_back(x);
            break;
        }
        case Generator::noisy_copy: {
            double x = normal(rng);
            t.columns[0].push_back(x);
            t.columns[1].push_back(x + 0.01 * normal(rng));
            t.columns[2].push_back(normal(rng));
            break;
        }
        }
    }
    return t;
}

void write_csv(std::ostream& out, const Table& t) {
    for (std::size_t c = 0; c < t.names.size(); ++c) out << (c ? "," : "") << t.names[c];
    out << '\n';
    char buf[64];
    for (std::size_t r = 0; r < t.rows(); ++r) {
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            auto res = std::to_chars(buf, buf + sizeof buf, t.columns[c][r]);
            if (c) out << ',';
            out.write(buf, res.ptr - buf);
        }
        out << '\n';
    }
}

}  // namespace ubm
