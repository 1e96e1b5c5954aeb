#pragma once

// Seeded synthetic datasets.

#include <cstdint>
#include <ostream>
#include <string>

#include "ubm/dataset.hpp"

namespace ubm {

enum class Generator {
    uniform,     // x, y ~ U[0,1) independent
    gaussian,    // x, y ~ N(0,1) independent
    bernoulli,   // x, y ~ Bernoulli(1/2) independent
    mixed_atom,  // z = 1 w.p. 1/2, else U[0,1)
    duplicated,  // x ~ N(0,1), y = x
    noisy_copy,  // x ~ N(0,1), y = x + N(0, 0.01^2), z ~ N(0,1)
};

Generator generator_from_string(const std::string& s);
const char* to_string(Generator g);

Table simulate(Generator g, std::size_t rows, std::uint64_t seed);

// Header plus shortest round-trip decimal form of every value.
void write_csv(std::ostream& out, const Table& t);

}  // namespace ubm
