#include "ubm/kt.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ubm {

KtState::KtState(std::size_t alphabet_size) : alphabet_size_(alphabet_size) {
    if (alphabet_size == 0) throw std::invalid_argument("KT alphabet must be nonempty");
}

void KtState::check(Symbol s) const {
    if (s >= alphabet_size_)
        throw std::out_of_range("symbol " + std::to_string(s) + " outside alphabet of size " +
                                std::to_string(alphabet_size_));
}

std::uint64_t KtState::count(Symbol s) const {
    check(s);
    auto it = counts_.find(s);
    return it == counts_.end() ? 0 : it->second;
}

double KtState::predictive(Symbol s) const {
    return (static_cast<double>(count(s)) + 0.5) /
           (static_cast<double>(total_) + 0.5 * static_cast<double>(alphabet_size_));
}

double KtState::log_predictive(Symbol s) const { return std::log(predictive(s)); }

double KtState::observe(Symbol s) {
    check(s);
    auto& c = counts_.try_emplace(s, 0).first->second;
    double inc = std::log((static_cast<double>(c) + 0.5) /
                          (static_cast<double>(total_) + 0.5 * static_cast<double>(alphabet_size_)));
    ++c;
    ++total_;
    log_prob_.add(inc);
    return inc;
}

double kt_log_prob_closed_form(const std::unordered_map<Symbol, std::uint64_t>& counts,
                               std::size_t alphabet_size) {
    if (alphabet_size == 0) throw std::invalid_argument("KT alphabet must be nonempty");
    const double m = static_cast<double>(alphabet_size);
    const double lgamma_half = std::lgamma(0.5);
    double n = 0.0;
    double acc = std::lgamma(m / 2.0);
    for (const auto& [symbol, c] : counts) {
        if (symbol >= alphabet_size) throw std::out_of_range("count index outside alphabet");
        if (c == 0) continue;
        n += static_cast<double>(c);
        // the zero-count symbols contribute G(1/2)/G(1/2) = 1
        acc += std::lgamma(static_cast<double>(c) + 0.5) - lgamma_half;
    }
    return acc - std::lgamma(n + m / 2.0);
}

}  // namespace ubm
