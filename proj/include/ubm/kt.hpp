#pragma once

// Krichevsky-Trofimov sequential probability assignment over a finite
// alphabet {0, ..., m-1}, Dirichlet(1/2, ..., 1/2) prior, natural-log domain.

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <utility>

#include "ubm/log_math.hpp"

namespace ubm {

using Symbol = std::size_t;

class KtState {
public:
    // Throws std::invalid_argument for alphabet_size == 0.
    explicit KtState(std::size_t alphabet_size);

    std::size_t alphabet_size() const { return alphabet_size_; }
    std::uint64_t total() const { return total_; }
    double log_prob() const { return log_prob_.value(); }
    std::uint64_t count(Symbol s) const;
    const std::unordered_map<Symbol, std::uint64_t>& counts() const { return counts_; }

    // (c[s] + 1/2) / (n + m/2)
    double predictive(Symbol s) const;
    double log_predictive(Symbol s) const;

    // Records s and returns the log predictive it was charged.
    double observe(Symbol s);

private:
    void check(Symbol s) const;

    std::size_t alphabet_size_;
    std::uint64_t total_ = 0;
    CompensatedSum log_prob_;
    std::unordered_map<Symbol, std::uint64_t> counts_;
};

inline KtState kt_new(std::size_t alphabet_size) { return KtState(alphabet_size); }
inline double kt_predictive(const KtState& s, Symbol x) { return s.predictive(x); }
inline std::pair<KtState, double> kt_observe(KtState s, Symbol x) {
    double inc = s.observe(x);
    return {std::move(s), inc};
}

// log[ G(m/2) prod_x G(c[x] + 1/2) / (G(n + m/2) G(1/2)^m) ]. Symbols absent
// from `counts` have count zero.
double kt_log_prob_closed_form(const std::unordered_map<Symbol, std::uint64_t>& counts,
                               std::size_t alphabet_size);

}  // namespace ubm
