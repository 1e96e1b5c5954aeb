#include "ubm/estimator.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ubm/log_math.hpp"

namespace ubm {

LevelWeights::LevelWeights(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw std::invalid_argument("level weights must be nonempty");
    for (double w : weights_)
        if (!(w > 0.0) || !std::isfinite(w))
            throw std::invalid_argument("level weights must be positive and finite");
    if (total() > 1.0 + 1e-12) throw std::invalid_argument("level weights must sum to at most 1");
}

LevelWeights LevelWeights::harmonic(int max_level) {
    if (max_level < 0) throw std::invalid_argument("max_level must be nonnegative");
    std::vector<double> w(static_cast<std::size_t>(max_level) + 1);
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = 1.0 / (double(k + 1) * double(k + 2));
    return LevelWeights(std::move(w));
}

double LevelWeights::total() const { return std::accumulate(weights_.begin(), weights_.end(), 0.0); }

std::vector<std::vector<double>> cell_log_measures(const HistogramSequence& partition,
                                                   const ReferenceMeasure& measure) {
    std::vector<std::vector<double>> out(static_cast<std::size_t>(partition.max_level()) + 1);
    for (int k = 0; k <= partition.max_level(); ++k) {
        const auto& cells = partition.cells(k);
        auto& row = out[static_cast<std::size_t>(k)];
        row.reserve(cells.size());
        for (const auto& c : cells) row.push_back(std::log(measure.measure_of(c)));
    }
    return out;
}

MixtureEstimator::MixtureEstimator(HistogramSequence partition, ReferenceMeasure measure,
                                   LevelWeights weights)
    : partition_(std::move(partition)), measure_(std::move(measure)), weights_(std::move(weights)) {
    const auto levels = static_cast<std::size_t>(partition_.max_level()) + 1;
    if (weights_.size() != levels)
        throw std::invalid_argument("expected " + std::to_string(levels) + " level weights, got " +
                                    std::to_string(weights_.size()));
    cell_log_measure_ = cell_log_measures(partition_, measure_);
    states_.reserve(levels);
    for (std::size_t k = 0; k < levels; ++k) {
        states_.emplace_back(partition_.cell_count(static_cast<int>(k)));
        log_weights_.push_back(std::log(weights_[k]));
    }
    level_log_measure_.assign(levels, CompensatedSum{});
    level_log_density_.assign(levels, 0.0);
    log_density_ = log_sum_exp(log_weights_);
}

MixtureEstimator::MixtureEstimator(HistogramSequence partition, ReferenceMeasure measure)
    : MixtureEstimator(partition, std::move(measure), LevelWeights::harmonic(partition.max_level())) {}

MixtureEstimator::CellIndices MixtureEstimator::locate(double y) const {
    if (!measure_.in_support(y))
        throw std::domain_error("sample " + std::to_string(y) + " outside the measure's support");
    CellIndices cells{};
    for (std::size_t k = 0; k < states_.size(); ++k) {
        cells[k] = partition_.cell_of(static_cast<int>(k), y);
        if (cell_log_measure_[k][cells[k]] == kNegInf)
            throw std::domain_error("sample " + std::to_string(y) + " lies in a cell of measure zero");
    }
    return cells;
}

double MixtureEstimator::observe(double y) {
    const CellIndices cells = locate(y);
    std::vector<double> terms(states_.size());
    for (std::size_t k = 0; k < states_.size(); ++k) {
        states_[k].observe(cells[k]);
        level_log_measure_[k].add(cell_log_measure_[k][cells[k]]);
        // an infinite-measure cell pins the level at -inf
        const double lm = level_log_measure_[k].value();
        level_log_density_[k] = lm == kInf ? kNegInf : states_[k].log_prob() - lm;
        terms[k] = log_weights_[k] + level_log_density_[k];
    }
    ++n_;
    const double before = log_density_;
    log_density_ = log_sum_exp(terms);
    if (log_density_ == kNegInf) return kNegInf;
    return log_density_ - before;
}

double MixtureEstimator::log_density_at(double y) const {
    if (log_density_ == kNegInf)
        throw std::domain_error("no level assigns positive density to the observed data");
    const CellIndices cells = locate(y);
    std::vector<double> terms(states_.size());
    for (std::size_t k = 0; k < states_.size(); ++k) {
        terms[k] = log_weights_[k] + level_log_density_[k] + states_[k].log_predictive(cells[k]) -
                   cell_log_measure_[k][cells[k]];
    }
    return log_sum_exp(terms) - log_density_;
}

double MixtureEstimator::density_at(double y) const { return std::exp(log_density_at(y)); }

double MixtureEstimator::codelength_bits() const {
    if (log_density_ == kNegInf) return kInf;
    return -nats_to_bits(log_density_);
}

std::vector<double> MixtureEstimator::level_posterior() const {
    if (log_density_ == kNegInf)
        throw std::domain_error("no level assigns positive density to the observed data");
    std::vector<double> post(states_.size());
    for (std::size_t k = 0; k < states_.size(); ++k)
        post[k] = std::exp(log_weights_[k] + level_log_density_[k] - log_density_);
    return post;
}

}  // namespace ubm
