#pragma once

// Univariate universal density estimator: per-level KT measures over the
// cells of a histogram sequence, divided by the reference measure of the
// visited cells and mixed with prior level weights.

#include <array>
#include <cstdint>
#include <vector>

#include "ubm/kt.hpp"
#include "ubm/log_math.hpp"
#include "ubm/measure.hpp"
#include "ubm/partition.hpp"

namespace ubm {

// Positive prior weights over levels 0..K with sum <= 1.
class LevelWeights {
public:
    explicit LevelWeights(std::vector<double> weights);

    // w_k = 1/((k+1)(k+2)), k = 0..max_level; sums to 1 - 1/(max_level+2).
    static LevelWeights harmonic(int max_level);

    std::size_t size() const { return weights_.size(); }
    double operator[](std::size_t k) const { return weights_[k]; }
    double total() const;
    const std::vector<double>& values() const { return weights_; }

private:
    std::vector<double> weights_;
};

class MixtureEstimator {
public:
    // Throws std::invalid_argument if weights.size() != max_level + 1.
    MixtureEstimator(HistogramSequence partition, ReferenceMeasure measure, LevelWeights weights);
    MixtureEstimator(HistogramSequence partition, ReferenceMeasure measure);

    // Observes y and returns log g^{n+1} - log g^n. A level whose cell for y
    // has infinite measure drops to -inf. Throws std::domain_error if y is
    // outside the support or in a cell of measure zero; state is untouched.
    double observe(double y);

    // One-step predictive density at y; does not change the state.
    double log_density_at(double y) const;
    double density_at(double y) const;

    // log g^n(y^n), natural log.
    double log_density() const { return log_density_; }
    // -log2 g^n(y^n). Signed for continuous data; +inf when every level is -inf.
    double codelength_bits() const;

    // w_k g_k^n / g^n. Throws std::domain_error when every level is -inf.
    std::vector<double> level_posterior() const;

    std::uint64_t n() const { return n_; }
    const HistogramSequence& partition() const { return partition_; }
    const ReferenceMeasure& measure() const { return measure_; }
    const LevelWeights& weights() const { return weights_; }
    const std::vector<KtState>& level_states() const { return states_; }
    const std::vector<double>& level_log_density() const { return level_log_density_; }
    // log eta(cells(k)[b]) for the estimator's measure.
    double cell_log_measure(int k, std::size_t b) const { return cell_log_measure_[k][b]; }

private:
    using CellIndices = std::array<std::size_t, kMaxSupportedLevel + 1>;
    CellIndices locate(double y) const;

    HistogramSequence partition_;
    ReferenceMeasure measure_;
    LevelWeights weights_;
    std::vector<double> log_weights_;
    std::vector<std::vector<double>> cell_log_measure_;
    std::vector<KtState> states_;
    std::vector<CompensatedSum> level_log_measure_;  // sum of log eta over visited cells
    std::vector<double> level_log_density_;
    double log_density_;
    std::uint64_t n_ = 0;
};

inline MixtureEstimator estimator_new(HistogramSequence partition, ReferenceMeasure measure,
                                      LevelWeights weights) {
    return {std::move(partition), std::move(measure), std::move(weights)};
}

// Log measure of every cell of every level, -inf for null cells and +inf for
// infinite ones. Shared with the joint estimator.
std::vector<std::vector<double>> cell_log_measures(const HistogramSequence& partition,
                                                   const ReferenceMeasure& measure);

}  // namespace ubm
