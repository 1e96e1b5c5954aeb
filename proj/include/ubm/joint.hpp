#pragma once

// Two-variable estimator over product cells, the Bayes-factor independence
// decision built on it, and a Kruskal forest over pairwise evidence.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ubm/estimator.hpp"

namespace ubm {

// Positive weights over the (J+1) x (K+1) level grid, row-major, sum <= 1.
class JointWeights {
public:
    JointWeights(std::size_t rows, std::size_t cols, std::vector<double> weights);

    // w_{j,k} = w_j * w_k
    static JointWeights product(const LevelWeights& x, const LevelWeights& y);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double operator()(std::size_t j, std::size_t k) const { return weights_[j * cols_ + k]; }
    const std::vector<double>& values() const { return weights_; }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> weights_;
};

class JointEstimator {
public:
    // Throws std::invalid_argument unless the weight grid is
    // (Jx+1) x (Ky+1) for the two partitions' depths.
    JointEstimator(HistogramSequence partition_x, HistogramSequence partition_y,
                   ReferenceMeasure measure_x, ReferenceMeasure measure_y, JointWeights weights);
    JointEstimator(HistogramSequence partition_x, HistogramSequence partition_y,
                   ReferenceMeasure measure_x, ReferenceMeasure measure_y);

    // Observes (x, y); returns the mixture's log predictive increment.
    // Throws std::domain_error for out-of-support or null-cell samples.
    double observe(double x, double y);

    double log_density() const { return log_density_; }
    double codelength_bits() const;
    std::uint64_t n() const { return n_; }

    std::size_t rows() const { return weights_.rows(); }
    std::size_t cols() const { return weights_.cols(); }
    const KtState& grid_state(std::size_t j, std::size_t k) const { return states_[j * cols() + k]; }
    double grid_log_density(std::size_t j, std::size_t k) const {
        return grid_log_density_[j * cols() + k];
    }
    const JointWeights& weights() const { return weights_; }

private:
    HistogramSequence partition_x_;
    HistogramSequence partition_y_;
    ReferenceMeasure measure_x_;
    ReferenceMeasure measure_y_;
    JointWeights weights_;
    std::vector<double> log_weights_;
    std::vector<std::vector<double>> log_measure_x_;
    std::vector<std::vector<double>> log_measure_y_;
    std::vector<KtState> states_;
    std::vector<CompensatedSum> grid_log_measure_;
    std::vector<double> grid_log_density_;
    double log_density_;
    std::uint64_t n_ = 0;
};

inline JointEstimator joint_new(HistogramSequence px, HistogramSequence py, ReferenceMeasure mx,
                                ReferenceMeasure my, JointWeights w) {
    return {std::move(px), std::move(py), std::move(mx), std::move(my), std::move(w)};
}

enum class Decision { independent, dependent };

const char* to_string(Decision d);

struct PairReport {
    double log_gx = 0.0;
    double log_gy = 0.0;
    double log_gxy = 0.0;
    // log p + log gx + log gy - log(1-p) - log gxy; >= 0 decides independent
    double log_bayes_factor = 0.0;
    double mi_per_sample = 0.0;  // nats, may be negative
    Decision decision = Decision::independent;
    double prior_p = 0.5;
};

struct VariableModel {
    HistogramSequence partition;
    ReferenceMeasure measure;
};

struct PairConfig {
    VariableModel x;
    VariableModel y;
    double prior_p = 0.5;
};

// Marginals use the same partitions (and depths) as the joint grid.
// Throws std::invalid_argument for mismatched or empty samples, and
// std::domain_error if a model assigns zero density to the data.
PairReport analyze_pair(std::span<const double> xs, std::span<const double> ys,
                        const PairConfig& config);

struct PairEntry {
    std::string first;
    std::string second;
    PairReport report;
};

struct Edge {
    std::string first;   // first < second
    std::string second;
    double weight;       // -log_bayes_factor
};

// Maximum-weight acyclic forest over pairs decided dependent.
std::vector<Edge> build_forest(std::span<const PairEntry> pairs);

}  // namespace ubm
