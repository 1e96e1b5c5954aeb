#include "ubm/joint.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ubm/log_math.hpp"

namespace ubm {

JointWeights::JointWeights(std::size_t rows, std::size_t cols, std::vector<double> weights)
    : rows_(rows), cols_(cols), weights_(std::move(weights)) {
    if (rows_ == 0 || cols_ == 0 || weights_.size() != rows_ * cols_)
        throw std::invalid_argument("joint weight grid has the wrong shape");
    for (double w : weights_)
        if (!(w > 0.0) || !std::isfinite(w))
            throw std::invalid_argument("joint weights must be positive and finite");
    if (std::accumulate(weights_.begin(), weights_.end(), 0.0) > 1.0 + 1e-12)
        throw std::invalid_argument("joint weights must sum to at most 1");
}

JointWeights JointWeights::product(const LevelWeights& x, const LevelWeights& y) {
    std::vector<double> w;
    w.reserve(x.size() * y.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        for (std::size_t k = 0; k < y.size(); ++k) w.push_back(x[j] * y[k]);
    return {x.size(), y.size(), std::move(w)};
}

JointEstimator::JointEstimator(HistogramSequence partition_x, HistogramSequence partition_y,
                               ReferenceMeasure measure_x, ReferenceMeasure measure_y,
                               JointWeights weights)
    : partition_x_(std::move(partition_x)), partition_y_(std::move(partition_y)),
      measure_x_(std::move(measure_x)), measure_y_(std::move(measure_y)),
      weights_(std::move(weights)) {
    const auto rows = static_cast<std::size_t>(partition_x_.max_level()) + 1;
    const auto cols = static_cast<std::size_t>(partition_y_.max_level()) + 1;
    if (weights_.rows() != rows || weights_.cols() != cols)
        throw std::invalid_argument("joint weights must cover a " + std::to_string(rows) + "x" +
                                    std::to_string(cols) + " level grid");
    log_measure_x_ = cell_log_measures(partition_x_, measure_x_);
    log_measure_y_ = cell_log_measures(partition_y_, measure_y_);
    states_.reserve(rows * cols);
    for (std::size_t j = 0; j < rows; ++j) {
        for (std::size_t k = 0; k < cols; ++k) {
            states_.emplace_back(partition_x_.cell_count(int(j)) * partition_y_.cell_count(int(k)));
            log_weights_.push_back(std::log(weights_(j, k)));
        }
    }
    grid_log_measure_.assign(rows * cols, CompensatedSum{});
    grid_log_density_.assign(rows * cols, 0.0);
    log_density_ = log_sum_exp(log_weights_);
}

JointEstimator::JointEstimator(HistogramSequence partition_x, HistogramSequence partition_y,
                               ReferenceMeasure measure_x, ReferenceMeasure measure_y)
    : JointEstimator(partition_x, partition_y, std::move(measure_x), std::move(measure_y),
                     JointWeights::product(LevelWeights::harmonic(partition_x.max_level()),
                                           LevelWeights::harmonic(partition_y.max_level()))) {}

namespace {

std::vector<std::size_t> locate_all(const HistogramSequence& p, const ReferenceMeasure& m,
                                    const std::vector<std::vector<double>>& log_measure, double v) {
    if (!m.in_support(v))
        throw std::domain_error("sample " + std::to_string(v) + " outside the measure's support");
    std::vector<std::size_t> cells(log_measure.size());
    for (std::size_t j = 0; j < cells.size(); ++j) {
        cells[j] = p.cell_of(int(j), v);
        if (log_measure[j][cells[j]] == kNegInf)
            throw std::domain_error("sample " + std::to_string(v) + " lies in a cell of measure zero");
    }
    return cells;
}

}  // namespace

double JointEstimator::observe(double x, double y) {
    const auto ax = locate_all(partition_x_, measure_x_, log_measure_x_, x);
    const auto by = locate_all(partition_y_, measure_y_, log_measure_y_, y);
    std::vector<double> terms(states_.size());
    for (std::size_t j = 0; j < rows(); ++j) {
        for (std::size_t k = 0; k < cols(); ++k) {
            const std::size_t g = j * cols() + k;
            const std::size_t ny = partition_y_.cell_count(int(k));
            states_[g].observe(ax[j] * ny + by[k]);
            grid_log_measure_[g].add(log_measure_x_[j][ax[j]] + log_measure_y_[k][by[k]]);
            const double lm = grid_log_measure_[g].value();
            grid_log_density_[g] = lm == kInf ? kNegInf : states_[g].log_prob() - lm;
            terms[g] = log_weights_[g] + grid_log_density_[g];
        }
    }
    ++n_;
    const double before = log_density_;
    log_density_ = log_sum_exp(terms);
    if (log_density_ == kNegInf) return kNegInf;
    return log_density_ - before;
}

double JointEstimator::codelength_bits() const {
    if (log_density_ == kNegInf) return kInf;
    return -nats_to_bits(log_density_);
}

const char* to_string(Decision d) {
    return d == Decision::independent ? "independent" : "dependent";
}

PairReport analyze_pair(std::span<const double> xs, std::span<const double> ys,
                        const PairConfig& config) {
    if (xs.size() != ys.size()) throw std::invalid_argument("paired samples differ in length");
    if (xs.empty()) throw std::invalid_argument("paired samples are empty");
    if (!(config.prior_p > 0.0 && config.prior_p < 1.0))
        throw std::invalid_argument("prior_p must lie in (0, 1)");

    MixtureEstimator gx(config.x.partition, config.x.measure);
    MixtureEstimator gy(config.y.partition, config.y.measure);
    JointEstimator gxy(config.x.partition, config.y.partition, config.x.measure, config.y.measure);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        gx.observe(xs[i]);
        gy.observe(ys[i]);
        gxy.observe(xs[i], ys[i]);
    }

    PairReport r;
    r.prior_p = config.prior_p;
    r.log_gx = gx.log_density();
    r.log_gy = gy.log_density();
    r.log_gxy = gxy.log_density();
    if (r.log_gx == kNegInf || r.log_gy == kNegInf || r.log_gxy == kNegInf)
        throw std::domain_error("every level assigns zero density to the sample");
    r.log_bayes_factor = std::log(r.prior_p) + r.log_gx + r.log_gy - std::log1p(-r.prior_p) - r.log_gxy;
    r.mi_per_sample = (r.log_gxy - r.log_gx - r.log_gy) / static_cast<double>(xs.size());
    r.decision = r.log_bayes_factor >= 0.0 ? Decision::independent : Decision::dependent;
    return r;
}

std::vector<Edge> build_forest(std::span<const PairEntry> pairs) {
    std::vector<Edge> candidates;
    for (const auto& p : pairs) {
        if (p.report.decision != Decision::dependent) continue;
        double w = -p.report.log_bayes_factor;
        if (!(w > 0.0)) continue;
        auto [a, b] = std::minmax(p.first, p.second);
        if (a == b) continue;
        candidates.push_back({a, b, w});
    }
    std::sort(candidates.begin(), candidates.end(), [](const Edge& l, const Edge& r) {
        if (l.weight != r.weight) return l.weight > r.weight;
        if (l.first != r.first) return l.first < r.first;
        return l.second < r.second;
    });

    std::map<std::string, std::string> parent;
    auto find = [&](const std::string& v) {
        std::string root = v;
        while (true) {
            auto it = parent.find(root);
            if (it == parent.end() || it->second == root) break;
            root = it->second;
        }
        return root;
    };

    std::vector<Edge> forest;
    for (auto& e : candidates) {
        std::string ra = find(e.first);
        std::string rb = find(e.second);
        if (ra == rb) continue;
        parent[ra] = rb;
        forest.push_back(std::move(e));
    }
    return forest;
}

}  // namespace ubm
