#include "ubm/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ubm {

namespace {

void check_level_count(int max_level) {
    if (max_level < 0 || max_level > kMaxSupportedLevel)
        throw std::invalid_argument("max_level must lie in [0, " +
                                    std::to_string(kMaxSupportedLevel) + "]");
}

std::vector<std::vector<double>> universal_levels(double center, double scale, int max_level) {
    std::vector<std::vector<double>> out;
    if (max_level == 0) return out;
    out.reserve(max_level);
    out.push_back({center});
    for (int k = 1; k < max_level; ++k) {
        const auto& prev = out.back();
        std::vector<double> next;
        next.reserve(2 * prev.size() + 1);
        next.push_back(center - k * scale);
        for (std::size_t j = 0; j < prev.size(); ++j) {
            if (j > 0) next.push_back((prev[j - 1] + prev[j]) / 2.0);
            next.push_back(prev[j]);
        }
        next.push_back(center + k * scale);
        out.push_back(std::move(next));
    }
    return out;
}

Interval hull_or_throw(const ReferenceMeasure& m) {
    auto hull = m.support_hull();
    if (!hull) throw std::invalid_argument("histogram support is empty (zero measure)");
    return *hull;
}

}  // namespace

std::vector<double> universal_cut_points(double center, double scale, int k) {
    if (k < 1) throw std::out_of_range("cut points exist for levels k >= 1");
    check_level_count(k);
    return universal_levels(center, scale, k).back();
}

HistogramSequence::HistogramSequence(double center, double scale, int max_level, Interval support)
    : center_(center), scale_(scale), universal_(true), support_(support) {
    if (!(scale > 0.0) || !std::isfinite(scale) || !std::isfinite(center))
        throw std::invalid_argument("histogram scale must be positive and finite");
    check_level_count(max_level);
    build_levels(universal_levels(center, scale, max_level));
}

HistogramSequence::HistogramSequence(double center, double scale, int max_level,
                                     const ReferenceMeasure& measure)
    : center_(center), scale_(scale), universal_(true), support_(hull_or_throw(measure)),
      measure_(measure) {
    if (!(scale > 0.0) || !std::isfinite(scale) || !std::isfinite(center))
        throw std::invalid_argument("histogram scale must be positive and finite");
    check_level_count(max_level);
    build_levels(universal_levels(center, scale, max_level));
}

HistogramSequence::HistogramSequence(std::vector<std::vector<double>> cut_points, Interval support,
                                     std::optional<ReferenceMeasure> measure)
    : support_(support), measure_(std::move(measure)) {
    check_level_count(static_cast<int>(cut_points.size()));
    build_levels(std::move(cut_points));
}

HistogramSequence HistogramSequence::from_cut_points(std::vector<std::vector<double>> cut_points,
                                                     Interval support) {
    return HistogramSequence(std::move(cut_points), support, std::nullopt);
}

HistogramSequence HistogramSequence::from_cut_points(std::vector<std::vector<double>> cut_points,
                                                     const ReferenceMeasure& measure) {
    return HistogramSequence(std::move(cut_points), hull_or_throw(measure), measure);
}

void HistogramSequence::build_levels(std::vector<std::vector<double>> cut_points) {
    levels_.clear();
    levels_.reserve(cut_points.size() + 1);
    levels_.push_back(Level{});
    for (auto& cuts : cut_points) {
        for (std::size_t i = 0; i < cuts.size(); ++i) {
            if (!std::isfinite(cuts[i]) || (i > 0 && !(cuts[i - 1] < cuts[i])))
                throw std::invalid_argument(
                    "cut points must be finite and strictly increasing (scale too small for depth?)");
        }
        levels_.push_back(Level{std::move(cuts), {}, {}});
    }

    for (auto& lv : levels_) {
        const std::size_t raw_cells = lv.cuts.size() + 1;
        lv.kept_index.assign(raw_cells, -1);
        for (std::size_t r = 0; r < raw_cells; ++r) {
            double lo = r == 0 ? -kInf : lv.cuts[r - 1];
            double hi = r == lv.cuts.size() ? kInf : lv.cuts[r];
            auto cell = intersect(Interval::left_open(lo, hi), support_);
            if (!cell) continue;
            if (measure_ && !(measure_->measure_of(*cell) > 0.0)) continue;
            lv.kept_index[r] = static_cast<std::int32_t>(lv.cells.size());
            lv.cells.push_back(*cell);
        }
        if (lv.cells.empty()) throw std::invalid_argument("histogram level has no cells of positive measure");
    }
}

const HistogramSequence::Level& HistogramSequence::level(int k) const {
    if (k < 0 || k > max_level())
        throw std::out_of_range("level " + std::to_string(k) + " outside [0, " +
                                std::to_string(max_level()) + "]");
    return levels_[static_cast<std::size_t>(k)];
}

std::span<const double> HistogramSequence::cut_points(int k) const {
    if (k < 1) throw std::out_of_range("cut points exist for levels k >= 1");
    return level(k).cuts;
}

const std::vector<Interval>& HistogramSequence::cells(int k) const { return level(k).cells; }

bool HistogramSequence::in_support(double y) const {
    return measure_ ? measure_->in_support(y) : support_.contains(y);
}

std::size_t HistogramSequence::cell_of(int k, double y) const {
    const Level& lv = level(k);
    if (!in_support(y)) throw std::domain_error("sample " + std::to_string(y) + " outside support");
    // cell (c_{r-1}, c_r] holds y iff r = #{cuts < y}
    auto raw = std::lower_bound(lv.cuts.begin(), lv.cuts.end(), y) - lv.cuts.begin();
    std::int32_t idx = lv.kept_index[static_cast<std::size_t>(raw)];
    if (idx < 0) throw std::domain_error("sample " + std::to_string(y) + " lies in a null cell");
    return static_cast<std::size_t>(idx);
}

bool verify_refinement(const HistogramSequence& seq) {
    for (int k = 0; k < seq.max_level(); ++k) {
        auto coarse = k == 0 ? std::span<const double>{} : seq.cut_points(k);
        for (const Interval& c : seq.cells(k + 1)) {
            // a coarse cut t splits c iff c has points <= t and points > t
            auto it = std::lower_bound(coarse.begin(), coarse.end(), c.lower());
            for (; it != coarse.end() && *it < c.upper(); ++it) {
                if (c.lower() < *it || c.lower_closed()) return false;
            }
        }
    }
    return true;
}

}  // namespace ubm
