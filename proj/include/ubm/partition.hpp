#pragma once

// The refining histogram sequence C_0, C_1, ... generated from a center and a
// scale, restricted to a support.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ubm/measure.hpp"

namespace ubm {

inline constexpr int kMaxSupportedLevel = 20;
inline constexpr int kDefaultLevels = 16;

// Cut points of the universal recursion at level k >= 1, independent of any
// support: 2^k - 1 strictly increasing values.
std::vector<double> universal_cut_points(double center, double scale, int k);

class HistogramSequence {
public:
    // Universal sequence restricted to an interval support. Only empty
    // intersections are dropped.
    HistogramSequence(double center, double scale, int max_level,
                      Interval support = Interval::real_line());
    // Universal sequence restricted to the support of `measure`; cells of
    // measure zero are dropped along with empty ones.
    HistogramSequence(double center, double scale, int max_level, const ReferenceMeasure& measure);

    // Custom sequence: cut_points[k-1] are the cuts of level k (k = 1..K).
    // Each list must be strictly increasing; refinement is not enforced here,
    // see verify_refinement.
    static HistogramSequence from_cut_points(std::vector<std::vector<double>> cut_points,
                                             Interval support = Interval::real_line());
    static HistogramSequence from_cut_points(std::vector<std::vector<double>> cut_points,
                                             const ReferenceMeasure& measure);

    int max_level() const { return static_cast<int>(levels_.size()) - 1; }
    bool is_universal() const { return universal_; }
    double center() const { return center_; }
    double scale() const { return scale_; }
    const Interval& support() const { return support_; }

    // Throws std::out_of_range unless 1 <= k <= max_level.
    std::span<const double> cut_points(int k) const;
    // Throws std::out_of_range unless 0 <= k <= max_level.
    const std::vector<Interval>& cells(int k) const;
    std::size_t cell_count(int k) const { return cells(k).size(); }

    // Index into cells(k) of the cell holding y. Throws std::domain_error if
    // y is outside the support or falls in a dropped (null) cell.
    std::size_t cell_of(int k, double y) const;

private:
    struct Level {
        std::vector<double> cuts;
        std::vector<Interval> cells;
        std::vector<std::int32_t> kept_index;  // raw cell -> cells index, -1 if dropped
    };

    HistogramSequence(std::vector<std::vector<double>> cut_points, Interval support,
                      std::optional<ReferenceMeasure> measure);
    void build_levels(std::vector<std::vector<double>> cut_points);
    const Level& level(int k) const;
    bool in_support(double y) const;

    double center_ = 0.0;
    double scale_ = 1.0;
    bool universal_ = false;
    Interval support_;
    std::optional<ReferenceMeasure> measure_;
    std::vector<Level> levels_;
};

// True iff every cell of level k+1 lies inside a single cell of level k.
bool verify_refinement(const HistogramSequence& seq);

}  // namespace ubm
