#pragma once

// Reference (dominating) measures on the real line and their evaluation on
// interval cells.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ubm {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// An interval of the extended real line. Infinite endpoints are always open;
// a degenerate interval (lower == upper) must be closed on both sides.
class Interval {
public:
    Interval(double lower, double upper, bool lower_closed, bool upper_closed);

    static Interval real_line() { return {-kInf, kInf, false, false}; }
    static Interval point(double x) { return {x, x, true, true}; }
    // (a, b], the cell shape produced by the histogram recursion
    static Interval left_open(double a, double b) { return {a, b, false, b != kInf}; }
    // [a, b)
    static Interval right_open(double a, double b) { return {a, b, a != -kInf, false}; }

    double lower() const { return lower_; }
    double upper() const { return upper_; }
    bool lower_closed() const { return lower_closed_; }
    bool upper_closed() const { return upper_closed_; }

    bool contains(double x) const;
    bool contains(const Interval& other) const;
    bool is_point() const { return lower_ == upper_; }
    double length() const { return upper_ - lower_; }

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    double lower_;
    double upper_;
    bool lower_closed_;
    bool upper_closed_;
};

// Empty intersections yield nullopt.
std::optional<Interval> intersect(const Interval& a, const Interval& b);

std::string to_string(const Interval& c);

// c * Lebesgue restricted to `support`.
struct LebesgueOnSupport {
    Interval support = Interval::real_line();
    double factor = 1.0;
};

struct Atom {
    double location;
    double weight;
};

// Finitely many weighted atoms, sorted by location.
struct FiniteCounting {
    std::vector<Atom> atoms;
};

enum class IntegerRule {
    unit,                  // w(h) = 1
    harmonic_telescoping,  // w(h) = 1/(h(h+1)), requires first >= 1
};

// Rule-generated weights on the integers first..last (either end may be
// infinite). Tail masses are evaluated in closed form.
struct RuleCounting {
    IntegerRule rule = IntegerRule::unit;
    double first = -kInf;
    double last = kInf;
    double factor = 1.0;
};

using MeasurePart = std::variant<LebesgueOnSupport, FiniteCounting, RuleCounting>;

enum class MeasureKind { lebesgue, counting, sum };

// A sigma-finite measure: a single Lebesgue or counting part, or the sum of
// several. Immutable once built.
class ReferenceMeasure {
public:
    static ReferenceMeasure lebesgue(Interval support = Interval::real_line(), double factor = 1.0);
    // Atoms need not be sorted; duplicate locations are rejected.
    static ReferenceMeasure counting(std::vector<Atom> atoms);
    static ReferenceMeasure counting(IntegerRule rule, double first, double last, double factor = 1.0);
    static ReferenceMeasure integers() { return counting(IntegerRule::unit, -kInf, kInf); }
    static ReferenceMeasure naturals_harmonic() {
        return counting(IntegerRule::harmonic_telescoping, 1.0, kInf);
    }
    // The zero measure (no atoms); the identity of sum_measure.
    static ReferenceMeasure zero() { return counting(std::vector<Atom>{}); }

    const std::vector<MeasurePart>& parts() const { return parts_; }
    MeasureKind kind() const;

    // eta(cell); +inf for infinite Lebesgue length or infinitely many atoms.
    double measure_of(const Interval& cell) const;
    bool in_support(double y) const;
    // Smallest interval containing the support; nullopt for the zero measure.
    std::optional<Interval> support_hull() const;
    // c * eta, c > 0.
    ReferenceMeasure scaled(double c) const;

    friend ReferenceMeasure sum_measure(const ReferenceMeasure& a, const ReferenceMeasure& b);

private:
    explicit ReferenceMeasure(std::vector<MeasurePart> parts) : parts_(std::move(parts)) {}

    std::vector<MeasurePart> parts_;
};

ReferenceMeasure sum_measure(const ReferenceMeasure& a, const ReferenceMeasure& b);

inline double measure_of(const ReferenceMeasure& m, const Interval& cell) {
    return m.measure_of(cell);
}

}  // namespace ubm
