#include "ubm/measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ubm {

namespace {

bool is_integer_or_inf(double x) {
    return std::isinf(x) || std::floor(x) == x;
}

// Smallest / largest integer inside the cell, possibly infinite.
double first_integer_in(const Interval& c) {
    if (c.lower() == -kInf) return -kInf;
    double f = std::ceil(c.lower());
    if (f == c.lower() && !c.lower_closed()) f += 1.0;
    return f;
}

double last_integer_in(const Interval& c) {
    if (c.upper() == kInf) return kInf;
    double f = std::floor(c.upper());
    if (f == c.upper() && !c.upper_closed()) f -= 1.0;
    return f;
}

double lebesgue_of(const LebesgueOnSupport& m, const Interval& cell) {
    auto overlap = intersect(m.support, cell);
    if (!overlap) return 0.0;
    return overlap->length() * m.factor;
}

double finite_counting_of(const FiniteCounting& m, const Interval& cell) {
    const auto& atoms = m.atoms;
    auto by_location = [](const Atom& a, double x) { return a.location < x; };
    auto lo = cell.lower_closed()
                  ? std::lower_bound(atoms.begin(), atoms.end(), cell.lower(), by_location)
                  : std::upper_bound(atoms.begin(), atoms.end(), cell.lower(),
                                     [](double x, const Atom& a) { return x < a.location; });
    double total = 0.0;
    for (auto it = lo; it != atoms.end() && cell.contains(it->location); ++it) total += it->weight;
    return total;
}

double rule_counting_of(const RuleCounting& m, const Interval& cell) {
    double a = std::max(first_integer_in(cell), m.first);
    double b = std::min(last_integer_in(cell), m.last);
    if (a > b) return 0.0;
    switch (m.rule) {
    case IntegerRule::unit:
        if (std::isinf(a) || std::isinf(b)) return kInf;
        return (b - a + 1.0) * m.factor;
    case IntegerRule::harmonic_telescoping:
        // sum_{h=a}^{b} 1/h - 1/(h+1) = 1/a - 1/(b+1)
        if (std::isinf(b)) return m.factor / a;
        return m.factor * (b + 1.0 - a) / (a * (b + 1.0));
    }
    return 0.0;
}

bool rule_contains(const RuleCounting& m, double y) {
    return std::floor(y) == y && y >= m.first && y <= m.last;
}

std::optional<Interval> hull_of(const MeasurePart& part) {
    if (auto* leb = std::get_if<LebesgueOnSupport>(&part)) return leb->support;
    if (auto* fin = std::get_if<FiniteCounting>(&part)) {
        if (fin->atoms.empty()) return std::nullopt;
        return Interval(fin->atoms.front().location, fin->atoms.back().location, true, true);
    }
    const auto& rule = std::get<RuleCounting>(part);
    return Interval(rule.first, rule.last, !std::isinf(rule.first), !std::isinf(rule.last));
}

Interval hull_union(const Interval& a, const Interval& b) {
    double lo = std::min(a.lower(), b.lower());
    bool lo_closed = (a.lower() == lo && a.lower_closed()) || (b.lower() == lo && b.lower_closed());
    double hi = std::max(a.upper(), b.upper());
    bool hi_closed = (a.upper() == hi && a.upper_closed()) || (b.upper() == hi && b.upper_closed());
    return {lo, hi, lo_closed, hi_closed};
}

void check_factor(double c) {
    if (!(c > 0.0) || !std::isfinite(c))
        throw std::invalid_argument("measure weights must be positive and finite");
}

}  // namespace

Interval::Interval(double lower, double upper, bool lower_closed, bool upper_closed)
    : lower_(lower), upper_(upper), lower_closed_(lower_closed), upper_closed_(upper_closed) {
    if (std::isnan(lower) || std::isnan(upper))
        throw std::invalid_argument("interval endpoints must not be NaN");
    if (lower > upper) throw std::invalid_argument("interval lower bound exceeds upper bound");
    if ((std::isinf(lower) && lower_closed) || (std::isinf(upper) && upper_closed))
        throw std::invalid_argument("infinite interval endpoints cannot be closed");
    if (lower == upper && !(lower_closed && upper_closed))
        throw std::invalid_argument("degenerate interval must be a closed point");
}

bool Interval::contains(double x) const {
    bool above = x > lower_ || (lower_closed_ && x == lower_);
    bool below = x < upper_ || (upper_closed_ && x == upper_);
    return above && below;
}

bool Interval::contains(const Interval& o) const {
    bool lo_ok = o.lower_ > lower_ || (o.lower_ == lower_ && (lower_closed_ || !o.lower_closed_));
    bool hi_ok = o.upper_ < upper_ || (o.upper_ == upper_ && (upper_closed_ || !o.upper_closed_));
    return lo_ok && hi_ok;
}

std::optional<Interval> intersect(const Interval& a, const Interval& b) {
    double lo;
    bool lo_closed;
    if (a.lower() == b.lower()) {
        lo = a.lower();
        lo_closed = a.lower_closed() && b.lower_closed();
    } else {
        const Interval& s = a.lower() > b.lower() ? a : b;
        lo = s.lower();
        lo_closed = s.lower_closed();
    }
    double hi;
    bool hi_closed;
    if (a.upper() == b.upper()) {
        hi = a.upper();
        hi_closed = a.upper_closed() && b.upper_closed();
    } else {
        const Interval& s = a.upper() < b.upper() ? a : b;
        hi = s.upper();
        hi_closed = s.upper_closed();
    }
    if (lo > hi) return std::nullopt;
    if (lo == hi && !(lo_closed && hi_closed)) return std::nullopt;
    return Interval(lo, hi, lo_closed, hi_closed);
}

std::string to_string(const Interval& c) {
    std::ostringstream os;
    os << (c.lower_closed() ? '[' : '(') << c.lower() << ", " << c.upper()
       << (c.upper_closed() ? ']' : ')');
    return os.str();
}

ReferenceMeasure ReferenceMeasure::lebesgue(Interval support, double factor) {
    check_factor(factor);
    return ReferenceMeasure({LebesgueOnSupport{support, factor}});
}

ReferenceMeasure ReferenceMeasure::counting(std::vector<Atom> atoms) {
    for (const auto& a : atoms) {
        if (!std::isfinite(a.location)) throw std::invalid_argument("atom locations must be finite");
        check_factor(a.weight);
    }
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& x, const Atom& y) { return x.location < y.location; });
    auto dup = std::adjacent_find(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) {
        return x.location == y.location;
    });
    if (dup != atoms.end()) throw std::invalid_argument("duplicate atom location");
    return ReferenceMeasure({FiniteCounting{std::move(atoms)}});
}

ReferenceMeasure ReferenceMeasure::counting(IntegerRule rule, double first, double last, double factor) {
    check_factor(factor);
    if (!is_integer_or_inf(first) || !is_integer_or_inf(last) || first > last || first == kInf ||
        last == -kInf)
        throw std::invalid_argument("integer rule range must be integer bounds with first <= last");
    if (rule == IntegerRule::harmonic_telescoping && !(first >= 1.0))
        throw std::invalid_argument("harmonic-telescoping weights need first >= 1");
    return ReferenceMeasure({RuleCounting{rule, first, last, factor}});
}

MeasureKind ReferenceMeasure::kind() const {
    if (parts_.size() > 1) return MeasureKind::sum;
    if (parts_.size() == 1 && std::holds_alternative<LebesgueOnSupport>(parts_.front()))
        return MeasureKind::lebesgue;
    return MeasureKind::counting;
}

double ReferenceMeasure::measure_of(const Interval& cell) const {
    double total = 0.0;
    for (const auto& part : parts_) {
        total += std::visit(
            [&](const auto& p) -> double {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, LebesgueOnSupport>) return lebesgue_of(p, cell);
                else if constexpr (std::is_same_v<T, FiniteCounting>) return finite_counting_of(p, cell);
                else return rule_counting_of(p, cell);
            },
            part);
    }
    return total;
}

bool ReferenceMeasure::in_support(double y) const {
    for (const auto& part : parts_) {
        if (auto* leb = std::get_if<LebesgueOnSupport>(&part)) {
            if (leb->support.contains(y)) return true;
        } else if (auto* fin = std::get_if<FiniteCounting>(&part)) {
            auto it = std::lower_bound(fin->atoms.begin(), fin->atoms.end(), y,
                                       [](const Atom& a, double x) { return a.location < x; });
            if (it != fin->atoms.end() && it->location == y) return true;
        } else if (rule_contains(std::get<RuleCounting>(part), y)) {
            return true;
        }
    }
    return false;
}

std::optional<Interval> ReferenceMeasure::support_hull() const {
    std::optional<Interval> hull;
    for (const auto& part : parts_) {
        auto h = hull_of(part);
        if (!h) continue;
        hull = hull ? hull_union(*hull, *h) : *h;
    }
    return hull;
}

ReferenceMeasure ReferenceMeasure::scaled(double c) const {
    check_factor(c);
    auto parts = parts_;
    for (auto& part : parts) {
        std::visit(
            [c](auto& p) {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, FiniteCounting>) {
                    for (auto& a : p.atoms) a.weight *= c;
                } else {
                    p.factor *= c;
                }
            },
            part);
    }
    return ReferenceMeasure(std::move(parts));
}

ReferenceMeasure sum_measure(const ReferenceMeasure& a, const ReferenceMeasure& b) {
    std::vector<MeasurePart> parts;
    for (const auto& p : a.parts_)
        if (!(std::holds_alternative<FiniteCounting>(p) && std::get<FiniteCounting>(p).atoms.empty()))
            parts.push_back(p);
    for (const auto& p : b.parts_)
        if (!(std::holds_alternative<FiniteCounting>(p) && std::get<FiniteCounting>(p).atoms.empty()))
            parts.push_back(p);
    if (parts.empty()) return ReferenceMeasure::zero();
    return ReferenceMeasure(std::move(parts));
}

}  // namespace ubm
