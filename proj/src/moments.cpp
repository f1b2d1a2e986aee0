#include "cantorquant/moments.hpp"

namespace cq {

namespace {
const Point kHalf{Rational(1, 2), Rational(1, 2)};
}

Point centroid(const PairWord& w) { return map_S(w)(kHalf); }

Point tail_centroid(const PairWord& w, Tail tail) {
    if (w.empty()) throw DomainError("tail centroid needs a nonempty word");
    // The tail's centroid is the first sibling's centroid shifted by one
    // sibling width along each axis that runs to infinity.
    PairWord first;
    bool shift_x = false, shift_y = false;
    switch (tail) {
        case Tail::None: throw DomainError("tail centroid needs a tail marker");
        case Tail::First: first = bump_last(w, 1, 0); shift_x = true; break;
        case Tail::Second: first = bump_last(w, 0, 1); shift_y = true; break;
        case Tail::Both: first = bump_last(w, 1, 1); shift_x = shift_y = true; break;
    }
    Point c = centroid(first);
    if (shift_x) c.x += ratio(first, 1);
    if (shift_y) c.y += ratio(first, 2);
    return c;
}

Point centroid(const Region& r) {
    if (r.is_cell()) return {cantor_point(r.sigma()), cantor_point(r.tau())};
    if (r.tail() == Tail::None) return centroid(r.word());
    return tail_centroid(r.word(), r.tail());
}

MomentSummary moments(const Region& r) {
    const Rational& sx = r.ratio_x();
    const Rational& sy = r.ratio_y();
    return {r.measure(), centroid(r), r.measure() * (sx * sx + sy * sy) * kAxisVariance};
}

Point union_centroid(const std::vector<Region>& regions) {
    if (regions.empty()) throw DomainError("centroid of an empty union");
    Rational mass = 0;
    Point sum{0, 0};
    for (const auto& r : regions) {
        Point c = centroid(r);
        mass += r.measure();
        sum.x += r.measure() * c.x;
        sum.y += r.measure() * c.y;
    }
    if (mass <= 0) throw DomainError("centroid of a null union");
    return {sum.x / mass, sum.y / mass};
}

Rational single_center_distortion(const Region& r, const Point& c) {
    MomentSummary m = moments(r);
    return m.second_moment + m.mass * squared_distance(m.centroid, c);
}

Rational union_distortion(const std::vector<Region>& regions, const Point& c) {
    Rational total = 0;
    for (const auto& r : regions) total += single_center_distortion(r, c);
    return total;
}

}  // namespace cq
