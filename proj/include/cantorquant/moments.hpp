#pragma once

#include "cantorquant/measure.hpp"

#include <vector>

namespace cq {

// Each coordinate of the whole measure has variance 1/8.
inline const Rational kAxisVariance{1, 8};

struct MomentSummary {
    Rational mass;
    Point centroid;
    Rational second_moment;  // about the centroid, integrated (not normalized)
};

// S_w(1/2, 1/2)
Point centroid(const PairWord& w);
Point tail_centroid(const PairWord& w, Tail tail);
Point centroid(const Region& r);

MomentSummary moments(const Region& r);

Point union_centroid(const std::vector<Region>& regions);

// Integral of |x - c|^2 over the region.
Rational single_center_distortion(const Region& r, const Point& c);
Rational union_distortion(const std::vector<Region>& regions, const Point& c);

}  // namespace cq
