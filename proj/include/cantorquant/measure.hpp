#pragma once

#include "cantorquant/rational.hpp"
#include "cantorquant/words.hpp"

#include <utility>
#include <vector>

namespace cq {

// x -> scale * x + offset
struct Map1D {
    Rational scale = 1;
    Rational offset = 0;

    Rational operator()(const Rational& x) const { return scale * x + offset; }
    // (this ∘ inner)(x) = this(inner(x))
    Map1D compose(const Map1D& inner) const { return {scale * inner.scale, scale * inner.offset + offset}; }
    bool operator==(const Map1D&) const = default;
};

struct Map2D {
    Map1D horizontal;
    Map1D vertical;

    Point operator()(const Point& p) const { return {horizontal(p.x), vertical(p.y)}; }
    bool operator==(const Map2D&) const = default;
};

// T_k(x) = 3^-k x + 1 - 3^(1-k)
Map1D map_T(std::uint32_t k);
// T_{w1} ∘ ... ∘ T_{wn}
Map1D map_T(const NatWord& w);
// U_1(x) = x/3, U_2(x) = x/3 + 2/3, composed left to right.
Map1D map_U(const BinaryWord& w);
Map2D map_S(const PairWord& w);

// 2^-(sum of all components); tails carry the same mass as their base word.
Rational prob(const PairWord& w);
// 3^-(sum of the chosen coordinate), axis 1 or 2.
Rational ratio(const PairWord& w, int axis);

// A(w) = U_w(1/2), the midpoint and Cantor-measure centroid of A_w.
Rational cantor_point(const BinaryWord& w);
// A_w = U_w[0,1]
std::pair<Rational, Rational> cell_interval(const BinaryWord& w);

bool conjugacy_check(const NatWord& w, const Rational& x);

// A basic rectangle J_w, a tail union w(tail), or a product of Cantor cells A_s x A_t.
class Region {
public:
    static Region rect(PairWord w, Tail tail = Tail::None);
    static Region cell(BinaryWord sigma, BinaryWord tau);

    bool is_cell() const { return is_cell_; }
    const PairWord& word() const { return word_; }
    Tail tail() const { return tail_; }
    const BinaryWord& sigma() const { return sigma_; }
    const BinaryWord& tau() const { return tau_; }

    const Rational& measure() const { return measure_; }
    const Rational& ratio_x() const { return ratio_x_; }
    const Rational& ratio_y() const { return ratio_y_; }

    // Partition of the region into finitely many regions of the same kind.
    std::vector<Region> children() const;

    std::string to_string() const;
    bool operator==(const Region& o) const {
        return is_cell_ == o.is_cell_ && word_ == o.word_ && tail_ == o.tail_ && sigma_ == o.sigma_ && tau_ == o.tau_;
    }

private:
    Region() = default;
    bool is_cell_ = false;
    PairWord word_;
    Tail tail_ = Tail::None;
    BinaryWord sigma_, tau_;
    Rational measure_, ratio_x_, ratio_y_;
};

// Word obtained by bumping the last symbol of w: (i+di, j+dj).
PairWord bump_last(const PairWord& w, std::uint32_t di, std::uint32_t dj);

}  // namespace cq
