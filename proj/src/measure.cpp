#include "cantorquant/measure.hpp"

namespace cq {

Map1D map_T(std::uint32_t k) {
    if (k < 1) throw DomainError("T_k needs k >= 1");
    return {inv_pow3(k), Rational(1) - inv_pow3(k - 1)};
}

Map1D map_T(const NatWord& w) {
    Map1D m;
    for (auto k : w.symbols) m = m.compose(map_T(k));
    return m;
}

Map1D map_U(const BinaryWord& w) {
    // Composition U_{w1} ∘ ... ∘ U_{wn}(x) = 3^-n x + sum_k (w_k - 1) 2 3^-k.
    BigInt num = 0;
    for (auto s : w.symbols) num = num * 3 + (s == 2 ? 2 : 0);
    Rational scale = inv_pow3(w.size());
    Rational offset = Rational(num) * scale;
    offset.canonicalize();
    return {scale, offset};
}

Map2D map_S(const PairWord& w) {
    auto [a, b] = components(w);
    return {map_T(a), map_T(b)};
}

Rational prob(const PairWord& w) {
    auto [a, b] = components(w);
    return inv_pow2(a.symbol_sum() + b.symbol_sum());
}

Rational ratio(const PairWord& w, int axis) {
    if (axis != 1 && axis != 2) throw DomainError("axis must be 1 or 2");
    auto [a, b] = components(w);
    return inv_pow3(axis == 1 ? a.symbol_sum() : b.symbol_sum());
}

Rational cantor_point(const BinaryWord& w) { return map_U(w)(Rational(1, 2)); }

std::pair<Rational, Rational> cell_interval(const BinaryWord& w) {
    Map1D m = map_U(w);
    return {m.offset, m.offset + m.scale};
}

bool conjugacy_check(const NatWord& w, const Rational& x) { return map_T(w)(x) == map_U(F_map(w))(x); }

Region Region::rect(PairWord w, Tail tail) {
    if (tail != Tail::None && w.empty()) throw DomainError("tail union needs a nonempty word");
    Region r;
    r.word_ = std::move(w);
    r.tail_ = tail;
    r.measure_ = prob(r.word_);
    r.ratio_x_ = ratio(r.word_, 1);
    r.ratio_y_ = ratio(r.word_, 2);
    return r;
}

Region Region::cell(BinaryWord sigma, BinaryWord tau) {
    Region r;
    r.is_cell_ = true;
    r.measure_ = inv_pow2(sigma.size() + tau.size());
    r.ratio_x_ = inv_pow3(sigma.size());
    r.ratio_y_ = inv_pow3(tau.size());
    r.sigma_ = std::move(sigma);
    r.tau_ = std::move(tau);
    return r;
}

PairWord bump_last(const PairWord& w, std::uint32_t di, std::uint32_t dj) {
    if (w.empty()) throw DomainError("bump of the empty word");
    PairWord r = w;
    r.symbols.back().i += di;
    r.symbols.back().j += dj;
    return r;
}

std::vector<Region> Region::children() const {
    if (is_cell_) {
        return {cell(sigma_.append(1), tau_.append(1)), cell(sigma_.append(1), tau_.append(2)),
                cell(sigma_.append(2), tau_.append(1)), cell(sigma_.append(2), tau_.append(2))};
    }
    switch (tail_) {
        case Tail::None: {
            PairWord c = word_.append({1, 1});
            return {rect(c), rect(c, Tail::First), rect(c, Tail::Second), rect(c, Tail::Both)};
        }
        case Tail::First: {
            PairWord c = bump_last(word_, 1, 0);
            return {rect(c), rect(c, Tail::First)};
        }
        case Tail::Second: {
            PairWord c = bump_last(word_, 0, 1);
            return {rect(c), rect(c, Tail::Second)};
        }
        case Tail::Both: {
            PairWord c = bump_last(word_, 1, 1);
            return {rect(c), rect(c, Tail::First), rect(c, Tail::Second), rect(c, Tail::Both)};
        }
    }
    return {};
}

std::string Region::to_string() const {
    if (is_cell_) return "A(" + cq::to_string(sigma_) + "," + cq::to_string(tau_) + ")";
    return "J" + cq::to_string(word_, tail_);
}

}  // namespace cq
