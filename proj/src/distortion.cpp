#include "cantorquant/distortion.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace cq {

ResolutionError::ResolutionError(std::size_t n, std::vector<std::string> sample)
    : std::runtime_error([&] {
          std::string msg = std::to_string(n) + " unresolved cell(s):";
          for (const auto& c : sample) msg += " " + c;
          if (n > sample.size()) msg += " ...";
          return msg;
      }()),
      count(n),
      cells(std::move(sample)) {}

EmptyRegionError::EmptyRegionError(std::vector<std::size_t> idx)
    : std::runtime_error([&] {
          std::string msg = "empty Voronoi region for codeword(s):";
          for (auto k : idx) msg += " " + std::to_string(k);
          return msg;
      }()),
      indices(std::move(idx)) {}

Rational default_tolerance() { return Rational(BigInt(1), pow_int(10, 12)); }

namespace {

using u128 = unsigned __int128;

BigInt to_big(u128 v) {
    BigInt r(static_cast<unsigned long>(v >> 64));
    r <<= 64;
    r += static_cast<unsigned long>(v & ~std::uint64_t{0});
    return r;
}

const BigInt& pow3(unsigned k) {
    static const std::vector<BigInt> table = [] {
        std::vector<BigInt> t;
        for (unsigned i = 0; i <= 2 * kMaxDepthLimit + 2; ++i) t.push_back(pow_int(3, i));
        return t;
    }();
    return table.at(k);
}

double inv3d(unsigned k) {
    static const std::vector<double> table = [] {
        std::vector<double> t;
        for (unsigned i = 0; i <= kMaxDepthLimit; ++i) t.push_back(std::pow(3.0, -static_cast<double>(i)));
        return t;
    }();
    return table.at(k);
}

// Product of two Cantor-tree intervals:
// [xnum, xnum+1] / 3^dx  x  [ynum, ynum+1] / 3^dy.
struct Rect {
    u128 xnum = 0, ynum = 0;
    unsigned dx = 0, dy = 0;

    double x0() const { return static_cast<double>(xnum) * inv3d(dx); }
    double x1() const { return static_cast<double>(xnum + 1) * inv3d(dx); }
    double y0() const { return static_cast<double>(ynum) * inv3d(dy); }
    double y1() const { return static_cast<double>(ynum + 1) * inv3d(dy); }
    double cx() const { return (static_cast<double>(xnum) + 0.5) * inv3d(dx); }
    double cy() const { return (static_cast<double>(ynum) + 0.5) * inv3d(dy); }

    Rational ex(int offset) const { return canon(Rational(to_big(xnum) + offset, pow3(dx))); }
    Rational ey(int offset) const { return canon(Rational(to_big(ynum) + offset, pow3(dy))); }
    Rational ecx() const { return canon(Rational(2 * to_big(xnum) + 1, 2 * pow3(dx))); }
    Rational ecy() const { return canon(Rational(2 * to_big(ynum) + 1, 2 * pow3(dy))); }

    static Rational canon(Rational q) {
        q.canonicalize();
        return q;
    }
};

BinaryWord ternary_word(u128 num, unsigned depth) {
    BinaryWord w;
    w.symbols.resize(depth);
    for (unsigned k = depth; k-- > 0;) {
        w.symbols[k] = (num % 3 == 2) ? 2 : 1;
        num /= 3;
    }
    return w;
}

Region rect_region(const Rect& r) { return Region::cell(ternary_word(r.xnum, r.dx), ternary_word(r.ynum, r.dy)); }

// Numerator over 3^|w| of the left endpoint of A_w.
u128 left_numerator(const BinaryWord& w) {
    u128 v = 0;
    for (auto s : w.symbols) v = v * 3 + (s == 2 ? 2 : 0);
    return v;
}

struct Site {
    double x, y, ax, ay, norm2;
    Rational ex, ey;
};

class Geometry {
public:
    explicit Geometry(const Codebook& cb) {
        for (const auto& p : cb.points()) {
            Site s;
            s.ex = p.x;
            s.ey = p.y;
            s.x = p.x.get_d();
            s.y = p.y.get_d();
            s.ax = std::fabs(s.x);
            s.ay = std::fabs(s.y);
            s.norm2 = s.x * s.x + s.y * s.y;
            sites.push_back(std::move(s));
        }
    }

    std::vector<Site> sites;

    static double sq(double v) { return v * v; }

    double min_d2(const Rect& r, const Site& s) const {
        double dx = std::max({r.x0() - s.x, 0.0, s.x - r.x1()});
        double dy = std::max({r.y0() - s.y, 0.0, s.y - r.y1()});
        return dx * dx + dy * dy;
    }
    double max_d2(const Rect& r, const Site& s) const {
        return std::max(sq(r.x0() - s.x), sq(r.x1() - s.x)) + std::max(sq(r.y0() - s.y), sq(r.y1() - s.y));
    }

    // Codewords that can be nearest somewhere in r. Conservative: keeps a
    // codeword unless it is clearly beaten everywhere in r.
    std::vector<std::uint32_t> prune(const Rect& r, const std::vector<std::uint32_t>& cands) const {
        if (cands.size() <= 1) return cands;
        double best_max = std::numeric_limits<double>::infinity();
        for (auto k : cands) best_max = std::min(best_max, max_d2(r, sites[k]));
        double limit = best_max * (1 + 1e-9) + 1e-300;
        std::vector<std::uint32_t> out;
        out.reserve(cands.size());
        for (auto k : cands)
            if (min_d2(r, sites[k]) <= limit) out.push_back(k);
        return out;
    }

    // |x - b|^2 - |x - a|^2 >= 0 at all corners of r.
    bool dominates(const Rect& r, const Site& a, const Site& b) const {
        const double xs[2] = {r.x0(), r.x1()}, ys[2] = {r.y0(), r.y1()};
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                double x = xs[i], y = ys[j];
                double g = 2 * (x * (a.x - b.x) + y * (a.y - b.y)) + (b.norm2 - a.norm2);
                double err = 1e-13 * (std::fabs(x) * (a.ax + b.ax) + std::fabs(y) * (a.ay + b.ay) + a.norm2 + b.norm2) +
                             1e-300;
                if (g > err) continue;
                if (g < -err) return false;
                Rational ex = r.ex(i), ey = r.ey(j);
                Rational eg = 2 * (ex * (a.ex - b.ex) + ey * (a.ey - b.ey)) + (b.ex * b.ex + b.ey * b.ey) -
                              (a.ex * a.ex + a.ey * a.ey);
                if (eg < 0) return false;
            }
        }
        return true;
    }

    std::optional<std::uint32_t> owner(const Rect& r, const std::vector<std::uint32_t>& cands) const {
        if (cands.size() == 1) return cands[0];
        double cx = r.cx(), cy = r.cy();
        std::size_t first = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < cands.size(); ++i) {
            const Site& s = sites[cands[i]];
            double d = sq(cx - s.x) + sq(cy - s.y);
            if (d < best) {
                best = d;
                first = i;
            }
        }
        auto try_owner = [&](std::size_t i) {
            for (std::size_t j = 0; j < cands.size(); ++j)
                if (j != i && !dominates(r, sites[cands[i]], sites[cands[j]])) return false;
            return true;
        };
        if (try_owner(first)) return cands[first];
        for (std::size_t i = 0; i < cands.size(); ++i)
            if (i != first && try_owner(i)) return cands[i];
        return std::nullopt;
    }

    Rational exact_min_d2(const Rect& r, const std::vector<std::uint32_t>& cands) const {
        Rational x0 = r.ex(0), x1 = r.ex(1), y0 = r.ey(0), y1 = r.ey(1);
        std::optional<Rational> best;
        for (auto k : cands) {
            const Site& s = sites[k];
            Rational dx = 0, dy = 0;
            if (s.ex < x0) dx = x0 - s.ex;
            else if (s.ex > x1) dx = s.ex - x1;
            if (s.ey < y0) dy = y0 - s.ey;
            else if (s.ey > y1) dy = s.ey - y1;
            Rational d = dx * dx + dy * dy;
            if (!best || d < *best) best = d;
        }
        return *best;
    }

    Rational exact_centroid_d2(const Rect& r, const std::vector<std::uint32_t>& cands) const {
        Point c{r.ecx(), r.ecy()};
        std::optional<Rational> best;
        for (auto k : cands) {
            Rational d = squared_distance(c, {sites[k].ex, sites[k].ey});
            if (!best || d < *best) best = d;
        }
        return *best;
    }
};

struct Pending {
    Rect rect;
    std::vector<std::uint32_t> cands;
};

// Integer sums over resolved cells of one level, per owner.
struct LevelSums {
    BigInt count, sx, sy, sq;
    bool touched = false;
};

// Exact moments of each owner's resolved cells.
struct OwnerMoments {
    Rational mass, mx, my, m2;  // m2 = integral of |x|^2
};

enum class Mode { Distortion, Lloyd, Assign };

struct WalkResult {
    std::vector<OwnerMoments> owners;
    std::vector<Pending> pending;  // unresolved at the final level
    unsigned final_depth = 0;
    std::optional<CertifiedInterval> interval;  // Distortion mode
    std::vector<CellAssignment> leaves;         // Assign mode
};

class Walker {
public:
    Walker(const Codebook& cb, Mode mode) : cb_(cb), geo_(cb), mode_(mode) {}

    WalkResult run(unsigned max_depth, const Rational* tolerance) {
        WalkResult res;
        res.owners.resize(cb_.size());
        std::vector<std::uint32_t> all(cb_.size());
        for (std::uint32_t k = 0; k < all.size(); ++k) all[k] = k;
        std::vector<Pending> current{{Rect{}, all}};

        for (unsigned d = 0;; ++d) {
            std::vector<LevelSums> sums(cb_.size());
            std::vector<Pending> unresolved;
            for (auto& cell : current) {
                auto cands = geo_.prune(cell.rect, cell.cands);
                auto own = geo_.owner(cell.rect, cands);
                if (own) {
                    LevelSums& s = sums[*own];
                    BigInt px = 2 * to_big(cell.rect.xnum) + 1, py = 2 * to_big(cell.rect.ynum) + 1;
                    s.count += 1;
                    s.sx += px;
                    s.sy += py;
                    s.sq += px * px + py * py;
                    s.touched = true;
                    if (mode_ == Mode::Assign) res.leaves.push_back({rect_region(cell.rect), *own});
                } else {
                    unresolved.push_back({cell.rect, std::move(cands)});
                }
            }
            fold(sums, d, res.owners);
            res.final_depth = d;

            if (unresolved.empty()) {
                if (mode_ == Mode::Distortion) res.interval = finish(res.owners, {}, d);
                return res;
            }
            if (d >= max_depth) {
                if (mode_ == Mode::Distortion) res.interval = finish(res.owners, unresolved, d);
                if (mode_ == Mode::Assign)
                    for (const auto& p : unresolved) res.leaves.push_back({rect_region(p.rect), std::nullopt});
                res.pending = std::move(unresolved);
                return res;
            }
            if (mode_ == Mode::Distortion && tolerance && gap_estimate(unresolved, d) <= 4 * tolerance->get_d()) {
                CertifiedInterval iv = finish(res.owners, unresolved, d);
                if (iv.upper - iv.lower <= *tolerance) {
                    res.interval = iv;
                    res.pending = std::move(unresolved);
                    return res;
                }
            }

            current.clear();
            current.reserve(unresolved.size() * 4);
            for (auto& p : unresolved) {
                for (unsigned a = 0; a < 2; ++a) {
                    for (unsigned b = 0; b < 2; ++b) {
                        Rect c{p.rect.xnum * 3 + 2 * a, p.rect.ynum * 3 + 2 * b, d + 1, d + 1};
                        current.push_back({c, p.cands});
                    }
                }
            }
        }
    }

private:
    void fold(const std::vector<LevelSums>& sums, unsigned d, std::vector<OwnerMoments>& owners) const {
        // Cell of level d with left numerators (x, y): mass 4^-d, centroid
        // ((2x+1), (2y+1)) / (2 3^d), second moment about centroid 4^-d 9^-d / 4.
        BigInt p4 = pow_int(4, d), p3 = pow3(d), p36 = pow_int(36, d);
        for (std::size_t k = 0; k < sums.size(); ++k) {
            const LevelSums& s = sums[k];
            if (!s.touched) continue;
            OwnerMoments& o = owners[k];
            o.mass += Rational(s.count, p4);
            o.mx += Rational(s.sx, 2 * p3 * p4);
            o.my += Rational(s.sy, 2 * p3 * p4);
            o.m2 += Rational(s.sq + s.count, 4 * p36);
            o.mass.canonicalize();
            o.mx.canonicalize();
            o.my.canonicalize();
            o.m2.canonicalize();
        }
    }

    Rational resolved_total(const std::vector<OwnerMoments>& owners) const {
        Rational total = 0;
        for (std::size_t k = 0; k < owners.size(); ++k) {
            const OwnerMoments& o = owners[k];
            if (o.mass == 0) continue;
            const Point& a = cb_[k];
            total += o.m2 - 2 * (a.x * o.mx + a.y * o.my) + (a.x * a.x + a.y * a.y) * o.mass;
        }
        return total;
    }

    double gap_estimate(const std::vector<Pending>& cells, unsigned d) const {
        double p = std::pow(0.25, d), var = 0.25 * inv3d(d) * inv3d(d);
        double gap = 0;
        for (const auto& c : cells) {
            double dmin = std::numeric_limits<double>::infinity(), dcen = dmin;
            for (auto k : c.cands) {
                const Site& s = geo_.sites[k];
                dmin = std::min(dmin, geo_.min_d2(c.rect, s));
                dcen = std::min(dcen, Geometry::sq(c.rect.cx() - s.x) + Geometry::sq(c.rect.cy() - s.y));
            }
            gap += p * (var + dcen - dmin);
        }
        return gap;
    }

    CertifiedInterval finish(const std::vector<OwnerMoments>& owners, const std::vector<Pending>& cells,
                             unsigned d) const {
        Rational base = resolved_total(owners);
        CertifiedInterval iv;
        iv.depth_reached = d;
        if (cells.empty()) {
            iv.lower = iv.upper = base;
            iv.exact = true;
            return iv;
        }
        Rational lo = 0, hi = 0;
        for (const auto& c : cells) {
            lo += geo_.exact_min_d2(c.rect, c.cands);
            hi += geo_.exact_centroid_d2(c.rect, c.cands);
        }
        Rational p(BigInt(1), pow_int(4, d));
        Rational var(BigInt(1), 4 * pow_int(9, d));
        iv.lower = base + p * lo;
        iv.upper = base + p * (hi + var * static_cast<unsigned long>(cells.size()));
        iv.exact = false;
        return iv;
    }

    const Codebook& cb_;
    Geometry geo_;
    Mode mode_;
};

void check_depth(unsigned depth) {
    if (depth > kMaxDepthLimit)
        throw DomainError("depth " + std::to_string(depth) + " exceeds the supported limit " +
                          std::to_string(kMaxDepthLimit));
}

}  // namespace

std::optional<std::size_t> resolve_cell(const Region& cell, const Codebook& codebook) {
    if (codebook.empty()) throw DomainError("resolve_cell needs a nonempty codebook");
    Rect r;
    if (cell.is_cell()) {
        r = {left_numerator(cell.sigma()), left_numerator(cell.tau()), static_cast<unsigned>(cell.sigma().size()),
             static_cast<unsigned>(cell.tau().size())};
    } else {
        if (cell.tail() != Tail::None) throw DomainError("resolve_cell does not accept tail unions");
        auto [a, b] = components(cell.word());
        BinaryWord s = F_map(a), t = F_map(b);
        r = {left_numerator(s), left_numerator(t), static_cast<unsigned>(s.size()), static_cast<unsigned>(t.size())};
    }
    if (r.dx > kMaxDepthLimit || r.dy > kMaxDepthLimit) throw DomainError("cell is deeper than the supported limit");
    Geometry geo(codebook);
    std::vector<std::uint32_t> all(codebook.size());
    for (std::uint32_t k = 0; k < all.size(); ++k) all[k] = k;
    auto own = geo.owner(r, geo.prune(r, all));
    if (!own) return std::nullopt;
    return *own;
}

CertifiedInterval exact_distortion(const Codebook& codebook, const Rational& tolerance, unsigned max_depth) {
    if (codebook.empty()) throw DomainError("distortion of an empty codebook");
    if (max_depth < 1) throw DomainError("max_depth must be >= 1");
    if (tolerance <= 0) throw DomainError("tolerance must be positive");
    check_depth(max_depth);
    Walker w(codebook, Mode::Distortion);
    return *w.run(max_depth, &tolerance).interval;
}

std::vector<CellAssignment> assign_cells(const Codebook& codebook, unsigned depth) {
    if (codebook.empty()) throw DomainError("assign_cells needs a nonempty codebook");
    check_depth(depth);
    Walker w(codebook, Mode::Assign);
    return w.run(depth, nullptr).leaves;
}

Codebook lloyd_step(const Codebook& codebook, unsigned depth) {
    if (codebook.empty()) throw DomainError("lloyd_step needs a nonempty codebook");
    check_depth(depth);
    Walker w(codebook, Mode::Lloyd);
    WalkResult res = w.run(depth, nullptr);
    if (!res.pending.empty()) {
        std::vector<std::string> names;
        for (std::size_t k = 0; k < res.pending.size() && k < 5; ++k)
            names.push_back(rect_region(res.pending[k].rect).to_string());
        throw ResolutionError(res.pending.size(), std::move(names));
    }
    std::vector<std::size_t> empty;
    std::vector<Point> next;
    for (std::size_t k = 0; k < res.owners.size(); ++k) {
        const OwnerMoments& o = res.owners[k];
        if (o.mass == 0) {
            empty.push_back(k);
            continue;
        }
        next.push_back({o.mx / o.mass, o.my / o.mass});
    }
    if (!empty.empty()) throw EmptyRegionError(std::move(empty));
    return Codebook(std::move(next));
}

LloydResult lloyd(const Codebook& codebook, unsigned depth, unsigned max_iters) {
    LloydResult r;
    r.codebook = codebook;
    while (r.iterations < max_iters) {
        Codebook next = lloyd_step(r.codebook, depth);
        ++r.iterations;
        if (next == r.codebook) {
            r.converged = true;
            break;
        }
        r.codebook = std::move(next);
    }
    r.distortion = exact_distortion(r.codebook, default_tolerance(), std::max(depth, 1u));
    return r;
}

namespace {

// Nearest codeword for an atom, ties to the lowest index.
std::size_t nearest(const std::vector<std::array<double, 2>>& pts, double x, double y) {
    std::size_t best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < pts.size(); ++k) {
        double d = (x - pts[k][0]) * (x - pts[k][0]) + (y - pts[k][1]) * (y - pts[k][1]);
        if (d < bd) {
            bd = d;
            best = k;
        }
    }
    return best;
}

// Relaxed Lloyd on equal-mass atoms at the centroids of the level-w cells.
// Atom coordinates are numerators over `denom`. The last pass is exact, so a
// partition that matches the true Voronoi partition yields the true centroids
// rather than a rounded neighbour of them.
std::vector<Point> warmup(std::vector<std::array<double, 2>> pts, const std::vector<std::int64_t>& axis,
                          std::int64_t denom) {
    const std::size_t m = axis.size(), n = pts.size();
    const double scale = static_cast<double>(denom);
    for (int iter = 0; iter < 1000; ++iter) {
        std::vector<std::array<double, 2>> sum(n, {0.0, 0.0});
        std::vector<std::size_t> cnt(n, 0);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                double x = static_cast<double>(axis[i]) / scale, y = static_cast<double>(axis[j]) / scale;
                std::size_t best = nearest(pts, x, y);
                sum[best][0] += x;
                sum[best][1] += y;
                ++cnt[best];
            }
        }
        bool moved = false;
        for (std::size_t k = 0; k < n; ++k) {
            if (!cnt[k]) continue;
            std::array<double, 2> c{sum[k][0] / static_cast<double>(cnt[k]), sum[k][1] / static_cast<double>(cnt[k])};
            if (c != pts[k]) moved = true;
            pts[k] = c;
        }
        if (!moved) break;
    }

    std::vector<std::array<std::int64_t, 2>> sum(n, {0, 0});
    std::vector<std::int64_t> cnt(n, 0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            std::size_t best =
                nearest(pts, static_cast<double>(axis[i]) / scale, static_cast<double>(axis[j]) / scale);
            sum[best][0] += axis[i];
            sum[best][1] += axis[j];
            ++cnt[best];
        }
    }
    std::vector<Point> out;
    for (std::size_t k = 0; k < n; ++k) {
        if (!cnt[k]) {
            out.push_back({Rational(pts[k][0]), Rational(pts[k][1])});
            continue;
        }
        Rational x(BigInt(static_cast<long>(sum[k][0])), BigInt(static_cast<long>(cnt[k] * denom)));
        Rational y(BigInt(static_cast<long>(sum[k][1])), BigInt(static_cast<long>(cnt[k] * denom)));
        x.canonicalize();
        y.canonicalize();
        out.push_back({x, y});
    }
    return out;
}

}  // namespace

MultistartResult multistart_search(std::uint64_t n, unsigned seeds, std::uint64_t rng_seed, unsigned depth,
                                   const MultistartOptions& options) {
    if (n < 1) throw DomainError("multistart needs n >= 1");
    if (seeds < 1) throw DomainError("multistart needs at least one seed");
    check_depth(depth + options.depth_slack);
    if (options.warmup_depth < 1 || options.warmup_depth > 12) throw DomainError("warm-up depth must be in 1..12");

    // Cell centroids of the warm-up level as numerators over 2 * 3^w.
    const Rational denom_q = 2 * pow_int(3, options.warmup_depth);
    const std::int64_t denom = denom_q.get_num().get_si();
    std::vector<std::int64_t> axis;
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << options.warmup_depth); ++k) {
        BinaryWord w;
        for (unsigned b = options.warmup_depth; b-- > 0;) w.symbols.push_back(((k >> b) & 1) ? 2 : 1);
        Rational num = cantor_point(w) * denom_q;
        axis.push_back(num.get_num().get_si());
    }

    MultistartResult result;
    Lcg64 rng(rng_seed);
    for (unsigned run = 0; run < seeds; ++run) {
        std::vector<std::array<double, 2>> start(n);
        for (auto& p : start) {
            p[0] = rng.uniform().get_d();
            p[1] = rng.uniform().get_d();
        }
        std::vector<Point> relaxed = warmup(std::move(start), axis, denom);

        RunOutcome out;
        try {
            Codebook cb(std::move(relaxed));
            for (unsigned d = std::max(depth, 1u);; ++d) {
                try {
                    LloydResult lr = lloyd(cb, d, options.max_iters);
                    out.codebook = lr.codebook;
                    out.distortion = lr.distortion;
                    out.status = lr.converged ? RunStatus::Converged : RunStatus::MaxIters;
                    out.depth_used = d;
                    break;
                } catch (const ResolutionError&) {
                    if (d >= depth + options.depth_slack) throw;
                }
            }
        } catch (const std::exception&) {
            out = RunOutcome{};
        }

        if (out.status == RunStatus::Aborted) {
            ++result.aborted;
        } else {
            ++result.completed;
            if (!result.best || out.distortion.upper < result.best_distortion.upper) {
                result.best = out.codebook;
                result.best_distortion = out.distortion;
            }
        }
        result.runs.push_back(std::move(out));
    }
    return result;
}

}  // namespace cq
