#include "cantorquant/distortion.hpp"

#include "cantorquant/moments.hpp"

#include <doctest.h>

#include <set>

using namespace cq;

namespace {

Codebook book(std::initializer_list<std::pair<Rational, Rational>> pts) {
    std::vector<Point> v;
    for (const auto& [x, y] : pts) v.push_back({x, y});
    return Codebook(std::move(v));
}

const Rational r6(1, 6), r56(5, 6), r2(1, 2);

Codebook alpha4() { return book({{r6, r6}, {r56, r6}, {r6, r56}, {r56, r56}}); }
Codebook alpha2() { return book({{r6, r2}, {r56, r2}}); }
Codebook diagonal() { return book({{Rational(3, 10), Rational(7, 10)}, {Rational(7, 10), Rational(3, 10)}}); }

Rational tiny() { return Rational(BigInt(1), pow_int(10, 60)); }

// Brute force over every depth-d cell: each cell is charged about the
// codeword nearest its centroid. Equals the distortion when every depth-d
// cell lies in a single Voronoi region.
Rational cell_sum(const Codebook& cb, unsigned d) {
    std::vector<Rational> centers;
    for (std::uint32_t bits = 0; bits < (1u << d); ++bits) {
        BinaryWord w;
        for (unsigned k = d; k-- > 0;) w.symbols.push_back(((bits >> k) & 1) ? 2 : 1);
        centers.push_back(cantor_point(w));
    }
    Rational p = inv_pow2(2 * d), var = inv_pow3(2 * d) / 4;
    Rational total = 0;
    for (const auto& x : centers) {
        for (const auto& y : centers) {
            Point c{x, y};
            Rational best = squared_distance(c, cb[0]);
            for (const auto& a : cb.points()) best = std::min(best, squared_distance(c, a));
            total += p * (var + best);
        }
    }
    return total;
}

Codebook transform(const Codebook& cb, int which) {
    std::vector<Point> v;
    for (const auto& p : cb.points()) {
        switch (which) {
            case 0: v.push_back({p.y, p.x}); break;
            case 1: v.push_back({1 - p.x, p.y}); break;
            default: v.push_back({p.x, 1 - p.y}); break;
        }
    }
    return Codebook(std::move(v));
}

Codebook random_book(std::size_t n, std::uint64_t seed) {
    Lcg64 rng(seed);
    std::vector<Point> v;
    for (std::size_t k = 0; k < n; ++k) {
        Rational x = rng.uniform();
        v.push_back({x, rng.uniform()});
    }
    return Codebook(std::move(v));
}

}  // namespace

TEST_CASE("resolve_cell") {
    CHECK(resolve_cell(Region::cell(BinaryWord("1"), BinaryWord{}), alpha2()) == 0u);
    CHECK(resolve_cell(Region::cell(BinaryWord("2"), BinaryWord{}), alpha2()) == 1u);
    CHECK_FALSE(resolve_cell(Region::cell(BinaryWord{}, BinaryWord{}), alpha2()).has_value());
    Codebook single = book({{Rational(7), Rational(-3)}});
    CHECK(resolve_cell(Region::cell(BinaryWord("1212"), BinaryWord("22")), single) == 0u);
    CHECK(resolve_cell(Region::cell(BinaryWord{}, BinaryWord{}), single) == 0u);
    // A rectangle J_w is resolved through its binary cell.
    // [2/3,7/9] x [0,1/3] goes to (5/6, 1/6), third in sorted order.
    CHECK(resolve_cell(Region::rect(PairWord{{2, 1}}), alpha4()) == 2u);
    CHECK_THROWS_AS(resolve_cell(Region::rect(PairWord{{1, 1}}, Tail::First), alpha4()), DomainError);
    // Bisector x = 1/3 touches only the boundary of [0,1/3] x [0,1].
    Codebook touching = book({{Rational(0), r2}, {Rational(2, 3), r2}});
    CHECK(resolve_cell(Region::cell(BinaryWord("1"), BinaryWord{}), touching) == 0u);
    CHECK(resolve_cell(Region::cell(BinaryWord("2"), BinaryWord{}), touching) == 1u);
}

TEST_CASE("exact distortion of known codebooks") {
    CertifiedInterval iv = exact_distortion(alpha4());
    CHECK(iv.exact);
    CHECK(iv.lower == Rational(1, 36));
    CHECK(iv.upper == Rational(1, 36));
    iv = exact_distortion(alpha2());
    CHECK(iv.exact);
    CHECK(iv.lower == Rational(5, 36));
    iv = exact_distortion(book({{r6, r6}, {r56, r6}, {r2, r56}}));
    CHECK(iv.exact);
    CHECK(iv.lower == Rational(1, 12));
    iv = exact_distortion(book({{r2, r2}}));
    CHECK(iv.exact);
    CHECK(iv.lower == Rational(1, 4));
    CHECK_THROWS_AS(exact_distortion(alpha4(), default_tolerance(), 0), DomainError);
    CHECK_THROWS_AS(exact_distortion(Codebook{}), DomainError);
    CHECK_THROWS_AS(exact_distortion(alpha4(), Rational(0)), DomainError);
}

TEST_CASE("diagonal codebook: lower bound above 5/36 at depth 12") {
    CertifiedInterval iv = exact_distortion(diagonal(), default_tolerance(), 12);
    CHECK_FALSE(iv.exact);
    CHECK(iv.lower > Rational(5, 36));
    CHECK(iv.lower <= iv.upper);
}

TEST_CASE("engine agrees with the brute-force cell sum on resolved codebooks") {
    for (std::uint64_t n = 2; n <= 16; ++n) {
        for (const auto& k : sample_variant_indices(count_variants(n), 6)) {
            Codebook cb = optimal_codebook(variant_at(n, k));
            CertifiedInterval iv = exact_distortion(cb);
            REQUIRE(iv.exact);
            CHECK_MESSAGE(iv.lower == cell_sum(cb, 5), "n = " << n);
            CHECK(iv.lower == quantization_error(n));
        }
    }
}

TEST_CASE("intervals bracket the brute-force bounds and are nested") {
    for (std::uint64_t seed : {3u, 11u, 42u}) {
        Codebook cb = random_book(5, seed);
        std::optional<CertifiedInterval> prev;
        for (unsigned d = 1; d <= 8; ++d) {
            CertifiedInterval iv = exact_distortion(cb, tiny(), d);
            CHECK(iv.lower <= iv.upper);
            if (prev) {
                CHECK(iv.lower >= prev->lower);
                CHECK(iv.upper <= prev->upper);
            }
            prev = iv;
        }
        // The depth-6 centroid sum is an upper bound on the true value.
        CHECK(prev->lower <= cell_sum(cb, 6));
    }
}

TEST_CASE("distortion is invariant under the symmetries of the square") {
    std::vector<Codebook> books = {optimal_codebook(7), optimal_codebook(variant_at(13, 77)), random_book(4, 9),
                                   diagonal()};
    for (const auto& cb : books) {
        CertifiedInterval base = exact_distortion(cb, tiny(), 7);
        for (int t = 0; t < 3; ++t) {
            CertifiedInterval iv = exact_distortion(transform(cb, t), tiny(), 7);
            CHECK(iv.lower == base.lower);
            CHECK(iv.upper == base.upper);
            CHECK(iv.exact == base.exact);
        }
    }
}

TEST_CASE("distortion splits over the four level-1 squares") {
    for (std::uint64_t n = 5; n <= 40; ++n) {
        Codebook cb = optimal_codebook(n);
        std::array<std::uint64_t, 4> counts{0, 0, 0, 0};
        for (const auto& p : cb.points()) counts[2 * (p.x > r2) + (p.y > r2)]++;
        Rational sum = 0;
        for (auto c : counts) sum += quantization_error(c) / 36;
        CHECK_MESSAGE(sum == exact_distortion(cb).lower, "n = " << n);
    }
}

TEST_CASE("lloyd_step fixed points and updates") {
    CHECK(lloyd_step(alpha4(), 3) == alpha4());
    CHECK(lloyd_step(alpha2(), 1) == alpha2());
    Codebook moved = book({{r6 + Rational(1, 150), r6 - Rational(1, 200)},
                           {r56 - Rational(1, 120), r6},
                           {r6, r56 + Rational(1, 101)},
                           {r56 + Rational(1, 300), r56 - Rational(1, 400)}});
    CHECK(lloyd_step(moved, 2) == alpha4());
    CHECK_THROWS_AS(lloyd_step(diagonal(), 4), ResolutionError);
    try {
        lloyd_step(diagonal(), 3);
    } catch (const ResolutionError& e) {
        CHECK(e.count > 0);
        CHECK_FALSE(e.cells.empty());
        CHECK(e.cells.front().rfind("A(", 0) == 0);
    }
    Codebook far = book({{r6, r2}, {r56, r2}, {Rational(9), Rational(9)}});
    try {
        lloyd_step(far, 2);
        FAIL("expected an empty region");
    } catch (const EmptyRegionError& e) {
        CHECK(e.indices == std::vector<std::size_t>{2});
    }
}

TEST_CASE("lloyd iteration") {
    LloydResult r = lloyd(optimal_codebook(5), 6, 10);
    CHECK(r.converged);
    CHECK(r.codebook == optimal_codebook(5));
    CHECK(r.distortion.exact);
    CHECK(r.distortion.lower == Rational(2, 81));

    r = lloyd(book({{r2, r2}}), 1, 5);
    CHECK(r.converged);
    CHECK(r.distortion.lower == Rational(1, 4));

    // Random start with one point in the middle ninth of each level-1 square.
    Lcg64 rng(2024);
    std::vector<Point> pts;
    for (Rational cx : {r6, r56})
        for (Rational cy : {r6, r56}) {
            Rational dx = (rng.uniform() - r2) / 9, dy = (rng.uniform() - r2) / 9;
            pts.push_back({cx + dx, cy + dy});
        }
    r = lloyd(Codebook(pts), 8, 20);
    CHECK(r.converged);
    CHECK(r.codebook == alpha4());
    CHECK(r.distortion.lower == Rational(1, 36));
}

TEST_CASE("lloyd never increases the upper bound") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Lcg64 rng(seed);
        std::vector<Point> pts;
        for (Rational cx : {r6, r56})
            for (Rational cy : {r6, r56}) pts.push_back({cx + (rng.uniform() - r2) / 4, cy + (rng.uniform() - r2) / 4});
        Codebook cb(pts);
        Rational prev_upper = exact_distortion(cb, default_tolerance(), 10).upper;
        for (int it = 0; it < 5; ++it) {
            Codebook next = cb;
            try {
                next = lloyd_step(cb, 10);
            } catch (const ResolutionError&) {
                break;
            }
            Rational upper = exact_distortion(next, default_tolerance(), 10).upper;
            CHECK(upper <= prev_upper);
            prev_upper = upper;
            cb = next;
        }
    }
}

TEST_CASE("assign_cells lists the resolution leaves") {
    auto leaves = assign_cells(alpha2(), 4);
    CHECK(leaves.size() == 4);
    Rational mass = 0;
    for (const auto& l : leaves) {
        REQUIRE(l.owner.has_value());
        mass += l.cell.measure();
        CHECK(*l.owner == (cantor_point(l.cell.sigma()) < r2 ? 0u : 1u));
    }
    CHECK(mass == 1);
    auto diag = assign_cells(diagonal(), 2);
    std::size_t unresolved = 0;
    for (const auto& l : diag) unresolved += !l.owner;
    CHECK(unresolved > 0);
}

TEST_CASE("multistart") {
    MultistartResult r = multistart_search(1, 3, 5, 4);
    REQUIRE(r.best);
    CHECK(r.best_distortion.lower == Rational(1, 4));

    r = multistart_search(4, 12, 1, 12);
    REQUIRE(r.best);
    CHECK(*r.best == alpha4());
    CHECK(r.best_distortion.exact);
    CHECK(r.best_distortion.upper == Rational(1, 36));
    CHECK(r.completed + r.aborted == 12);
    CHECK(r.runs.size() == 12);

    MultistartResult again = multistart_search(4, 12, 1, 12);
    CHECK(again.completed == r.completed);
    for (std::size_t k = 0; k < r.runs.size(); ++k) CHECK(again.runs[k].codebook == r.runs[k].codebook);
}

TEST_CASE("Lcg64 is the documented generator") {
    Lcg64 rng(1);
    // state = 1 * a + c
    std::uint64_t s = 6364136223846793005ULL + 1442695040888963407ULL;
    CHECK(rng.next() == static_cast<std::uint32_t>(s >> 32));
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    CHECK(rng.next() == static_cast<std::uint32_t>(s >> 32));
}
