#pragma once

#include "cantorquant/rational.hpp"
#include "cantorquant/words.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace cq {

// Finite set of points kept in lexicographic (x, y) order.
class Codebook {
public:
    Codebook() = default;
    // Sorts the points; throws DomainError on duplicates.
    explicit Codebook(std::vector<Point> points);

    const std::vector<Point>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    const Point& operator[](std::size_t k) const { return points_[k]; }

    bool operator==(const Codebook&) const = default;

private:
    std::vector<Point> points_;
};

enum class Regime { Power, Low, High };

struct Level {
    unsigned ell = 0;
    Regime regime = Regime::Power;
    bool operator==(const Level&) const = default;
};

// Largest n accepted by the codebook constructions (4^11).
inline constexpr std::uint64_t kMaxConstructibleN = std::uint64_t{1} << 22;

Level level(std::uint64_t n);
const char* regime_name(Regime r);
Rational quantization_error(std::uint64_t n);
BigInt count_variants(std::uint64_t n);

// Cells of level ell are indexed 0..4^ell-1 in lexicographic order of (sigma, tau).
std::pair<BinaryWord, BinaryWord> level_cell(unsigned ell, std::uint64_t index);

// Per-cell patterns. Two-point cells: 0 splits along x, 1 along y.
// Three-point cells (the pair sits on one side of the cell):
//   0 right  {(s1,t), (s2,t1), (s2,t2)}
//   1 left   {(s1,t1), (s1,t2), (s2,t)}
//   2 bottom {(s1,t1), (s2,t1), (s,t2)}
//   3 top    {(s,t1), (s1,t2), (s2,t2)}
struct VariantSpec {
    std::uint64_t n = 0;
    Level lvl;
    // Ascending cell indices. LOW: cells holding two points. HIGH with
    // n <= 3*4^ell: cells holding three points. HIGH with n > 3*4^ell:
    // cells holding four points (all others hold three).
    std::vector<std::uint64_t> split_cells;
    // LOW: one entry per split cell. HIGH: one entry per level cell.
    std::vector<std::uint8_t> choices;

    std::vector<std::pair<BinaryWord, BinaryWord>> split_addresses() const;
    bool operator==(const VariantSpec&) const = default;
};

// Number of options for entry `pos` of spec.choices.
unsigned choice_arity(const VariantSpec& spec, std::size_t pos);
void validate(const VariantSpec& spec);

VariantSpec variant_at(std::uint64_t n, const BigInt& index);
VariantSpec default_variant(std::uint64_t n);

Codebook optimal_codebook(const VariantSpec& spec);
Codebook optimal_codebook(std::uint64_t n);

// All of 0..count-1 when count <= cap, else `cap` evenly spaced indices
// including the first and the last.
std::vector<BigInt> sample_variant_indices(const BigInt& count, std::uint64_t cap);

// Lexicographic stream of all variants for n.
class VariantStream {
public:
    explicit VariantStream(std::uint64_t n);
    std::optional<VariantSpec> next();

private:
    bool advance();
    std::uint64_t n_;
    std::uint64_t cells_ = 1;
    std::optional<VariantSpec> current_;
    bool started_ = false;
};

}  // namespace cq
