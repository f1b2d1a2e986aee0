#pragma once

#include "cantorquant/measure.hpp"
#include "cantorquant/quantizer.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cq {

struct CertifiedInterval {
    Rational lower;
    Rational upper;
    bool exact = false;
    // Deepest cell level visited.
    unsigned depth_reached = 0;
};

struct CellAssignment {
    Region cell;
    std::optional<std::size_t> owner;  // empty when unresolved
};

class ResolutionError : public std::runtime_error {
public:
    ResolutionError(std::size_t count, std::vector<std::string> sample);
    std::size_t count;
    std::vector<std::string> cells;  // first few unresolved cells
};

class EmptyRegionError : public std::runtime_error {
public:
    explicit EmptyRegionError(std::vector<std::size_t> indices);
    std::vector<std::size_t> indices;
};

inline constexpr unsigned kDefaultMaxDepth = 40;
inline constexpr unsigned kMaxDepthLimit = 80;
Rational default_tolerance();  // 1e-12

// Index of the codeword whose Voronoi region contains the whole cell
// (ties allowed on the cell boundary only). Accepts binary cells and plain
// rectangles J_w; tail unions are rejected.
std::optional<std::size_t> resolve_cell(const Region& cell, const Codebook& codebook);

CertifiedInterval exact_distortion(const Codebook& codebook, const Rational& tolerance = default_tolerance(),
                                   unsigned max_depth = kDefaultMaxDepth);

// Leaves of the resolution tree down to `depth`: resolved cells at their
// coarsest level, unresolved cells at `depth`.
std::vector<CellAssignment> assign_cells(const Codebook& codebook, unsigned depth);

Codebook lloyd_step(const Codebook& codebook, unsigned depth);

struct LloydResult {
    Codebook codebook;
    CertifiedInterval distortion;
    unsigned iterations = 0;
    bool converged = false;
};

LloydResult lloyd(const Codebook& codebook, unsigned depth, unsigned max_iters);

// 64-bit linear congruential generator (Knuth's MMIX constants):
//   state <- state * 6364136223846793005 + 1442695040888963407 (mod 2^64)
// next() returns the top 32 bits of the new state.
class Lcg64 {
public:
    explicit Lcg64(std::uint64_t seed) : state_(seed) {}
    std::uint32_t next() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<std::uint32_t>(state_ >> 32);
    }
    // Exact dyadic value next() / 2^32 in [0, 1).
    Rational uniform() {
        Rational q(BigInt(static_cast<unsigned long>(next())), pow_int(2, 32));
        q.canonicalize();
        return q;
    }

private:
    std::uint64_t state_;
};

enum class RunStatus { Converged, MaxIters, Aborted };

struct RunOutcome {
    RunStatus status = RunStatus::Aborted;
    Codebook codebook;            // final codebook (empty when aborted)
    CertifiedInterval distortion; // valid unless aborted
    unsigned depth_used = 0;
};

struct MultistartResult {
    std::optional<Codebook> best;
    CertifiedInterval best_distortion;
    std::size_t completed = 0;
    std::size_t aborted = 0;
    std::vector<RunOutcome> runs;
};

struct MultistartOptions {
    unsigned warmup_depth = 7;
    unsigned depth_slack = 4;  // extra levels tried before a run is aborted
    unsigned max_iters = 100;
};

MultistartResult multistart_search(std::uint64_t n, unsigned seeds, std::uint64_t rng_seed, unsigned depth,
                                   const MultistartOptions& options = {});

}  // namespace cq
