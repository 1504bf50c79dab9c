#ifndef TILELAB_SOLVER_HPP
#define TILELAB_SOLVER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tilelab/ypattern.hpp"

namespace tilelab {

// Vertex-disjoint set of Y copies; a factor when covered = V(H).
struct Tiling {
  std::vector<YCopy> copies;
  Mask covered = 0;

  void add(const YCopy& c) {
    copies.push_back(c);
    covered |= c.vertices();
  }
  std::size_t size() const { return copies.size(); }
};

enum class FactorOutcome { found, none_exhaustive, budget_exceeded };

struct SolveStats {
  std::uint64_t nodes = 0;
  std::uint64_t copies_enumerated = 0;
  double seconds = 0.0;
};

struct FactorResult {
  FactorOutcome outcome;
  std::optional<Tiling> tiling;
  SolveStats stats;
  std::string note;  // e.g. the divisibility short-circuit
};

inline constexpr std::uint64_t kDefaultBudget = 50'000'000;

// Exact-cover decision for a Y_{k,l}-factor. Branches on the uncovered
// vertex with the fewest remaining covering copies, ties to the lowest
// index; copies tried in canonical order. n not divisible by 2k-l
// short-circuits to none_exhaustive.
FactorResult find_factor(const KGraph& h, YPattern p,
                         std::uint64_t budget = kDefaultBudget);

// Maximal tiling: greedy in canonical copy order, then single-copy local
// improvement (replace one copy by two disjoint ones). Lower bound on the
// maximum tiling size.
Tiling find_max_tiling(const KGraph& h, YPattern p,
                       std::uint64_t budget = kDefaultBudget);

enum class TilingFault {
  none,
  bad_copy,       // a copy violates the Y shape for this pattern
  missing_edge,   // a copy edge is not an edge of H
  overlap,        // two copies share a vertex
  not_factor,     // require_factor set and covered != V(H)
};

const char* fault_name(TilingFault f);

struct VerifyResult {
  bool ok;
  TilingFault fault;
  std::string detail;
};

VerifyResult verify_tiling(const KGraph& h, YPattern p, const Tiling& t,
                           bool require_factor);

inline constexpr int kOracleCeiling = 14;

// Independent ground-truth oracle: exhaustive backtracking over the copy
// list, always extending at the lowest uncovered vertex, no ordering
// heuristics, no budget, single-threaded. Refuses n above the ceiling.
FactorResult brute_force_factor(const KGraph& h, YPattern p,
                                int ceiling = kOracleCeiling);

// Exact cover restricted to a caller-supplied tile list over `universe`.
// Tiles must be valid copies of p in h; used by the partition tiler.
FactorResult cover_with_tiles(const KGraph& h, YPattern p,
                              const std::vector<YCopy>& tiles, Mask universe,
                              std::uint64_t budget);

// Certificate: "FACTOR k ell n", one copy line per tile, "END".
std::string write_certificate(const KGraph& h, YPattern p, const Tiling& t);
struct Certificate {
  int k;
  int ell;
  int n;
  Tiling tiling;
};
Certificate parse_certificate(const std::string& text);

}  // namespace tilelab

#endif
