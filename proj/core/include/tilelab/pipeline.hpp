#ifndef TILELAB_PIPELINE_HPP
#define TILELAB_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tilelab/solver.hpp"

namespace tilelab {

// Extremality witness: B of size (1 - 1/(2k-ell))n with few induced edges.
struct ExtremalWitness {
  Mask b;
  double xi;
  std::uint64_t eb;       // e(H[B])
  bool exhaustive;        // false: local search, absence proves nothing
};

enum class WitnessMode { exhaustive, local_search };

// Scans candidate sets B and returns the e(B)-minimizer if it qualifies
// (e(B) <= xi * C(|B|,k)). Exhaustive mode enumerates everything; local
// search does steepest-descent swaps from a lowest-degree seed with
// seeded restarts.
std::optional<ExtremalWitness> find_extremal_witness(
    const KGraph& h, int ell, double xi, WitnessMode mode,
    std::uint64_t seed = 0, int restarts = 32);

// (A', B', V0) split by deg(v, B) thresholds; eps1 = xi^(1/3),
// eps2 = 2*eps1^2.
struct Classification {
  Mask a_prime;
  Mask b_prime;
  Mask v0;
  double eps1;
  double eps2;
};

Classification classify(const KGraph& h, const ExtremalWitness& w);

struct IneqCheck {
  std::string name;
  double lhs;
  double rhs;
  bool pass;
};

// |A\A'|, |B\B'|, |A'\A|, |B'\B| <= eps2|B| and |V0| <= 2*eps2|B|.
// Failures are diagnostics: at desk scale the asymptotic guarantee behind
// them does not apply.
std::vector<IneqCheck> check_claim1(const KGraph& h, const ExtremalWitness& w,
                                    const Classification& c);

struct PartitionReport {
  bool size_ok;                 // |Y| = (2k-ell-1)|X|
  IneqCheck worst_x;            // condition (a) at its worst X-vertex
  IneqCheck worst_y;            // condition (b) at its worst Y-vertex
  std::vector<IneqCheck> checks;
  bool all_pass;
};

// Conditions of the partition tiler: every v in X has almost-full degree
// into Y, every u in Y misses few XY^{k-1} edges, both against
// rho * C(|Y|,k-1). ell fixes the required ratio |Y| = (2k-ell-1)|X|.
PartitionReport check_partition_conditions(const KGraph& h, Mask x, Mask y,
                                           int ell, double rho);

// Factor of H[X∪Y] from X-centered tiles: both edges of a tile are
// {x} ∪ S with S ⊆ Y, so each tile spends one X-vertex and 2k-ell-1
// Y-vertices. Falls back to an unrestricted factor search on H[X∪Y]
// when the restricted tile set is exhausted. Requires ell >= 1 and
// |Y| = (2k-ell-1)|X|.
FactorResult partition_factor(const KGraph& h, Mask x, Mask y, int ell,
                              std::uint64_t budget = kDefaultBudget);

struct StageStatus {
  bool ok = true;
  std::string reason;           // reason code on failure
  Mask covered_so_far = 0;
  std::size_t copies_found = 0;
};

// Running state of the extremal-case factor construction.
struct PipelineState {
  const KGraph* h = nullptr;
  YPattern pattern{0, 0};
  ExtremalWitness witness{};
  Classification cls{};
  long long q = 0;  // |B'| - |B|
  long long p = 0;  // |V1|/(2k-ell) - |A1|
  Tiling y1, y2, y3, y4;
  Mask a1 = 0, b1 = 0, a2 = 0, b2 = 0;
  std::vector<IneqCheck> trace;
};

// Stage 1: q copies inside H[B'] when q > 0.
StageStatus stage_y1(PipelineState& s);
// Stage 2: one copy per V0-vertex w, lifted from a Y_{k-1,ell-1} in the
// link of w into the unused part of B'.
StageStatus stage_y2(PipelineState& s);
// Stage 3: balance |A1| against |B1| via copies on A1-pairs lifted from
// Y_{k-1,ell} in common links; establishes |B2| = (2k-ell-1)|A2|.
StageStatus stage_y3(PipelineState& s);

struct PipelineReport {
  bool success = false;
  std::string failed_stage;     // "witness", "claim1"... empty on success
  std::string reason;
  PipelineState state;
  std::vector<IneqCheck> claim1;
  PartitionReport partition;
  Tiling factor;                // verified factor when success
  std::string certificate_ref;  // path shown on the RESULT line
  std::string text;             // WITNESS/CLASSIFY/.../RESULT report
};

// Full extremal-case run: witness -> classify -> claim-1 diagnostics ->
// stages 1..3 -> partition conditions -> stage-4 tiler. Returns a
// verified factor or a structured stage failure, never an unchecked
// factor. Requires 1 <= ell <= k-2 and (2k-ell) | n.
PipelineReport run_pipeline(const KGraph& h, YPattern p, double xi,
                            WitnessMode mode,
                            std::uint64_t budget = kDefaultBudget,
                            const std::string& certificate_path = "");

std::string render_report(const PipelineReport& r);

}  // namespace tilelab

#endif
