#include "tilelab/solver.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <stdexcept>

namespace tilelab {

namespace {

class Timer {
 public:
  double elapsed() const {
    return std::chrono::duration<double>(clock::now() - start_).count();
  }

 private:
  using clock = std::chrono::steady_clock;
  clock::time_point start_ = clock::now();
};

struct CoverSearch {
  const std::vector<YCopy>& tiles;
  std::vector<Mask> tile_masks;
  // covering[v] = tile ids containing v, ascending.
  std::vector<std::vector<std::uint32_t>> covering;
  Mask universe;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  bool out_of_budget = false;
  Tiling solution;

  CoverSearch(const std::vector<YCopy>& tiles_in, Mask universe_in,
              std::uint64_t budget_in, int n)
      : tiles(tiles_in), universe(universe_in), budget(budget_in) {
    tile_masks.reserve(tiles.size());
    covering.resize(static_cast<std::size_t>(n));
    for (std::uint32_t id = 0; id < tiles.size(); ++id) {
      Mask m = tiles[id].vertices();
      tile_masks.push_back(m);
      for (int v : vertices_of(m)) covering[static_cast<std::size_t>(v)].push_back(id);
    }
  }

  bool search(Mask covered) {
    if (covered == universe) return true;
    if (++nodes > budget) {
      out_of_budget = true;
      return false;
    }
    // Most-constrained uncovered vertex, ties to the lowest index.
    int branch_v = -1;
    std::size_t best_count = ~std::size_t{0};
    for (Mask rest = universe & ~covered; rest; rest &= rest - 1) {
      int v = lowest_vertex(rest);
      std::size_t count = 0;
      for (std::uint32_t id : covering[static_cast<std::size_t>(v)])
        if ((tile_masks[id] & covered) == 0) ++count;
      if (count < best_count) {
        best_count = count;
        branch_v = v;
        if (count == 0) return false;
      }
    }
    for (std::uint32_t id : covering[static_cast<std::size_t>(branch_v)]) {
      if (tile_masks[id] & covered) continue;
      solution.add(tiles[id]);
      if (search(covered | tile_masks[id])) return true;
      if (out_of_budget) return false;
      solution.copies.pop_back();
      solution.covered = covered;
    }
    return false;
  }
};

}  // namespace

FactorResult find_factor(const KGraph& h, YPattern p, std::uint64_t budget) {
  Timer timer;
  FactorResult res{FactorOutcome::none_exhaustive, std::nullopt, {}, ""};
  if (h.vertex_count() % p.span() != 0) {
    if (!p.valid() || p.k != h.uniformity())
      throw std::invalid_argument("find_factor: pattern/graph mismatch");
    res.note = "n not divisible by 2k-ell";
    res.stats.seconds = timer.elapsed();
    return res;
  }
  std::vector<YCopy> copies = enumerate_copies(h, p);
  res.stats.copies_enumerated = copies.size();
  CoverSearch search(copies, h.all_vertices(), budget, h.vertex_count());
  bool found = search.search(0);
  res.stats.nodes = search.nodes;
  if (found) {
    res.outcome = FactorOutcome::found;
    res.tiling = std::move(search.solution);
  } else if (search.out_of_budget) {
    res.outcome = FactorOutcome::budget_exceeded;
  }
  res.stats.seconds = timer.elapsed();
  return res;
}

Tiling find_max_tiling(const KGraph& h, YPattern p, std::uint64_t budget) {
  std::vector<YCopy> copies = enumerate_copies(h, p);
  Tiling t;
  for (const YCopy& c : copies)
    if ((c.vertices() & t.covered) == 0) t.add(c);
  // Local improvement: drop one copy, try to place two disjoint ones.
  std::uint64_t steps = 0;
  bool improved = true;
  while (improved && steps < budget) {
    improved = false;
    for (std::size_t drop = 0; drop < t.copies.size() && !improved; ++drop) {
      Mask without = 0;
      for (std::size_t i = 0; i < t.copies.size(); ++i)
        if (i != drop) without |= t.copies[i].vertices();
      for (std::size_t a = 0; a < copies.size() && !improved; ++a) {
        if (++steps >= budget) break;
        Mask ma = copies[a].vertices();
        if (ma & without) continue;
        for (std::size_t b = a + 1; b < copies.size(); ++b) {
          Mask mb = copies[b].vertices();
          if ((mb & without) || (mb & ma)) continue;
          Tiling next;
          for (std::size_t i = 0; i < t.copies.size(); ++i)
            if (i != drop) next.add(t.copies[i]);
          next.add(copies[a]);
          next.add(copies[b]);
          t = std::move(next);
          improved = true;
          break;
        }
      }
    }
  }
  std::sort(t.copies.begin(), t.copies.end(), copy_less);
  return t;
}

const char* fault_name(TilingFault f) {
  switch (f) {
    case TilingFault::none: return "none";
    case TilingFault::bad_copy: return "bad-copy";
    case TilingFault::missing_edge: return "missing-edge";
    case TilingFault::overlap: return "overlap";
    case TilingFault::not_factor: return "not-factor";
  }
  return "?";
}

VerifyResult verify_tiling(const KGraph& h, YPattern p, const Tiling& t,
                           bool require_factor) {
  Mask covered = 0;
  for (std::size_t i = 0; i < t.copies.size(); ++i) {
    const YCopy& c = t.copies[i];
    std::ostringstream where;
    where << "copy " << i;
    if (popcount(c.shared) != p.ell || popcount(c.side1) != p.k - p.ell ||
        popcount(c.side2) != p.k - p.ell ||
        (c.shared & c.side1) || (c.shared & c.side2) || (c.side1 & c.side2))
      return {false, TilingFault::bad_copy, where.str()};
    if (!h.has_edge(c.edge1()) || !h.has_edge(c.edge2()))
      return {false, TilingFault::missing_edge, where.str()};
    if (covered & c.vertices())
      return {false, TilingFault::overlap, where.str()};
    covered |= c.vertices();
  }
  if (require_factor && covered != h.all_vertices())
    return {false, TilingFault::not_factor, "covered != V(H)"};
  return {true, TilingFault::none, ""};
}

namespace {

// Lowest-uncovered-vertex exhaustive backtracking; intentionally free of
// the solver's ordering heuristics.
bool oracle_search(const std::vector<YCopy>& copies,
                   const std::vector<std::vector<std::uint32_t>>& covering,
                   Mask universe, Mask covered, Tiling& out) {
  if (covered == universe) return true;
  int v = lowest_vertex(universe & ~covered);
  for (std::uint32_t id : covering[static_cast<std::size_t>(v)]) {
    Mask m = copies[id].vertices();
    if (m & covered) continue;
    out.add(copies[id]);
    if (oracle_search(copies, covering, universe, covered | m, out)) return true;
    out.copies.pop_back();
    out.covered = covered;
  }
  return false;
}

}  // namespace

FactorResult brute_force_factor(const KGraph& h, YPattern p, int ceiling) {
  if (h.vertex_count() > ceiling)
    throw std::invalid_argument("brute_force_factor: n above oracle ceiling");
  FactorResult res{FactorOutcome::none_exhaustive, std::nullopt, {}, ""};
  if (h.vertex_count() % p.span() != 0) {
    res.note = "n not divisible by 2k-ell";
    return res;
  }
  std::vector<YCopy> copies = enumerate_copies(h, p);
  res.stats.copies_enumerated = copies.size();
  std::vector<std::vector<std::uint32_t>> covering(
      static_cast<std::size_t>(h.vertex_count()));
  for (std::uint32_t id = 0; id < copies.size(); ++id)
    for (int v : vertices_of(copies[id].vertices()))
      covering[static_cast<std::size_t>(v)].push_back(id);
  Tiling t;
  if (oracle_search(copies, covering, h.all_vertices(), 0, t)) {
    res.outcome = FactorOutcome::found;
    res.tiling = std::move(t);
  }
  return res;
}

FactorResult cover_with_tiles(const KGraph& h, YPattern p,
                              const std::vector<YCopy>& tiles, Mask universe,
                              std::uint64_t budget) {
  Timer timer;
  FactorResult res{FactorOutcome::none_exhaustive, std::nullopt, {}, ""};
  res.stats.copies_enumerated = tiles.size();
  CoverSearch search(tiles, universe, budget, h.vertex_count());
  bool found = search.search(0);
  res.stats.nodes = search.nodes;
  if (found) {
    res.outcome = FactorOutcome::found;
    res.tiling = std::move(search.solution);
  } else if (search.out_of_budget) {
    res.outcome = FactorOutcome::budget_exceeded;
  }
  res.stats.seconds = timer.elapsed();
  return res;
}

std::string write_certificate(const KGraph& h, YPattern p, const Tiling& t) {
  std::ostringstream out;
  out << "FACTOR " << p.k << ' ' << p.ell << ' ' << h.vertex_count() << '\n';
  for (const YCopy& c : t.copies) out << c.serialize() << '\n';
  out << "END\n";
  return out.str();
}

Certificate parse_certificate(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty certificate");
  std::istringstream header(line);
  std::string tag;
  Certificate cert;
  if (!(header >> tag >> cert.k >> cert.ell >> cert.n) || tag != "FACTOR")
    throw std::invalid_argument("certificate header must be \"FACTOR k ell n\"");
  bool ended = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line == "END") {
      ended = true;
      break;
    }
    cert.tiling.add(YCopy::parse(line));
  }
  if (!ended) throw std::invalid_argument("certificate missing END line");
  return cert;
}

}  // namespace tilelab
