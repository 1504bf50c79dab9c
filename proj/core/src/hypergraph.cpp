#include "tilelab/hypergraph.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace tilelab {

KGraph::KGraph(int n, int k, std::vector<Mask> edges)
    : n_(n), k_(k), edges_(std::move(edges)) {
  if (n < 0 || n > kMaxVertices)
    throw std::invalid_argument("vertex count must be in [0, 64]");
  if (k < 1) throw std::invalid_argument("uniformity must be >= 1");
  Mask all = full_mask(n_);
  for (Mask e : edges_) {
    if (popcount(e) != k_) throw std::invalid_argument("edge arity != k");
    if (!subset_of(e, all)) throw std::invalid_argument("edge vertex out of range");
  }
  std::sort(edges_.begin(), edges_.end(), set_lex_less);
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw std::invalid_argument("duplicate edge");
  incidence_.resize(static_cast<std::size_t>(n_));
  for (std::uint32_t id = 0; id < edges_.size(); ++id)
    for (int v : vertices_of(edges_[id])) incidence_[static_cast<std::size_t>(v)].push_back(id);
}

bool KGraph::has_edge(Mask e) const {
  if (popcount(e) != k_) return false;
  if (e == 0) return false;
  const auto& inc = incidence_[static_cast<std::size_t>(lowest_vertex(e))];
  for (std::uint32_t id : inc)
    if (edges_[id] == e) return true;
  return false;
}

std::uint64_t KGraph::degree(Mask s) const {
  if (popcount(s) > k_) throw std::invalid_argument("degree: |S| > k");
  if (s == 0) return edges_.size();
  std::uint64_t count = 0;
  for (std::uint32_t id : incidence_[static_cast<std::size_t>(lowest_vertex(s))])
    if (subset_of(s, edges_[id])) ++count;
  return count;
}

std::uint64_t KGraph::min_d_degree(int d) const {
  if (d < 1 || d > k_ - 1) throw std::invalid_argument("min_d_degree: d out of range");
  if (n_ < k_ || n_ < d) return 0;
  std::uint64_t best = ~std::uint64_t{0};
  for_each_subset(all_vertices(), d, [&](Mask s) {
    std::uint64_t deg = degree(s);
    if (deg < best) best = deg;
  });
  return best;
}

KGraph::RestrictedDegree KGraph::deg_in(Mask s, Mask r) const {
  int ssize = popcount(s);
  if (ssize >= k_) throw std::invalid_argument("deg_in: |S| >= k");
  Mask pool = r & ~s;
  std::uint64_t deg = 0;
  if (s == 0) {
    for (Mask e : edges_)
      if (subset_of(e, pool)) ++deg;
  } else {
    for (std::uint32_t id : incidence_[static_cast<std::size_t>(lowest_vertex(s))]) {
      Mask e = edges_[id];
      if (subset_of(s, e) && subset_of(e & ~s, pool)) ++deg;
    }
  }
  std::uint64_t total = binomial(popcount(pool), k_ - ssize);
  return {deg, total - deg};
}

KGraph::TypeCounts KGraph::subset_counts(Mask x, Mask y, int i, int j) const {
  if (x & y) throw std::invalid_argument("subset_counts: X and Y overlap");
  if (i + j != k_) throw std::invalid_argument("subset_counts: i + j != k");
  if (i < 0 || j < 0 || i > popcount(x) || j > popcount(y))
    throw std::invalid_argument("subset_counts: infeasible (i, j)");
  std::uint64_t e = 0;
  for (Mask edge : edges_)
    if (popcount(edge & x) == i && popcount(edge & y) == j) ++e;
  std::uint64_t total =
      binomial(popcount(x), i) * binomial(popcount(y), j);
  return {e, total - e};
}

std::uint64_t KGraph::induced_edge_count(Mask verts) const {
  std::uint64_t count = 0;
  for (Mask e : edges_)
    if (subset_of(e, verts)) ++count;
  return count;
}

std::string KGraph::serialize() const {
  std::ostringstream out;
  out << n_ << ' ' << k_ << '\n';
  for (Mask e : edges_) {
    bool first = true;
    for (int v : vertices_of(e)) {
      if (!first) out << ' ';
      out << v;
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

KGraph KGraph::parse(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

KGraph KGraph::parse(std::istream& in) {
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("line " + std::to_string(lineno) + ": " + what);
  };
  int n = -1, k = -1;
  std::vector<Mask> edges;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (n < 0) {
      if (!(ls >> n >> k) || n < 0 || k < 1) fail("bad header, expected \"n k\"");
      std::string rest;
      if (ls >> rest) fail("trailing tokens in header");
      continue;
    }
    Mask e = 0;
    int prev = -1, v = 0, arity = 0;
    while (ls >> v) {
      if (v < 0 || v >= n) fail("vertex out of range");
      if (v == prev) fail("repeated vertex");
      if (v < prev) fail("vertices not ascending");
      e |= bit(v);
      prev = v;
      ++arity;
    }
    if (!ls.eof()) fail("non-integer token");
    if (arity != k) fail("edge arity != k");
    edges.push_back(e);
  }
  if (n < 0) throw std::invalid_argument("empty graph file");
  return KGraph(n, k, std::move(edges));
}

Mask Link::lift(Mask local) const {
  Mask out = 0;
  for (int v : vertices_of(local)) out |= bit(to_parent[static_cast<std::size_t>(v)]);
  return out;
}

Link link_graph(const KGraph& h, Mask s, Mask r) {
  int ssize = popcount(s);
  if (ssize >= h.uniformity()) throw std::invalid_argument("link_graph: |S| >= k");
  Mask pool = r & ~s;
  std::vector<int> to_parent = vertices_of(pool);
  std::vector<int> to_local(kMaxVertices, -1);
  for (std::size_t i = 0; i < to_parent.size(); ++i)
    to_local[static_cast<std::size_t>(to_parent[i])] = static_cast<int>(i);
  std::vector<Mask> link_edges;
  auto add_local = [&](Mask parent_tail) {
    Mask local = 0;
    for (int v : vertices_of(parent_tail)) local |= bit(to_local[static_cast<std::size_t>(v)]);
    link_edges.push_back(local);
  };
  if (s == 0) {
    for (Mask e : h.edges())
      if (subset_of(e, pool)) add_local(e);
  } else {
    for (std::uint32_t id : h.incident(lowest_vertex(s))) {
      Mask e = h.edges()[id];
      if (subset_of(s, e) && subset_of(e & ~s, pool)) add_local(e & ~s);
    }
  }
  return Link{KGraph(static_cast<int>(to_parent.size()), h.uniformity() - ssize,
                     std::move(link_edges)),
              std::move(to_parent)};
}

}  // namespace tilelab
