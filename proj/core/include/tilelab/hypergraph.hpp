#ifndef TILELAB_HYPERGRAPH_HPP
#define TILELAB_HYPERGRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tilelab/bits.hpp"

namespace tilelab {

// k-uniform hypergraph on n labeled vertices [0, n). Edges are stored as
// bit masks in canonical (lexicographic ascending-list) order, so two
// graphs with the same edge set serialize identically. Immutable after
// construction; all queries are const and safe to run concurrently.
class KGraph {
 public:
  KGraph(int n, int k, std::vector<Mask> edges);

  int vertex_count() const { return n_; }
  int uniformity() const { return k_; }
  Mask all_vertices() const { return full_mask(n_); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Mask>& edges() const { return edges_; }

  bool has_edge(Mask e) const;

  // Edge ids (positions in edges()) incident to vertex v, ascending.
  const std::vector<std::uint32_t>& incident(int v) const {
    return incidence_[static_cast<std::size_t>(v)];
  }

  // Number of edges containing S. Requires |S| <= k.
  std::uint64_t degree(Mask s) const;

  // delta_d: minimum of degree(S) over all d-subsets. By convention 0 when
  // fewer than k vertices exist. Requires 1 <= d <= k-1.
  std::uint64_t min_d_degree(int d) const;

  struct RestrictedDegree {
    std::uint64_t deg;                // |N(S,R)|
    std::uint64_t codeg_complement;   // C(|R\S|, k-|S|) - deg
  };
  // Degree of S into R: (k-|S|)-sets T subset of R\S with S∪T an edge.
  // Requires |S| < k.
  RestrictedDegree deg_in(Mask s, Mask r) const;

  struct TypeCounts {
    std::uint64_t e;      // edges with exactly i vertices in X, j in Y
    std::uint64_t e_bar;  // C(|X|,i)*C(|Y|,j) - e
  };
  // Type-X^iY^j edge counts. Requires X∩Y = ∅ and i+j = k. The induced
  // pair (e(B), ebar(B)) is the special case X = ∅, i = 0.
  TypeCounts subset_counts(Mask x, Mask y, int i, int j) const;

  // Edges fully inside the given vertex set (no relabeling).
  std::uint64_t induced_edge_count(Mask verts) const;

  // Text format: "n k" header, then one edge per line as k ascending
  // 0-based integers, lines in canonical order, newline terminated.
  std::string serialize() const;
  static KGraph parse(const std::string& text);
  static KGraph parse(std::istream& in);

  friend bool operator==(const KGraph& a, const KGraph& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.edges_ == b.edges_;
  }

 private:
  int n_;
  int k_;
  std::vector<Mask> edges_;
  std::vector<std::vector<std::uint32_t>> incidence_;
};

// A link graph together with the relabeling back into the parent graph.
struct Link {
  KGraph graph;                // uniformity k-|S| on the vertices of R\S
  std::vector<int> to_parent;  // local index -> parent vertex
  Mask lift(Mask local) const;
};

// The (k-|S|)-graph on R\S whose edges are exactly N(S,R). S = ∅ gives the
// induced subgraph on R, relabeled. Requires |S| < k.
Link link_graph(const KGraph& h, Mask s, Mask r);

}  // namespace tilelab

#endif
