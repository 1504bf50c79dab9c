#ifndef TILELAB_CONSTRUCTIONS_HPP
#define TILELAB_CONSTRUCTIONS_HPP

#include <cstdint>

#include "tilelab/hypergraph.hpp"

namespace tilelab {

enum class InteriorMode { empty, greedy_y_free };

struct ExtremalSpec {
  int k;
  int ell;
  int n;
  InteriorMode interior = InteriorMode::empty;
};

struct ExtremalGraph {
  KGraph graph;
  Mask a;  // |A| = n/(2k-ell) - 1
  Mask b;  // complement of A
};

// The extremal graph H0: V = A ∪ B, edges = every k-set meeting A, plus
// (greedy_y_free mode) a maximal Y-free family inside B. H0[B] never
// contains the pattern, so no factor exists. Requires (2k-ell) | n.
ExtremalGraph build_extremal(const ExtremalSpec& spec);

struct PartitionModel {
  KGraph graph;
  Mask x;  // first x_size vertices
  Mask y;  // complement
};

// Edges = every k-set meeting X. With x_size = n/(2k-ell) this is the
// ideal pipeline instance with delta_{k-1} = x_size.
PartitionModel build_partition_model(int k, int ell, int n, int x_size);

enum class BasicKind { complete, empty, matching };

// matching requires k | n.
KGraph build_basic(BasicKind kind, int k, int n);

// Starts from the complete k-graph and deletes random edges, never letting
// any (k-1)-set degree drop below `floor`, until edge count <= density *
// C(n,k) or nothing is deletable. Generator: mt19937_64(seed), fixed
// traversal order, reproducible across platforms.
KGraph random_codegree_graph(int k, int n, std::uint64_t floor, double density,
                             std::uint64_t seed);

}  // namespace tilelab

#endif
