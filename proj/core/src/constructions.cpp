#include "tilelab/constructions.hpp"

#include <random>
#include <stdexcept>
#include <unordered_map>

#include "tilelab/ypattern.hpp"

namespace tilelab {

namespace {

std::vector<Mask> k_sets_meeting(int n, int k, Mask target) {
  std::vector<Mask> edges;
  for_each_subset(full_mask(n), k, [&](Mask e) {
    if (e & target) edges.push_back(e);
  });
  return edges;
}

}  // namespace

ExtremalGraph build_extremal(const ExtremalSpec& spec) {
  int span = 2 * spec.k - spec.ell;
  if (spec.k < 2 || spec.ell < 0 || spec.ell > spec.k - 1)
    throw std::invalid_argument("build_extremal: bad (k, ell)");
  if (spec.n < span || spec.n % span != 0)
    throw std::invalid_argument("build_extremal: n must be a positive multiple of 2k-ell");
  int a_size = spec.n / span - 1;
  Mask a = full_mask(a_size);
  Mask b = full_mask(spec.n) & ~a;
  std::vector<Mask> edges = k_sets_meeting(spec.n, spec.k, a);
  if (spec.interior == InteriorMode::greedy_y_free) {
    // Accept interior edges in canonical order while H0[B] stays Y-free.
    std::vector<Mask> interior;
    for_each_subset(b, spec.k, [&](Mask e) {
      for (Mask f : interior)
        if (popcount(e & f) == spec.ell) return;
      interior.push_back(e);
    });
    edges.insert(edges.end(), interior.begin(), interior.end());
  }
  return {KGraph(spec.n, spec.k, std::move(edges)), a, b};
}

PartitionModel build_partition_model(int k, int ell, int n, int x_size) {
  if (k < 2 || x_size < 0 || x_size > n)
    throw std::invalid_argument("build_partition_model: bad arguments");
  (void)ell;  // shape parameter only; recorded by callers
  Mask x = full_mask(x_size);
  Mask y = full_mask(n) & ~x;
  return {KGraph(n, k, k_sets_meeting(n, k, x)), x, y};
}

KGraph build_basic(BasicKind kind, int k, int n) {
  switch (kind) {
    case BasicKind::complete: {
      std::vector<Mask> edges;
      for_each_subset(full_mask(n), k, [&](Mask e) { edges.push_back(e); });
      return KGraph(n, k, std::move(edges));
    }
    case BasicKind::empty:
      return KGraph(n, k, {});
    case BasicKind::matching: {
      if (n % k != 0)
        throw std::invalid_argument("build_basic: matching needs k | n");
      std::vector<Mask> edges;
      for (int i = 0; i < n; i += k) edges.push_back(full_mask(i + k) & ~full_mask(i));
      return KGraph(n, k, std::move(edges));
    }
  }
  throw std::invalid_argument("build_basic: unknown kind");
}

KGraph random_codegree_graph(int k, int n, std::uint64_t floor, double density,
                             std::uint64_t seed) {
  if (floor > static_cast<std::uint64_t>(n >= k ? n - k + 1 : 0))
    throw std::invalid_argument("random_codegree_graph: floor > n-k+1");
  std::vector<Mask> edges;
  for_each_subset(full_mask(n), k, [&](Mask e) { edges.push_back(e); });
  std::uint64_t target =
      static_cast<std::uint64_t>(density * static_cast<double>(edges.size()));

  std::unordered_map<Mask, std::uint64_t> codeg;
  for (Mask e : edges)
    for_each_subset(e, k - 1, [&](Mask s) { ++codeg[s]; });

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<bool> alive(edges.size(), true);
  std::uint64_t remaining = edges.size();

  bool progress = true;
  while (remaining > target && progress) {
    progress = false;
    // Fisher-Yates with the explicit engine keeps runs reproducible.
    for (std::size_t i = order.size(); i > 1; --i) {
      std::size_t j = rng() % i;
      std::swap(order[i - 1], order[j]);
    }
    for (std::size_t idx : order) {
      if (remaining <= target) break;
      if (!alive[idx]) continue;
      Mask e = edges[idx];
      bool deletable = true;
      for_each_subset(e, k - 1, [&](Mask s) {
        if (codeg[s] <= floor) deletable = false;
      });
      if (!deletable) continue;
      alive[idx] = false;
      --remaining;
      for_each_subset(e, k - 1, [&](Mask s) { --codeg[s]; });
      progress = true;
    }
  }
  std::vector<Mask> kept;
  kept.reserve(remaining);
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (alive[i]) kept.push_back(edges[i]);
  return KGraph(n, k, std::move(kept));
}

}  // namespace tilelab
