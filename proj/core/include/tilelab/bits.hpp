#ifndef TILELAB_BITS_HPP
#define TILELAB_BITS_HPP

#include <bit>
#include <cstdint>
#include <vector>

namespace tilelab {

// Vertex sets over at most 64 labeled vertices, stored as bit masks.
using Mask = std::uint64_t;

constexpr int kMaxVertices = 64;

inline int popcount(Mask m) { return std::popcount(m); }

inline int lowest_vertex(Mask m) { return std::countr_zero(m); }

inline Mask bit(int v) { return Mask{1} << v; }

inline Mask full_mask(int n) {
  return n >= kMaxVertices ? ~Mask{0} : (Mask{1} << n) - 1;
}

inline bool contains(Mask m, int v) { return (m >> v) & 1; }

inline bool subset_of(Mask a, Mask b) { return (a & ~b) == 0; }

// Lexicographic order on the ascending vertex lists of two equal-size sets:
// the set owning the smallest element of the symmetric difference comes first.
inline bool set_lex_less(Mask a, Mask b) {
  Mask diff = a ^ b;
  if (diff == 0) return false;
  Mask low = diff & (~diff + 1);
  return (a & low) != 0;
}

inline std::vector<int> vertices_of(Mask m) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(popcount(m)));
  while (m) {
    out.push_back(lowest_vertex(m));
    m &= m - 1;
  }
  return out;
}

inline Mask mask_of(const std::vector<int>& vs) {
  Mask m = 0;
  for (int v : vs) m |= bit(v);
  return m;
}

inline std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  if (r > n - r) r = n - r;
  std::uint64_t acc = 1;
  for (int i = 1; i <= r; ++i) acc = acc * static_cast<std::uint64_t>(n - r + i) / i;
  return acc;
}

// Calls fn(mask) for every r-subset of pool, in canonical (lexicographic
// ascending-list) order.
template <typename Fn>
void for_each_subset(Mask pool, int r, Fn&& fn) {
  std::vector<int> verts = vertices_of(pool);
  int m = static_cast<int>(verts.size());
  if (r < 0 || r > m) return;
  if (r == 0) {
    fn(Mask{0});
    return;
  }
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    Mask s = 0;
    for (int i : idx) s |= bit(verts[static_cast<std::size_t>(i)]);
    fn(s);
    int i = r - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - r + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace tilelab

#endif
