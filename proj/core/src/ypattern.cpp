#include "tilelab/ypattern.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tilelab {

namespace {

void write_part(std::ostringstream& out, Mask part) {
  bool first = true;
  for (int v : vertices_of(part)) {
    if (!first) out << ' ';
    out << v;
    first = false;
  }
}

Mask read_part(const std::string& text) {
  std::istringstream in(text);
  Mask m = 0;
  int v;
  while (in >> v) {
    if (v < 0 || v >= kMaxVertices) throw std::invalid_argument("copy vertex out of range");
    m |= bit(v);
  }
  return m;
}

void check_uniformity(const KGraph& h, YPattern p) {
  if (!p.valid()) throw std::invalid_argument("invalid Y pattern");
  if (p.k != h.uniformity()) throw std::invalid_argument("pattern/graph uniformity mismatch");
}

// Partner edge ids that intersect e in at least one vertex.
std::vector<std::uint32_t> touching_edges(const KGraph& h, Mask e) {
  std::vector<std::uint32_t> ids;
  for (int v : vertices_of(e)) {
    const auto& inc = h.incident(v);
    ids.insert(ids.end(), inc.begin(), inc.end());
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

}  // namespace

std::string YCopy::serialize() const {
  std::ostringstream out;
  write_part(out, shared);
  out << " | ";
  write_part(out, side1);
  out << " | ";
  write_part(out, side2);
  return out.str();
}

YCopy YCopy::parse(const std::string& line) {
  auto p1 = line.find('|');
  auto p2 = line.find('|', p1 == std::string::npos ? p1 : p1 + 1);
  if (p1 == std::string::npos || p2 == std::string::npos)
    throw std::invalid_argument("copy line needs two '|' separators");
  YCopy c{read_part(line.substr(0, p1)),
          read_part(line.substr(p1 + 1, p2 - p1 - 1)),
          read_part(line.substr(p2 + 1))};
  if ((c.shared & c.side1) || (c.shared & c.side2) || (c.side1 & c.side2))
    throw std::invalid_argument("copy parts not disjoint");
  if (set_lex_less(c.side2, c.side1)) std::swap(c.side1, c.side2);
  return c;
}

YCopy copy_from_edges(Mask e1, Mask e2) {
  Mask shared = e1 & e2;
  Mask s1 = e1 & ~shared;
  Mask s2 = e2 & ~shared;
  if (set_lex_less(s2, s1)) std::swap(s1, s2);
  return {shared, s1, s2};
}

bool copy_less(const YCopy& a, const YCopy& b) {
  if (a.edge1() != b.edge1()) return set_lex_less(a.edge1(), b.edge1());
  return set_lex_less(a.edge2(), b.edge2());
}

std::vector<YCopy> enumerate_copies(const KGraph& h, YPattern p) {
  check_uniformity(h, p);
  std::vector<YCopy> out;
  const auto& edges = h.edges();
  for (std::uint32_t i = 0; i < edges.size(); ++i) {
    Mask e1 = edges[i];
    if (p.ell == 0) {
      for (std::uint32_t j = i + 1; j < edges.size(); ++j)
        if ((e1 & edges[j]) == 0) out.push_back(copy_from_edges(e1, edges[j]));
    } else {
      for (std::uint32_t j : touching_edges(h, e1)) {
        if (j <= i) continue;
        if (popcount(e1 & edges[j]) == p.ell) out.push_back(copy_from_edges(e1, edges[j]));
      }
    }
  }
  std::sort(out.begin(), out.end(), copy_less);
  return out;
}

std::optional<YCopy> find_copy_avoiding(const KGraph& h, YPattern p, Mask forbidden) {
  check_uniformity(h, p);
  const auto& edges = h.edges();
  for (std::uint32_t i = 0; i < edges.size(); ++i) {
    Mask e1 = edges[i];
    if (e1 & forbidden) continue;
    std::optional<YCopy> best;
    auto consider = [&](std::uint32_t j) {
      if (j <= i) return;
      Mask e2 = edges[j];
      if (e2 & forbidden) return;
      if (popcount(e1 & e2) != p.ell) return;
      YCopy c = copy_from_edges(e1, e2);
      if (!best || copy_less(c, *best)) best = c;
    };
    if (p.ell == 0) {
      for (std::uint32_t j = i + 1; j < edges.size(); ++j)
        if ((e1 & edges[j]) == 0) consider(j);
    } else {
      for (std::uint32_t j : touching_edges(h, e1)) consider(j);
    }
    if (best) return best;
  }
  return std::nullopt;
}

bool is_y_free(const KGraph& h, YPattern p) {
  return !find_copy_avoiding(h, p, 0).has_value();
}

}  // namespace tilelab
