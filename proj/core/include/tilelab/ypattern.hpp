#ifndef TILELAB_YPATTERN_HPP
#define TILELAB_YPATTERN_HPP

#include <optional>
#include <string>
#include <vector>

#include "tilelab/hypergraph.hpp"

namespace tilelab {

// The pattern Y_{k,l}: two k-edges sharing exactly l vertices, spanning
// 2k - l vertices in total.
struct YPattern {
  int k;
  int ell;

  int span() const { return 2 * k - ell; }
  bool valid() const { return k >= 2 && ell >= 0 && ell <= k - 1; }
};

// A concrete embedded copy. Canonical orientation: side1 < side2 in
// set-lex order, which is equivalent to edge1 < edge2.
struct YCopy {
  Mask shared;
  Mask side1;
  Mask side2;

  Mask edge1() const { return shared | side1; }
  Mask edge2() const { return shared | side2; }
  Mask vertices() const { return shared | side1 | side2; }

  // "shared | side1 | side2", each part ascending space-separated integers.
  std::string serialize() const;
  static YCopy parse(const std::string& line);

  friend bool operator==(const YCopy& a, const YCopy& b) {
    return a.shared == b.shared && a.side1 == b.side1 && a.side2 == b.side2;
  }
};

// Builds the canonically oriented copy from two distinct edges.
YCopy copy_from_edges(Mask e1, Mask e2);

// Canonical copy order: (edge1, edge2) lexicographic.
bool copy_less(const YCopy& a, const YCopy& b);

// All copies of P in H, each exactly once, in canonical order.
std::vector<YCopy> enumerate_copies(const KGraph& h, YPattern p);

// Canonically first copy whose vertices avoid `forbidden`; exhaustive.
std::optional<YCopy> find_copy_avoiding(const KGraph& h, YPattern p, Mask forbidden);

bool is_y_free(const KGraph& h, YPattern p);

}  // namespace tilelab

#endif
