#include "tilelab/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace tilelab {

namespace {

int witness_b_size(const KGraph& h, int ell) {
  int span = 2 * h.uniformity() - ell;
  if (span <= 0 || h.vertex_count() % span != 0)
    throw std::invalid_argument("witness: n must be divisible by 2k-ell");
  return h.vertex_count() - h.vertex_count() / span;
}

std::uint64_t induced_after_swap(const KGraph& h, Mask b, int out, int in) {
  return h.induced_edge_count((b & ~bit(out)) | bit(in));
}

}  // namespace

std::optional<ExtremalWitness> find_extremal_witness(const KGraph& h, int ell,
                                                     double xi, WitnessMode mode,
                                                     std::uint64_t seed,
                                                     int restarts) {
  int b_size = witness_b_size(h, ell);
  double bound = xi * static_cast<double>(binomial(b_size, h.uniformity()));

  Mask best_b = 0;
  std::uint64_t best_e = ~std::uint64_t{0};
  if (mode == WitnessMode::exhaustive) {
    for_each_subset(h.all_vertices(), b_size, [&](Mask b) {
      std::uint64_t e = h.induced_edge_count(b);
      if (e < best_e) {
        best_e = e;
        best_b = b;
      }
    });
  } else {
    std::mt19937_64 rng(seed);
    std::vector<int> all = vertices_of(h.all_vertices());
    for (int r = 0; r < restarts; ++r) {
      Mask b;
      if (r == 0) {
        // Seed with the lowest-degree vertices, ties by index.
        std::vector<int> order = all;
        std::stable_sort(order.begin(), order.end(), [&](int u, int v) {
          return h.degree(bit(u)) < h.degree(bit(v));
        });
        b = 0;
        for (int i = 0; i < b_size; ++i) b |= bit(order[static_cast<std::size_t>(i)]);
      } else {
        std::vector<int> order = all;
        for (std::size_t i = order.size(); i > 1; --i)
          std::swap(order[i - 1], order[rng() % i]);
        b = 0;
        for (int i = 0; i < b_size; ++i) b |= bit(order[static_cast<std::size_t>(i)]);
      }
      std::uint64_t e = h.induced_edge_count(b);
      bool improved = true;
      while (improved) {
        improved = false;
        int best_out = -1, best_in = -1;
        std::uint64_t best_swap = e;
        for (int out : vertices_of(b)) {
          for (int in : vertices_of(h.all_vertices() & ~b)) {
            std::uint64_t cand = induced_after_swap(h, b, out, in);
            if (cand < best_swap) {
              best_swap = cand;
              best_out = out;
              best_in = in;
            }
          }
        }
        if (best_out >= 0) {
          b = (b & ~bit(best_out)) | bit(best_in);
          e = best_swap;
          improved = true;
        }
      }
      if (e < best_e) {
        best_e = e;
        best_b = b;
      }
    }
  }
  if (best_e == ~std::uint64_t{0}) return std::nullopt;
  if (static_cast<double>(best_e) > bound) return std::nullopt;
  return ExtremalWitness{best_b, xi, best_e, mode == WitnessMode::exhaustive};
}

Classification classify(const KGraph& h, const ExtremalWitness& w) {
  Classification c{};
  c.eps1 = std::cbrt(w.xi);
  c.eps2 = 2.0 * c.eps1 * c.eps1;
  double full = static_cast<double>(
      binomial(popcount(w.b), h.uniformity() - 1));
  for (int v : vertices_of(h.all_vertices())) {
    double deg = static_cast<double>(h.deg_in(bit(v), w.b).deg);
    if (deg >= (1.0 - c.eps1) * full)
      c.a_prime |= bit(v);
    else if (deg <= c.eps1 * full)
      c.b_prime |= bit(v);
    else
      c.v0 |= bit(v);
  }
  return c;
}

std::vector<IneqCheck> check_claim1(const KGraph& h, const ExtremalWitness& w,
                                    const Classification& c) {
  Mask a = h.all_vertices() & ~w.b;
  double cap = c.eps2 * popcount(w.b);
  auto mk = [&](const std::string& name, int lhs, double rhs) {
    return IneqCheck{name, static_cast<double>(lhs), rhs, lhs <= rhs};
  };
  return {
      mk("|A\\A'|", popcount(a & ~c.a_prime), cap),
      mk("|B\\B'|", popcount(w.b & ~c.b_prime), cap),
      mk("|A'\\A|", popcount(c.a_prime & ~a), cap),
      mk("|B'\\B|", popcount(c.b_prime & ~w.b), cap),
      mk("|V0|", popcount(c.v0), 2.0 * cap),
  };
}

PartitionReport check_partition_conditions(const KGraph& h, Mask x, Mask y,
                                           int ell, double rho) {
  if (x & y) throw std::invalid_argument("partition check: X and Y overlap");
  int k = h.uniformity();
  PartitionReport rep{};
  int xs = popcount(x), ys = popcount(y);
  int required = (2 * k - ell - 1) * xs;
  rep.size_ok = ys == required;
  double cap = rho * static_cast<double>(binomial(ys, k - 1));
  rep.worst_x = {"max_x obar(v,Y)", 0.0, cap, true};
  rep.worst_y = {"max_y obar(u,XY^{k-1})", 0.0, cap, true};
  for (int v : vertices_of(x)) {
    double ob = static_cast<double>(h.deg_in(bit(v), y).codeg_complement);
    if (ob > rep.worst_x.lhs) rep.worst_x.lhs = ob;
  }
  for (int u : vertices_of(y)) {
    std::uint64_t deg = 0;
    for (std::uint32_t id : h.incident(u)) {
      Mask e = h.edges()[id];
      if (popcount(e & x) == 1 && popcount(e & y) == k - 1) ++deg;
    }
    std::uint64_t total = static_cast<std::uint64_t>(xs) * binomial(ys - 1, k - 2);
    double ob = static_cast<double>(total - deg);
    if (ob > rep.worst_y.lhs) rep.worst_y.lhs = ob;
  }
  rep.worst_x.pass = rep.worst_x.lhs <= cap;
  rep.worst_y.pass = rep.worst_y.lhs <= cap;
  rep.checks = {IneqCheck{"|Y| = (2k-ell-1)|X|", static_cast<double>(ys),
                          static_cast<double>(required), rep.size_ok},
                rep.worst_x, rep.worst_y};
  rep.all_pass = rep.size_ok && rep.worst_x.pass && rep.worst_y.pass;
  return rep;
}

FactorResult partition_factor(const KGraph& h, Mask x, Mask y, int ell,
                              std::uint64_t budget) {
  int k = h.uniformity();
  int span = 2 * k - ell;
  if (ell < 1) throw std::invalid_argument("partition_factor: ell >= 1 required");
  if (popcount(y) != (span - 1) * popcount(x))
    throw std::invalid_argument("partition_factor: |Y| != (2k-ell-1)|X|");
  YPattern pattern{k, ell};
  if (x == 0 && y == 0)
    return {FactorOutcome::found, Tiling{}, {}, "empty partition"};

  std::vector<YCopy> tiles;
  for (int xv : vertices_of(x)) {
    std::vector<Mask> stars;  // (k-1)-subsets S of Y with {x}∪S an edge
    for (std::uint32_t id : h.incident(xv)) {
      Mask e = h.edges()[id];
      if (subset_of(e & ~bit(xv), y)) stars.push_back(e & ~bit(xv));
    }
    std::sort(stars.begin(), stars.end(), set_lex_less);
    for (std::size_t i = 0; i < stars.size(); ++i)
      for (std::size_t j = i + 1; j < stars.size(); ++j)
        if (popcount(stars[i] & stars[j]) == ell - 1)
          tiles.push_back(copy_from_edges(bit(xv) | stars[i], bit(xv) | stars[j]));
  }
  std::sort(tiles.begin(), tiles.end(), copy_less);
  FactorResult res = cover_with_tiles(h, pattern, tiles, x | y, budget);
  if (res.outcome != FactorOutcome::none_exhaustive) return res;

  // Restricted tile set exhausted: unrestricted search on H[X∪Y].
  Link sub = link_graph(h, 0, x | y);
  FactorResult inner = find_factor(sub.graph, pattern, budget);
  if (inner.outcome == FactorOutcome::found) {
    Tiling lifted;
    for (const YCopy& c : inner.tiling->copies)
      lifted.add(copy_from_edges(sub.lift(c.edge1()), sub.lift(c.edge2())));
    inner.tiling = std::move(lifted);
  }
  inner.note = "restricted tiles exhausted, unrestricted fallback";
  return inner;
}

namespace {

Mask used_vertices(const PipelineState& s) {
  return s.y1.covered | s.y2.covered | s.y3.covered;
}

YCopy lift_copy(const Link& link, const YCopy& local, Mask extra_shared) {
  return YCopy{extra_shared | link.lift(local.shared), link.lift(local.side1),
               link.lift(local.side2)};
}

}  // namespace

StageStatus stage_y1(PipelineState& s) {
  StageStatus st;
  if (s.q <= 0) return st;
  const KGraph& h = *s.h;
  for (long long i = 0; i < s.q; ++i) {
    Link sub = link_graph(h, 0, s.cls.b_prime & ~used_vertices(s));
    auto copy = find_copy_avoiding(sub.graph, s.pattern, 0);
    if (!copy) {
      st.ok = false;
      st.reason = "no-copy-in-Bprime";
      st.covered_so_far = s.y1.covered;
      st.copies_found = s.y1.size();
      return st;
    }
    s.y1.add(lift_copy(sub, *copy, 0));
  }
  st.covered_so_far = s.y1.covered;
  st.copies_found = s.y1.size();
  return st;
}

StageStatus stage_y2(PipelineState& s) {
  StageStatus st;
  const KGraph& h = *s.h;
  YPattern link_pattern{s.pattern.k - 1, s.pattern.ell - 1};
  for (int w : vertices_of(s.cls.v0)) {
    Link link = link_graph(h, bit(w), s.cls.b_prime & ~used_vertices(s));
    auto copy = find_copy_avoiding(link.graph, link_pattern, 0);
    if (!copy) {
      st.ok = false;
      st.reason = "no-link-copy";
      st.covered_so_far = s.y2.covered;
      st.copies_found = s.y2.size();
      return st;
    }
    s.y2.add(lift_copy(link, *copy, bit(w)));
  }
  st.covered_so_far = s.y2.covered;
  st.copies_found = s.y2.size();
  return st;
}

StageStatus stage_y3(PipelineState& s) {
  StageStatus st;
  const KGraph& h = *s.h;
  int span = s.pattern.span();
  s.a1 = s.cls.a_prime;
  s.b1 = s.cls.b_prime & ~(s.y1.covered | s.y2.covered);
  Mask v1 = s.a1 | s.b1;
  if (popcount(v1) % span != 0) {
    st.ok = false;
    st.reason = "v1-not-divisible";
    return st;
  }
  s.p = popcount(v1) / span - popcount(s.a1);
  if (s.p != s.q - static_cast<long long>(s.y1.size()))
    throw std::logic_error("stage 3: p != q - |Y1|");
  if (s.p > 0) throw std::logic_error("stage 3: p > 0 with stage 1 complete");

  Mask a_unused = s.a1;
  YPattern link_pattern{s.pattern.k - 1, s.pattern.ell};
  for (long long i = 0; i < -s.p; ++i) {
    if (popcount(a_unused) < 2) {
      st.ok = false;
      st.reason = "too-few-A1-vertices";
      st.covered_so_far = s.y3.covered;
      st.copies_found = s.y3.size();
      return st;
    }
    int u = lowest_vertex(a_unused);
    int v = lowest_vertex(a_unused & ~bit(u));
    Mask pool = s.b1 & ~s.y3.covered;
    // Common link of {u, v} into the unused part of B1.
    std::vector<int> to_parent = vertices_of(pool);
    std::vector<int> to_local(kMaxVertices, -1);
    for (std::size_t t = 0; t < to_parent.size(); ++t)
      to_local[static_cast<std::size_t>(to_parent[t])] = static_cast<int>(t);
    std::vector<Mask> common;
    for (std::uint32_t id : h.incident(u)) {
      Mask e = h.edges()[id];
      Mask tail = e & ~bit(u);
      if (!subset_of(tail, pool)) continue;
      if (!h.has_edge(tail | bit(v))) continue;
      Mask local = 0;
      for (int t : vertices_of(tail)) local |= bit(to_local[static_cast<std::size_t>(t)]);
      common.push_back(local);
    }
    Link link{KGraph(static_cast<int>(to_parent.size()), s.pattern.k - 1,
                     std::move(common)),
              to_parent};
    auto copy = find_copy_avoiding(link.graph, link_pattern, 0);
    if (!copy) {
      st.ok = false;
      st.reason = "no-common-link-copy";
      st.covered_so_far = s.y3.covered;
      st.copies_found = s.y3.size();
      return st;
    }
    Mask f1 = link.lift(copy->edge1());
    Mask f2 = link.lift(copy->edge2());
    s.y3.add(copy_from_edges(bit(u) | f1, bit(v) | f2));
    a_unused &= ~(bit(u) | bit(v));
  }
  s.a2 = s.a1 & ~s.y3.covered;
  s.b2 = s.b1 & ~s.y3.covered;
  if (popcount(s.b2) != (span - 1) * popcount(s.a2))
    throw std::logic_error("stage 3: |B2| != (2k-ell-1)|A2|");
  st.covered_so_far = s.y3.covered;
  st.copies_found = s.y3.size();
  return st;
}

PipelineReport run_pipeline(const KGraph& h, YPattern p, double xi,
                            WitnessMode mode, std::uint64_t budget,
                            const std::string& certificate_path) {
  if (p.k != h.uniformity()) throw std::invalid_argument("pipeline: uniformity mismatch");
  if (p.ell < 1 || p.ell > p.k - 2)
    throw std::invalid_argument("pipeline: requires 1 <= ell <= k-2");
  if (h.vertex_count() % p.span() != 0)
    throw std::invalid_argument("pipeline: n must be divisible by 2k-ell");

  PipelineReport rep;
  rep.state.h = &h;
  rep.state.pattern = p;

  auto fail = [&](const std::string& stage, const std::string& reason) {
    rep.success = false;
    rep.failed_stage = stage;
    rep.reason = reason;
    rep.text = render_report(rep);
    return rep;
  };

  auto witness = find_extremal_witness(h, p.ell, xi, mode);
  if (!witness) return fail("witness", "no-qualifying-B");
  rep.state.witness = *witness;

  rep.state.cls = classify(h, *witness);
  rep.state.q = popcount(rep.state.cls.b_prime) - popcount(witness->b);
  // Identity q = n/(2k-ell) - |A'| - |V0| follows from the partition of V.
  long long q_alt = h.vertex_count() / p.span() -
                    popcount(rep.state.cls.a_prime) - popcount(rep.state.cls.v0);
  rep.state.trace.push_back({"q = n/(2k-ell) - |A'| - |V0|",
                             static_cast<double>(rep.state.q),
                             static_cast<double>(q_alt),
                             rep.state.q == q_alt});

  rep.claim1 = check_claim1(h, *witness, rep.state.cls);

  StageStatus st = stage_y1(rep.state);
  if (!st.ok) return fail("Y1", st.reason);
  st = stage_y2(rep.state);
  if (!st.ok) return fail("Y2", st.reason);
  st = stage_y3(rep.state);
  if (!st.ok) return fail("Y3", st.reason);

  double rho = 3.0 * p.k * rep.state.cls.eps1;
  rep.partition =
      check_partition_conditions(h, rep.state.a2, rep.state.b2, p.ell, rho);

  FactorResult y4 = partition_factor(h, rep.state.a2, rep.state.b2, p.ell, budget);
  if (y4.outcome != FactorOutcome::found)
    return fail("Y4", y4.outcome == FactorOutcome::budget_exceeded
                          ? "budget-exceeded"
                          : "no-partition-factor");
  rep.state.y4 = *y4.tiling;

  Tiling combined;
  for (const Tiling* t : {&rep.state.y1, &rep.state.y2, &rep.state.y3, &rep.state.y4})
    for (const YCopy& c : t->copies) combined.add(c);
  VerifyResult v = verify_tiling(h, p, combined, true);
  if (!v.ok) return fail("verify", fault_name(v.fault));

  rep.success = true;
  rep.factor = std::move(combined);
  rep.certificate_ref = certificate_path.empty() ? "-" : certificate_path;
  rep.text = render_report(rep);
  return rep;
}

namespace {

void render_ineq(std::ostringstream& out, const IneqCheck& c) {
  out << c.name << ": " << c.lhs << " <= " << c.rhs << " : "
      << (c.pass ? "PASS" : "FAIL") << '\n';
}

void render_set(std::ostringstream& out, const char* name, Mask m) {
  out << name << ':';
  for (int v : vertices_of(m)) out << ' ' << v;
  out << '\n';
}

}  // namespace

std::string render_report(const PipelineReport& r) {
  std::ostringstream out;
  const PipelineState& s = r.state;
  out << "WITNESS\n";
  if (r.failed_stage == "witness") {
    out << "qualifying B: none\n";
  } else {
    render_set(out, "B", s.witness.b);
    out << "e(B): " << s.witness.eb << '\n';
    out << "xi: " << s.witness.xi << '\n';
    out << "mode: " << (s.witness.exhaustive ? "exhaustive" : "local-search") << '\n';
  }
  out << "CLASSIFY\n";
  if (r.failed_stage != "witness") {
    render_set(out, "A'", s.cls.a_prime);
    render_set(out, "B'", s.cls.b_prime);
    render_set(out, "V0", s.cls.v0);
    out << "eps1: " << s.cls.eps1 << '\n';
    out << "eps2: " << s.cls.eps2 << '\n';
    for (const IneqCheck& c : s.trace) render_ineq(out, c);
  }
  out << "CLAIM1\n";
  for (const IneqCheck& c : r.claim1) render_ineq(out, c);
  out << "STAGE1\n";
  out << "q: " << s.q << '\n';
  out << "copies: " << s.y1.size() << '\n';
  out << "STAGE2\n";
  out << "copies: " << s.y2.size() << '\n';
  out << "STAGE3\n";
  out << "p: " << s.p << '\n';
  out << "copies: " << s.y3.size() << '\n';
  out << "STAGE4\n";
  if (r.failed_stage.empty() || r.failed_stage == "Y4" || r.failed_stage == "verify") {
    render_set(out, "A2", s.a2);
    render_set(out, "B2", s.b2);
    for (const IneqCheck& c : r.partition.checks) render_ineq(out, c);
    out << "copies: " << s.y4.size() << '\n';
  }
  out << "RESULT\n";
  if (r.success)
    out << "FACTOR " << r.certificate_ref << '\n';
  else
    out << "FAIL " << r.failed_stage << ' ' << r.reason << '\n';
  return out.str();
}

}  // namespace tilelab
