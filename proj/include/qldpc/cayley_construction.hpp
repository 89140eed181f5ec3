#pragma once

// (4,8)-regular construction. The 4-cycle graph is the Cayley graph of
// DET4(p) with respect to S = {g+, g+^-1, g-, g-^-1}; each check is an
// 8-cycle obtained by alternating two generators, and labels are assigned
// from the determinant class of the qubit and the family of the cycle.
//
// Cycle types seen from a vertex x (forward step, backward neighbour):
//   (g+ g-)     forward x g+,    backward x g-^-1
//   (g- g+)     forward x g-,    backward x g+^-1
//   (g- g+^-1)  forward x g-,    backward x g+
//   (g-^-1 g+)  forward x g-^-1, backward x g+^-1
// The first two form family A, the last two family B. Along an A-cycle the
// type alternates between (g+ g-) and (g- g+), likewise for B.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qldpc/coset_construction.hpp"
#include "qldpc/errors.hpp"
#include "qldpc/matgroup.hpp"
#include "qldpc/stabilizer.hpp"
#include "qldpc/tanner.hpp"

namespace qldpc {

struct CayleySpec {
  std::uint32_t p = 13;
  Mat2 g_plus;
  Mat2 g_minus;
};

enum class CycleType : std::uint8_t { PlusMinus, MinusPlus, MinusPlusInv, MinusInvPlus };

inline const char* to_string(CycleType t) {
  switch (t) {
    case CycleType::PlusMinus: return "(g+ g-)";
    case CycleType::MinusPlus: return "(g- g+)";
    case CycleType::MinusPlusInv: return "(g- g+^-1)";
    case CycleType::MinusInvPlus: return "(g-^-1 g+)";
  }
  return "?";
}

/// Family A = {(g+ g-), (g- g+)}; family B = the other two.
inline bool family_a(CycleType t) { return t == CycleType::PlusMinus || t == CycleType::MinusPlus; }

struct CheckCycle {
  std::array<GroupIndex, 8> vertices{};
  CycleType type = CycleType::PlusMinus;  // as seen from vertices[0]
  friend bool operator==(const CheckCycle&, const CheckCycle&) = default;
};

/// Determinant class of a DET4 element: 0 for det = +-1, 1 for det = +-i.
inline int det_class(const Mat2& m) {
  std::uint32_t d = m.det();
  return (d == 1 || d == m.p - 1) ? 0 : 1;
}

/// DET4(p) together with right-multiplication maps for the four elements of S.
struct CayleyGroup {
  std::shared_ptr<const GroupTable> group;
  GroupIndex g_plus = 0, g_plus_inv = 0, g_minus = 0, g_minus_inv = 0;
  // Indexed by step: 0 = g+, 1 = g+^-1, 2 = g-, 3 = g-^-1.
  std::array<std::vector<GroupIndex>, 4> step;

  GroupIndex times(GroupIndex x, int s) const { return step[static_cast<std::size_t>(s)][x]; }
};

namespace detail {

enum Step : int { kPlus = 0, kPlusInv = 1, kMinus = 2, kMinusInv = 3 };

/// (first step, second step) for each cycle type.
inline std::array<int, 2> cycle_steps(CycleType t) {
  switch (t) {
    case CycleType::PlusMinus: return {kPlus, kMinus};
    case CycleType::MinusPlus: return {kMinus, kPlus};
    case CycleType::MinusPlusInv: return {kMinus, kPlusInv};
    case CycleType::MinusInvPlus: return {kMinusInv, kPlus};
  }
  return {0, 0};
}

inline std::array<GroupIndex, 8> canonical_rotation(const std::array<GroupIndex, 8>& v) {
  std::array<GroupIndex, 8> best = v;
  for (std::size_t r = 0; r < 8; ++r) {
    std::array<GroupIndex, 8> fwd{}, bwd{};
    for (std::size_t i = 0; i < 8; ++i) {
      fwd[i] = v[(r + i) % 8];
      bwd[i] = v[(r + 8 - i) % 8];
    }
    best = std::min({best, fwd, bwd});
  }
  return best;
}

}  // namespace detail

/// Generators re-reduced modulo spec.p.
inline std::pair<Mat2, Mat2> cayley_generators(const CayleySpec& spec) {
  auto r = [&](const Mat2& m) { return Mat2::from_ints(m.a, m.b, m.c, m.d, spec.p); };
  return {r(spec.g_plus), r(spec.g_minus)};
}

inline CayleyGroup make_cayley_group(const CayleySpec& spec) {
  CayleyGroup cg;
  cg.group = std::make_shared<const GroupTable>(GroupTable::enumerate(GroupKind::DET4, spec.p));
  const GroupTable& G = *cg.group;
  auto [gp, gm] = cayley_generators(spec);
  cg.g_plus = G.index_of(GroupElement::single(gp));
  cg.g_minus = G.index_of(GroupElement::single(gm));
  cg.g_plus_inv = G.inverse(cg.g_plus);
  cg.g_minus_inv = G.inverse(cg.g_minus);
  std::array<GroupIndex, 4> gens{cg.g_plus, cg.g_plus_inv, cg.g_minus, cg.g_minus_inv};
  for (std::size_t s = 0; s < 4; ++s) cg.step[s] = G.right_mul_map(gens[s]);
  return cg;
}

struct CayleyReport {
  ValidationReport checks;
  std::uint32_t det_plus = 0;
  std::uint32_t det_minus = 0;
  int class_plus = 0;   // 0: det in {+-1}, 1: det in {+-i}
  int class_minus = 0;
  std::size_t generated = 0;
  std::size_t order_plus_minus_inv = 0;  // order of g+ g-^-1
  std::size_t order_minus_plus = 0;      // order of g- g+
  bool proper_bipartition = false;       // every Cayley edge joins the two determinant classes
};

/// Throws PreconditionError when p is not a prime = 1 (mod 4); all other
/// findings are reported.
inline CayleyReport validate_cayley(const CayleySpec& spec) {
  if (!is_prime(spec.p) || spec.p % 4 != 1)
    throw PreconditionError("Cayley construction needs a prime p = 1 (mod 4), got " + std::to_string(spec.p));
  CayleyReport r;
  auto G = GroupTable::enumerate(GroupKind::DET4, spec.p);
  auto [mp, mm] = cayley_generators(spec);
  auto gp = GroupElement::single(mp);
  auto gm = GroupElement::single(mm);
  r.det_plus = gp.parts[0].det();
  r.det_minus = gm.parts[0].det();
  bool member = G.contains(gp) && G.contains(gm);
  r.checks.add("g+ and g- lie in DET4(p)", member,
               "det g+ = " + std::to_string(r.det_plus) + ", det g- = " + std::to_string(r.det_minus));
  if (!member) return r;
  r.class_plus = det_class(gp.parts[0]);
  r.class_minus = det_class(gm.parts[0]);

  GroupIndex ip = G.index_of(gp), im = G.index_of(gm);
  std::vector<GroupIndex> S{ip, G.inverse(ip), im, G.inverse(im)};
  auto sorted = S;
  std::sort(sorted.begin(), sorted.end());
  bool distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  r.checks.add("S has 4 distinct elements", distinct);

  r.generated = G.closure(S).size();
  r.checks.add("S generates DET4(p)", r.generated == G.size(),
               std::to_string(r.generated) + " of " + std::to_string(G.size()));

  r.order_plus_minus_inv = G.order(G.mul(ip, G.inverse(im)));
  r.order_minus_plus = G.order(G.mul(im, ip));
  r.checks.add("order(g+ g-^-1) = 4", r.order_plus_minus_inv == 4, std::to_string(r.order_plus_minus_inv));
  r.checks.add("order(g- g+) = 4", r.order_minus_plus == 4, std::to_string(r.order_minus_plus));

  // Informational: the labeling does not depend on it, orthogonality is verified after labeling.
  r.proper_bipartition = r.class_plus == 1 && r.class_minus == 1;
  std::ostringstream os;
  os << "det classes: g+ in " << (r.class_plus ? "{+-i}" : "{+-1}") << ", g- in "
     << (r.class_minus ? "{+-i}" : "{+-1}") << (r.proper_bipartition ? "; every edge crosses classes" : "");
  r.checks.items.push_back({"determinant classes", true, os.str()});
  return r;
}

/// Undirected Cayley graph X(G, S); neighbours of x are x*s for s in S.
struct CayleyGraph {
  std::size_t vertices = 0;
  std::vector<std::array<GroupIndex, 4>> neighbours;  // order: g+, g+^-1, g-, g-^-1
  std::size_t edge_count() const {
    std::size_t d = 0;
    for (std::size_t x = 0; x < neighbours.size(); ++x)
      for (auto y : neighbours[x]) d += (y != x);
    return d / 2;
  }
};

inline CayleyGraph build_cayley_graph(const CayleyGroup& cg) {
  CayleyGraph g;
  g.vertices = cg.group->size();
  g.neighbours.resize(g.vertices);
  for (GroupIndex x = 0; x < g.vertices; ++x)
    for (int s = 0; s < 4; ++s) g.neighbours[x][static_cast<std::size_t>(s)] = cg.times(x, s);
  return g;
}

struct CycleSet {
  std::vector<CheckCycle> cycles;  // sorted by canonical vertex sequence
  /// incident[x][t] = index of the cycle of type t through x.
  std::vector<std::array<std::uint32_t, 4>> incident;
};

/// Walks every relation from every vertex, canonicalises the 8-cycles and
/// indexes them. Throws ConstructionError if a walk does not close after
/// exactly 8 steps with 8 distinct vertices, or if the incidence counts are off.
inline CycleSet enumerate_check_cycles(const CayleyGroup& cg) {
  const std::size_t n = cg.group->size();
  constexpr std::array<CycleType, 4> kTypes{CycleType::PlusMinus, CycleType::MinusPlus, CycleType::MinusPlusInv,
                                            CycleType::MinusInvPlus};
  std::set<std::array<GroupIndex, 8>> found;
  std::vector<std::array<std::array<GroupIndex, 8>, 4>> keys(n);
  for (GroupIndex x = 0; x < n; ++x) {
    for (std::size_t t = 0; t < 4; ++t) {
      auto steps = detail::cycle_steps(kTypes[t]);
      std::array<GroupIndex, 8> walk{};
      GroupIndex cur = x;
      for (std::size_t i = 0; i < 8; ++i) {
        walk[i] = cur;
        cur = cg.times(cur, steps[i % 2]);
      }
      auto sorted = walk;
      std::sort(sorted.begin(), sorted.end());
      if (cur != x || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ConstructionError(std::string("relation ") + to_string(kTypes[t]) +
                                " does not give a simple 8-cycle at vertex " + std::to_string(x));
      auto key = detail::canonical_rotation(walk);
      keys[x][t] = key;
      found.insert(key);
    }
  }

  CycleSet cs;
  std::map<std::array<GroupIndex, 8>, std::uint32_t> index;
  for (const auto& key : found) {
    index.emplace(key, static_cast<std::uint32_t>(cs.cycles.size()));
    cs.cycles.push_back({key, CycleType::PlusMinus});
  }
  cs.incident.resize(n);
  std::vector<std::uint32_t> uses(cs.cycles.size(), 0);
  for (GroupIndex x = 0; x < n; ++x) {
    for (std::size_t t = 0; t < 4; ++t) {
      std::uint32_t c = index.at(keys[x][t]);
      cs.incident[x][t] = c;
      ++uses[c];
    }
    auto inc = cs.incident[x];
    std::sort(inc.begin(), inc.end());
    if (std::adjacent_find(inc.begin(), inc.end()) != inc.end())
      throw ConstructionError("vertex " + std::to_string(x) + " lies on fewer than 4 distinct cycles");
  }
  for (std::size_t c = 0; c < uses.size(); ++c)
    if (uses[c] != 8) throw ConstructionError("cycle " + std::to_string(c) + " is not seen from exactly 8 vertices");

  // Type at the canonical base vertex, read off its two cycle neighbours.
  for (auto& cyc : cs.cycles) {
    GroupIndex x = cyc.vertices[0];
    GroupIndex next = cyc.vertices[1], prev = cyc.vertices[7];
    auto has = [&](GroupIndex a, GroupIndex b, int sa, int sb) {
      return (a == cg.times(x, sa) && b == cg.times(x, sb)) || (b == cg.times(x, sa) && a == cg.times(x, sb));
    };
    using namespace detail;
    if (has(next, prev, kPlus, kMinusInv)) cyc.type = CycleType::PlusMinus;
    else if (has(next, prev, kMinus, kPlusInv)) cyc.type = CycleType::MinusPlus;
    else if (has(next, prev, kMinus, kPlus)) cyc.type = CycleType::MinusPlusInv;
    else if (has(next, prev, kMinusInv, kPlusInv)) cyc.type = CycleType::MinusInvPlus;
    else throw ConstructionError("cycle with unrecognised incident edge pair");
  }
  return cs;
}

struct CayleyCode {
  CayleyGroup group;
  CycleSet cycles;
  TannerGraph tanner;
  ParityCheck matrix;
};

/// Labels the qubit/cycle incidence: a qubit with det in {+-1} gets w on its
/// family-A cycles and W on its family-B cycles, a qubit with det in {+-i}
/// the opposite. Throws ConstructionError naming a row pair if the rows are
/// not pairwise orthogonal.
inline CayleyCode build_48_code(const CayleySpec& spec) {
  auto report = validate_cayley(spec);
  if (!report.checks.ok()) throw PreconditionError("invalid Cayley spec:\n" + report.checks.to_string());

  CayleyCode code;
  code.group = make_cayley_group(spec);
  code.cycles = enumerate_check_cycles(code.group);
  const GroupTable& G = *code.group.group;
  constexpr std::array<CycleType, 4> kTypes{CycleType::PlusMinus, CycleType::MinusPlus, CycleType::MinusPlusInv,
                                            CycleType::MinusInvPlus};

  std::vector<TannerEdge> edges;
  edges.reserve(4 * G.size());
  for (GroupIndex x = 0; x < G.size(); ++x) {
    bool first_class = det_class(G.element(x).parts[0]) == 0;
    for (std::size_t t = 0; t < 4; ++t) {
      bool omega = family_a(kTypes[t]) == first_class;
      edges.push_back({x, code.cycles.incident[x][t], omega ? F4::omega() : F4::omega_bar()});
    }
  }
  code.tanner = TannerGraph(G.size(), code.cycles.cycles.size(), std::move(edges));
  code.matrix = code.tanner.to_parity_check();
  auto bad = verify_orthogonality(code.matrix);
  if (!bad.empty())
    throw ConstructionError("labeling produced non-commuting rows " + std::to_string(bad.front().first) + " and " +
                            std::to_string(bad.front().second) + " (" + std::to_string(bad.size()) + " pairs total)");
  return code;
}

/// One line per cycle: index, type at the base vertex, then the 8 vertex indices.
inline void dump_cycles(std::ostream& os, const CycleSet& cs) {
  for (std::size_t c = 0; c < cs.cycles.size(); ++c) {
    os << c << ' ' << to_string(cs.cycles[c].type);
    for (auto v : cs.cycles[c].vertices) os << ' ' << v;
    os << '\n';
  }
}

}  // namespace qldpc
