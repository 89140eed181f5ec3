#pragma once

// Generic (a,b)-regular construction from a group G, subgroups H and K,
// and a generating set split into w- and W-labeled parts. Qubits are the
// left cosets xH, checks the left cosets yK; xH ~ yK when x g h lies in yK
// for some generator g and h in H, labeled by the part containing g.
//
// Orthogonality of the resulting rows requires
//   (1) each part is closed under inverses,
//   (2) every w-generator commutes with every W-generator,
//   (3) g h k = g' h' k'  =>  g = g'   (no parallel edges).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "qldpc/errors.hpp"
#include "qldpc/matgroup.hpp"
#include "qldpc/tanner.hpp"

namespace qldpc {

struct GenericSpec {
  std::shared_ptr<const GroupTable> group;
  Subgroup H;
  Subgroup K;
  std::vector<GroupIndex> g_omega;
  std::vector<GroupIndex> g_omega_bar;
};

struct ValidationItem {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationItem> items;

  bool ok() const {
    for (const auto& i : items)
      if (!i.passed) return false;
    return true;
  }
  const ValidationItem* find(const std::string& name) const {
    for (const auto& i : items)
      if (i.name == name) return &i;
    return nullptr;
  }
  bool passed(const std::string& name) const {
    const auto* i = find(name);
    return i && i->passed;
  }
  void add(std::string name, bool passed, std::string detail = {}) {
    items.push_back({std::move(name), passed, std::move(detail)});
  }
  std::string to_string() const {
    std::ostringstream os;
    for (const auto& i : items) {
      os << (i.passed ? "PASS " : "FAIL ") << i.name;
      if (!i.detail.empty()) os << ": " << i.detail;
      os << '\n';
    }
    return os.str();
  }
};

namespace detail {

inline std::vector<char> membership(std::size_t n, const std::vector<GroupIndex>& elems) {
  std::vector<char> m(n, 0);
  for (auto e : elems) m.at(e) = 1;
  return m;
}

}  // namespace detail

inline ValidationReport validate_spec(const GenericSpec& spec) {
  ValidationReport rep;
  const GroupTable& G = *spec.group;

  bool h_ok = is_subgroup(G, spec.H);
  bool k_ok = is_subgroup(G, spec.K);
  rep.add("H is a subgroup", h_ok);
  rep.add("K is a subgroup", k_ok);
  rep.add("|K| > |H|", spec.K.size() > spec.H.size(),
          std::to_string(spec.K.size()) + " vs " + std::to_string(spec.H.size()));

  std::vector<GroupIndex> all = spec.g_omega;
  all.insert(all.end(), spec.g_omega_bar.begin(), spec.g_omega_bar.end());
  {
    auto a = spec.g_omega, b = spec.g_omega_bar;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<GroupIndex> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    bool dup = std::adjacent_find(a.begin(), a.end()) != a.end() || std::adjacent_find(b.begin(), b.end()) != b.end();
    rep.add("generator parts are disjoint", common.empty() && !dup && !a.empty() && !b.empty());
  }
  {
    auto closure = G.closure(all);
    rep.add("generators span the group", closure.size() == G.size(),
            std::to_string(closure.size()) + " of " + std::to_string(G.size()));
  }

  auto inverse_closed = [&](const std::vector<GroupIndex>& part) {
    auto in = detail::membership(G.size(), part);
    for (auto g : part)
      if (!in[G.inverse(g)]) return false;
    return true;
  };
  rep.add("w-part closed under inverse", inverse_closed(spec.g_omega));
  rep.add("W-part closed under inverse", inverse_closed(spec.g_omega_bar));

  {
    std::size_t bad = 0;
    for (auto a : spec.g_omega)
      for (auto b : spec.g_omega_bar)
        if (G.mul(a, b) != G.mul(b, a)) ++bad;
    rep.add("w- and W-generators commute", bad == 0,
            bad ? std::to_string(bad) + " non-commuting pairs" : std::string{});
  }

  if (h_ok && k_ok) {
    // g h k = g' h' k'  with g != g'  iff  g'^-1 g lies in H K H.
    std::vector<char> hkh(G.size(), 0);
    for (auto h1 : spec.H.elements)
      for (auto k : spec.K.elements) {
        GroupIndex hk = G.mul(h1, k);
        for (auto h2 : spec.H.elements) hkh[G.mul(hk, h2)] = 1;
      }
    std::size_t bad = 0;
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = 0; j < all.size(); ++j)
        if (i != j && hkh[G.mul(G.inverse(all[j]), all[i])]) ++bad;
    rep.add("no parallel edges (ghk = g'h'k' => g = g')", bad == 0,
            bad ? std::to_string(bad) + " offending generator pairs" : std::string{});
  } else {
    rep.add("no parallel edges (ghk = g'h'k' => g = g')", false, "subgroups invalid");
  }
  return rep;
}

struct CosetCode {
  TannerGraph tanner;
  CosetTable qubit_cosets;  // index = qubit
  CosetTable check_cosets;  // index = check
  std::size_t expected_qubit_degree = 0;
  std::size_t expected_check_degree = 0;
};

/// Builds the labeled Tanner graph. Throws ConstructionError if an edge is
/// reached from two different generators (a parallel-edge violation) or the
/// degrees deviate from |G||H|/|H^K| and |G||K|/|H^K|.
inline CosetCode build_tanner(const GenericSpec& spec) {
  const GroupTable& G = *spec.group;
  auto rep = validate_spec(spec);
  if (!rep.passed("H is a subgroup") || !rep.passed("K is a subgroup"))
    throw PreconditionError("build_tanner: H and K must be subgroups");

  CosetTable qubits = coset_partition(G, spec.H);
  CosetTable checks = coset_partition(G, spec.K);
  std::size_t hk = intersect(spec.H, spec.K).size();
  std::size_t n_gens = spec.g_omega.size() + spec.g_omega_bar.size();

  struct Found {
    F4 label;
    GroupIndex generator;
  };
  std::vector<TannerEdge> edges;
  for (std::uint32_t q = 0; q < qubits.count(); ++q) {
    GroupIndex x = qubits.rep_of(q);
    std::map<std::uint32_t, Found> seen;
    auto visit = [&](GroupIndex g, F4 label) {
      GroupIndex xg = G.mul(x, g);
      for (auto h : spec.H.elements) {
        std::uint32_t c = checks.coset_of(G.mul(xg, h));
        auto [it, inserted] = seen.emplace(c, Found{label, g});
        if (!inserted && it->second.generator != g) {
          std::ostringstream os;
          os << "parallel edge between qubit " << q << " and check " << c << " via generators " << G.element(g)
             << " and " << G.element(it->second.generator)
             << (it->second.label == label ? "" : " with conflicting labels");
          throw ConstructionError(os.str());
        }
      }
    };
    for (auto g : spec.g_omega) visit(g, F4::omega());
    for (auto g : spec.g_omega_bar) visit(g, F4::omega_bar());
    for (const auto& [c, f] : seen) edges.push_back({q, c, f.label});
  }

  CosetCode code{TannerGraph(qubits.count(), checks.count(), std::move(edges)), std::move(qubits), std::move(checks),
                 n_gens * spec.H.size() / hk, n_gens * spec.K.size() / hk};
  auto a = code.tanner.qubit_degree();
  auto b = code.tanner.check_degree();
  if (a != code.expected_qubit_degree || b != code.expected_check_degree)
    throw ConstructionError("build_tanner: degrees deviate from (" + std::to_string(code.expected_qubit_degree) +
                            "," + std::to_string(code.expected_check_degree) + ")");
  return code;
}

}  // namespace qldpc
