#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qldpc/errors.hpp"
#include "qldpc/gf4.hpp"
#include "qldpc/stabilizer.hpp"

namespace qldpc {

struct TannerEdge {
  std::uint32_t qubit;
  std::uint32_t check;
  F4 label;
  friend bool operator==(const TannerEdge&, const TannerEdge&) = default;
};

/// Labeled bipartite qubit/check graph (the syndrome Tanner graph).
/// Edges are kept sorted by (check, qubit).
class TannerGraph {
 public:
  TannerGraph() = default;
  TannerGraph(std::size_t n_qubits, std::size_t n_checks, std::vector<TannerEdge> edges)
      : n_qubits_(n_qubits), n_checks_(n_checks), edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end(), [](const TannerEdge& x, const TannerEdge& y) {
      return std::pair(x.check, x.qubit) < std::pair(y.check, y.qubit);
    });
    by_qubit_.assign(n_qubits_, {});
    by_check_.assign(n_checks_, {});
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const auto& e = edges_[i];
      if (e.qubit >= n_qubits_ || e.check >= n_checks_) throw DimensionError("TannerGraph: edge endpoint out of range");
      if (e.label.is_zero()) throw PreconditionError("TannerGraph: zero edge label");
      if (i && edges_[i - 1].check == e.check && edges_[i - 1].qubit == e.qubit)
        throw ConstructionError("TannerGraph: duplicate edge (qubit " + std::to_string(e.qubit) + ", check " +
                                std::to_string(e.check) + ")");
      by_qubit_[e.qubit].push_back(static_cast<std::uint32_t>(i));
      by_check_[e.check].push_back(static_cast<std::uint32_t>(i));
    }
  }

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t n_checks() const { return n_checks_; }
  const std::vector<TannerEdge>& edges() const { return edges_; }
  const std::vector<std::uint32_t>& qubit_edges(std::size_t q) const { return by_qubit_.at(q); }
  const std::vector<std::uint32_t>& check_edges(std::size_t c) const { return by_check_.at(c); }

  std::optional<std::size_t> qubit_degree() const { return constant_degree(by_qubit_); }
  std::optional<std::size_t> check_degree() const { return constant_degree(by_check_); }

  ParityCheck to_parity_check() const {
    std::vector<SparseRow> rows(n_checks_);
    for (const auto& e : edges_) rows[e.check].push_back({e.qubit, e.label});
    return ParityCheck(n_qubits_, std::move(rows));
  }

  static TannerGraph from_parity_check(const ParityCheck& M) {
    std::vector<TannerEdge> edges;
    edges.reserve(M.edge_count());
    for (std::size_t r = 0; r < M.m(); ++r)
      for (const auto& e : M.row(r)) edges.push_back({e.index, static_cast<std::uint32_t>(r), e.symbol});
    return TannerGraph(M.n(), M.m(), std::move(edges));
  }

  friend bool operator==(const TannerGraph& x, const TannerGraph& y) {
    return x.n_qubits_ == y.n_qubits_ && x.n_checks_ == y.n_checks_ && x.edges_ == y.edges_;
  }

 private:
  static std::optional<std::size_t> constant_degree(const std::vector<std::vector<std::uint32_t>>& adj) {
    if (adj.empty()) return std::nullopt;
    std::size_t d = adj.front().size();
    for (const auto& a : adj)
      if (a.size() != d) return std::nullopt;
    return d;
  }

  std::size_t n_qubits_ = 0;
  std::size_t n_checks_ = 0;
  std::vector<TannerEdge> edges_;
  std::vector<std::vector<std::uint32_t>> by_qubit_;
  std::vector<std::vector<std::uint32_t>> by_check_;
};

/// Qubit graph joining q and q' when two checks c1, c2 both contain q and q'
/// with anticommuting entries at q and at q' (the mixed-label 4-cycle).
struct FourCycleGraph {
  std::vector<std::vector<std::uint32_t>> adjacency;  // sorted neighbour lists
  std::size_t min_degree = 0;
  std::size_t max_degree = 0;

  bool has_edge(std::uint32_t a, std::uint32_t b) const {
    const auto& adj = adjacency.at(a);
    return std::binary_search(adj.begin(), adj.end(), b);
  }
  std::size_t edge_count() const {
    std::size_t s = 0;
    for (const auto& a : adjacency) s += a.size();
    return s / 2;
  }
};

inline FourCycleGraph four_cycle_graph(const ParityCheck& M) {
  FourCycleGraph g;
  g.adjacency.assign(M.n(), {});
  for (std::uint32_t q = 0; q < M.n(); ++q) {
    const auto& col = M.column(q);
    auto& out = g.adjacency[q];
    for (std::size_t i = 0; i < col.size(); ++i) {
      for (std::size_t j = i + 1; j < col.size(); ++j) {
        if (!herm_pair(col[i].symbol, col[j].symbol)) continue;
        const auto& r1 = M.row(col[i].index);
        const auto& r2 = M.row(col[j].index);
        auto a = r1.begin();
        auto b = r2.begin();
        while (a != r1.end() && b != r2.end()) {
          if (a->index < b->index) {
            ++a;
          } else if (b->index < a->index) {
            ++b;
          } else {
            if (a->index != q && herm_pair(a->symbol, b->symbol)) out.push_back(a->index);
            ++a;
            ++b;
          }
        }
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  if (!g.adjacency.empty()) {
    auto [lo, hi] = std::minmax_element(g.adjacency.begin(), g.adjacency.end(),
                                        [](const auto& x, const auto& y) { return x.size() < y.size(); });
    g.min_degree = lo->size();
    g.max_degree = hi->size();
  }
  return g;
}

inline FourCycleGraph four_cycle_graph(const TannerGraph& t) { return four_cycle_graph(t.to_parity_check()); }

}  // namespace qldpc
