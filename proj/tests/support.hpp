#pragma once

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "qldpc/gf4.hpp"
#include "qldpc/stabilizer.hpp"

namespace testing_support {

/// Row pairs with odd symplectic product, computed from dense bit images of
/// every pair of rows with overlapping support.
inline std::size_t dense_orthogonality_violations(const qldpc::ParityCheck& M) {
  const std::size_t n = M.n();
  std::vector<std::vector<std::uint64_t>> xs(M.m()), zs(M.m());
  for (std::size_t r = 0; r < M.m(); ++r) {
    auto s = qldpc::to_symplectic(M.dense_row(r));
    xs[r].assign((n + 63) / 64, 0);
    zs[r].assign((n + 63) / 64, 0);
    for (std::size_t q = 0; q < n; ++q) {
      if (s.x(q)) xs[r][q / 64] |= std::uint64_t{1} << (q % 64);
      if (s.z(q)) zs[r][q / 64] |= std::uint64_t{1} << (q % 64);
    }
  }
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t q = 0; q < n; ++q) {
    const auto& col = M.column(q);
    for (std::size_t i = 0; i < col.size(); ++i)
      for (std::size_t j = i + 1; j < col.size(); ++j)
        pairs.emplace(std::min(col[i].index, col[j].index), std::max(col[i].index, col[j].index));
  }
  std::size_t bad = 0;
  for (auto [a, b] : pairs) {
    int parity = 0;
    for (std::size_t w = 0; w < xs[a].size(); ++w)
      parity ^= std::popcount((xs[a][w] & zs[b][w]) ^ (zs[a][w] & xs[b][w])) & 1;
    bad += parity;
  }
  return bad;
}

/// Random orthogonal matrix on n qubits whose Tanner graph is a forest.
/// In a forest two checks share at most one qubit, so orthogonality only
/// needs every column to carry a single symbol.
inline qldpc::ParityCheck random_tree_code(std::size_t n, std::size_t max_checks, std::mt19937_64& rng) {
  std::vector<qldpc::F4> col_symbol(n);
  for (auto& s : col_symbol) s = qldpc::F4::from_code(static_cast<std::uint8_t>(1 + rng() % 3));
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<qldpc::SparseRow> rows;
  for (std::size_t attempt = 0; attempt < 50 && rows.size() < max_checks; ++attempt) {
    std::size_t w = 1 + rng() % 4;
    std::vector<std::uint32_t> qs(n);
    std::iota(qs.begin(), qs.end(), 0);
    std::shuffle(qs.begin(), qs.end(), rng);
    qs.resize(std::min(w, n));
    std::vector<std::size_t> roots;
    for (auto q : qs) roots.push_back(find(q));
    std::sort(roots.begin(), roots.end());
    if (std::adjacent_find(roots.begin(), roots.end()) != roots.end()) continue;
    for (std::size_t i = 1; i < roots.size(); ++i) parent[roots[i]] = roots[0];
    qldpc::SparseRow row;
    for (auto q : qs) row.push_back({q, col_symbol[q]});
    rows.push_back(std::move(row));
  }
  return qldpc::ParityCheck(n, std::move(rows));
}

/// Random orthogonal matrix built by rejection; its Tanner graph usually has cycles.
inline qldpc::ParityCheck random_orthogonal_code(std::size_t n, std::size_t checks, std::mt19937_64& rng) {
  std::vector<qldpc::F4Vector> rows;
  for (std::size_t attempt = 0; attempt < 2000 && rows.size() < checks; ++attempt) {
    qldpc::F4Vector v(n);
    for (std::size_t q = 0; q < n; ++q)
      if (rng() % 2) v[q] = qldpc::F4::from_code(static_cast<std::uint8_t>(1 + rng() % 3));
    if (v.weight() < 2) continue;
    bool ok = true;
    for (const auto& r : rows) ok = ok && !qldpc::vec_inner(r, v);
    if (ok) rows.push_back(v);
  }
  return qldpc::ParityCheck::from_dense(n, rows);
}

inline bool tanner_is_forest(const qldpc::ParityCheck& M) {
  // edges = vertices - components for a forest
  const std::size_t V = M.n() + M.m();
  std::vector<std::size_t> parent(V);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t r = 0; r < M.m(); ++r)
    for (const auto& e : M.row(r)) {
      auto a = find(e.index), b = find(M.n() + r);
      if (a == b) return false;
      parent[a] = b;
    }
  return true;
}

}  // namespace testing_support
