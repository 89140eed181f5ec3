#pragma once

// Sparse GF(4) parity-check matrices of stabilizer codes: orthogonality
// audit, syndromes, GF(2) rank of the symplectic image, stabilizer
// membership, the QPC text format, and a low-weight undetectable-error
// finder.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <istream>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qldpc/errors.hpp"
#include "qldpc/gf2.hpp"
#include "qldpc/gf4.hpp"

namespace qldpc {

/// Bit j is <e, M_j>.
class Syndrome {
 public:
  Syndrome() = default;
  explicit Syndrome(std::size_t m) : bits_(m, 0) {}
  explicit Syndrome(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {}

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t j) const { return bits_[j] != 0; }
  void set(std::size_t j, bool v) { bits_[j] = v ? 1 : 0; }
  void flip(std::size_t j) { bits_[j] ^= 1; }
  std::size_t weight() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
  }
  bool is_zero() const { return weight() == 0; }

  Syndrome& operator^=(const Syndrome& o) {
    if (o.size() != size()) throw DimensionError("Syndrome xor: length mismatch");
    for (std::size_t j = 0; j < bits_.size(); ++j) bits_[j] ^= o.bits_[j];
    return *this;
  }
  friend bool operator==(const Syndrome&, const Syndrome&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

struct SparseEntry {
  std::uint32_t index;  // column for a row entry, row for a column entry
  F4 symbol;
  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

using SparseRow = std::vector<SparseEntry>;

struct CodeSummary {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k = 0;
  std::size_t rank = 0;
  std::optional<std::size_t> a;  // column weight, when constant
  std::optional<std::size_t> b;  // row weight, when constant
  double rate() const { return n ? static_cast<double>(k) / static_cast<double>(n) : 0.0; }
};

struct LogicalCount {
  std::size_t k = 0;
  std::size_t rank = 0;
  std::size_t dependencies = 0;
};

/// Sparse m x n matrix over GF(4) whose rows are stabilizer generators.
/// Copies share the frozen echelon basis.
class ParityCheck {
 public:
  ParityCheck() = default;

  /// Rows are sorted by column on entry; throws on out-of-range, repeated
  /// or zero entries and on empty rows.
  ParityCheck(std::size_t n, std::vector<SparseRow> rows) : n_(n), rows_(std::move(rows)) {
    cols_.assign(n_, {});
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      auto& row = rows_[r];
      if (row.empty()) throw PreconditionError("ParityCheck: row " + std::to_string(r) + " is empty");
      std::sort(row.begin(), row.end(), [](const SparseEntry& x, const SparseEntry& y) { return x.index < y.index; });
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i].index >= n_)
          throw DimensionError("ParityCheck: column " + std::to_string(row[i].index) + " out of range");
        if (row[i].symbol.is_zero()) throw PreconditionError("ParityCheck: explicit zero entry");
        if (i && row[i].index == row[i - 1].index)
          throw PreconditionError("ParityCheck: repeated column in row " + std::to_string(r));
        cols_[row[i].index].push_back({static_cast<std::uint32_t>(r), row[i].symbol});
      }
    }
  }

  /// Dense construction from F4 vectors; zero entries are dropped.
  static ParityCheck from_dense(std::size_t n, const std::vector<F4Vector>& rows) {
    std::vector<SparseRow> sparse;
    for (const auto& v : rows) {
      if (v.size() != n) throw DimensionError("ParityCheck::from_dense: row length mismatch");
      SparseRow row;
      for (std::size_t q = 0; q < n; ++q)
        if (!v[q].is_zero()) row.push_back({static_cast<std::uint32_t>(q), v[q]});
      sparse.push_back(std::move(row));
    }
    return ParityCheck(n, std::move(sparse));
  }

  std::size_t n() const { return n_; }
  std::size_t m() const { return rows_.size(); }
  const std::vector<SparseRow>& rows() const { return rows_; }
  const SparseRow& row(std::size_t r) const { return rows_.at(r); }
  const SparseRow& column(std::size_t q) const { return cols_.at(q); }
  std::size_t edge_count() const {
    std::size_t e = 0;
    for (const auto& r : rows_) e += r.size();
    return e;
  }

  F4 at(std::size_t r, std::size_t q) const {
    const auto& row = rows_.at(r);
    auto it = std::lower_bound(row.begin(), row.end(), q,
                               [](const SparseEntry& e, std::size_t c) { return e.index < c; });
    return (it != row.end() && it->index == q) ? it->symbol : F4::zero();
  }

  F4Vector dense_row(std::size_t r) const {
    F4Vector v(n_);
    for (const auto& e : rows_.at(r)) v[e.index] = e.symbol;
    return v;
  }

  SymplecticVector symplectic_row(std::size_t r) const {
    SymplecticVector s(n_);
    for (const auto& e : rows_.at(r)) {
      if (e.symbol.x()) s.bits().set(e.index);
      if (e.symbol.z()) s.bits().set(n_ + e.index);
    }
    return s;
  }

  std::optional<std::size_t> column_weight() const {
    if (cols_.empty()) return std::nullopt;
    std::size_t a = cols_.front().size();
    for (const auto& c : cols_)
      if (c.size() != a) return std::nullopt;
    return a;
  }
  std::optional<std::size_t> row_weight() const {
    if (rows_.empty()) return std::nullopt;
    std::size_t b = rows_.front().size();
    for (const auto& r : rows_)
      if (r.size() != b) return std::nullopt;
    return b;
  }

  /// Computes and caches the GF(2) echelon basis of the symplectic rows.
  /// After this call the object is read-only for concurrent users.
  const EchelonBasis& freeze() {
    if (!basis_) {
      auto basis = std::make_shared<EchelonBasis>(2 * n_);
      for (std::size_t r = 0; r < rows_.size(); ++r) basis->insert(symplectic_row(r).bits());
      basis_ = std::move(basis);
    }
    return *basis_;
  }
  bool frozen() const { return basis_ != nullptr; }
  const EchelonBasis* basis() const { return basis_.get(); }

  CodeSummary summary() const {
    CodeSummary s;
    s.n = n_;
    s.m = rows_.size();
    s.rank = basis_ ? basis_->rank() : compute_rank();
    s.k = n_ - s.rank;
    s.a = column_weight();
    s.b = row_weight();
    return s;
  }

  friend bool operator==(const ParityCheck& x, const ParityCheck& y) {
    return x.n_ == y.n_ && x.rows_ == y.rows_;
  }

 private:
  std::size_t compute_rank() const {
    EchelonBasis basis(2 * n_);
    for (std::size_t r = 0; r < rows_.size(); ++r) basis.insert(symplectic_row(r).bits());
    return basis.rank();
  }

  std::size_t n_ = 0;
  std::vector<SparseRow> rows_;
  std::vector<SparseRow> cols_;
  std::shared_ptr<const EchelonBasis> basis_;
};

/// Inner product of two sparse rows (merge over the common support).
inline bool sparse_inner(const SparseRow& u, const SparseRow& v) {
  bool acc = false;
  auto i = u.begin();
  auto j = v.begin();
  while (i != u.end() && j != v.end()) {
    if (i->index < j->index) {
      ++i;
    } else if (j->index < i->index) {
      ++j;
    } else {
      acc ^= herm_pair(i->symbol, j->symbol);
      ++i;
      ++j;
    }
  }
  return acc;
}

/// All row pairs (i < j) with <M_i, M_j> = 1. Only rows with overlapping
/// supports are examined.
inline std::vector<std::pair<std::size_t, std::size_t>> verify_orthogonality(const ParityCheck& M) {
  std::vector<std::pair<std::size_t, std::size_t>> bad;
  std::vector<std::size_t> stamp(M.m(), std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < M.m(); ++i) {
    for (const auto& e : M.row(i)) {
      for (const auto& c : M.column(e.index)) {
        std::size_t j = c.index;
        if (j <= i || stamp[j] == i) continue;
        stamp[j] = i;
        if (sparse_inner(M.row(i), M.row(j))) bad.emplace_back(i, j);
      }
    }
  }
  std::sort(bad.begin(), bad.end());
  return bad;
}

inline Syndrome syndrome(const ParityCheck& M, const F4Vector& e) {
  if (e.size() != M.n()) throw DimensionError("syndrome: error length does not match code length");
  Syndrome s(M.m());
  for (std::size_t j = 0; j < M.m(); ++j) {
    bool bit = false;
    for (const auto& en : M.row(j)) bit ^= herm_pair(e[en.index], en.symbol);
    s.set(j, bit);
  }
  return s;
}

/// k = n - rank_GF(2)(symplectic image); dependencies = m - rank.
inline LogicalCount logical_count(const ParityCheck& M) {
  std::size_t rank = M.basis() ? M.basis()->rank() : M.summary().rank;
  return {M.n() - rank, rank, M.m() - rank};
}

/// Whether r lies in the GF(2) span of the symplectic rows (Pauli products up to phase).
inline bool in_stabilizer(const ParityCheck& M, const F4Vector& r) {
  if (r.size() != M.n()) throw DimensionError("in_stabilizer: length mismatch");
  if (M.basis()) return M.basis()->contains(to_symplectic(r).bits());
  ParityCheck copy = M;
  return copy.freeze().contains(to_symplectic(r).bits());
}

// ---------------------------------------------------------------------------
// QPC text format
//
//   QPC v1 n=<n> m=<m>
//   <col><sym> <col><sym> ...      one line per row, columns ascending,
//                                  sym in {w, W, y}, LF endings.

inline void write_qpc(std::ostream& os, const ParityCheck& M) {
  os << "QPC v1 n=" << M.n() << " m=" << M.m() << '\n';
  for (const auto& row : M.rows()) {
    bool first = true;
    for (const auto& e : row) {
      if (!first) os << ' ';
      first = false;
      os << e.index << e.symbol.glyph();
    }
    os << '\n';
  }
}

inline std::string to_qpc(const ParityCheck& M) {
  std::ostringstream os;
  write_qpc(os, M);
  return os.str();
}

inline ParityCheck read_qpc(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("QPC: missing header");
  std::size_t n = 0, m = 0;
  {
    std::istringstream hs(line);
    std::string magic, version, ntok, mtok, extra;
    hs >> magic >> version >> ntok >> mtok;
    if (magic != "QPC" || version != "v1" || ntok.rfind("n=", 0) != 0 || mtok.rfind("m=", 0) != 0 || (hs >> extra))
      throw ParseError("QPC: bad header '" + line + "'");
    try {
      n = std::stoull(ntok.substr(2));
      m = std::stoull(mtok.substr(2));
    } catch (const std::exception&) {
      throw ParseError("QPC: bad header '" + line + "'");
    }
  }
  std::vector<SparseRow> rows;
  rows.reserve(m);
  for (std::size_t r = 0; r < m; ++r) {
    if (!std::getline(is, line)) throw ParseError("QPC: expected " + std::to_string(m) + " rows");
    if (!line.empty() && line.back() == '\r') throw ParseError("QPC: CR line ending");
    std::istringstream ls(line);
    std::string tok;
    SparseRow row;
    while (ls >> tok) {
      if (tok.size() < 2) throw ParseError("QPC: bad token '" + tok + "'");
      F4 sym = F4::from_glyph(tok.back());
      if (sym.is_zero()) throw ParseError("QPC: zero symbol in token '" + tok + "'");
      std::string digits = tok.substr(0, tok.size() - 1);
      if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw ParseError("QPC: bad column in token '" + tok + "'");
      auto col = std::stoull(digits);
      if (!row.empty() && col <= row.back().index) throw ParseError("QPC: columns must ascend");
      row.push_back({static_cast<std::uint32_t>(col), sym});
    }
    rows.push_back(std::move(row));
  }
  while (std::getline(is, line))
    if (!line.empty()) throw ParseError("QPC: trailing content after last row");
  return ParityCheck(n, std::move(rows));
}

inline ParityCheck from_qpc(const std::string& text) {
  std::istringstream is(text);
  return read_qpc(is);
}

// ---------------------------------------------------------------------------
// Undetectable-error witness from short cycles of a single-label subgraph.

struct CycleWitness {
  F4Vector error;
  F4 symbol;                       // symbol placed on every cycle qubit
  std::vector<std::uint32_t> qubits;  // cycle qubits, ascending
  std::vector<std::uint32_t> checks;  // cycle checks, ascending
  std::size_t weight() const { return qubits.size(); }
};

namespace detail {

/// Shortest cycle through `source` in the bipartite qubit/check graph
/// restricted to edges labeled `label`. Vertices: qubits [0, n), checks [n, n+m).
inline std::optional<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>>
shortest_labeled_cycle(const ParityCheck& M, F4 label, std::uint32_t source, std::size_t bound) {
  const std::size_t n = M.n();
  const std::size_t total = n + M.m();
  constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> dist(total, kNone), parent(total, kNone);
  auto neighbours = [&](std::uint32_t v, auto&& fn) {
    if (v < n) {
      for (const auto& e : M.column(v))
        if (e.symbol == label) fn(static_cast<std::uint32_t>(n + e.index));
    } else {
      for (const auto& e : M.row(v - n))
        if (e.symbol == label) fn(e.index);
    }
  };
  std::deque<std::uint32_t> queue{source};
  dist[source] = 0;
  std::size_t best = bound;
  std::pair<std::uint32_t, std::uint32_t> meet{kNone, kNone};
  while (!queue.empty()) {
    std::uint32_t u = queue.front();
    queue.pop_front();
    if (2 * static_cast<std::size_t>(dist[u]) + 1 >= best) break;
    neighbours(u, [&](std::uint32_t w) {
      if (dist[w] == kNone) {
        dist[w] = dist[u] + 1;
        parent[w] = u;
        queue.push_back(w);
      } else if (parent[u] != w) {
        std::size_t len = static_cast<std::size_t>(dist[u]) + dist[w] + 1;
        if (len < best) {
          best = len;
          meet = {u, w};
        }
      }
    });
  }
  if (meet.first == kNone) return std::nullopt;
  std::vector<std::uint32_t> path;
  for (std::uint32_t v = meet.first; v != kNone; v = parent[v]) path.push_back(v);
  for (std::uint32_t v = meet.second; v != kNone; v = parent[v]) path.push_back(v);
  std::sort(path.begin(), path.end());
  // Both branches end at the source; any other repeat means the walk is not a simple cycle.
  if (std::adjacent_find(path.begin(), path.end(), [source](auto x, auto y) { return x == y && x != source; }) !=
      path.end())
    return std::nullopt;
  path.erase(std::unique(path.begin(), path.end()), path.end());
  std::vector<std::uint32_t> qubits, checks;
  for (auto v : path) (v < n ? qubits : checks).push_back(v < n ? v : static_cast<std::uint32_t>(v - n));
  return std::make_pair(std::move(qubits), std::move(checks));
}

}  // namespace detail

/// Searches the w-labeled subgraph for short cycles and returns the first
/// one (shortest first) that carries a nonzero symbol giving an error with
/// zero syndrome outside the stabilizer. std::nullopt when the subgraph is
/// acyclic or no cycle qualifies.
inline std::optional<CycleWitness> find_omega_cycle_error(const ParityCheck& M, F4 label = F4::omega(),
                                                         std::size_t max_candidates = 64) {
  std::vector<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>> cycles;
  std::size_t girth = std::numeric_limits<std::size_t>::max();
  for (std::uint32_t q = 0; q < M.n(); ++q) {
    // Cycles up to twice the girth are kept as fallbacks.
    std::size_t bound = girth == std::numeric_limits<std::size_t>::max() ? girth : 2 * girth + 1;
    auto c = detail::shortest_labeled_cycle(M, label, q, bound);
    if (!c) continue;
    girth = std::min(girth, c->first.size() + c->second.size());
    cycles.push_back(std::move(*c));
  }
  if (cycles.empty()) return std::nullopt;
  std::stable_sort(cycles.begin(), cycles.end(), [](const auto& x, const auto& y) {
    return std::make_pair(x.first.size() + x.second.size(), x.first) <
           std::make_pair(y.first.size() + y.second.size(), y.first);
  });
  cycles.erase(std::unique(cycles.begin(), cycles.end()), cycles.end());

  ParityCheck frozen = M;
  frozen.freeze();
  std::size_t tried = 0;
  for (const auto& [qubits, checks] : cycles) {
    if (tried++ == max_candidates) break;
    for (F4 sym : {F4::omega(), F4::omega_bar(), F4::one()}) {
      F4Vector e(M.n());
      for (auto q : qubits) e[q] = sym;
      if (!syndrome(frozen, e).is_zero() || in_stabilizer(frozen, e)) continue;
      return CycleWitness{std::move(e), sym, qubits, checks};
    }
  }
  return std::nullopt;
}

}  // namespace qldpc
