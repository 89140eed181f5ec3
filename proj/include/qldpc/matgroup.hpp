#pragma once

// Finite 2x2 matrix groups over prime fields: PSL2(p), PSL2(p) x PSL2(p),
// and DET4(p) = { M in GL2(p) : det(M)^2 = +-1 }. Groups are enumerated
// completely, indexed in canonical lexicographic order, and multiplied by
// hash lookup of the product's canonical key.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <iterator>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "qldpc/errors.hpp"

namespace qldpc {

using GroupIndex = std::uint32_t;

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::uint32_t mod_pow(std::uint64_t base, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1 % p;
  base %= p;
  while (e) {
    if (e & 1u) r = r * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

/// Square root of -1 mod p (p = 1 mod 4); the smaller of the two roots.
inline std::uint32_t sqrt_minus_one(std::uint32_t p) {
  if (p % 4 != 1 || !is_prime(p)) throw PreconditionError("sqrt(-1) needs a prime p = 1 (mod 4)");
  for (std::uint32_t x = 2; x < p; ++x)
    if (static_cast<std::uint64_t>(x) * x % p == p - 1) return x;
  throw PreconditionError("no square root of -1");  // unreachable for primes = 1 mod 4
}

/// 2x2 matrix [[a, b], [c, d]] over F_p.
struct Mat2 {
  std::uint32_t a = 1, b = 0, c = 0, d = 1;
  std::uint32_t p = 2;

  static Mat2 identity(std::uint32_t p) { return {1, 0, 0, 1, p}; }

  /// Entries are reduced mod p, negatives allowed.
  static Mat2 from_ints(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d,
                        std::uint32_t p) {
    auto r = [p](std::int64_t v) {
      std::int64_t m = v % static_cast<std::int64_t>(p);
      return static_cast<std::uint32_t>(m < 0 ? m + p : m);
    };
    return {r(a), r(b), r(c), r(d), p};
  }

  std::uint32_t det() const {
    std::uint64_t ad = static_cast<std::uint64_t>(a) * d % p;
    std::uint64_t bc = static_cast<std::uint64_t>(b) * c % p;
    return static_cast<std::uint32_t>((ad + p - bc) % p);
  }

  Mat2 operator*(const Mat2& o) const {
    if (o.p != p) throw DimensionError("Mat2 product over different fields");
    auto f = [this](std::uint64_t x, std::uint64_t y, std::uint64_t z, std::uint64_t w) {
      return static_cast<std::uint32_t>((x * y + z * w) % p);
    };
    return {f(a, o.a, b, o.c), f(a, o.b, b, o.d), f(c, o.a, d, o.c), f(c, o.b, d, o.d), p};
  }

  Mat2 operator-() const {
    auto n = [this](std::uint32_t v) { return v == 0 ? 0u : p - v; };
    return {n(a), n(b), n(c), n(d), p};
  }

  Mat2 inverse() const {
    std::uint32_t dt = det();
    if (dt == 0) throw DomainError("Mat2::inverse: singular matrix");
    std::uint64_t inv = mod_pow(dt, p - 2, p);
    auto s = [&](std::uint32_t v) { return static_cast<std::uint32_t>(v * inv % p); };
    auto n = [this](std::uint32_t v) { return v == 0 ? 0u : p - v; };
    return {s(d), s(n(b)), s(n(c)), s(a), p};
  }

  bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }

  auto tie() const { return std::array<std::uint32_t, 4>{a, b, c, d}; }
  friend bool operator==(const Mat2& x, const Mat2& y) { return x.p == y.p && x.tie() == y.tie(); }
  friend bool operator<(const Mat2& x, const Mat2& y) { return x.tie() < y.tie(); }

  friend std::ostream& operator<<(std::ostream& os, const Mat2& m) {
    return os << "[[" << m.a << "," << m.b << "],[" << m.c << "," << m.d << "]]";
  }
};

/// Representative of -M mod +-I chosen as the lexicographically smaller of {M, -M}.
inline Mat2 psl2_canonicalize(const Mat2& m) {
  if (m.det() != 1) throw DomainError("psl2_canonicalize: determinant must be 1");
  Mat2 n = -m;
  return n < m ? n : m;
}

enum class GroupKind { PSL2, PSL2xPSL2, DET4 };

inline std::string to_string(GroupKind k) {
  switch (k) {
    case GroupKind::PSL2: return "PSL2";
    case GroupKind::PSL2xPSL2: return "PSL2xPSL2";
    case GroupKind::DET4: return "DET4";
  }
  return "?";
}

/// One or two Mat2 factors (direct products are tuples, not block matrices).
struct GroupElement {
  std::array<Mat2, 2> parts{};
  std::uint8_t arity = 1;
  bool canonical = false;

  static GroupElement single(const Mat2& m) { return {{m, Mat2::identity(m.p)}, 1, false}; }
  static GroupElement pair(const Mat2& m1, const Mat2& m2) { return {{m1, m2}, 2, false}; }

  std::span<const Mat2> factors() const { return {parts.data(), arity}; }

  GroupElement operator*(const GroupElement& o) const {
    if (o.arity != arity) throw DimensionError("GroupElement product: arity mismatch");
    GroupElement r = *this;
    for (std::size_t i = 0; i < arity; ++i) r.parts[i] = parts[i] * o.parts[i];
    r.canonical = false;
    return r;
  }
  GroupElement inverse() const {
    GroupElement r = *this;
    for (std::size_t i = 0; i < arity; ++i) r.parts[i] = parts[i].inverse();
    r.canonical = false;
    return r;
  }

  friend bool operator==(const GroupElement& x, const GroupElement& y) {
    if (x.arity != y.arity) return false;
    for (std::size_t i = 0; i < x.arity; ++i)
      if (!(x.parts[i] == y.parts[i])) return false;
    return true;
  }

  friend std::ostream& operator<<(std::ostream& os, const GroupElement& g) {
    if (g.arity == 1) return os << g.parts[0];
    return os << "(" << g.parts[0] << ", " << g.parts[1] << ")";
  }
};

/// A finite matrix group, fully enumerated. Immutable after construction.
class GroupTable {
 public:
  static GroupTable enumerate(GroupKind kind, std::uint32_t p);

  GroupKind kind() const { return kind_; }
  std::uint32_t prime() const { return p_; }
  std::size_t size() const { return elements_.size(); }
  const GroupElement& element(GroupIndex i) const { return elements_.at(i); }
  const std::vector<GroupElement>& elements() const { return elements_; }

  /// Canonical representative (sign quotient for PSL2 factors).
  GroupElement canonicalize(GroupElement g) const {
    check_shape(g);
    if (kind_ != GroupKind::DET4)
      for (std::size_t i = 0; i < g.arity; ++i) g.parts[i] = psl2_canonicalize(g.parts[i]);
    g.canonical = true;
    return g;
  }

  std::optional<GroupIndex> find(const GroupElement& g) const {
    if (!contains(g)) return std::nullopt;
    GroupElement c = canonicalize(g);
    auto it = index_.find(key(c));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  GroupIndex index_of(const GroupElement& g) const {
    auto i = find(g);
    if (!i) throw PreconditionError("element is not a member of the group");
    return *i;
  }
  bool contains(const GroupElement& g) const {
    if (g.arity != arity() || g.parts[0].p != p_) return false;
    for (std::size_t i = 0; i < g.arity; ++i) {
      std::uint32_t dt = g.parts[i].det();
      if (kind_ == GroupKind::DET4) {
        std::uint64_t sq = static_cast<std::uint64_t>(dt) * dt % p_;
        if (sq != 1 && sq != p_ - 1) return false;
      } else if (dt != 1) {
        return false;
      }
    }
    return true;
  }

  GroupIndex mul(GroupIndex x, GroupIndex y) const { return index_of(elements_[x] * elements_[y]); }
  GroupIndex inverse(GroupIndex x) const { return index_of(elements_[x].inverse()); }
  GroupIndex identity() const { return identity_; }

  /// x -> x*g for every element x.
  std::vector<GroupIndex> right_mul_map(GroupIndex g) const {
    std::vector<GroupIndex> out(size());
    for (GroupIndex x = 0; x < size(); ++x) out[x] = mul(x, g);
    return out;
  }

  /// Multiplicative order of an element.
  std::size_t order(GroupIndex g) const {
    std::size_t k = 1;
    for (GroupIndex x = g; x != identity_; x = mul(x, g)) ++k;
    return k;
  }

  /// Sorted elements of the subgroup generated by `gens` (breadth-first closure).
  std::vector<GroupIndex> closure(std::span<const GroupIndex> gens) const {
    std::vector<char> seen(size(), 0);
    std::vector<GroupIndex> out{identity_};
    seen[identity_] = 1;
    std::deque<GroupIndex> queue{identity_};
    while (!queue.empty()) {
      GroupIndex x = queue.front();
      queue.pop_front();
      for (GroupIndex g : gens) {
        GroupIndex y = mul(x, g);
        if (!seen[y]) {
          seen[y] = 1;
          out.push_back(y);
          queue.push_back(y);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Number of Mat2 factors per element.
  std::size_t arity() const { return kind_ == GroupKind::PSL2xPSL2 ? 2 : 1; }

 private:

  void check_shape(const GroupElement& g) const {
    if (g.arity != arity()) throw DimensionError("group element has the wrong number of factors");
    for (std::size_t i = 0; i < g.arity; ++i)
      if (g.parts[i].p != p_) throw DimensionError("group element over the wrong field");
  }

  std::uint64_t key(const GroupElement& g) const {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < g.arity; ++i)
      for (std::uint32_t e : g.parts[i].tie()) k = k * p_ + e;
    return k;
  }

  GroupKind kind_ = GroupKind::PSL2;
  std::uint32_t p_ = 2;
  GroupIndex identity_ = 0;
  std::vector<GroupElement> elements_;
  std::unordered_map<std::uint64_t, GroupIndex> index_;
};

inline GroupTable GroupTable::enumerate(GroupKind kind, std::uint32_t p) {
  if (p < 3 || !is_prime(p)) throw PreconditionError("group enumeration needs an odd prime p");
  // Keys pack 4 or 8 entries base p into 64 bits.
  if (p > 251) throw PreconditionError("group enumeration supports p <= 251");
  if (kind == GroupKind::DET4 && p % 4 != 1)
    throw PreconditionError("DET4(p) needs p = 1 (mod 4) so that sqrt(-1) exists");

  GroupTable t;
  t.kind_ = kind;
  t.p_ = p;

  std::uint32_t i_unit = kind == GroupKind::DET4 ? sqrt_minus_one(p) : 0;
  auto admissible = [&](std::uint32_t dt) {
    if (kind != GroupKind::DET4) return dt == 1;
    return dt == 1 || dt == p - 1 || dt == i_unit || dt == p - i_unit;
  };

  std::vector<Mat2> factor;
  for (std::uint32_t a = 0; a < p; ++a)
    for (std::uint32_t b = 0; b < p; ++b)
      for (std::uint32_t c = 0; c < p; ++c)
        for (std::uint32_t d = 0; d < p; ++d) {
          Mat2 m{a, b, c, d, p};
          if (!admissible(m.det())) continue;
          if (kind != GroupKind::DET4 && !(psl2_canonicalize(m) == m)) continue;
          factor.push_back(m);
        }
  // `factor` is already in lexicographic (a, b, c, d) order.
  if (kind == GroupKind::PSL2xPSL2) {
    t.elements_.reserve(factor.size() * factor.size());
    for (const Mat2& m1 : factor)
      for (const Mat2& m2 : factor) {
        auto g = GroupElement::pair(m1, m2);
        g.canonical = true;
        t.elements_.push_back(g);
      }
  } else {
    t.elements_.reserve(factor.size());
    for (const Mat2& m : factor) {
      auto g = GroupElement::single(m);
      g.canonical = true;
      t.elements_.push_back(g);
    }
  }
  t.index_.reserve(t.elements_.size() * 2);
  for (GroupIndex i = 0; i < t.elements_.size(); ++i) t.index_.emplace(t.key(t.elements_[i]), i);

  GroupElement id = kind == GroupKind::PSL2xPSL2
                        ? GroupElement::pair(Mat2::identity(p), Mat2::identity(p))
                        : GroupElement::single(Mat2::identity(p));
  t.identity_ = t.index_of(id);
  return t;
}

/// A subgroup given by its sorted element indices.
struct Subgroup {
  std::vector<GroupIndex> elements;

  static Subgroup generated_by(const GroupTable& g, std::span<const GroupIndex> gens) {
    return {g.closure(gens)};
  }
  static Subgroup trivial(const GroupTable& g) { return {{g.identity()}}; }
  static Subgroup whole(const GroupTable& g) {
    Subgroup s;
    s.elements.resize(g.size());
    for (GroupIndex i = 0; i < g.size(); ++i) s.elements[i] = i;
    return s;
  }

  std::size_t size() const { return elements.size(); }
  bool contains(GroupIndex x) const { return std::binary_search(elements.begin(), elements.end(), x); }
};

/// Closure under product and inverse plus identity membership.
inline bool is_subgroup(const GroupTable& g, const Subgroup& s) {
  if (!std::is_sorted(s.elements.begin(), s.elements.end())) return false;
  if (std::adjacent_find(s.elements.begin(), s.elements.end()) != s.elements.end()) return false;
  if (!s.contains(g.identity())) return false;
  for (GroupIndex x : s.elements) {
    if (x >= g.size() || !s.contains(g.inverse(x))) return false;
    for (GroupIndex y : s.elements)
      if (!s.contains(g.mul(x, y))) return false;
  }
  return true;
}

inline Subgroup intersect(const Subgroup& h, const Subgroup& k) {
  Subgroup r;
  std::set_intersection(h.elements.begin(), h.elements.end(), k.elements.begin(), k.elements.end(),
                        std::back_inserter(r.elements));
  return r;
}

/// Left cosets xH, ordered by their minimum element index (the representative).
class CosetTable {
 public:
  CosetTable(const GroupTable& g, Subgroup sub) : subgroup_(std::move(sub)) {
    if (!is_subgroup(g, subgroup_)) throw PreconditionError("coset_partition: not a subgroup");
    constexpr std::uint32_t kUnset = ~0u;
    coset_of_.assign(g.size(), kUnset);
    // Scanning x upward makes the first unassigned x the minimum of its coset.
    for (GroupIndex x = 0; x < g.size(); ++x) {
      if (coset_of_[x] != kUnset) continue;
      auto id = static_cast<std::uint32_t>(cosets_.size());
      std::vector<GroupIndex> members;
      members.reserve(subgroup_.size());
      for (GroupIndex h : subgroup_.elements) {
        GroupIndex y = g.mul(x, h);
        coset_of_[y] = id;
        members.push_back(y);
      }
      std::sort(members.begin(), members.end());
      cosets_.push_back(std::move(members));
    }
  }

  const Subgroup& subgroup() const { return subgroup_; }
  std::size_t count() const { return cosets_.size(); }
  const std::vector<GroupIndex>& coset(std::size_t c) const { return cosets_.at(c); }
  std::uint32_t coset_of(GroupIndex x) const { return coset_of_.at(x); }
  GroupIndex rep_of(std::size_t c) const { return cosets_.at(c).front(); }

 private:
  Subgroup subgroup_;
  std::vector<std::vector<GroupIndex>> cosets_;
  std::vector<std::uint32_t> coset_of_;
};

inline CosetTable coset_partition(const GroupTable& g, const Subgroup& sub) { return CosetTable(g, sub); }

/// Elements of xH intersected with yK (both given as sorted member lists).
inline std::vector<GroupIndex> coset_intersection(std::span<const GroupIndex> xh,
                                                  std::span<const GroupIndex> yk) {
  std::vector<GroupIndex> out;
  std::set_intersection(xh.begin(), xh.end(), yk.begin(), yk.end(), std::back_inserter(out));
  return out;
}

}  // namespace qldpc
