#pragma once

// Arithmetic over GF(4) = {0, 1, w, W} (W = w^2 = conj(w)) and the
// Pauli/symplectic dictionary I<->0, X<->w, Z<->W, Y<->1.
//
// A symbol is stored as two bits (x, z): 0=(0,0) w=(1,0) W=(0,1) 1=(1,1).
// With this encoding field addition is XOR and the Hermitian trace form
// tr(a * conj(b)) is the binary symplectic product a.x*b.z + a.z*b.x.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qldpc/errors.hpp"
#include "qldpc/gf2.hpp"

namespace qldpc {

class F4 {
 public:
  constexpr F4() = default;

  static constexpr F4 zero() { return F4(0); }
  static constexpr F4 one() { return F4(3); }
  static constexpr F4 omega() { return F4(1); }
  static constexpr F4 omega_bar() { return F4(2); }

  /// From the (x, z) bit pair.
  static constexpr F4 from_bits(bool x, bool z) {
    return F4(static_cast<std::uint8_t>((x ? 1 : 0) | (z ? 2 : 0)));
  }
  static constexpr F4 from_code(std::uint8_t code) { return F4(code & 3u); }

  constexpr std::uint8_t code() const { return bits_; }
  constexpr bool x() const { return bits_ & 1u; }
  constexpr bool z() const { return bits_ & 2u; }
  constexpr bool is_zero() const { return bits_ == 0; }

  constexpr F4 conj() const { return from_bits(z(), x()); }

  friend constexpr F4 operator+(F4 a, F4 b) { return F4(a.bits_ ^ b.bits_); }
  friend constexpr F4 operator*(F4 a, F4 b) {
    if (a.is_zero() || b.is_zero()) return zero();
    // discrete log base w: 1 -> 0, w -> 1, W -> 2
    constexpr std::array<int, 4> log{-1, 1, 2, 0};
    constexpr std::array<std::uint8_t, 3> exp{3, 1, 2};
    return F4(exp[(log[a.bits_] + log[b.bits_]) % 3]);
  }
  friend constexpr bool operator==(F4, F4) = default;

  /// Order used for deterministic tie breaking: 0 < w < W < 1.
  constexpr int rank() const { return bits_; }

  /// Text glyph: '.', 'w', 'W', 'y'.
  constexpr char glyph() const {
    constexpr std::array<char, 4> g{'.', 'w', 'W', 'y'};
    return g[bits_];
  }
  /// Pauli letter: 'I', 'X', 'Z', 'Y'.
  constexpr char pauli() const {
    constexpr std::array<char, 4> g{'I', 'X', 'Z', 'Y'};
    return g[bits_];
  }

  static F4 from_glyph(char c) {
    switch (c) {
      case '.': return zero();
      case 'w': return omega();
      case 'W': return omega_bar();
      case 'y': return one();
      default: throw ParseError(std::string("bad GF(4) glyph '") + c + "'");
    }
  }

  /// All four symbols in tie-break order (0, w, W, 1).
  static constexpr std::array<F4, 4> all() {
    return {zero(), omega(), omega_bar(), one()};
  }

 private:
  constexpr explicit F4(std::uint8_t b) : bits_(b) {}
  std::uint8_t bits_ = 0;
};

/// tr(x) = x + x^2, a bit.
constexpr bool trace(F4 a) {
  F4 t = a + a * a;
  return t == F4::one();
}

/// tr(a * conj(b)); 1 iff the associated Paulis anticommute.
constexpr bool herm_pair(F4 a, F4 b) { return trace(a * b.conj()); }

/// Same value as herm_pair, computed from the symplectic bits.
constexpr bool symplectic_pair(F4 a, F4 b) {
  return (a.x() && b.z()) != (a.z() && b.x());
}

/// A length-n word over GF(4): a Pauli error or a stabilizer row.
class F4Vector {
 public:
  F4Vector() = default;
  explicit F4Vector(std::size_t n) : sym_(n) {}
  explicit F4Vector(std::vector<F4> s) : sym_(std::move(s)) {}

  /// Parses glyphs, e.g. "w.W.y".
  static F4Vector parse(std::string_view text) {
    F4Vector v(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) v.sym_[i] = F4::from_glyph(text[i]);
    return v;
  }

  std::size_t size() const { return sym_.size(); }
  F4 operator[](std::size_t i) const { return sym_[i]; }
  F4& operator[](std::size_t i) { return sym_[i]; }
  std::span<const F4> symbols() const { return sym_; }

  std::size_t weight() const {
    std::size_t w = 0;
    for (F4 s : sym_) w += !s.is_zero();
    return w;
  }
  bool is_zero() const { return weight() == 0; }

  F4Vector& operator+=(const F4Vector& o) {
    if (o.size() != size()) throw DimensionError("F4Vector addition: length mismatch");
    for (std::size_t i = 0; i < sym_.size(); ++i) sym_[i] = sym_[i] + o.sym_[i];
    return *this;
  }
  friend F4Vector operator+(F4Vector a, const F4Vector& b) { return a += b; }
  friend bool operator==(const F4Vector&, const F4Vector&) = default;

  std::string to_string() const {
    std::string s(sym_.size(), '.');
    for (std::size_t i = 0; i < sym_.size(); ++i) s[i] = sym_[i].glyph();
    return s;
  }

 private:
  std::vector<F4> sym_;
};

/// <u, v> = tr(sum_i u_i conj(v_i)).
inline bool vec_inner(const F4Vector& u, const F4Vector& v) {
  if (u.size() != v.size()) throw DimensionError("vec_inner: length mismatch");
  bool acc = false;
  for (std::size_t i = 0; i < u.size(); ++i) acc ^= herm_pair(u[i], v[i]);
  return acc;
}

/// Binary image of an F4Vector of length n: 2n bits, x-part in [0, n),
/// z-part in [n, 2n).
class SymplecticVector {
 public:
  SymplecticVector() = default;
  explicit SymplecticVector(std::size_t n) : n_(n), bits_(2 * n) {}

  std::size_t qubits() const { return n_; }
  const BitRow& bits() const { return bits_; }
  BitRow& bits() { return bits_; }

  bool x(std::size_t q) const { return bits_.test(q); }
  bool z(std::size_t q) const { return bits_.test(n_ + q); }

  friend SymplecticVector operator^(SymplecticVector a, const SymplecticVector& b) {
    if (a.n_ != b.n_) throw DimensionError("SymplecticVector xor: length mismatch");
    a.bits_ ^= b.bits_;
    return a;
  }
  friend bool operator==(const SymplecticVector&, const SymplecticVector&) = default;

 private:
  std::size_t n_ = 0;
  BitRow bits_;
};

inline SymplecticVector to_symplectic(const F4Vector& v) {
  SymplecticVector s(v.size());
  for (std::size_t q = 0; q < v.size(); ++q) {
    if (v[q].x()) s.bits().set(q);
    if (v[q].z()) s.bits().set(v.size() + q);
  }
  return s;
}

inline F4Vector from_symplectic(const SymplecticVector& s) {
  F4Vector v(s.qubits());
  for (std::size_t q = 0; q < s.qubits(); ++q) v[q] = F4::from_bits(s.x(q), s.z(q));
  return v;
}

}  // namespace qldpc
