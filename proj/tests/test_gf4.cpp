#include <gtest/gtest.h>

#include <array>
#include <complex>
#include <random>

#include "qldpc/gf2.hpp"
#include "qldpc/gf4.hpp"

using namespace qldpc;

namespace {

// GF(4) as GF(2)[t]/(t^2 + t + 1), w = t.
struct Poly {
  int c0, c1;
};
Poly poly_of(F4 a) {
  if (a == F4::zero()) return {0, 0};
  if (a == F4::one()) return {1, 0};
  if (a == F4::omega()) return {0, 1};
  return {1, 1};
}
Poly poly_mul(Poly a, Poly b) {
  int k0 = a.c0 & b.c0;
  int k1 = (a.c0 & b.c1) ^ (a.c1 & b.c0);
  int k2 = a.c1 & b.c1;  // t^2 = t + 1
  return {k0 ^ k2, k1 ^ k2};
}

using C = std::complex<double>;
using M2 = std::array<C, 4>;
M2 pauli(F4 a) {
  switch (a.pauli()) {
    case 'X': return {0, 1, 1, 0};
    case 'Z': return {1, 0, 0, -1};
    case 'Y': return {0, C(0, -1), C(0, 1), 0};
    default: return {1, 0, 0, 1};
  }
}
M2 mul(const M2& a, const M2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}
bool paulis_anticommute(F4 a, F4 b) {
  auto ab = mul(pauli(a), pauli(b));
  auto ba = mul(pauli(b), pauli(a));
  for (int i = 0; i < 4; ++i)
    if (std::abs(ab[i] - ba[i]) > 1e-12) return true;
  return false;
}

}  // namespace

TEST(GF4, MultiplicationMatchesPolynomialModel) {
  for (F4 a : F4::all())
    for (F4 b : F4::all()) {
      Poly p = poly_mul(poly_of(a), poly_of(b));
      Poly q = poly_of(a * b);
      EXPECT_EQ(p.c0, q.c0);
      EXPECT_EQ(p.c1, q.c1);
      Poly s = poly_of(a + b);
      EXPECT_EQ(s.c0, poly_of(a).c0 ^ poly_of(b).c0);
      EXPECT_EQ(s.c1, poly_of(a).c1 ^ poly_of(b).c1);
    }
}

TEST(GF4, ConjugationIsSquaring) {
  for (F4 a : F4::all()) EXPECT_EQ(a.conj(), a * a);
  EXPECT_EQ(F4::omega() * F4::omega(), F4::omega_bar());
  EXPECT_EQ(F4::omega() * F4::omega_bar(), F4::one());
  EXPECT_EQ(F4::omega() + F4::omega_bar(), F4::one());
}

TEST(GF4, TraceValues) {
  EXPECT_FALSE(trace(F4::zero()));
  EXPECT_FALSE(trace(F4::one()));
  EXPECT_TRUE(trace(F4::omega()));
  EXPECT_TRUE(trace(F4::omega_bar()));
}

TEST(GF4, HermitianPairMatchesPauliCommutation) {
  for (F4 a : F4::all())
    for (F4 b : F4::all()) {
      EXPECT_EQ(herm_pair(a, b), paulis_anticommute(a, b)) << a.glyph() << b.glyph();
      EXPECT_EQ(herm_pair(a, b), symplectic_pair(a, b));
      EXPECT_EQ(herm_pair(a, b), herm_pair(b, a));
    }
  EXPECT_TRUE(herm_pair(F4::omega(), F4::one()));
  EXPECT_FALSE(herm_pair(F4::omega(), F4::omega()));
}

TEST(GF4, GlyphRoundTrip) {
  for (F4 a : F4::all()) EXPECT_EQ(F4::from_glyph(a.glyph()), a);
  EXPECT_THROW(F4::from_glyph('x'), ParseError);
  EXPECT_EQ(F4Vector::parse("w.Wy").to_string(), "w.Wy");
}

TEST(GF4, TieOrder) {
  auto all = F4::all();
  for (int i = 0; i < 4; ++i) EXPECT_EQ(all[i].rank(), i);
}

TEST(F4Vector, InnerProductAndWeight) {
  auto u = F4Vector::parse("wW.y");
  auto v = F4Vector::parse("ww.w");
  EXPECT_EQ(u.weight(), 3u);
  // w.conj(w) -> 0, W.conj(w) -> 1, y.conj(w) -> 1: total 0
  EXPECT_FALSE(vec_inner(u, v));
  EXPECT_TRUE(vec_inner(u, F4Vector::parse("W...")));
  EXPECT_THROW(vec_inner(u, F4Vector::parse("w")), DimensionError);
}

TEST(F4Vector, SymplecticRoundTrip) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    F4Vector u(37), v(37);
    for (std::size_t i = 0; i < 37; ++i) {
      u[i] = F4::from_code(rng() & 3);
      v[i] = F4::from_code(rng() & 3);
    }
    auto su = to_symplectic(u);
    EXPECT_EQ(from_symplectic(su), u);
    EXPECT_EQ(from_symplectic(su ^ to_symplectic(v)), u + v);
    // symplectic form on the bit image equals the trace inner product
    bool form = false;
    for (std::size_t q = 0; q < 37; ++q) form ^= (su.x(q) && to_symplectic(v).z(q)) != (su.z(q) && to_symplectic(v).x(q));
    EXPECT_EQ(form, vec_inner(u, v));
  }
}

TEST(GF2, EchelonRankMatchesDenseElimination) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    std::size_t rows = 1 + rng() % 40, cols = 1 + rng() % 150;
    std::vector<std::vector<int>> dense(rows, std::vector<int>(cols));
    EchelonBasis basis(cols);
    for (auto& r : dense) {
      BitRow b(cols);
      for (std::size_t c = 0; c < cols; ++c)
        if ((rng() % 5) == 0) {
          r[c] = 1;
          b.set(c);
        }
      basis.insert(b);
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
      std::size_t piv = rank;
      while (piv < rows && !dense[piv][c]) ++piv;
      if (piv == rows) continue;
      std::swap(dense[piv], dense[rank]);
      for (std::size_t r = 0; r < rows; ++r)
        if (r != rank && dense[r][c])
          for (std::size_t k = 0; k < cols; ++k) dense[r][k] ^= dense[rank][k];
      ++rank;
    }
    EXPECT_EQ(basis.rank(), rank);
  }
}

TEST(GF2, SpanMembership) {
  EchelonBasis b(130);
  BitRow x(130), y(130);
  x.set(3);
  x.set(100);
  y.set(100);
  y.set(129);
  EXPECT_TRUE(b.insert(x));
  EXPECT_TRUE(b.insert(y));
  BitRow s = x;
  s ^= y;
  EXPECT_TRUE(b.contains(s));
  EXPECT_FALSE(b.insert(s));
  BitRow z(130);
  z.set(129);
  EXPECT_FALSE(b.contains(z));
}
