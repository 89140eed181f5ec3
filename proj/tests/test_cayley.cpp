#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "qldpc/cayley_construction.hpp"
#include "qldpc/presets.hpp"
#include "support.hpp"

using namespace qldpc;

namespace {

const CayleyCode& reference() {
  static const CayleyCode code = [] {
    auto c = build_48_code(to_spec(presets::det4_13_4_8()));
    c.matrix.freeze();
    return c;
  }();
  return code;
}

}  // namespace

TEST(ValidateCayley, ReferenceSpec) {
  auto r = validate_cayley(to_spec(presets::det4_13_4_8()));
  EXPECT_TRUE(r.checks.ok()) << r.checks.to_string();
  EXPECT_EQ(r.generated, 8736u);
  EXPECT_EQ(r.order_plus_minus_inv, 4u);
  EXPECT_EQ(r.order_minus_plus, 4u);
  EXPECT_EQ(r.det_plus, 12u);
  EXPECT_EQ(r.det_minus, 5u);
  EXPECT_EQ(r.class_plus, 0);
  EXPECT_EQ(r.class_minus, 1);
  EXPECT_FALSE(r.proper_bipartition);
}

TEST(ValidateCayley, DegenerateGeneratorsRejected) {
  auto spec = to_spec(presets::det4_13_degenerate());
  EXPECT_EQ(spec.g_plus * spec.g_minus, Mat2::identity(13));
  auto r = validate_cayley(spec);
  EXPECT_EQ(r.det_plus, 8u);
  EXPECT_EQ(r.det_minus, 5u);
  EXPECT_FALSE(r.checks.passed("S has 4 distinct elements"));
  EXPECT_FALSE(r.checks.passed("S generates DET4(p)"));
  EXPECT_THROW(build_48_code(spec), PreconditionError);

  auto same = to_spec(presets::det4_13_4_8());
  same.g_plus = same.g_minus;
  EXPECT_FALSE(validate_cayley(same).checks.passed("S has 4 distinct elements"));
}

TEST(ValidateCayley, PrimeCondition) {
  CayleySpec s{7, Mat2::identity(7), Mat2::identity(7)};
  EXPECT_THROW(validate_cayley(s), PreconditionError);
  s.p = 15;
  EXPECT_THROW(validate_cayley(s), PreconditionError);
}

TEST(CayleyGraph, Shape) {
  const auto& c = reference();
  auto g = build_cayley_graph(c.group);
  EXPECT_EQ(g.vertices, 8736u);
  EXPECT_EQ(g.edge_count(), 17472u);
  const GroupTable& G = *c.group.group;
  auto id = G.identity();
  std::array<GroupIndex, 4> expect{c.group.g_plus, c.group.g_plus_inv, c.group.g_minus, c.group.g_minus_inv};
  EXPECT_EQ(g.neighbours[id], expect);
}

TEST(CayleyGraph, AlternatingWalkCloses) {
  auto spec = to_spec(presets::det4_13_4_8());
  Mat2 x = Mat2::identity(13);
  for (int i = 0; i < 8; ++i) {
    x = x * (i % 2 ? spec.g_minus : spec.g_plus);
    if (i < 7) {
      EXPECT_FALSE(x == Mat2::identity(13)) << i;
    }
  }
  EXPECT_EQ(x, Mat2::identity(13));
}

TEST(CheckCycles, CountAndEdgeIncidence) {
  const auto& c = reference();
  EXPECT_EQ(c.cycles.cycles.size(), 4368u);
  // each vertex's 4 cycles use each of its 4 edges exactly twice
  for (GroupIndex x = 0; x < c.group.group->size(); ++x) {
    std::map<GroupIndex, int> uses;
    for (auto ci : c.cycles.incident[x]) {
      const auto& v = c.cycles.cycles[ci].vertices;
      auto it = std::find(v.begin(), v.end(), x);
      ASSERT_NE(it, v.end());
      std::size_t i = static_cast<std::size_t>(it - v.begin());
      ++uses[v[(i + 1) % 8]];
      ++uses[v[(i + 7) % 8]];
    }
    ASSERT_EQ(uses.size(), 4u) << x;
    for (int s = 0; s < 4; ++s) EXPECT_EQ(uses[c.group.times(x, s)], 2) << x;
  }
}

TEST(CayleyCode, ShapeAndLabels) {
  const auto& c = reference();
  const auto& M = c.matrix;
  EXPECT_EQ(M.n(), 8736u);
  EXPECT_EQ(M.m(), 4368u);
  EXPECT_EQ(M.row_weight(), std::optional<std::size_t>(8));
  EXPECT_EQ(M.column_weight(), std::optional<std::size_t>(4));
  for (std::size_t q = 0; q < M.n(); ++q) {
    int w = 0, W = 0;
    for (const auto& e : M.column(q)) (e.symbol == F4::omega() ? w : W) += 1;
    EXPECT_EQ(w, 2);
    EXPECT_EQ(W, 2);
  }
  for (std::size_t r = 0; r < M.m(); ++r) {
    int w = 0;
    for (const auto& e : M.row(r)) w += e.symbol == F4::omega();
    EXPECT_EQ(w, 4);
  }
}

TEST(CayleyCode, OrthogonalWithExpectedDimension) {
  const auto& c = reference();
  EXPECT_TRUE(verify_orthogonality(c.matrix).empty());
  EXPECT_EQ(testing_support::dense_orthogonality_violations(c.matrix), 0u);
  auto lc = logical_count(c.matrix);
  EXPECT_EQ(lc.k, 4370u);
  EXPECT_EQ(lc.dependencies, 2u);
}

TEST(CayleyCode, FourCycleGraphIsFourRegular) {
  auto fc = four_cycle_graph(reference().matrix);
  EXPECT_EQ(fc.min_degree, 4u);
  EXPECT_EQ(fc.max_degree, 4u);
}

TEST(CayleyCode, OmegaSubgraphIsTwoFourRegular) {
  const auto& M = reference().matrix;
  std::vector<int> check_deg(M.m(), 0);
  for (std::size_t q = 0; q < M.n(); ++q) {
    int d = 0;
    for (const auto& e : M.column(q))
      if (e.symbol == F4::omega()) {
        ++d;
        ++check_deg[e.index];
      }
    EXPECT_EQ(d, 2);
  }
  for (int d : check_deg) EXPECT_EQ(d, 4);
}

TEST(CayleyCode, Deterministic) {
  auto again = build_48_code(to_spec(presets::det4_13_4_8()));
  EXPECT_EQ(to_qpc(again.matrix), to_qpc(reference().matrix));
  std::ostringstream a, b;
  dump_cycles(a, again.cycles);
  dump_cycles(b, reference().cycles);
  EXPECT_EQ(a.str(), b.str());
}

TEST(CayleyCode, WitnessIsShortUndetectableAndNotAStabilizer) {
  const auto& M = reference().matrix;
  auto w = find_omega_cycle_error(M);
  ASSERT_TRUE(w.has_value());
  EXPECT_LE(w->weight(), 30u);
  EXPECT_TRUE(syndrome(M, w->error).is_zero());
  EXPECT_FALSE(in_stabilizer(M, w->error));
  for (std::size_t r = 0; r < M.m(); r += 97) {
    auto e = w->error + M.dense_row(r);
    EXPECT_TRUE(syndrome(M, e).is_zero());
    EXPECT_FALSE(in_stabilizer(M, e));
  }
}
