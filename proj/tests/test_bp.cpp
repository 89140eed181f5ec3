#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qldpc/bp_decoder.hpp"
#include "qldpc/presets.hpp"
#include "support.hpp"

using namespace qldpc;

namespace {

Syndrome syndrome_from_bits(std::size_t m, std::uint64_t bits) {
  Syndrome s(m);
  for (std::size_t j = 0; j < m; ++j) s.set(j, (bits >> j) & 1u);
  return s;
}

bool clear_argmax(const std::array<double, 4>& p) {
  auto sorted = p;
  std::sort(sorted.begin(), sorted.end());
  return sorted[3] - sorted[2] > 1e-9;
}

}  // namespace

TEST(EdgeIndicator, Table) {
  EXPECT_FALSE(edge_indicator(F4::omega(), F4::zero()));
  EXPECT_FALSE(edge_indicator(F4::omega(), F4::omega()));
  EXPECT_TRUE(edge_indicator(F4::omega(), F4::one()));
  EXPECT_TRUE(edge_indicator(F4::omega(), F4::omega_bar()));
  EXPECT_FALSE(edge_indicator(F4::omega_bar(), F4::omega_bar()));
  EXPECT_TRUE(edge_indicator(F4::omega_bar(), F4::omega()));
  EXPECT_FALSE(edge_indicator(F4::one(), F4::one()));
  EXPECT_TRUE(edge_indicator(F4::one(), F4::omega()));
  EXPECT_TRUE(edge_indicator(F4::one(), F4::omega_bar()));
  EXPECT_THROW(edge_indicator(F4::zero(), F4::one()), DomainError);
}

TEST(Config, Validation) {
  DecoderConfig c;
  EXPECT_EQ(c.max_iterations, 100u);
  EXPECT_EQ(c.min_sum_scale, 1.0);
  EXPECT_EQ(c.message_clamp, 30.0);
  c.min_sum_scale = 0.0;
  EXPECT_THROW(c.validate(), DomainError);
  EXPECT_THROW(DepolarizingPrior(0.75), DomainError);
  EXPECT_THROW(DepolarizingPrior(-0.1), DomainError);
  EXPECT_EQ(parse_algorithm("sum_product"), BpAlgorithm::SumProduct);
  EXPECT_THROW(parse_algorithm("bp"), ParseError);
}

TEST(BruteForce, Examples) {
  auto M = ParityCheck::from_dense(1, {F4Vector::parse("w")});
  Syndrome one(1);
  one.set(0, true);
  EXPECT_EQ(brute_force_decode(M, one)->to_string(), "W");
  EXPECT_EQ(brute_force_decode(M, Syndrome(1))->to_string(), ".");
  EXPECT_THROW(brute_force_decode(ParityCheck(15, {}), Syndrome(0)), PreconditionError);
  // unreachable syndrome
  auto twice = ParityCheck::from_dense(1, {F4Vector::parse("w"), F4Vector::parse("w")});
  Syndrome s(2);
  s.set(0, true);
  EXPECT_FALSE(brute_force_decode(twice, s).has_value());
}

TEST(Decode, ZeroSyndromeConvergesImmediately) {
  std::mt19937_64 rng(4);
  auto M = testing_support::random_orthogonal_code(8, 4, rng);
  for (auto algo : {BpAlgorithm::MinSum, BpAlgorithm::SumProduct}) {
    DecoderConfig cfg;
    cfg.algorithm = algo;
    auto r = decode(M, Syndrome(M.m()), DepolarizingPrior(0.1), cfg);
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.iterations, 0u);
    EXPECT_TRUE(r.estimate.is_zero());
  }
  EXPECT_THROW(decode(M, Syndrome(M.m() + 1), DepolarizingPrior(0.1)), DimensionError);
}

TEST(Decode, SumProductMarginalsAreExactOnTrees) {
  std::mt19937_64 rng(20);
  int instances = 0;
  for (int t = 0; t < 30; ++t) {
    std::size_t n = 3 + rng() % 8;
    auto M = testing_support::random_tree_code(n, 1 + rng() % n, rng);
    ASSERT_TRUE(testing_support::tanner_is_forest(M));
    ASSERT_TRUE(verify_orthogonality(M).empty());
    ++instances;
    DecoderConfig cfg;
    cfg.algorithm = BpAlgorithm::SumProduct;
    cfg.message_clamp = 700;  // repeated weight-1 checks make some constraints hard
    BpDecoder dec(M, cfg);
    DepolarizingPrior prior(0.05 + 0.2 * static_cast<double>(rng() % 5) / 4.0);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << M.m()); ++bits) {
      auto s = syndrome_from_bits(M.m(), bits);
      auto exact = brute_force_marginals(M, s, prior);
      if (exact[0][0] + exact[0][1] + exact[0][2] + exact[0][3] == 0.0) continue;  // unreachable syndrome
      dec.reset(s, prior);
      for (std::size_t it = 0; it < n + M.m() + 2; ++it) dec.step();
      auto hard = dec.hard_decision();
      for (std::size_t v = 0; v < n; ++v) {
        auto bp = dec.marginal(v);
        for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(bp[i], exact[v][i], 1e-9) << "v=" << v << " i=" << i;
        if (clear_argmax(exact[v])) {
          auto best = static_cast<std::size_t>(std::max_element(exact[v].begin(), exact[v].end()) - exact[v].begin());
          EXPECT_EQ(hard[v], F4::all()[best]);
        }
      }
    }
  }
  EXPECT_EQ(instances, 30);
}

TEST(Decode, PerQubitDecisionDiffersFromBlockOptimum) {
  // One check w w with syndrome 1: the block optimum is a single W (or y),
  // but each qubit alone is most likely error-free.
  auto M = ParityCheck::from_dense(2, {F4Vector::parse("ww")});
  Syndrome s(1);
  s.set(0, true);
  DecoderConfig cfg;
  cfg.algorithm = BpAlgorithm::SumProduct;
  auto r = decode(M, s, DepolarizingPrior(0.1), cfg);
  EXPECT_EQ(r.estimate.to_string(), "..");
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(brute_force_decode(M, s)->to_string(), ".W");
}

TEST(Decode, ConvergedOutputsSatisfySyndromeOnCyclicCodes) {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 20; ++t) {
    auto M = testing_support::random_orthogonal_code(6 + rng() % 5, 5, rng);
    for (auto algo : {BpAlgorithm::MinSum, BpAlgorithm::SumProduct}) {
      DecoderConfig cfg;
      cfg.algorithm = algo;
      cfg.max_iterations = 30;
      BpDecoder dec(M, cfg);
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << M.m()); ++bits) {
        auto s = syndrome_from_bits(M.m(), bits);
        auto r = dec.decode(s, DepolarizingPrior(0.1));
        if (r.converged) {
          EXPECT_EQ(syndrome(M, r.estimate), s);
        }
        auto again = dec.decode(s, DepolarizingPrior(0.1));
        EXPECT_EQ(again.estimate, r.estimate);
        EXPECT_EQ(again.iterations, r.iterations);
      }
    }
  }
}

TEST(Decode, VariableBeliefsUseIncomingBitMessages) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 10; ++t) {
    auto M = testing_support::random_orthogonal_code(8, 5, rng);
    BpDecoder dec(M, DecoderConfig{});
    Syndrome s(M.m());
    for (std::size_t j = 0; j < M.m(); ++j) s.set(j, rng() % 2);
    DepolarizingPrior prior(0.08);
    dec.reset(s, prior);
    for (int it = 0; it < 5; ++it) {
      dec.step();
      std::vector<std::array<double, 4>> expect(M.n());
      for (std::size_t v = 0; v < M.n(); ++v)
        for (std::size_t i = 0; i < 4; ++i) expect[v][i] = std::log(prior.probability(F4::all()[i]));
      for (std::size_t e = 0; e < dec.edge_count(); ++e) {
        double L = dec.check_to_var(e);
        EXPECT_TRUE(std::isfinite(L));
        EXPECT_LE(std::abs(L), 30.0);
        std::size_t v = dec.edge_variable(e);
        for (std::size_t i = 0; i < 4; ++i)
          if (edge_indicator(dec.edge_label(e), F4::all()[i])) expect[v][i] -= L;
      }
      for (std::size_t v = 0; v < M.n(); ++v) {
        auto got = dec.log_belief(v);
        for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(got[i], expect[v][i], 1e-9);
      }
    }
  }
}

TEST(Decode, MessagesStayFiniteOverManyIterations) {
  std::mt19937_64 rng(9);
  auto M = testing_support::random_orthogonal_code(10, 6, rng);
  for (auto algo : {BpAlgorithm::MinSum, BpAlgorithm::SumProduct}) {
    DecoderConfig cfg;
    cfg.algorithm = algo;
    BpDecoder dec(M, cfg);
    Syndrome s(M.m());
    s.set(0, true);
    dec.reset(s, DepolarizingPrior(1e-6));
    for (int it = 0; it < 500; ++it) dec.step();
    for (std::size_t e = 0; e < dec.edge_count(); ++e) {
      EXPECT_TRUE(std::isfinite(dec.check_to_var(e)));
      EXPECT_TRUE(std::isfinite(dec.var_to_check(e)));
    }
  }
}

TEST(Decode, SingleErrorsOnReferenceCode) {
  auto spec = to_spec(presets::psl2x5_6_12());
  auto M = build_tanner(spec).tanner.to_parity_check();
  M.freeze();
  BpDecoder dec(M, DecoderConfig{});
  std::mt19937_64 rng(12);
  int ok = 0, total = 300;
  for (int t = 0; t < total; ++t) {
    F4Vector e(M.n());
    e[rng() % M.n()] = F4::omega();
    auto r = dec.decode(syndrome(M, e), DepolarizingPrior(0.01));
    ok += r.converged && in_stabilizer(M, r.estimate + e);
  }
  EXPECT_GE(ok, total * 99 / 100);
}
