#pragma once

// Syndrome belief propagation on the labeled Tanner graph.
//
// Variables are quaternary (one GF(4) symbol per qubit); checks are binary.
// Check j only constrains the XOR over its edges of t_e = herm_pair(E_v, M_jv),
// so every check-side message is a log-likelihood ratio over one bit,
//   L = log P(t = 0) / P(t = 1),
// and check updates are the usual binary parity rules with target s_j.
// On the variable side a symbol e collects, from each incident edge,
// 0 if t_e(e) = 0 and -L otherwise.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qldpc/errors.hpp"
#include "qldpc/gf4.hpp"
#include "qldpc/stabilizer.hpp"

namespace qldpc {

/// Each qubit independently: I with 1 - p, and X, Y, Z with p/3 each.
struct DepolarizingPrior {
  double p = 0.0;

  DepolarizingPrior() = default;
  explicit DepolarizingPrior(double prob) : p(prob) {
    if (!(prob >= 0.0 && prob < 0.75)) throw DomainError("depolarizing probability must lie in [0, 3/4)");
  }
  double probability(F4 e) const { return e.is_zero() ? 1.0 - p : p / 3.0; }
};

enum class BpAlgorithm { SumProduct, MinSum };

inline std::string to_string(BpAlgorithm a) { return a == BpAlgorithm::SumProduct ? "sum_product" : "min_sum"; }
inline BpAlgorithm parse_algorithm(const std::string& s) {
  if (s == "sum_product") return BpAlgorithm::SumProduct;
  if (s == "min_sum") return BpAlgorithm::MinSum;
  throw ParseError("unknown decoding algorithm '" + s + "' (expected min_sum or sum_product)");
}

struct DecoderConfig {
  BpAlgorithm algorithm = BpAlgorithm::MinSum;
  std::size_t max_iterations = 100;
  double min_sum_scale = 1.0;
  double message_clamp = 30.0;

  void validate() const {
    if (max_iterations == 0) throw DomainError("max_iterations must be positive");
    if (!(min_sum_scale > 0.0 && min_sum_scale <= 1.0)) throw DomainError("min_sum_scale must lie in (0, 1]");
    if (!(message_clamp > 0.0) || !std::isfinite(message_clamp)) throw DomainError("message_clamp must be positive");
  }
};

struct DecodeResult {
  F4Vector estimate;
  bool converged = false;
  std::size_t iterations = 0;
};

/// herm_pair(e, label): the bit a check with entry `label` sees from symbol e.
inline bool edge_indicator(F4 label, F4 e) {
  if (label.is_zero()) throw DomainError("edge_indicator: zero label");
  return herm_pair(e, label);
}

/// Flooding-schedule decoder bound to one matrix. Owns its message buffers,
/// so use one instance per thread; the matrix may be shared.
class BpDecoder {
 public:
  BpDecoder(const ParityCheck& M, DecoderConfig cfg) : M_(&M), cfg_(cfg) {
    cfg_.validate();
    const std::size_t n = M.n();
    const std::size_t m = M.m();
    check_start_.resize(m + 1, 0);
    for (std::size_t j = 0; j < m; ++j) check_start_[j + 1] = check_start_[j] + M.row(j).size();
    const std::size_t E = check_start_[m];
    edge_var_.resize(E);
    edge_label_.resize(E);
    edge_mask_.assign(E, 0);
    beliefs_.assign(n, {});
    var_edges_.assign(n, {});
    for (std::size_t j = 0; j < m; ++j) {
      std::size_t e = check_start_[j];
      for (const auto& en : M.row(j)) {
        edge_var_[e] = en.index;
        edge_label_[e] = en.symbol;
        for (std::size_t i = 0; i < 4; ++i)
          if (herm_pair(F4::all()[i], en.symbol)) edge_mask_[e] |= static_cast<std::uint8_t>(1u << i);
        var_edges_[en.index].push_back(static_cast<std::uint32_t>(e));
        ++e;
      }
    }
    c2v_.assign(E, 0.0);
    v2c_.assign(E, 0.0);
    scratch_.reserve(64);
  }

  const DecoderConfig& config() const { return cfg_; }
  std::size_t edge_count() const { return edge_var_.size(); }
  std::size_t edge_variable(std::size_t e) const { return edge_var_[e]; }
  F4 edge_label(std::size_t e) const { return edge_label_[e]; }
  std::size_t edge_check(std::size_t e) const {
    auto it = std::upper_bound(check_start_.begin(), check_start_.end(), e);
    return static_cast<std::size_t>(it - check_start_.begin()) - 1;
  }
  double check_to_var(std::size_t e) const { return c2v_[e]; }
  double var_to_check(std::size_t e) const { return v2c_[e]; }

  /// Loads a syndrome and prior; messages start from the prior alone.
  void reset(const Syndrome& s, const DepolarizingPrior& prior) {
    if (s.size() != M_->m()) throw DimensionError("decode: syndrome length does not match the number of checks");
    target_ = s;
    for (std::size_t i = 0; i < 4; ++i) {
      double pr = prior.probability(F4::all()[i]);
      log_prior_[i] = pr > 0.0 ? std::log(pr) : -std::numeric_limits<double>::infinity();
    }
    std::fill(c2v_.begin(), c2v_.end(), 0.0);
    update_variables();
  }

  /// Per-symbol log posterior (unnormalised) of qubit v in (0, w, W, 1) order.
  std::array<double, 4> log_belief(std::size_t v) const {
    std::array<double, 4> total = log_prior_;
    for (auto e : var_edges_[v]) {
      const double L = c2v_[e];
      for (std::size_t i = 0; i < 4; ++i)
        if (edge_mask_[e] >> i & 1u) total[i] -= L;
    }
    return total;
  }

  /// Normalised posterior marginal of qubit v.
  std::array<double, 4> marginal(std::size_t v) const {
    auto lb = log_belief(v);
    double mx = *std::max_element(lb.begin(), lb.end());
    std::array<double, 4> out{};
    double z = 0.0;
    for (std::size_t i = 0; i < 4; ++i) z += out[i] = std::exp(lb[i] - mx);
    for (auto& x : out) x /= z;
    return out;
  }

  /// Argmax per qubit, ties broken towards the earlier symbol in (0, w, W, 1).
  F4Vector hard_decision() const {
    F4Vector out(M_->n());
    for (std::size_t v = 0; v < M_->n(); ++v) out[v] = argmax(log_belief(v));
    return out;
  }

  /// One flooding iteration: all checks, then all variables.
  void step() {
    update_checks();
    update_variables();
  }

  DecodeResult decode(const Syndrome& s, const DepolarizingPrior& prior) {
    reset(s, prior);
    DecodeResult r;
    r.estimate = hard_decision();
    if (syndrome(*M_, r.estimate) == target_) {
      r.converged = true;
      return r;
    }
    for (std::size_t it = 1; it <= cfg_.max_iterations; ++it) {
      update_checks();
      compute_beliefs();
      for (std::size_t v = 0; v < beliefs_.size(); ++v) r.estimate[v] = argmax(beliefs_[v]);
      r.iterations = it;
      if (syndrome(*M_, r.estimate) == target_) {
        r.converged = true;
        return r;
      }
      update_variables(false);
    }
    return r;
  }

 private:
  double clamp(double x) const {
    if (std::isnan(x)) return 0.0;
    return std::clamp(x, -cfg_.message_clamp, cfg_.message_clamp);
  }

  static double log_add(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    double mx = std::max(a, b);
    return mx + std::log1p(std::exp(-std::abs(a - b)));
  }

  static F4 argmax(const std::array<double, 4>& lb) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < 4; ++i)
      if (lb[i] > lb[best]) best = i;
    return F4::all()[best];
  }

  void compute_beliefs() {
    for (std::size_t v = 0; v < beliefs_.size(); ++v) beliefs_[v] = log_belief(v);
  }

  // Exact logsumexp over each indicator class with this edge's own term removed.
  double exact_message(const std::array<double, 4>& total, std::size_t e) const {
    const double L = c2v_[e];
    double lse0 = -std::numeric_limits<double>::infinity();
    double lse1 = lse0;
    for (std::size_t i = 0; i < 4; ++i) {
      if (edge_mask_[e] >> i & 1u)
        lse1 = log_add(lse1, total[i] + L);
      else
        lse0 = log_add(lse0, total[i]);
    }
    return lse0 - lse1;
  }

  void update_variables(bool refresh = true) {
    if (refresh) compute_beliefs();
    for (std::size_t v = 0; v < var_edges_.size(); ++v) {
      const auto& total = beliefs_[v];
      const double mx = *std::max_element(total.begin(), total.end());
      std::array<double, 4> q{};
      for (std::size_t i = 0; i < 4; ++i) q[i] = std::exp(total[i] - mx);
      for (auto e : var_edges_[v]) {
        double s0 = 0.0, s1 = 0.0;
        for (std::size_t i = 0; i < 4; ++i) (edge_mask_[e] >> i & 1u ? s1 : s0) += q[i];
        double msg = s0 > 1e-290 && s1 > 1e-290 ? std::log(s0 / s1) - c2v_[e] : exact_message(total, e);
        v2c_[e] = clamp(msg);
      }
    }
  }

  void update_checks() {
    const std::size_t m = M_->m();
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t begin = check_start_[j], end = check_start_[j + 1];
      const double sign_target = target_[j] ? -1.0 : 1.0;
      if (cfg_.algorithm == BpAlgorithm::MinSum) {
        double min1 = std::numeric_limits<double>::infinity(), min2 = min1;
        std::size_t argmin = begin;
        bool neg = false;
        for (std::size_t e = begin; e < end; ++e) {
          double a = std::abs(v2c_[e]);
          neg ^= v2c_[e] < 0.0;
          if (a < min1) {
            min2 = min1;
            min1 = a;
            argmin = e;
          } else if (a < min2) {
            min2 = a;
          }
        }
        for (std::size_t e = begin; e < end; ++e) {
          double mag = (e == argmin ? min2 : min1);
          if (!std::isfinite(mag)) mag = cfg_.message_clamp;
          bool s = neg ^ (v2c_[e] < 0.0);
          c2v_[e] = clamp(sign_target * (s ? -1.0 : 1.0) * cfg_.min_sum_scale * mag);
        }
      } else {
        // tanh rule with prefix/suffix products so zeros need no division.
        const std::size_t d = end - begin;
        scratch_.assign(2 * d + 2, 1.0);
        double* prefix = scratch_.data();
        double* suffix = scratch_.data() + d + 1;
        for (std::size_t i = 0; i < d; ++i) prefix[i + 1] = prefix[i] * std::tanh(0.5 * v2c_[begin + i]);
        for (std::size_t i = d; i-- > 0;) suffix[i] = suffix[i + 1] * std::tanh(0.5 * v2c_[begin + i]);
        for (std::size_t i = 0; i < d; ++i) {
          // atanh(+-1) = +-inf saturates at the clamp
          c2v_[begin + i] = clamp(sign_target * 2.0 * std::atanh(prefix[i] * suffix[i + 1]));
        }
      }
    }
  }

  const ParityCheck* M_;
  DecoderConfig cfg_;
  std::vector<std::size_t> check_start_;
  std::vector<std::uint32_t> edge_var_;
  std::vector<F4> edge_label_;
  std::vector<std::uint8_t> edge_mask_;  // bit i: symbol i anticommutes with the label
  std::vector<std::array<double, 4>> beliefs_;
  std::vector<std::vector<std::uint32_t>> var_edges_;
  std::vector<double> c2v_, v2c_, scratch_;
  std::array<double, 4> log_prior_{};
  Syndrome target_;
};

inline DecodeResult decode(const ParityCheck& M, const Syndrome& s, const DepolarizingPrior& prior,
                           const DecoderConfig& cfg = {}) {
  BpDecoder dec(M, cfg);
  return dec.decode(s, prior);
}

// ---------------------------------------------------------------------------
// Exhaustive reference decoders for small codes.

inline constexpr std::size_t kBruteForceMaxQubits = 14;

namespace detail {

/// Calls fn(e, weight) for every e in F4^n with syndrome s, in lexicographic
/// order with symbol order (0, w, W, 1) and qubit 0 most significant.
template <typename Fn>
void enumerate_solutions(const ParityCheck& M, const Syndrome& s, Fn&& fn) {
  const std::size_t n = M.n(), m = M.m();
  if (n > kBruteForceMaxQubits) throw PreconditionError("brute force decoding is limited to 14 qubits");
  if (s.size() != m) throw DimensionError("brute force: syndrome length mismatch");
  // contribution[q][sym] = syndrome of the single-qubit error sym at q
  std::vector<std::array<BitRow, 4>> contrib(n);
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t i = 0; i < 4; ++i) {
      contrib[q][i] = BitRow(m);
      for (const auto& en : M.column(q))
        if (herm_pair(F4::all()[i], en.symbol)) contrib[q][i].set(en.index);
    }
  BitRow target(m);
  for (std::size_t j = 0; j < m; ++j)
    if (s[j]) target.set(j);

  std::vector<BitRow> acc(n + 1, BitRow(m));
  F4Vector e(n);
  auto rec = [&](auto&& self, std::size_t q, std::size_t w) -> void {
    if (q == n) {
      if (acc[n] == target) fn(e, w);
      return;
    }
    for (std::size_t i = 0; i < 4; ++i) {
      e[q] = F4::all()[i];
      acc[q + 1] = acc[q];
      acc[q + 1] ^= contrib[q][i];
      self(self, q + 1, w + (i != 0));
    }
    e[q] = F4::zero();
  };
  rec(rec, 0, 0);
}

}  // namespace detail

/// Most likely error with syndrome s. For p < 3/4 every weight-w error has
/// probability (1-p)^(n-w) (p/3)^w, decreasing in w, so this is the
/// lexicographically first minimum-weight solution. Empty optional if no
/// error has syndrome s.
inline std::optional<F4Vector> brute_force_decode(const ParityCheck& M, const Syndrome& s,
                                                  const DepolarizingPrior& = DepolarizingPrior{0.1}) {
  std::optional<F4Vector> best;
  std::size_t best_w = std::numeric_limits<std::size_t>::max();
  detail::enumerate_solutions(M, s, [&](const F4Vector& e, std::size_t w) {
    if (w < best_w) {
      best_w = w;
      best = e;
    }
  });
  return best;
}

/// Exact per-qubit posterior P(E_v = x | syndrome s) by enumeration.
inline std::vector<std::array<double, 4>> brute_force_marginals(const ParityCheck& M, const Syndrome& s,
                                                                const DepolarizingPrior& prior) {
  std::vector<std::array<double, 4>> out(M.n(), std::array<double, 4>{});
  const double p0 = prior.probability(F4::zero());
  const double p1 = prior.p / 3.0;
  double z = 0.0;
  detail::enumerate_solutions(M, s, [&](const F4Vector& e, std::size_t w) {
    double pr = std::pow(p0, static_cast<double>(M.n() - w)) * std::pow(p1, static_cast<double>(w));
    z += pr;
    for (std::size_t v = 0; v < M.n(); ++v) out[v][e[v].code()] += pr;
  });
  if (z > 0)
    for (auto& row : out)
      for (auto& x : row) x /= z;
  return out;
}

}  // namespace qldpc
