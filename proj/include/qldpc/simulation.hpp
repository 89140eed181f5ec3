#pragma once

// Depolarizing-channel Monte-Carlo: sampling, single trials, sweeps over the
// channel probability, Wilson intervals and CSV output.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <system_error>
#include <thread>
#include <vector>

#include "qldpc/bp_decoder.hpp"
#include "qldpc/errors.hpp"
#include "qldpc/gf4.hpp"
#include "qldpc/stabilizer.hpp"

namespace qldpc {

using Rng = std::mt19937_64;

/// Independent stream for trial `trial` of sweep point `point`.
inline Rng trial_stream(std::uint64_t master_seed, std::uint64_t point, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(point), static_cast<std::uint32_t>(point >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return Rng(seq);
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline F4Vector sample_depolarizing(std::size_t n, double p, Rng& rng) {
  if (!(p >= 0.0 && p < 0.75)) throw DomainError("sample_depolarizing: p must lie in [0, 3/4)");
  F4Vector e(n);
  const double third = p / 3.0;
  for (std::size_t q = 0; q < n; ++q) {
    double u = uniform01(rng);
    if (u >= p) continue;
    e[q] = u < third ? F4::omega() : u < 2 * third ? F4::omega_bar() : F4::one();
  }
  return e;
}

enum class TrialOutcome { Success, LogicalError, DetectedFailure };

inline const char* to_string(TrialOutcome o) {
  switch (o) {
    case TrialOutcome::Success: return "success";
    case TrialOutcome::LogicalError: return "logical_error";
    case TrialOutcome::DetectedFailure: return "detected_failure";
  }
  return "?";
}

inline TrialOutcome classify(const ParityCheck& M, const F4Vector& error, const DecodeResult& r) {
  if (!r.converged) return TrialOutcome::DetectedFailure;
  return in_stabilizer(M, r.estimate + error) ? TrialOutcome::Success : TrialOutcome::LogicalError;
}

/// Decodes a given error; the decoder must be bound to M.
inline TrialOutcome run_trial_with_error(const ParityCheck& M, BpDecoder& dec, const F4Vector& error,
                                         const DepolarizingPrior& prior) {
  auto r = dec.decode(syndrome(M, error), prior);
  return classify(M, error, r);
}

inline TrialOutcome run_trial(const ParityCheck& M, BpDecoder& dec, double p, Rng& rng) {
  auto e = sample_depolarizing(M.n(), p, rng);
  return run_trial_with_error(M, dec, e, DepolarizingPrior(p));
}

struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};

/// 95% Wilson score interval for `failures` out of `trials`.
inline WilsonInterval wilson_interval(std::size_t failures, std::size_t trials, double z = 1.959963984540054) {
  if (trials == 0) throw DomainError("wilson_interval: zero trials");
  if (failures > trials) throw DomainError("wilson_interval: more failures than trials");
  const double n = static_cast<double>(trials);
  const double ph = static_cast<double>(failures) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (ph + z2 / (2 * n)) / denom;
  const double half = z * std::sqrt(ph * (1 - ph) / n + z2 / (4 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

struct StatsRow {
  double channel_p = 0.0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  std::size_t logical_errors = 0;
  std::size_t detected_failures = 0;
  std::uint64_t master_seed = 0;

  std::size_t failures() const { return logical_errors + detected_failures; }
  double bler() const { return trials ? static_cast<double>(failures()) / static_cast<double>(trials) : NAN; }
  WilsonInterval interval() const { return wilson_interval(failures(), trials); }
};

struct SweepSpec {
  std::vector<double> p_list;
  std::size_t trials = 0;
  DecoderConfig decoder;
  std::uint64_t master_seed = 0;
  std::size_t workers = 1;

  void validate() const {
    if (p_list.empty()) throw DomainError("sweep: empty p list");
    for (std::size_t i = 0; i < p_list.size(); ++i) {
      if (!(p_list[i] > 0.0 && p_list[i] < 0.75)) throw DomainError("sweep: every p must lie in (0, 3/4)");
      if (i && !(p_list[i] > p_list[i - 1])) throw DomainError("sweep: p list must be strictly ascending");
    }
    if (workers == 0) throw DomainError("sweep: workers must be positive");
    decoder.validate();
  }
};

/// Runs `trials` trials at one point. Results depend only on
/// (M, p, cfg, master_seed, point), not on the worker count.
inline StatsRow run_point(const ParityCheck& M, double p, std::size_t point, std::size_t trials,
                          const DecoderConfig& cfg, std::uint64_t master_seed, std::size_t workers = 1) {
  if (!M.frozen()) throw PreconditionError("run_point: freeze the parity-check matrix first");
  StatsRow row;
  row.channel_p = p;
  row.trials = trials;
  row.master_seed = master_seed;
  std::atomic<std::size_t> next{0}, ok{0}, logical{0}, detected{0};
  const DepolarizingPrior prior(p);

  auto work = [&] {
    BpDecoder dec(M, cfg);
    for (std::size_t t; (t = next.fetch_add(1)) < trials;) {
      Rng rng = trial_stream(master_seed, point, t);
      auto e = sample_depolarizing(M.n(), p, rng);
      switch (run_trial_with_error(M, dec, e, prior)) {
        case TrialOutcome::Success: ++ok; break;
        case TrialOutcome::LogicalError: ++logical; break;
        case TrialOutcome::DetectedFailure: ++detected; break;
      }
    }
  };
  workers = std::max<std::size_t>(1, std::min(workers, trials));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  row.successes = ok;
  row.logical_errors = logical;
  row.detected_failures = detected;
  return row;
}

inline std::vector<StatsRow> run_sweep(ParityCheck& M, const SweepSpec& spec) {
  spec.validate();
  M.freeze();
  std::vector<StatsRow> rows;
  for (std::size_t i = 0; i < spec.p_list.size(); ++i)
    rows.push_back(run_point(M, spec.p_list[i], i, spec.trials, spec.decoder, spec.master_seed, spec.workers));
  return rows;
}

// ---------------------------------------------------------------------------
// CSV

inline constexpr const char* kCsvHeader =
    "channel_p,trials,successes,logical_errors,detected_failures,bler,ci_low,ci_high,master_seed";

/// Shortest decimal that round-trips.
inline std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw DomainError("format_double failed");
  return std::string(buf, end);
}

inline std::string csv_line(const StatsRow& r) {
  std::ostringstream os;
  os << format_double(r.channel_p) << ',' << r.trials << ',' << r.successes << ',' << r.logical_errors << ','
     << r.detected_failures << ',';
  if (r.trials) {
    auto ci = r.interval();
    os << format_double(r.bler()) << ',' << format_double(ci.low) << ',' << format_double(ci.high);
  } else {
    os << ",,";
  }
  os << ',' << r.master_seed;
  return os.str();
}

inline void write_csv(std::ostream& os, const std::vector<StatsRow>& rows) {
  os << kCsvHeader << '\n';
  for (const auto& r : rows) os << csv_line(r) << '\n';
}

inline std::string to_csv(const std::vector<StatsRow>& rows) {
  std::ostringstream os;
  write_csv(os, rows);
  return os.str();
}

}  // namespace qldpc
