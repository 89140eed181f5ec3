// qldpc: build, validate and simulate quantum LDPC codes from the command line.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qldpc/qldpc.hpp"

namespace {

using namespace qldpc;

ParityCheck load_qpc(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open '" + path + "'");
  return read_qpc(f);
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot write '" + path + "'");
  f << text;
}

struct BuildArgs {
  std::string family, config, out, dump_cycles;
};

int cmd_build(const BuildArgs& a) {
  auto cfg = load_config(a.config);
  ParityCheck M;
  if (a.family == "coset") {
    auto* c = std::get_if<CosetConfig>(&cfg);
    if (!c) throw ParseError("config family does not match --family coset");
    auto spec = to_spec(*c);
    auto rep = validate_spec(spec);
    std::cerr << rep.to_string();
    if (!rep.ok()) return 2;
    M = build_tanner(spec).tanner.to_parity_check();
  } else {
    auto* c = std::get_if<CayleyConfig>(&cfg);
    if (!c) throw ParseError("config family does not match --family cayley");
    auto spec = to_spec(*c);
    auto rep = validate_cayley(spec);
    std::cerr << rep.checks.to_string();
    auto code = build_48_code(spec);
    if (!a.dump_cycles.empty()) {
      std::ostringstream os;
      dump_cycles(os, code.cycles);
      write_text(a.dump_cycles, os.str());
    }
    M = std::move(code.matrix);
  }
  write_text(a.out, to_qpc(M));
  auto s = M.summary();
  std::cerr << "n=" << s.n << " m=" << s.m << " k=" << s.k << " rank=" << s.rank << '\n';
  return 0;
}

int cmd_validate(const std::string& path, std::size_t witness_candidates) {
  auto M = load_qpc(path);
  auto t0 = std::chrono::steady_clock::now();
  M.freeze();
  auto s = M.summary();
  auto bad = verify_orthogonality(M);
  auto fc = four_cycle_graph(M);
  auto opt = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string("irregular"); };
  std::cout << "n " << s.n << "\nm " << s.m << "\nrank " << s.rank << "\nk " << s.k << "\nrate "
            << static_cast<double>(s.k) / static_cast<double>(s.n) << "\ncolumn_weight " << opt(s.a)
            << "\nrow_weight " << opt(s.b) << "\northogonality_violations " << bad.size()
            << "\nfour_cycle_graph_min_degree " << fc.min_degree << "\nfour_cycle_graph_max_degree " << fc.max_degree
            << '\n';
  if (witness_candidates) {
    auto w = find_omega_cycle_error(M, F4::omega(), witness_candidates);
    if (w)
      std::cout << "witness_weight " << w->weight() << "\nwitness_symbol " << w->symbol.glyph() << '\n';
    else
      std::cout << "witness_weight none\n";
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  std::cerr << "validated in " << ms << " ms\n";
  return bad.empty() ? 0 : 1;
}

struct SimArgs {
  std::string qpc, out = "-";
  std::vector<double> p_list;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::string algo = "min_sum";
  std::size_t max_iter = 100;
  double scale = 1.0;
  std::size_t workers = 1;
};

int cmd_simulate(const SimArgs& a) {
  auto M = load_qpc(a.qpc);
  SweepSpec spec;
  spec.p_list = a.p_list;
  spec.trials = a.trials;
  spec.master_seed = a.seed;
  spec.workers = a.workers;
  spec.decoder.algorithm = parse_algorithm(a.algo);
  spec.decoder.max_iterations = a.max_iter;
  spec.decoder.min_sum_scale = a.scale;
  auto rows = run_sweep(M, spec);
  write_text(a.out, to_csv(rows));
  return 0;
}

void add_decoder_options(CLI::App* sub, SimArgs& a) {
  sub->add_option("--trials", a.trials, "trials per point")->required();
  sub->add_option("--seed", a.seed, "master seed")->required();
  sub->add_option("--algo", a.algo, "min_sum or sum_product")->check(CLI::IsMember({"min_sum", "sum_product"}));
  sub->add_option("--max-iter", a.max_iter, "iteration cap")->check(CLI::PositiveNumber);
  sub->add_option("--scale", a.scale, "min-sum scale in (0,1]");
  sub->add_option("--workers", a.workers, "worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--out", a.out, "CSV output path, - for stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum LDPC codes from finite matrix groups"};
  app.require_subcommand(1);

  BuildArgs build;
  auto* b = app.add_subcommand("build", "construct a code and write it as QPC");
  b->add_option("--family", build.family, "coset or cayley")->required()->check(CLI::IsMember({"coset", "cayley"}));
  b->add_option("--config", build.config, "construction config file")->required()->check(CLI::ExistingFile);
  b->add_option("--out", build.out, "QPC output path, - for stdout")->required();
  b->add_option("--dump-cycles", build.dump_cycles, "write the check cycles (cayley family)");

  std::string vpath;
  std::size_t witness = 64;
  auto* v = app.add_subcommand("validate", "audit a QPC file");
  v->add_option("qpc", vpath, "QPC file")->required()->check(CLI::ExistingFile);
  v->add_option("--witness-candidates", witness, "cycles tried by the witness search, 0 to skip");

  SimArgs sim;
  double p = 0.0;
  auto* s = app.add_subcommand("simulate", "Monte-Carlo at one channel probability");
  s->add_option("qpc", sim.qpc, "QPC file")->required()->check(CLI::ExistingFile);
  s->add_option("--p", p, "depolarizing probability")->required();
  add_decoder_options(s, sim);

  SimArgs sweep;
  auto* w = app.add_subcommand("sweep", "Monte-Carlo over a list of channel probabilities");
  w->add_option("qpc", sweep.qpc, "QPC file")->required()->check(CLI::ExistingFile);
  w->add_option("--p-list", sweep.p_list, "ascending probabilities")->required()->delimiter(',');
  add_decoder_options(w, sweep);

  CLI11_PARSE(app, argc, argv);
  try {
    if (b->parsed()) return cmd_build(build);
    if (v->parsed()) return cmd_validate(vpath, witness);
    if (s->parsed()) {
      sim.p_list = {p};
      return cmd_simulate(sim);
    }
    if (w->parsed()) return cmd_simulate(sweep);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
