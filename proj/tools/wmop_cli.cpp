// wmop: command-line front end for weighted-median / FJ opinion dynamics.
//
//   wmop simulate        --network PATH | --gen KIND --n N  [--config PATH] [--model wm|fj|both] ...
//   wmop compare         same inputs, runs both models and prints them side by side
//   wmop fixed-point     limit of the all-prejudiced system, its selection and closed form
//   wmop cohesive        largest cohesive subset of --candidates (default: unprejudiced agents)
//   wmop consensus-check consensus guarantee for mixed agents with a common prejudice
//   wmop gen             write a generated network as an edge list
//
// Exit codes: 0 ok, 1 IO/parse error, 2 precondition or input violation.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wmop/analysis.hpp"
#include "wmop/errors.hpp"
#include "wmop/io.hpp"
#include "wmop/run.hpp"

namespace {

using nlohmann::json;
using namespace wmop;

struct Inputs {
  std::string network;
  std::string gen;
  std::size_t n = 0;
  std::string edges;
  double hub_weight = 0.6;
  double density = 0.5;
  std::string config;
  std::string model = "wm";
  double tol = 1e-12;
  std::size_t max_steps = 1'000'000;
  std::size_t cycle_window = 64;
  std::size_t stride = 1;
  std::uint64_t seed = 0;
  bool normalize = false;
  std::string out = ".";
};

void add_network_options(CLI::App* app, Inputs& in) {
  auto* net = app->add_option("--network", in.network, "edge-list file (src dst weight, 1-based)");
  auto* gen = app->add_option("--gen", in.gen,
                              "generator: complete|star|reciprocal-pair|uniform-neighbor|random");
  net->excludes(gen);
  app->add_option("--n", in.n, "agent count for --gen");
  app->add_option("--edges", in.edges, "adjacency list for --gen uniform-neighbor");
  app->add_option("--hub-weight", in.hub_weight, "leaf weight on the hub for --gen star");
  app->add_option("--density", in.density, "non-zero probability for --gen random");
  app->add_flag("--normalize", in.normalize, "rescale each row of --network to sum to 1");
  app->add_option("--seed", in.seed, "seed for every random draw");
}

void add_run_options(CLI::App* app, Inputs& in, bool with_model) {
  add_network_options(app, in);
  app->add_option("--config", in.config, "config JSON (lambda, u, x0, unprejudiced)");
  if (with_model)
    app->add_option("--model", in.model)->check(CLI::IsMember({"wm", "fj", "both"}));
  app->add_option("--tol", in.tol, "stopping tolerance on ||x(t+1)-x(t)||_inf");
  app->add_option("--max-steps", in.max_steps);
  app->add_option("--cycle-window", in.cycle_window);
  app->add_option("--stride", in.stride, "record every k-th state");
  app->add_option("--out", in.out, "output directory");
}

json read_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw IoError(path + ": " + e.what());
  }
}

RunSpec make_spec(const Inputs& in) {
  RunSpec spec;
  if (!in.network.empty()) spec.network_path = in.network;
  if (!in.gen.empty()) {
    const auto kind = parse_generator_kind(in.gen);
    if (!kind) throw InputError("unknown generator '" + in.gen + "'");
    GeneratorParams p;
    p.kind = *kind;
    p.n = in.n;
    p.edges = in.edges;
    p.hub_weight = in.hub_weight;
    p.density = in.density;
    spec.generator = p;
  }
  spec.normalize = in.normalize;
  spec.config = read_config(in.config);
  spec.model = in.model == "fj" ? ModelChoice::FJ : in.model == "both" ? ModelChoice::Both : ModelChoice::WM;
  spec.sim = {in.tol, in.max_steps, in.cycle_window, in.stride};
  spec.seed = in.seed;
  spec.out_dir = in.out;
  return spec;
}

std::vector<std::size_t> to_zero_based(const std::vector<std::size_t>& agents, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t a : agents) {
    if (a < 1 || a > n) throw InputError("agent " + std::to_string(a) + " out of range");
    out.push_back(a - 1);
  }
  return out;
}

std::vector<std::size_t> to_one_based(std::vector<std::size_t> v) {
  for (auto& a : v) ++a;
  return v;
}

int cmd_simulate(const Inputs& in) {
  const auto out = run(make_spec(in));
  for (const auto& s : out.summaries) std::cout << to_json(s).dump() << '\n';
  return 0;
}

int cmd_compare(Inputs in) {
  in.model = "both";
  const auto out = run(make_spec(in));
  const auto& wm = out.summaries.at(0);
  const auto& fj = out.summaries.at(1);
  std::printf("%-14s %-16s %-16s\n", "", "wm", "fj");
  std::printf("%-14s %-16s %-16s\n", "converged", wm.converged ? "true" : "false",
              fj.converged ? "true" : "false");
  std::printf("%-14s %-16s %-16s\n", "stop_reason", std::string(to_string(wm.stop_reason)).c_str(),
              std::string(to_string(fj.stop_reason)).c_str());
  std::printf("%-14s %-16zu %-16zu\n", "steps", wm.steps, fj.steps);
  std::printf("%-14s %-16zu %-16zu\n", "clusters", wm.clusters, fj.clusters);
  return 0;
}

int cmd_fixed_point(const Inputs& in) {
  const RunSpec spec = make_spec(in);
  const auto net = build_network(spec);
  const auto rc = resolve_config(spec.config, net.size(), spec.seed);
  const auto fp = fixed_point(net, rc.cfg, in.tol);
  const auto sel = extract_selection(fp.x, net, rc.cfg);
  const auto closed = limit_from_selection(sel, rc.cfg);
  json j;
  j["fixed_point"] = fp.x;
  j["iterations"] = fp.iterations;
  j["selection"] = to_one_based(sel.k);
  j["closed_form"] = closed;
  j["closed_form_gap"] = max_abs_diff(closed, fp.x);
  j["clusters"] = count_clusters(fp.x);
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_cohesive(const Inputs& in, const std::vector<std::size_t>& candidates) {
  const RunSpec spec = make_spec(in);
  const auto net = build_network(spec);
  std::vector<std::size_t> cand;
  if (!candidates.empty()) {
    cand = to_zero_based(candidates, net.size());
  } else {
    cand = resolve_config(spec.config, net.size(), spec.seed).cfg.unprejudiced();
  }
  const auto report = max_cohesive_subset(cand, net);
  json peel = json::array();
  for (const auto& [agent, mass] : report.peel_order) peel.push_back({{"agent", agent + 1}, {"inside_mass", mass}});
  json j;
  j["candidates"] = to_one_based(cand);
  j["maximal_subset"] = to_one_based(report.maximal_subset);
  j["peel_order"] = peel;
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_consensus(const Inputs& in) {
  const RunSpec spec = make_spec(in);
  const auto net = build_network(spec);
  const auto rc = resolve_config(spec.config, net.size(), spec.seed);
  const bool ok = consensus_predicate(net, rc.cfg);
  const auto report = max_cohesive_subset(rc.cfg.unprejudiced(), net);
  json j;
  j["consensus_guaranteed"] = ok;
  j["unprejudiced_cohesive_subset"] = to_one_based(report.maximal_subset);
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_gen(const Inputs& in, const std::string& out_file) {
  const RunSpec spec = make_spec(in);
  if (!spec.generator) throw InputError("gen needs --gen KIND");
  const auto net = generate(*spec.generator, spec.seed);
  if (out_file.empty() || out_file == "-") {
    write_network(std::cout, net);
    return 0;
  }
  std::ofstream f(out_file, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write " + out_file);
  write_network(f, net);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted-median opinion dynamics with prejudice"};
  app.require_subcommand(1);

  Inputs sim_in, cmp_in, fp_in, coh_in, cons_in, gen_in;
  std::vector<std::size_t> candidates;
  std::string gen_out;

  auto* sim = app.add_subcommand("simulate", "run the dynamics and write trace/summary files");
  add_run_options(sim, sim_in, true);
  auto* cmp = app.add_subcommand("compare", "run WM and FJ on the same inputs");
  add_run_options(cmp, cmp_in, false);
  auto* fp = app.add_subcommand("fixed-point", "limit of the all-prejudiced WM system");
  add_run_options(fp, fp_in, false);
  auto* coh = app.add_subcommand("cohesive", "largest cohesive subset by peeling");
  add_network_options(coh, coh_in);
  coh->add_option("--config", coh_in.config, "config JSON; unprejudiced agents are the default candidates");
  coh->add_option("--candidates", candidates, "1-based agents to peel from");
  auto* cons = app.add_subcommand("consensus-check", "consensus guarantee for mixed agents");
  add_network_options(cons, cons_in);
  cons->add_option("--config", cons_in.config, "config JSON");
  auto* gen = app.add_subcommand("gen", "write a generated network as an edge list");
  add_network_options(gen, gen_in);
  gen->add_option("--out", gen_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*sim) return cmd_simulate(sim_in);
    if (*cmp) return cmd_compare(cmp_in);
    if (*fp) return cmd_fixed_point(fp_in);
    if (*coh) return cmd_cohesive(coh_in, candidates);
    if (*cons) return cmd_consensus(cons_in);
    if (*gen) return cmd_gen(gen_in, gen_out);
  } catch (const std::exception& e) {
    std::cerr << "wmop: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return 0;
}
