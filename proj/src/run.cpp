#include "wmop/run.hpp"

#include <fstream>

#include "wmop/errors.hpp"
#include "wmop/io.hpp"

namespace wmop {

namespace {

using nlohmann::json;

std::vector<double> number_array(const json& j, std::size_t n, const char* key) {
  if (!j.is_array() || j.size() != n)
    throw InputError(std::string("config '") + key + "' must be an array of " + std::to_string(n) +
                     " numbers");
  std::vector<double> out;
  out.reserve(n);
  for (const auto& v : j) {
    if (!v.is_number()) throw InputError(std::string("config '") + key + "' has a non-number");
    out.push_back(v.get<double>());
  }
  return out;
}

std::pair<double, double> bounds(const json& j, const char* key) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InputError(std::string("config '") + key + "' must be [lo, hi]");
  const double lo = j[0].get<double>();
  const double hi = j[1].get<double>();
  if (!(lo <= hi)) throw InputError(std::string("config '") + key + "' needs lo <= hi");
  return {lo, hi};
}

OpinionVector default_x0(std::size_t n) {
  OpinionVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = (5.0 - static_cast<double>(i)) / 10.0;
  return x;
}

void write_json(const json& j, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

ResolvedConfig resolve_config(const json& config, std::size_t n, std::uint64_t seed) {
  if (!config.is_object()) throw InputError("config must be a JSON object");
  std::mt19937_64 rng(seed);

  std::vector<double> lambda(n);
  if (!config.contains("lambda")) {
    for (auto& l : lambda) l = 1.0 - uniform01(rng);
  } else if (const auto& jl = config["lambda"]; jl.is_object()) {
    if (!jl.contains("uniform")) throw InputError("config 'lambda' object needs 'uniform'");
    const auto [lo, hi] = bounds(jl["uniform"], "lambda.uniform");
    for (auto& l : lambda) l = lo + (hi - lo) * (1.0 - uniform01(rng));
  } else {
    lambda = number_array(jl, n, "lambda");
  }

  OpinionVector x0;
  if (!config.contains("x0")) {
    x0 = default_x0(n);
  } else if (const auto& jx = config["x0"]; jx.is_object()) {
    if (!jx.contains("range")) throw InputError("config 'x0' object needs 'range'");
    const auto [lo, hi] = bounds(jx["range"], "x0.range");
    x0.resize(n);
    for (auto& v : x0) v = lo + (hi - lo) * uniform01(rng);
  } else {
    x0 = number_array(jx, n, "x0");
  }

  std::vector<double> u;
  if (!config.contains("u") || config["u"] == "copy-x0") {
    u = x0;
  } else {
    u = number_array(config["u"], n, "u");
  }

  if (config.contains("unprejudiced")) {
    const auto& ju = config["unprejudiced"];
    if (!ju.is_array()) throw InputError("config 'unprejudiced' must be an array of agents");
    for (const auto& v : ju) {
      if (!v.is_number_integer() || v.get<long long>() < 1 ||
          static_cast<std::size_t>(v.get<long long>()) > n)
        throw InputError("config 'unprejudiced' holds an invalid agent index");
      lambda[static_cast<std::size_t>(v.get<long long>() - 1)] = 0.0;
    }
  }

  return {std::move(x0), PrejudiceConfig(std::move(lambda), std::move(u))};
}

json to_json(const RunSummary& s) {
  json j;
  j["model"] = to_string(s.model);
  j["converged"] = s.converged;
  j["stop_reason"] = to_string(s.stop_reason);
  j["steps"] = s.steps;
  j["limit"] = s.limit ? json(*s.limit) : json(nullptr);
  j["clusters"] = s.clusters;
  j["consensus_guaranteed"] = s.consensus_guaranteed ? json(*s.consensus_guaranteed) : json(nullptr);
  j["rate_check"] = s.rate_check ? json(*s.rate_check) : json(nullptr);
  return j;
}

InfluenceNetwork build_network(const RunSpec& spec) {
  if (spec.network_path && spec.generator)
    throw InputError("give either a network file or a generator, not both");
  if (spec.network_path) {
    EdgeListOptions opts;
    opts.normalize = spec.normalize;
    return load_network(*spec.network_path, opts);
  }
  if (spec.generator) return generate(*spec.generator, spec.seed);
  throw InputError("no network given");
}

RunSummary summarize(const Trace& trace, Model model, const InfluenceNetwork& net,
                     const PrejudiceConfig& cfg, double tol) {
  RunSummary s;
  s.model = model;
  s.converged = trace.converged;
  s.stop_reason = trace.stop_reason;
  s.steps = trace.steps;
  s.limit = trace.limit;
  s.clusters = count_clusters(trace.limit ? *trace.limit : trace.final_state(), 1e-6);

  const auto v1 = cfg.prejudiced();
  const bool mixed = !v1.empty() && v1.size() < cfg.size();
  const bool common_u = std::all_of(v1.begin(), v1.end(), [&](std::size_t i) {
    return std::abs(cfg.u()[i] - cfg.u()[v1.front()]) <= kHalfMassTol;
  });
  if (mixed && common_u) s.consensus_guaranteed = consensus_predicate(net, cfg);

  if (model == Model::WM && cfg.all_prejudiced()) {
    const auto fp = fixed_point(net, cfg, std::min(tol, 1e-12));
    s.rate_check = verify_rate(trace, fp.x, cfg.lambda_min());
  }
  return s;
}

RunOutput run(const RunSpec& spec) {
  const InfluenceNetwork net = build_network(spec);
  const ResolvedConfig rc = resolve_config(spec.config, net.size(), spec.seed);

  std::vector<Model> models;
  if (spec.model != ModelChoice::FJ) models.push_back(Model::WM);
  if (spec.model != ModelChoice::WM) models.push_back(Model::FJ);

  std::error_code ec;
  std::filesystem::create_directories(spec.out_dir, ec);
  if (ec) throw IoError("cannot create " + spec.out_dir.string() + ": " + ec.message());

  RunOutput out;
  for (Model m : models) {
    const Trace trace = simulate(rc.x0, net, rc.cfg, m, spec.sim);
    out.summaries.push_back(summarize(trace, m, net, rc.cfg, spec.sim.tol));

    const std::string tag(to_string(m));
    const auto trace_path = spec.out_dir / ("trace_" + tag + ".csv");
    const auto summary_path = spec.out_dir / ("summary_" + tag + ".json");
    export_trace(trace, trace_path);
    write_json(to_json(out.summaries.back()), summary_path);
    out.files.push_back(trace_path);
    out.files.push_back(summary_path);
  }
  return out;
}

int exit_code_for(const std::exception& e) noexcept {
  if (dynamic_cast<const PreconditionError*>(&e) || dynamic_cast<const InputError*>(&e)) return 2;
  return 1;
}

}  // namespace wmop
