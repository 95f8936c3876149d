// basketopt: estimate, decompose, simulate, and optimize product assortments
// under a pairwise (Ising) basket-choice model.
//
// Exit codes: 0 success, 2 input parse failure, 3 estimator/model
// precondition violated, 4 iterative solver did not converge, 5 exact method
// requested beyond its size limit, 1 other error.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "basket/benchmark.hpp"
#include "basket/dc.hpp"
#include "basket/decompose.hpp"
#include "basket/exact.hpp"
#include "basket/generate.hpp"
#include "basket/gibbs.hpp"
#include "basket/io.hpp"
#include "basket/katz.hpp"
#include "basket/optimize.hpp"
#include "basket/parallel.hpp"
#include "basket/sparse_mle.hpp"
#include "basket/transform.hpp"
#include "basket/version.hpp"

namespace fs = std::filesystem;
using basket::json;

namespace {

// ---------------------------------------------------------------------------
// Output tree: <out>/{models,results,reports}. Existing files are only
// replaced with --force.

struct OutputTree {
  fs::path root;
  bool force = false;
  std::vector<std::pair<std::string, std::string>> written;  // (path, digest)

  fs::path dir(const char* sub) {
    fs::path d = root / sub;
    fs::create_directories(d);
    return d;
  }

  void write(const fs::path& path, const std::string& content) {
    if (fs::exists(path) && !force)
      throw basket::Error(path.string() + " exists; pass --force to overwrite");
    basket::write_text_file(path.string(), content);
    written.emplace_back(path.string(), basket::fnv1a64_hex(content));
  }
};

struct InputSet {
  std::vector<std::pair<std::string, std::string>> files;  // (path, digest)

  std::string read(const std::string& path) {
    const std::string text = basket::read_text_file(path);
    files.emplace_back(path, basket::fnv1a64_hex(text));
    return text;
  }
};

void write_manifest(const std::string& command, const json& config, const InputSet& in,
                    OutputTree& out, double wall_seconds) {
  basket::RunManifest m;
  m.command = command;
  m.config = config;
  m.inputs = in.files;
  m.outputs = out.written;
  m.wall_seconds = wall_seconds;
  const fs::path path = out.root / (command + ".manifest.json");
  if (fs::exists(path) && !out.force)
    throw basket::Error(path.string() + " exists; pass --force to overwrite");
  basket::write_text_file(path.string(), basket::manifest_to_json(m).dump(2) + "\n");
}

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw basket::ParseError(origin + ": " + e.what());
  }
}

basket::Assortment parse_assortment(const std::string& text, int n) {
  if (text == "full") return basket::Assortment::full(n);
  std::vector<int> members;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      members.push_back(std::stoi(cell));
    } catch (...) {
      throw basket::ParseError("bad assortment element \"" + cell + "\"");
    }
  }
  return basket::Assortment(std::move(members));
}

basket::Scan parse_scan(const std::string& name) {
  if (name == "systematic") return basket::Scan::Systematic;
  if (name == "random") return basket::Scan::Random;
  throw basket::ParseError("scan must be systematic or random");
}

// ---------------------------------------------------------------------------
// estimate: transactions -> spin + binary model files.

void run_estimate(const json& cfg, OutputTree& out, InputSet& in) {
  const std::string text = in.read(cfg.at("input").get<std::string>());
  std::string format = cfg.at("format").get<std::string>();
  if (format == "auto") format = basket::looks_like_csv(text) ? "csv" : "tokens";

  basket::TransactionSample sample;
  std::vector<std::string> ids;
  if (format == "tokens") {
    basket::TransactionFile tf = basket::parse_transactions_tokens(text);
    sample = std::move(tf.sample);
    ids = std::move(tf.ids);
  } else if (format == "csv") {
    sample = basket::parse_transactions_csv(text);
  } else {
    throw basket::ParseError("format must be auto, tokens, or csv");
  }

  const basket::Moments moments = basket::compute_moments(sample);
  const std::string method = cfg.at("method").get<std::string>();

  bool converged = true;
  basket::IsingModel spin(1, {0.0}, basket::Domain::Spin);
  if (method == "dc") {
    spin = basket::dc_estimate(moments);
  } else if (method == "sparse-mle") {
    basket::SparseMleOptions opts;
    opts.max_iter = cfg.at("max_iter").get<int>();
    basket::SparseMleResult res =
        basket::sparse_mle_estimate(moments, cfg.at("rho").get<double>(), opts);
    spin = res.model;
    converged = res.converged;
  } else {
    throw basket::ParseError("method must be dc or sparse-mle");
  }

  const basket::IsingModel binary = basket::spin_to_binary(spin);
  const fs::path models = out.dir("models");
  out.write(models / "model_spin.json", basket::model_to_json(spin).dump(2) + "\n");
  out.write(models / "model_binary.json", basket::model_to_json(binary).dump(2) + "\n");
  out.write(models / "moments.json", basket::moments_to_json(moments).dump(2) + "\n");
  if (!ids.empty()) {
    json idmap = json::object();
    for (std::size_t i = 0; i < ids.size(); ++i) idmap[ids[i]] = i;
    out.write(models / "ids.json", idmap.dump(2) + "\n");
  }
  if (!converged)
    throw basket::NonConvergence("sparse-mle stopped before converging; best iterate written");
}

// ---------------------------------------------------------------------------
// preprocess: model (+ profits) -> decomposition report + graph exports.

void run_preprocess(const json& cfg, OutputTree& out, InputSet& in) {
  const std::string model_path = cfg.at("model").get<std::string>();
  const json model_doc = parse_json_text(in.read(model_path), model_path);
  basket::ModelFile mf = basket::model_from_json(model_doc);
  if (mf.model.domain() == basket::Domain::Spin) mf.model = basket::spin_to_binary(mf.model);
  std::vector<double> profits;
  if (cfg.contains("profits_file") && !cfg.at("profits_file").get<std::string>().empty()) {
    const std::string profits_path = cfg.at("profits_file").get<std::string>();
    const json arr = parse_json_text(in.read(profits_path), profits_path);
    if (!arr.is_array()) throw basket::ParseError("profits file must hold a JSON array");
    profits = arr.get<std::vector<double>>();
  } else if (mf.profits) {
    profits = *mf.profits;
  } else {
    throw basket::ParseError("no profits: embed them in the model file or pass --profits");
  }
  const basket::Instance inst(mf.model, profits);
  const double epsilon = cfg.at("epsilon").get<double>();

  const basket::ProductGraph graph = basket::build_graph(inst.model, epsilon);
  const basket::Decomposition decomp = basket::preprocess(inst, epsilon);

  const fs::path reports = out.dir("reports");
  out.write(reports / "decomposition.json", basket::decomposition_to_json(decomp).dump(2) + "\n");
  out.write(reports / "edges.csv", basket::graph_edges_csv(graph));
  out.write(reports / "nodes.csv", basket::graph_nodes_csv(graph, &inst.profits));
}

// ---------------------------------------------------------------------------
// optimize: instance file + method -> result JSON (+ trace CSV).

void run_optimize(const json& cfg, OutputTree& out, InputSet& in) {
  const std::string instance_path = cfg.at("instance").get<std::string>();
  const json model_doc = parse_json_text(in.read(instance_path), instance_path);
  basket::ModelFile mf = basket::model_from_json(model_doc);
  if (mf.model.domain() == basket::Domain::Spin) mf.model = basket::spin_to_binary(mf.model);
  if (cfg.contains("profits_file") && !cfg.at("profits_file").get<std::string>().empty()) {
    const std::string profits_path = cfg.at("profits_file").get<std::string>();
    const json arr = parse_json_text(in.read(profits_path), profits_path);
    if (!arr.is_array()) throw basket::ParseError("profits file must hold a JSON array");
    mf.profits = arr.get<std::vector<double>>();
  }
  const basket::Instance inst = basket::instance_from_model_file(mf);
  const std::string method = cfg.at("method").get<std::string>();
  const int exact_limit = cfg.at("exact_limit").get<int>();
  const int threads = cfg.at("threads").get<int>();

  auto make_evaluator = [&] {
    if (cfg.at("evaluator").get<std::string>() == "exact")
      return basket::ProfitEvaluator::exact(exact_limit);
    basket::SamplerConfig s;
    s.n_samples = cfg.at("samples").get<std::int64_t>();
    s.burn_in = cfg.at("burn_in").get<int>();
    s.thinning = cfg.at("thinning").get<int>();
    s.scan = parse_scan(cfg.at("scan").get<std::string>());
    s.chains = cfg.at("chains").get<int>();
    s.seed = cfg.at("seed").get<std::uint64_t>();
    return basket::ProfitEvaluator::sampled(s, threads);
  };

  basket::OptimizationResult res;
  if (method == "brute") {
    res = basket::brute_force(inst, cfg.at("brute_limit").get<int>(), exact_limit);
  } else if (method == "sa") {
    basket::AnnealConfig sa;
    sa.k_temps = cfg.at("k_temps").get<std::int64_t>();
    sa.p_min = cfg.at("p_min").get<double>();
    sa.p_max = cfg.at("p_max").get<double>();
    sa.d_obj = cfg.at("d_obj").get<double>();
    sa.seed = cfg.at("seed").get<std::uint64_t>();
    sa.record_trace = cfg.at("trace").get<bool>();
    if (cfg.at("start").get<std::string>() != "full")
      sa.start = parse_assortment(cfg.at("start").get<std::string>(), inst.n());
    res = basket::simulated_annealing(inst, sa, make_evaluator());
  } else if (method == "revenue") {
    res = basket::weight_ordered(inst, basket::revenue_weights(inst), make_evaluator());
  } else if (method == "param") {
    res = basket::weight_ordered(inst, basket::parameter_weights(inst), make_evaluator());
  } else if (method == "katz") {
    double alpha = cfg.at("alpha").get<double>();
    if (alpha <= 0.0)
      alpha = basket::default_katz_alpha(basket::build_graph(inst.model));
    res = basket::weight_ordered(
        inst, basket::katz_weights(inst, alpha, cfg.at("beta").get<double>()), make_evaluator());
  } else {
    throw basket::ParseError("method must be brute, sa, revenue, param, or katz");
  }

  json doc = basket::result_to_json(res);
  doc["method"] = method;
  doc["config"] = cfg;
  const fs::path results = out.dir("results");
  out.write(results / "result.json", doc.dump(2) + "\n");
  if (!res.trace.empty()) out.write(results / "result_trace.csv", basket::trace_to_csv(res.trace));
}

// ---------------------------------------------------------------------------
// simulate: model + assortment -> sample batch CSV (+ config sidecar).

void run_simulate(const json& cfg, OutputTree& out, InputSet& in) {
  const std::string model_path = cfg.at("model").get<std::string>();
  const json model_doc = parse_json_text(in.read(model_path), model_path);
  basket::ModelFile mf = basket::model_from_json(model_doc);
  if (mf.model.domain() == basket::Domain::Spin) mf.model = basket::spin_to_binary(mf.model);
  const basket::Assortment s = parse_assortment(cfg.at("assortment").get<std::string>(), mf.model.n());

  basket::SamplerConfig config;
  config.n_samples = cfg.at("samples").get<std::int64_t>();
  config.burn_in = cfg.at("burn_in").get<int>();
  config.thinning = cfg.at("thinning").get<int>();
  config.scan = parse_scan(cfg.at("scan").get<std::string>());
  config.chains = cfg.at("chains").get<int>();
  config.seed = cfg.at("seed").get<std::uint64_t>();
  const int threads = cfg.at("threads").get<int>();

  const basket::SampleBatch batch = basket::sample_baskets(mf.model, s, config, threads);
  const fs::path results = out.dir("results");
  out.write(results / "batch.csv", basket::batch_to_csv(batch));
  out.write(results / "batch.config.json", basket::sampler_config_to_json(config).dump(2) + "\n");

  // Estimate-vs-samples traces for both scan orders, for convergence plots.
  if (cfg.at("profit_trace").get<bool>()) {
    if (!mf.profits) throw basket::ParseError("--profit-trace requires profits in the model file");
    const basket::Instance inst(mf.model, *mf.profits);
    std::ostringstream trace;
    trace << "scan,samples,estimate,seconds\n";
    for (basket::Scan scan : {basket::Scan::Systematic, basket::Scan::Random}) {
      const auto t0 = std::chrono::steady_clock::now();
      for (std::int64_t ns = 100; ns <= config.n_samples; ns *= 2) {
        basket::SamplerConfig c = config;
        c.scan = scan;
        c.n_samples = ns;
        const basket::ProfitEstimate est = basket::estimate_profit(inst, s, c, threads);
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        trace << (scan == basket::Scan::Systematic ? "systematic" : "random") << "," << ns << ","
              << basket::format_double(est.estimate) << "," << basket::format_double(dt) << "\n";
      }
    }
    out.write(results / "profit_trace.csv", trace.str());
  }
}

// ---------------------------------------------------------------------------
// benchmark: generated-instance experiment suites.

void run_benchmark(const json& cfg, OutputTree& out, InputSet& in) {
  json params = json::object();
  if (cfg.contains("config_file") && !cfg.at("config_file").get<std::string>().empty()) {
    const std::string config_path = cfg.at("config_file").get<std::string>();
    params = parse_json_text(in.read(config_path), config_path);
  }
  const std::string suite = cfg.at("suite").get<std::string>();
  const std::uint64_t seed = cfg.at("seed").get<std::uint64_t>();
  const int threads = cfg.at("threads").get<int>();

  basket::BenchmarkReport report;
  if (suite == "comparison") {
    basket::ComparisonConfig c;
    c.gen.n = params.value("n", 50);
    c.gen.p_edge = params.value("p_edge", 0.2);
    c.gen.p_neg = params.value("p_neg", 0.8);
    c.n_instances = params.value("n_instances", 100);
    c.sampler.n_samples = params.value("n_samples", std::int64_t{10000});
    c.sampler.burn_in = params.value("burn_in", 100);
    c.sa.k_temps = params.value("k_temps", std::int64_t{10000});
    c.seed = seed;
    c.threads = threads;
    if (params.contains("methods")) {
      c.methods.clear();
      for (const json& name : params.at("methods")) {
        const std::string v = name.get<std::string>();
        if (v == "sa") c.methods.push_back(basket::Method::SimulatedAnnealing);
        else if (v == "revenue") c.methods.push_back(basket::Method::RevenueWeights);
        else if (v == "parameter") c.methods.push_back(basket::Method::ParameterWeights);
        else if (v == "katz") c.methods.push_back(basket::Method::KatzWeights);
        else throw basket::ParseError("unknown method \"" + v + "\"");
      }
    }
    report = basket::run_comparison(c);
  } else if (suite == "gaps") {
    basket::GapsConfig c;
    c.gen.n = params.value("n", 10);
    c.gen.p_edge = params.value("p_edge", 1.0);
    c.gen.p_neg = params.value("p_neg", 0.8);
    c.n_instances = params.value("n_instances", 100);
    if (params.contains("sa_temps")) c.sa_temps = params.at("sa_temps").get<std::vector<std::int64_t>>();
    c.include_revenue = params.value("include_revenue", true);
    c.include_parameter = params.value("include_parameter", true);
    c.include_katz = params.value("include_katz", true);
    c.seed = seed;
    c.threads = threads;
    report = basket::run_optimality_gaps(c);
  } else if (suite == "timing") {
    basket::TimingConfig c;
    c.axis = [&] {
      const std::string axis = params.value("axis", std::string("samples"));
      if (axis == "samples") return basket::TimingAxis::Samples;
      if (axis == "temps") return basket::TimingAxis::Temps;
      if (axis == "products") return basket::TimingAxis::Products;
      throw basket::ParseError("axis must be samples, temps, or products");
    }();
    if (params.contains("grid")) c.grid = params.at("grid").get<std::vector<std::int64_t>>();
    else c.grid = {1000, 2000, 4000, 6000, 8000, 10000};
    c.n = params.value("n", 10);
    c.k_temps = params.value("k_temps", std::int64_t{100});
    c.n_samples = params.value("n_samples", std::int64_t{100});
    c.repeats = params.value("repeats", 1);
    c.seed = seed;
    const auto points = basket::run_timing(c);
    std::ostringstream csv;
    csv << to_string(c.axis) << ",seconds\n";
    for (const auto& [x, sec] : points) csv << x << "," << basket::format_double(sec) << "\n";
    out.write(out.dir("reports") / "timing.csv", csv.str());
    return;
  } else {
    throw basket::ParseError("suite must be comparison, gaps, or timing");
  }

  const fs::path reports = out.dir("reports");
  out.write(reports / (suite + ".csv"), basket::report_rows_csv(report));
  out.write(reports / (suite + "_summary.json"), basket::report_summary_json(report).dump(2) + "\n");
  out.write(reports / (suite + "_long.csv"), basket::report_long_csv(report));
  out.write(reports / (suite + "_timings.csv"), basket::report_timings_csv(report));
}

// ---------------------------------------------------------------------------

using Runner = void (*)(const json&, OutputTree&, InputSet&);

Runner runner_for(const std::string& command) {
  if (command == "estimate") return run_estimate;
  if (command == "preprocess") return run_preprocess;
  if (command == "optimize") return run_optimize;
  if (command == "simulate") return run_simulate;
  if (command == "benchmark") return run_benchmark;
  throw basket::ParseError("unknown command \"" + command + "\"");
}

int dispatch(const std::string& command, const json& cfg, const std::string& out_dir, bool force) {
  OutputTree out{fs::path(out_dir), force, {}};
  fs::create_directories(out.root);
  InputSet in;
  const auto t0 = std::chrono::steady_clock::now();
  bool fail_nonconvergence = false;
  std::string warning;
  try {
    runner_for(command)(cfg, out, in);
  } catch (const basket::NonConvergence& e) {
    // The best iterate is already on disk; still record the manifest.
    fail_nonconvergence = true;
    warning = e.what();
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(command, cfg, in, out, wall);
  if (fail_nonconvergence) {
    std::cerr << "warning: " << warning << "\n";
    return 4;
  }
  return 0;
}

/// Files whose bytes legitimately differ between runs (wall-clock payloads).
bool reproducibility_exempt(const std::string& path) {
  const fs::path p(path);
  const std::string name = p.filename().string();
  return name.ends_with("_timings.csv") || name == "profit_trace.csv" || name == "timing.csv";
}

int run_rerun(const std::string& manifest_path, const std::string& out_dir, bool force) {
  const basket::RunManifest m = basket::manifest_from_json(
      parse_json_text(basket::read_text_file(manifest_path), manifest_path));
  for (const auto& [path, digest] : m.inputs) {
    const std::string now = basket::digest_file(path);
    if (now != digest)
      throw basket::ParseError("input " + path + " changed since the manifest was written (" + now +
                               " != " + digest + ")");
  }
  const int code = dispatch(m.command, m.config, out_dir, force);
  if (code != 0) return code;

  const std::string replay_path = (fs::path(out_dir) / (m.command + ".manifest.json")).string();
  const basket::RunManifest replay =
      basket::manifest_from_json(parse_json_text(basket::read_text_file(replay_path), replay_path));
  int checked = 0, matched = 0;
  for (const auto& [orig_path, orig_digest] : m.outputs) {
    if (reproducibility_exempt(orig_path)) continue;
    const std::string name = fs::path(orig_path).filename().string();
    for (const auto& [new_path, new_digest] : replay.outputs) {
      if (fs::path(new_path).filename().string() != name) continue;
      ++checked;
      if (new_digest == orig_digest) ++matched;
      else std::cerr << "mismatch: " << name << " " << new_digest << " != " << orig_digest << "\n";
      break;
    }
  }
  std::cout << "reproduced " << matched << "/" << checked << " outputs byte-identically\n";
  return matched == checked ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Assortment optimization under a pairwise basket-choice model"};
  app.set_version_flag("--version", std::string(basket::kToolVersion));
  app.fallthrough();
  app.require_subcommand(1);

  std::string out_dir = "out";
  bool force = false;
  int threads = basket::hardware_threads();
  std::uint64_t seed = 0;
  app.add_option("--out", out_dir, "Output directory (created if missing)")->capture_default_str();
  app.add_flag("--force", force, "Overwrite existing output files");
  app.add_option("--threads", threads, "Worker cap for parallel sections")->capture_default_str();
  app.add_option("--seed", seed, "Master 64-bit seed")->capture_default_str();

  // estimate ----------------------------------------------------------------
  auto* est = app.add_subcommand("estimate", "Fit model parameters from transaction data");
  std::string est_input, est_format = "auto", est_method = "dc";
  double est_rho = 0.015;
  int est_max_iter = 400;
  est->add_option("--input", est_input, "Transaction file")->required();
  est->add_option("--format", est_format, "auto | tokens | csv")->capture_default_str();
  est->add_option("--method", est_method, "dc | sparse-mle")->capture_default_str();
  est->add_option("--rho", est_rho, "L1 penalty weight (sparse-mle)")->capture_default_str();
  est->add_option("--max-iter", est_max_iter, "Outer iteration cap (sparse-mle)")
      ->capture_default_str();

  // preprocess --------------------------------------------------------------
  auto* pre = app.add_subcommand("preprocess", "Decompose an instance along its coupling graph");
  std::string pre_model, pre_profits;
  double pre_epsilon = 0.0;
  pre->add_option("--model", pre_model, "Model JSON (binary or spin)")->required();
  pre->add_option("--profits", pre_profits, "JSON array of margins (else taken from the model file)");
  pre->add_option("--epsilon", pre_epsilon, "Treat |theta_ij| <= epsilon as no edge")
      ->capture_default_str();

  // optimize ----------------------------------------------------------------
  auto* opt = app.add_subcommand("optimize", "Optimize an assortment");
  std::string opt_instance, opt_profits, opt_method = "sa", opt_evaluator = "sampled";
  std::string opt_start = "full";
  std::string opt_scan = "systematic";
  std::int64_t opt_k_temps = 10000, opt_samples = 10000;
  double opt_p_min = 0.001, opt_p_max = 0.999, opt_d_obj = 0.25, opt_alpha = 0.0, opt_beta = 1.0;
  int opt_burn_in = 100, opt_thinning = 1, opt_chains = 1, opt_brute_limit = 20, opt_exact_limit = 25;
  bool opt_trace = false;
  opt->add_option("--instance", opt_instance, "Model JSON with profits")->required();
  opt->add_option("--profits", opt_profits,
                  "JSON array of margins (else taken from the instance file)");
  opt->add_option("--method", opt_method, "brute | sa | revenue | param | katz")
      ->capture_default_str();
  opt->add_option("--evaluator", opt_evaluator, "exact | sampled")->capture_default_str();
  opt->add_option("--k-temps", opt_k_temps, "Annealing iterations")->capture_default_str();
  opt->add_option("--p-min", opt_p_min, "Final target acceptance probability")->capture_default_str();
  opt->add_option("--p-max", opt_p_max, "Initial target acceptance probability")->capture_default_str();
  opt->add_option("--d-obj", opt_d_obj, "Typical objective increase")->capture_default_str();
  opt->add_option("--start", opt_start, "Starting assortment: full or comma list")
      ->capture_default_str();
  opt->add_option("--samples", opt_samples, "Gibbs samples per evaluation")->capture_default_str();
  opt->add_option("--burn-in", opt_burn_in, "Discarded sweeps per evaluation")->capture_default_str();
  opt->add_option("--thinning", opt_thinning, "Sweeps between retained samples")->capture_default_str();
  opt->add_option("--scan", opt_scan, "systematic | random")->capture_default_str();
  opt->add_option("--chains", opt_chains, "Independent Gibbs chains")->capture_default_str();
  opt->add_option("--alpha", opt_alpha, "Katz alpha (0: 1/lambda_max - 0.01)")->capture_default_str();
  opt->add_option("--beta", opt_beta, "Katz beta")->capture_default_str();
  opt->add_option("--brute-limit", opt_brute_limit, "Max products for brute force")
      ->capture_default_str();
  opt->add_option("--exact-limit", opt_exact_limit, "Exact-enumeration limit")->capture_default_str();
  opt->add_flag("--trace", opt_trace, "Record (iteration, value, temperature) trace");

  // simulate ----------------------------------------------------------------
  auto* sim = app.add_subcommand("simulate", "Draw Gibbs samples for an assortment");
  std::string sim_model, sim_assortment = "full", sim_scan = "systematic";
  std::int64_t sim_samples = 10000;
  int sim_burn_in = 100, sim_thinning = 1, sim_chains = 1;
  bool sim_profit_trace = false;
  sim->add_option("--model", sim_model, "Model JSON (binary or spin)")->required();
  sim->add_option("--assortment", sim_assortment, "full or comma list")->capture_default_str();
  sim->add_option("--samples", sim_samples, "Retained samples")->capture_default_str();
  sim->add_option("--burn-in", sim_burn_in, "Discarded sweeps")->capture_default_str();
  sim->add_option("--thinning", sim_thinning, "Sweeps between retained samples")->capture_default_str();
  sim->add_option("--scan", sim_scan, "systematic | random")->capture_default_str();
  sim->add_option("--chains", sim_chains, "Independent chains")->capture_default_str();
  sim->add_flag("--profit-trace", sim_profit_trace,
                "Also write estimate-vs-samples traces for both scan orders");

  // benchmark ----------------------------------------------------------------
  auto* bench = app.add_subcommand("benchmark", "Synthetic-instance experiment suites");
  std::string bench_suite, bench_config;
  bench->add_option("--suite", bench_suite, "comparison | gaps | timing")->required();
  bench->add_option("--config", bench_config, "JSON file overriding suite defaults");

  // rerun ----------------------------------------------------------------
  auto* rerun = app.add_subcommand("rerun", "Re-execute a command from its manifest");
  std::string rerun_manifest;
  rerun->add_option("--manifest", rerun_manifest, "Manifest JSON written by a previous run")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (est->parsed()) {
      const json cfg{{"input", est_input},
                     {"format", est_format},
                     {"method", est_method},
                     {"rho", est_rho},
                     {"max_iter", est_max_iter}};
      return dispatch("estimate", cfg, out_dir, force);
    }
    if (pre->parsed()) {
      const json cfg{{"model", pre_model}, {"profits_file", pre_profits}, {"epsilon", pre_epsilon}};
      return dispatch("preprocess", cfg, out_dir, force);
    }
    if (opt->parsed()) {
      const json cfg{{"instance", opt_instance},
                     {"profits_file", opt_profits},
                     {"method", opt_method},
                     {"evaluator", opt_evaluator},
                     {"k_temps", opt_k_temps},
                     {"p_min", opt_p_min},
                     {"p_max", opt_p_max},
                     {"d_obj", opt_d_obj},
                     {"start", opt_start},
                     {"samples", opt_samples},
                     {"burn_in", opt_burn_in},
                     {"thinning", opt_thinning},
                     {"scan", opt_scan},
                     {"chains", opt_chains},
                     {"alpha", opt_alpha},
                     {"beta", opt_beta},
                     {"brute_limit", opt_brute_limit},
                     {"exact_limit", opt_exact_limit},
                     {"trace", opt_trace},
                     {"seed", seed},
                     {"threads", threads}};
      return dispatch("optimize", cfg, out_dir, force);
    }
    if (sim->parsed()) {
      const json cfg{{"model", sim_model},     {"assortment", sim_assortment},
                     {"samples", sim_samples}, {"burn_in", sim_burn_in},
                     {"thinning", sim_thinning}, {"scan", sim_scan},
                     {"chains", sim_chains},   {"profit_trace", sim_profit_trace},
                     {"seed", seed},           {"threads", threads}};
      return dispatch("simulate", cfg, out_dir, force);
    }
    if (bench->parsed()) {
      const json cfg{{"suite", bench_suite},
                     {"config_file", bench_config},
                     {"seed", seed},
                     {"threads", threads}};
      return dispatch("benchmark", cfg, out_dir, force);
    }
    if (rerun->parsed()) return run_rerun(rerun_manifest, out_dir, force);
  } catch (const basket::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const basket::DegenerateColumn& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const basket::MomentOutOfRange& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const basket::SingularSigma& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const basket::WrongDomain& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const basket::DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const basket::EmptyAssortment& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const basket::ProductNotOffered& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const basket::NonConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const basket::InnerSolveFailed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const basket::TooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const basket::AssortmentTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
