#pragma once

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "basket/benchmark.hpp"
#include "basket/decompose.hpp"
#include "basket/errors.hpp"
#include "basket/gibbs.hpp"
#include "basket/graph.hpp"
#include "basket/model.hpp"
#include "basket/moments.hpp"
#include "basket/optimize.hpp"
#include "basket/version.hpp"

namespace basket {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Small file helpers

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

/// FNV-1a 64-bit digest, used for input/output fingerprints in run manifests.
inline std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string fnv1a64_hex(const std::string& bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

inline std::string digest_file(const std::string& path) { return fnv1a64_hex(read_text_file(path)); }

/// Shortest decimal form that parses back to the same double ("%.17g" would
/// be faithful too, but noisy: 0.1 must stay "0.1" and 100.0 must stay "100",
/// not "1e+02").
inline std::string format_double(double v) {
  std::string best;
  for (int precision = 1; precision <= 17; ++precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v && (best.empty() || std::strlen(buf) < best.size()))
      best = buf;
  }
  return best.empty() ? "0" : best;
}

// ---------------------------------------------------------------------------
// Model JSON: {"n", "domain": "binary"|"spin", "theta": row-major, "profits"?}

inline json model_to_json(const IsingModel& m, const std::vector<double>* profits = nullptr) {
  json doc;
  doc["n"] = m.n();
  doc["domain"] = to_string(m.domain());
  doc["theta"] = m.theta_data();
  if (profits) doc["profits"] = *profits;
  return doc;
}

struct ModelFile {
  IsingModel model;
  std::optional<std::vector<double>> profits;
};

inline ModelFile model_from_json(const json& doc) {
  try {
    const int n = doc.at("n").get<int>();
    const std::string domain = doc.at("domain").get<std::string>();
    if (domain != "binary" && domain != "spin")
      throw ParseError("model: domain must be \"binary\" or \"spin\"");
    auto theta = doc.at("theta").get<std::vector<double>>();
    ModelFile out{IsingModel(n, std::move(theta), domain == "binary" ? Domain::Binary : Domain::Spin),
                  std::nullopt};
    if (doc.contains("profits")) out.profits = doc.at("profits").get<std::vector<double>>();
    return out;
  } catch (const json::exception& e) {
    throw ParseError(std::string("model: ") + e.what());
  }
}

inline void save_model(const std::string& path, const IsingModel& m,
                       const std::vector<double>* profits = nullptr) {
  write_text_file(path, model_to_json(m, profits).dump(2) + "\n");
}

inline ModelFile load_model(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return model_from_json(doc);
}

inline Instance instance_from_model_file(const ModelFile& f) {
  if (!f.profits) throw ParseError("instance requires a \"profits\" array in the model file");
  return Instance(f.model, *f.profits);
}

// ---------------------------------------------------------------------------
// Sample batches: CSV with a header row of product indices, 0/1 rows after.

inline std::string batch_to_csv(const SampleBatch& batch) {
  std::ostringstream out;
  const int k = batch.assortment.size();
  for (int a = 0; a < k; ++a) out << (a ? "," : "") << batch.assortment.member(a);
  out << "\n";
  for (std::int64_t i = 0; i < batch.n_samples; ++i) {
    const std::uint8_t* row = batch.row(i);
    for (int a = 0; a < k; ++a) out << (a ? "," : "") << int(row[a]);
    out << "\n";
  }
  return out.str();
}

inline json sampler_config_to_json(const SamplerConfig& c) {
  return json{{"n_samples", c.n_samples}, {"burn_in", c.burn_in},     {"thinning", c.thinning},
              {"seed", c.seed},           {"scan", c.scan == Scan::Systematic ? "systematic" : "random"},
              {"chains", c.chains}};
}

inline SamplerConfig sampler_config_from_json(const json& doc) {
  SamplerConfig c;
  try {
    c.n_samples = doc.at("n_samples").get<std::int64_t>();
    c.burn_in = doc.at("burn_in").get<int>();
    c.thinning = doc.at("thinning").get<int>();
    c.seed = doc.at("seed").get<std::uint64_t>();
    const std::string scan = doc.at("scan").get<std::string>();
    if (scan != "systematic" && scan != "random") throw ParseError("sampler: bad scan value");
    c.scan = scan == "systematic" ? Scan::Systematic : Scan::Random;
    c.chains = doc.value("chains", 1);
  } catch (const json::exception& e) {
    throw ParseError(std::string("sampler config: ") + e.what());
  }
  return c;
}

// ---------------------------------------------------------------------------
// Transaction ingestion.
//
// Token format: one basket per line, whitespace-separated product identifier
// strings; product indices are assigned in order of first appearance and the
// id map is reported back for the JSON sidecar. Blank lines are skipped
// (empty baskets cannot be represented in this format; use the CSV format).
//
// CSV format: the sample-batch layout above, entries 0/1.

struct TransactionFile {
  TransactionSample sample;
  std::vector<std::string> ids;  // ids[i] is the identifier of product index i
};

inline TransactionFile parse_transactions_tokens(const std::string& text) {
  std::vector<std::vector<int>> baskets;
  std::map<std::string, int> index_of;
  std::vector<std::string> ids;

  std::istringstream lines(text);
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::vector<int> basket;
    std::string tok;
    while (tokens >> tok) {
      auto [it, inserted] = index_of.try_emplace(tok, static_cast<int>(ids.size()));
      if (inserted) ids.push_back(tok);
      for (int seen : basket)
        if (seen == it->second)
          throw ParseError("line " + std::to_string(line_no) + ": duplicate product \"" + tok + "\"");
      basket.push_back(it->second);
    }
    if (!basket.empty()) baskets.push_back(std::move(basket));
  }
  if (baskets.empty()) throw ParseError("no baskets found");

  TransactionFile out;
  out.ids = ids;
  out.sample.m = static_cast<std::int64_t>(baskets.size());
  out.sample.n = static_cast<int>(ids.size());
  out.sample.spins.assign(static_cast<std::size_t>(out.sample.m) * out.sample.n, -1);
  for (std::size_t k = 0; k < baskets.size(); ++k)
    for (int i : baskets[k])
      out.sample.spins[k * static_cast<std::size_t>(out.sample.n) + static_cast<std::size_t>(i)] = 1;
  return out;
}

inline TransactionSample parse_transactions_csv(const std::string& text) {
  std::istringstream lines(text);
  std::string line;
  if (!std::getline(lines, line)) throw ParseError("empty file");
  std::vector<int> header;
  {
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        header.push_back(std::stoi(cell));
      } catch (...) {
        throw ParseError("line 1: header must contain product indices");
      }
      if (header.back() < 0) throw ParseError("line 1: negative product index");
    }
  }
  if (header.empty()) throw ParseError("line 1: empty header");
  int n = 0;
  for (int idx : header) n = std::max(n, idx + 1);

  std::vector<std::int8_t> spins;
  std::int64_t m = 0;
  int line_no = 1;
  while (std::getline(lines, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream cells(line);
    std::string cell;
    std::vector<std::int8_t> row(static_cast<std::size_t>(n), -1);
    std::size_t col = 0;
    while (std::getline(cells, cell, ',')) {
      if (col >= header.size())
        throw ParseError("line " + std::to_string(line_no) + ": too many columns");
      if (cell != "0" && cell != "1")
        throw ParseError("line " + std::to_string(line_no) + ": entries must be 0 or 1");
      if (cell == "1") row[static_cast<std::size_t>(header[col])] = 1;
      ++col;
    }
    if (col != header.size())
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(header.size()) + " columns");
    spins.insert(spins.end(), row.begin(), row.end());
    ++m;
  }
  if (m == 0) throw ParseError("no baskets found");
  return TransactionSample{m, n, std::move(spins)};
}

/// Sniffs the transaction format: a comma in the first line means the
/// sample-batch CSV layout, anything else the token-per-product layout.
inline bool looks_like_csv(const std::string& text) {
  const auto eol = text.find('\n');
  const std::string first = text.substr(0, eol == std::string::npos ? text.size() : eol);
  return first.find(',') != std::string::npos;
}

// ---------------------------------------------------------------------------
// Moments / graph / decomposition / optimization exports.

inline json moments_to_json(const Moments& mom) {
  return json{{"n", mom.n}, {"mu", mom.mu}, {"s", mom.s}, {"c", mom.c}};
}

inline std::string graph_edges_csv(const ProductGraph& g) {
  std::ostringstream out;
  out << "i,j,weight\n";
  for (const Edge& e : g.edges)
    out << e.i << "," << e.j << "," << format_double(e.weight) << "\n";
  return out.str();
}

inline std::string graph_nodes_csv(const ProductGraph& g, const std::vector<double>* profits) {
  std::ostringstream out;
  out << "index,theta_ii,profit\n";
  for (int i = 0; i < g.n; ++i) {
    out << i << "," << format_double(g.node_weights[static_cast<std::size_t>(i)]) << ",";
    if (profits) out << format_double((*profits)[static_cast<std::size_t>(i)]);
    out << "\n";
  }
  return out.str();
}

inline json decomposition_to_json(const Decomposition& d) {
  json subs = json::array();
  for (const Subproblem& sp : d.subproblems)
    subs.push_back(json{{"size", sp.original_ids.size()}, {"products", sp.original_ids}});
  return json{{"forced_in", d.forced_in}, {"subproblems", subs}};
}

inline json result_to_json(const OptimizationResult& res) {
  json doc;
  doc["assortment"] = res.assortment.members();
  doc["value"] = res.value;
  doc["evaluations"] = res.evaluations;
  doc["empty_selected"] = res.empty_selected;
  doc["revalued"] = res.revalued;
  return doc;
}

inline std::string trace_to_csv(const std::vector<TracePoint>& trace) {
  std::ostringstream out;
  out << "iteration,value,temperature\n";
  for (const TracePoint& p : trace)
    out << p.iteration << "," << format_double(p.current_value) << ","
        << format_double(p.temperature) << "\n";
  return out.str();
}

inline std::string report_rows_csv(const BenchmarkReport& report) {
  std::ostringstream out;
  out << "instance,method,value,baseline,metric,assortment_size\n";
  for (const BenchmarkRow& r : report.rows)
    out << r.instance_id << "," << r.method << "," << format_double(r.value) << ","
        << format_double(r.baseline) << "," << format_double(r.metric) << ","
        << r.assortment_size << "\n";
  return out.str();
}

inline std::string report_timings_csv(const BenchmarkReport& report) {
  std::ostringstream out;
  out << "instance,method,seconds\n";
  for (const BenchmarkRow& r : report.rows)
    out << r.instance_id << "," << r.method << "," << format_double(r.seconds) << "\n";
  return out.str();
}

/// Long-format CSV (method, metric, value), one row per report cell.
inline std::string report_long_csv(const BenchmarkReport& report) {
  std::ostringstream out;
  out << "method,metric,value\n";
  for (const BenchmarkRow& r : report.rows) {
    const char* metric = report.suite == "gaps" ? "gap" : "gain";
    out << r.method << "," << metric << "," << format_double(r.metric) << "\n";
    out << r.method << ",assortment_size," << r.assortment_size << "\n";
  }
  return out.str();
}

/// Wall times are deliberately absent: the summary (like the rows CSV) is
/// byte-identical across runs with the same config and seed. Timings live in
/// their own sidecar CSV.
inline json report_summary_json(const BenchmarkReport& report) {
  json per_method = json::array();
  for (const MethodAggregate& a : report.aggregates())
    per_method.push_back(json{{"method", a.method},
                              {"count", a.count},
                              {"mean_metric", a.mean_metric},
                              {"mean_assortment_size", a.mean_size}});
  return json{{"suite", report.suite}, {"methods", per_method}};
}

// ---------------------------------------------------------------------------
// Run manifests: enough provenance to reproduce a command byte-for-byte.

struct RunManifest {
  std::string command;
  json config;
  std::vector<std::pair<std::string, std::string>> inputs;   // (path, fnv64)
  std::vector<std::pair<std::string, std::string>> outputs;  // (path, fnv64)
  double wall_seconds = 0.0;
};

inline json manifest_to_json(const RunManifest& m) {
  json inputs = json::array(), outputs = json::array();
  for (const auto& [path, digest] : m.inputs) inputs.push_back({{"path", path}, {"fnv64", digest}});
  for (const auto& [path, digest] : m.outputs) outputs.push_back({{"path", path}, {"fnv64", digest}});
  return json{{"tool", kToolName},     {"version", kToolVersion}, {"command", m.command},
              {"config", m.config},    {"inputs", inputs},        {"outputs", outputs},
              {"wall_seconds", m.wall_seconds}};
}

inline RunManifest manifest_from_json(const json& doc) {
  RunManifest m;
  try {
    m.command = doc.at("command").get<std::string>();
    m.config = doc.at("config");
    for (const json& entry : doc.at("inputs"))
      m.inputs.emplace_back(entry.at("path").get<std::string>(), entry.at("fnv64").get<std::string>());
    for (const json& entry : doc.value("outputs", json::array()))
      m.outputs.emplace_back(entry.at("path").get<std::string>(), entry.at("fnv64").get<std::string>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("manifest: ") + e.what());
  }
  return m;
}

}  // namespace basket
