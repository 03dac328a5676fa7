// Command-line front end: compile, infer, verify, bench, gen, export-dot,
// serve.
//
// Exit codes: 0 success, 1 usage, 2 parse/validation, 3 impossible evidence,
// 4 oracle cap exceeded, 5 verification deviation above tolerance.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <random>

#include "CLI11.hpp"

#include "bnet/compiler.hpp"
#include "bnet/document.hpp"
#include "bnet/engine.hpp"
#include "bnet/generate.hpp"
#include "bnet/json_io.hpp"
#include "bnet/oracle.hpp"
#include "bnet/service.hpp"

namespace {

using namespace bnet;

enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kInvalid = 2,
  kImpossible = 3,
  kCap = 4,
  kDeviation = 5,
};

constexpr double kVerifyTolerance = 1e-9;

std::vector<std::pair<std::string, std::string>> split_bindings(
    const std::vector<std::string>& raw) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& item : raw) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw CLI::ValidationError("--set", "expected var=value, got '" + item + "'");
    out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
  }
  return out;
}

void print_table(std::ostream& out, const BeliefNetwork& net, const PosteriorReport& report) {
  out << "p(evidence) = " << std::setprecision(10) << report.p_evidence << "\n";
  std::size_t width = 8;
  for (const auto& v : net.variables) width = std::max(width, v.id.size() + 2);
  for (std::size_t i = 0; i < net.size(); ++i) {
    const auto& var = net.variables[i];
    const bool observed = report.evidence.contains(var.id);
    for (std::size_t k = 0; k < var.cardinality(); ++k) {
      out << std::left << std::setw(static_cast<int>(width)) << (k == 0 ? var.id : "")
          << std::setw(16) << var.values[k] << std::fixed << std::setprecision(6)
          << report.posteriors[i][k] << (observed && report.posteriors[i][k] == 1.0 ? "  *" : "")
          << "\n";
      out.unsetf(std::ios::fixed);
    }
  }
  out << "checks=" << report.counters.checks << " cells_sent=" << report.counters.cells_sent
      << " elapsed_us=" << report.elapsed_us << "\n";
}

// Max absolute difference between engine and oracle over every posterior
// entry and P(e). Impossible evidence on both sides counts as agreement.
double deviation(const std::shared_ptr<const CompiledNetwork>& compiled,
                 const EvidenceSet& evidence) {
  std::optional<PosteriorReport> engine;
  std::optional<OracleReport> oracle;
  try {
    engine = query(compiled, evidence);
  } catch (const ImpossibleEvidence&) {
  }
  try {
    oracle = oracle_posteriors(compiled->network, evidence);
  } catch (const ImpossibleEvidence&) {
  }
  if (!engine && !oracle) return 0.0;
  if (!engine || !oracle) return std::numeric_limits<double>::infinity();
  double worst = std::abs(engine->p_evidence - oracle->p_evidence);
  for (std::size_t v = 0; v < oracle->posteriors.size(); ++v)
    for (std::size_t k = 0; k < oracle->posteriors[v].size(); ++k)
      worst = std::max(worst, std::abs(engine->posteriors[v][k] - oracle->posteriors[v][k]));
  return worst;
}

struct BenchRow {
  std::size_t evidence_size;
  AbsorptionMode mode;
  std::size_t working_cells;
  std::uint64_t checks;
  std::uint64_t cells_sent;
  double mean_us;
};

BenchRow bench_once(const std::shared_ptr<const CompiledNetwork>& compiled,
                    const EvidenceSet& evidence, AbsorptionMode mode, int trials) {
  BenchRow row{evidence.size(), mode, 0, 0, 0, 0.0};
  double total_us = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto start = std::chrono::steady_clock::now();
    InferenceSession session(compiled, mode);
    session.absorb_evidence(evidence);
    const std::size_t cells = session.working_cells();
    session.propagate();
    for (std::size_t v = 0; v < compiled->network.size(); ++v) (void)session.marginal(v);
    total_us += std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start)
                    .count();
    row.working_cells = cells;
    row.checks = session.counters().checks;
    row.cells_sent = session.counters().cells_sent;
  }
  row.mean_us = total_us / std::max(trials, 1);
  return row;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact inference for discrete belief networks"};
  app.require_subcommand(1);

  std::string net_path;
  std::vector<std::string> raw_set;
  std::string format = "json";
  std::string mode_name = "removal";
  std::uint64_t seed = 1;
  int trials = -1;
  bool sweep = false;
  bool forest = false;
  GeneratorOptions gen;
  std::string output;
  std::string host = "127.0.0.1";
  int port = 8080;

  auto* compile_cmd = app.add_subcommand("compile", "Compile a network and print forest statistics");
  compile_cmd->add_option("network", net_path, "Network document")->required();

  auto* infer_cmd = app.add_subcommand("infer", "Posterior distributions given evidence");
  infer_cmd->add_option("network", net_path, "Network document")->required();
  infer_cmd->add_option("--set", raw_set, "Evidence binding var=valueLabel (repeatable)");
  infer_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));
  infer_cmd->add_option("--mode", mode_name, "Evidence absorption mode")
      ->check(CLI::IsMember({"removal", "zeroing"}));

  auto* verify_cmd = app.add_subcommand("verify", "Compare the engine with brute-force enumeration");
  verify_cmd->add_option("network", net_path, "Network document")->required();
  verify_cmd->add_option("--set", raw_set, "Evidence binding var=valueLabel (repeatable)");
  verify_cmd->add_option("--trials", trials, "Random evidence trials (default 20 without --set)");
  verify_cmd->add_option("--seed", seed, "Random seed");

  auto* bench_cmd = app.add_subcommand("bench", "Timing and operation counts by evidence size");
  bench_cmd->add_option("network", net_path, "Network document")->required();
  bench_cmd->add_flag("--evidence-sweep", sweep, "Sweep evidence sizes 0..n");
  bench_cmd->add_option("--trials", trials, "Repetitions per row (default 20)");
  bench_cmd->add_option("--seed", seed, "Random seed");
  bench_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));

  auto* gen_cmd = app.add_subcommand("gen", "Emit a random valid network document");
  gen_cmd->add_option("--nodes", gen.nodes, "Number of variables")->required();
  gen_cmd->add_option("--arcs", gen.arcs, "Number of arcs")->required();
  gen_cmd->add_option("--max-card", gen.max_card, "Largest cardinality")->check(CLI::Range(2, 64));
  gen_cmd->add_option("--min-card", gen.min_card, "Smallest cardinality")->check(CLI::Range(2, 64));
  gen_cmd->add_option("--max-parents", gen.max_parents, "Parent limit per node (0 = none)");
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("-o,--output", output, "Write to file instead of stdout");

  auto* dot_cmd = app.add_subcommand("export-dot", "Graphviz rendering of a network");
  dot_cmd->add_option("network", net_path, "Network document")->required();
  dot_cmd->add_flag("--forest", forest, "Render the compiled junction forest instead");

  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--port", port, "TCP port")->check(CLI::Range(1, 65535));
  serve_cmd->add_option("--host", host, "Bind address");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  auto& out = std::cout;
  try {
    if (*compile_cmd) {
      auto compiled = compile(load_network(net_path));
      out << stats_to_json(forest_stats(compiled->forest)).dump(2) << "\n";
    } else if (*infer_cmd) {
      auto compiled = compile(load_network(net_path));
      auto evidence = evidence_from_labels(compiled->network, split_bindings(raw_set));
      auto mode = mode_name == "zeroing" ? AbsorptionMode::Zeroing : AbsorptionMode::Removal;
      auto report = query(compiled, evidence, mode);
      if (format == "table")
        print_table(out, compiled->network, report);
      else
        out << report_to_json(compiled->network, report).dump(2) << "\n";
    } else if (*verify_cmd) {
      auto compiled = compile(load_network(net_path));
      const auto& net = compiled->network;
      std::vector<EvidenceSet> cases;
      if (!raw_set.empty()) cases.push_back(evidence_from_labels(net, split_bindings(raw_set)));
      const int random_trials = trials >= 0 ? trials : (raw_set.empty() ? 20 : 0);
      std::mt19937_64 rng(seed);
      for (int t = 0; t < random_trials; ++t) {
        const std::size_t count = uniform_index(rng, std::min<std::size_t>(net.size(), 4) + 1);
        cases.push_back(sample_evidence(net, count, rng));
      }
      if (cases.empty()) cases.emplace_back();
      double worst = 0.0;
      for (const auto& ev : cases) worst = std::max(worst, deviation(compiled, ev));
      Json result;
      result["network"] = net.name;
      result["cases"] = cases.size();
      result["max_abs_deviation"] = worst;
      result["tolerance"] = kVerifyTolerance;
      result["ok"] = worst <= kVerifyTolerance;
      out << result.dump(2) << "\n";
      if (!(worst <= kVerifyTolerance)) return kDeviation;
    } else if (*bench_cmd) {
      auto compiled = compile(load_network(net_path));
      const auto& net = compiled->network;
      std::mt19937_64 rng(seed);
      auto full = sample_evidence(net, net.size(), rng);
      std::vector<std::string> ids;
      for (const auto& [id, _] : full) ids.push_back(id);
      for (std::size_t i = ids.size(); i > 1; --i) std::swap(ids[i - 1], ids[uniform_index(rng, i)]);

      const std::size_t max_size = sweep ? net.size() : std::min<std::size_t>(1, net.size());
      const int reps = trials > 0 ? trials : 20;
      std::vector<BenchRow> rows;
      EvidenceSet nested;
      for (std::size_t size = 0; size <= max_size; ++size) {
        if (size > 0) nested.set(ids[size - 1], *full.get(ids[size - 1]));
        for (auto mode : {AbsorptionMode::Removal, AbsorptionMode::Zeroing})
          rows.push_back(bench_once(compiled, nested, mode, reps));
      }
      if (format == "json") {
        Json arr = Json::array();
        for (const auto& r : rows)
          arr.push_back({{"evidence", r.evidence_size},
                         {"mode", r.mode == AbsorptionMode::Removal ? "removal" : "zeroing"},
                         {"working_cells", r.working_cells},
                         {"checks", r.checks},
                         {"cells_sent", r.cells_sent},
                         {"mean_us", r.mean_us}});
        out << arr.dump(2) << "\n";
      } else {
        out << std::left << std::setw(10) << "evidence" << std::setw(10) << "mode" << std::setw(14)
            << "cells" << std::setw(12) << "checks" << std::setw(14) << "cells_sent"
            << "mean_us\n";
        for (const auto& r : rows)
          out << std::setw(10) << r.evidence_size << std::setw(10)
              << (r.mode == AbsorptionMode::Removal ? "removal" : "zeroing") << std::setw(14)
              << r.working_cells << std::setw(12) << r.checks << std::setw(14) << r.cells_sent
              << std::fixed << std::setprecision(1) << r.mean_us << "\n";
      }
    } else if (*gen_cmd) {
      const std::string doc = serialize_network(generate_network(gen));
      if (output.empty()) {
        out << doc;
      } else {
        std::ofstream file(output, std::ios::binary);
        if (!file) throw Error("cannot write '" + output + "'");
        file << doc;
      }
    } else if (*dot_cmd) {
      auto net = load_network(net_path);
      out << (forest ? forest_to_dot(*compile(net)) : network_to_dot(net));
    } else if (*serve_cmd) {
      Service service;
      serve(service, host, port);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInvalid;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kInvalid;
  } catch (const ImpossibleEvidence& e) {
    std::cerr << "impossible evidence: " << e.what() << "\n";
    return kImpossible;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const EvidenceError& e) {
    std::cerr << "evidence error: " << e.what() << "\n";
    return kUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}
