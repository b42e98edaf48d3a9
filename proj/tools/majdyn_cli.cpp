// Command-line front end. Talks to the library only through majdyn.h.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "majdyn/majdyn.h"

namespace {

enum Exit { kOk = 0, kInternal = 1, kInvalid = 2, kSizeCap = 3 };

int exit_code(majdyn_status s) {
  switch (s) {
    case MAJDYN_OK: return kOk;
    case MAJDYN_E_SIZE_CAP: return kSizeCap;
    case MAJDYN_E_INTERNAL: return kInternal;
    default: return kInvalid;
  }
}

struct Failure {
  int code;
};

void check(majdyn_status s) {
  if (s == MAJDYN_OK) return;
  std::cerr << "error: " << majdyn_status_name(s) << ": " << majdyn_last_error() << "\n";
  throw Failure{exit_code(s)};
}

[[noreturn]] void usage_error(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  throw Failure{kInvalid};
}

struct GraphDel {
  void operator()(majdyn_graph* g) const { majdyn_graph_free(g); }
};
struct ColoringDel {
  void operator()(majdyn_coloring* c) const { majdyn_coloring_free(c); }
};
struct ResultDel {
  void operator()(majdyn_result* r) const { majdyn_result_free(r); }
};
struct StringDel {
  void operator()(char* s) const { majdyn_string_free(s); }
};
using GraphPtr = std::unique_ptr<majdyn_graph, GraphDel>;
using ColoringPtr = std::unique_ptr<majdyn_coloring, ColoringDel>;
using ResultPtr = std::unique_ptr<majdyn_result, ResultDel>;
using StringPtr = std::unique_ptr<char, StringDel>;

GraphPtr load_graph(const std::string& spec) {
  majdyn_graph* g = nullptr;
  check(majdyn_graph_from_spec(spec.c_str(), &g));
  return GraphPtr(g);
}

ColoringPtr load_coloring(const majdyn_graph* g, const std::string& spec, const std::optional<std::uint64_t>& seed) {
  majdyn_coloring* c = nullptr;
  check(majdyn_coloring_from_spec(g, spec.c_str(), seed.has_value(), seed.value_or(0), &c));
  return ColoringPtr(c);
}

majdyn_model parse_model(const std::string& m) { return m == "rmm" ? MAJDYN_RMM : MAJDYN_MM; }

void emit(const char* json, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << json << "\n";
    return;
  }
  std::ofstream out(out_path, std::ios::trunc);
  if (!out || !(out << json << "\n")) usage_error("cannot write '" + out_path + "'");
}

struct SimulateArgs {
  std::string model, graph, coloring, trace;
  std::optional<std::uint64_t> seed;
  std::uint64_t max_rounds = 0;
  bool trace_colorings = false;
};

int cmd_simulate(const SimulateArgs& a) {
  auto g = load_graph(a.graph);
  auto c = load_coloring(g.get(), a.coloring, a.seed);
  majdyn_simulate_options o;
  majdyn_simulate_options_init(&o);
  o.model = parse_model(a.model);
  o.has_seed = a.seed.has_value();
  o.seed = a.seed.value_or(0);
  o.max_rounds = a.max_rounds;
  o.trace_path = a.trace.empty() ? nullptr : a.trace.c_str();
  o.trace_colorings = a.trace_colorings;
  majdyn_result* r = nullptr;
  check(majdyn_simulate(g.get(), c.get(), &o, &r));
  ResultPtr result(r);
  char* json = nullptr;
  check(majdyn_result_to_json(result.get(), &json));
  StringPtr owned(json);
  emit(json, "");
  return kOk;
}

struct AnalyzeArgs {
  std::string what, graph, model = "mm", coloring, set, out;
  std::optional<std::uint64_t> seed;
  std::size_t max_nodes = 0;
  bool list = false, exhaustive = false;
};

int cmd_analyze(const AnalyzeArgs& a) {
  auto g = load_graph(a.graph);
  ColoringPtr c;
  if (!a.coloring.empty()) c = load_coloring(g.get(), a.coloring, a.seed);
  majdyn_analyze_options o;
  majdyn_analyze_options_init(&o);
  o.model = parse_model(a.model);
  o.coloring = c.get();
  o.set_spec = a.set.empty() ? nullptr : a.set.c_str();
  o.max_nodes = a.max_nodes;
  o.list = a.list;
  o.exhaustive = a.exhaustive;
  char* json = nullptr;
  check(majdyn_analyze(g.get(), a.what.c_str(), &o, &json));
  StringPtr owned(json);
  emit(json, a.out);
  return kOk;
}

struct ExperimentArgs {
  std::string config, out;
  unsigned jobs = 0;
};

int cmd_experiment(const ExperimentArgs& a) {
  auto progress = [](const char* line, void*) { std::cerr << line << "\n"; };
  char* json = nullptr;
  check(majdyn_experiment_run(a.config.c_str(), a.jobs, a.out.empty() ? nullptr : a.out.c_str(), progress, nullptr,
                              &json));
  StringPtr owned(json);
  emit(json, "");
  return kOk;
}

struct GenerateArgs {
  std::string graph, coloring, format = "json", out;
  std::optional<std::uint64_t> seed;
};

int cmd_generate(const GenerateArgs& a) {
  auto g = load_graph(a.graph);
  if (!a.out.empty()) {
    char* text = nullptr;
    check(a.format == "edgelist" ? majdyn_graph_to_edgelist(g.get(), &text) : majdyn_graph_to_json(g.get(), &text));
    StringPtr owned(text);
    std::ofstream out(a.out, std::ios::trunc);
    if (!out || !(out << text << (a.format == "json" ? "\n" : ""))) usage_error("cannot write '" + a.out + "'");
  } else if (a.format != "json") {
    usage_error("--format edgelist needs --out (stdout carries JSON only)");
  }
  char* graph_json = nullptr;
  check(majdyn_graph_to_json(g.get(), &graph_json));
  StringPtr graph_owned(graph_json);
  std::string doc = "{\"nodes\":" + std::to_string(majdyn_graph_nodes(g.get())) +
                    ",\"edges\":" + std::to_string(majdyn_graph_edge_count(g.get()));
  if (a.out.empty()) {
    doc += ",\"graph\":" + std::string(graph_json);
  } else {
    doc += ",\"written\":\"" + a.out + "\"";
  }
  if (!a.coloring.empty()) {
    auto c = load_coloring(g.get(), a.coloring, a.seed);
    char* cj = nullptr;
    check(majdyn_coloring_to_json(c.get(), &cj));
    StringPtr cj_owned(cj);
    char* cs = nullptr;
    check(majdyn_coloring_to_string(c.get(), &cs));
    StringPtr cs_owned(cs);
    doc += ",\"coloring\":" + std::string(cj) + ",\"coloring_string\":\"" + cs + "\"";
  }
  doc += "}";
  emit(doc.c_str(), "");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Majority dynamics (MM and RMM) on graphs"};
  app.set_version_flag("--version", std::string(majdyn_version()));
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run one simulation and print the result as JSON");
  simulate->add_option("--model", sim.model, "mm or rmm")->required()->check(CLI::IsMember({"mm", "rmm"}));
  simulate->add_option("--graph", sim.graph, "Graph file or generator (cycle:n, twocycle:n, cyclerand:n:seed, ...)")
      ->required();
  simulate->add_option("--coloring", sim.coloring, "Coloring file or spec (extreme, bw:..., random:p, ...)")->required();
  simulate->add_option("--seed", sim.seed, "Seed for tie coins and random colorings");
  simulate->add_option("--max-rounds", sim.max_rounds, "Round cap (default: model default)");
  simulate->add_option("--trace", sim.trace, "Write a JSONL trace of every round");
  simulate->add_flag("--trace-colorings", sim.trace_colorings, "Include full colorings in the trace");

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Exact analyses on small graphs");
  analyze->add_option("--what", an.what, "markov, stable, winning, min-winning, hitting, stabilization, resilient")
      ->required()
      ->check(CLI::IsMember({"markov", "stable", "winning", "min-winning", "hitting", "stabilization", "resilient"}));
  analyze->add_option("--graph", an.graph, "Graph file or generator")->required();
  analyze->add_option("--model", an.model, "mm or rmm")->check(CLI::IsMember({"mm", "rmm"}));
  analyze->add_option("--coloring", an.coloring, "Start coloring (hitting, stabilization)");
  analyze->add_option("--seed", an.seed, "Seed for a random start coloring");
  analyze->add_option("--set", an.set, "Node set (nodes:0,2,4, canonical, all, none, JSON, file)");
  analyze->add_option("--max-nodes", an.max_nodes, "Override the node cap");
  analyze->add_flag("--list", an.list, "stable: list the stable colorings");
  analyze->add_flag("--exhaustive", an.exhaustive, "winning: use the exhaustive oracle");
  analyze->add_option("--out", an.out, "Write the report here instead of stdout");

  ExperimentArgs ex;
  auto* experiment = app.add_subcommand("experiment", "Run an experiment from a JSON config");
  experiment->add_option("config", ex.config, "Config file")->required();
  experiment->add_option("--jobs", ex.jobs, "Worker threads (0 = all cores)");
  experiment->add_option("--out", ex.out, "Override the CSV output path");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Materialize a graph and optionally a coloring");
  generate->add_option("--graph", gen.graph, "Graph file or generator")->required();
  generate->add_option("--coloring", gen.coloring, "Coloring spec");
  generate->add_option("--seed", gen.seed, "Seed for random colorings");
  generate->add_option("--format", gen.format, "json or edgelist (file output)")->check(CLI::IsMember({"json", "edgelist"}));
  generate->add_option("--out", gen.out, "Write the graph to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*simulate) return cmd_simulate(sim);
    if (*analyze) return cmd_analyze(an);
    if (*experiment) return cmd_experiment(ex);
    if (*generate) return cmd_generate(gen);
  } catch (const Failure& f) {
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
