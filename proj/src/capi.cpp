#include "majdyn/majdyn.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <new>
#include <string>

#include "majdyn/cycle_theory.hpp"
#include "majdyn/dynamics.hpp"
#include "majdyn/error.hpp"
#include "majdyn/exact.hpp"
#include "majdyn/experiments.hpp"
#include "majdyn/io.hpp"

struct majdyn_graph {
  majdyn::Graph graph;
};

struct majdyn_coloring {
  majdyn::Coloring coloring;
};

struct majdyn_result {
  majdyn::RunResult result;
};

namespace {

thread_local std::string last_error;

majdyn_status status_of(majdyn::Errc code) {
  using majdyn::Errc;
  switch (code) {
    case Errc::invalid_size: return MAJDYN_E_INVALID_SIZE;
    case Errc::invalid_parameter: return MAJDYN_E_INVALID_PARAMETER;
    case Errc::undefined_partition: return MAJDYN_E_UNDEFINED_PARTITION;
    case Errc::size_cap: return MAJDYN_E_SIZE_CAP;
    case Errc::parse: return MAJDYN_E_PARSE;
    case Errc::io: return MAJDYN_E_IO;
  }
  return MAJDYN_E_INTERNAL;
}

template <class F>
majdyn_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return MAJDYN_OK;
  } catch (const majdyn::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return MAJDYN_E_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return MAJDYN_E_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return MAJDYN_E_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw majdyn::Error(majdyn::Errc::invalid_parameter, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

majdyn::Model to_model(majdyn_model m) {
  require(m == MAJDYN_MM || m == MAJDYN_RMM, "model must be MAJDYN_MM or MAJDYN_RMM");
  return m == MAJDYN_MM ? majdyn::Model::mm : majdyn::Model::rmm;
}

majdyn::Json analyze(const majdyn::Graph& g, const std::string& what, const majdyn_analyze_options& o) {
  using namespace majdyn;
  const Model model = to_model(o.model);
  const std::size_t n = g.n();
  auto node_set = [&]() {
    require(o.set_spec != nullptr, "this analysis needs a node set");
    return parse_set_spec(o.set_spec, n);
  };
  Json j;
  j["what"] = what;
  j["n"] = n;
  if (what == "markov") {
    const Json report = markov_to_json(rmm_markov(g, o.max_nodes ? o.max_nodes : kMarkovMaxNodes));
    for (const auto& [key, value] : report.items()) j[key] = value;
  } else if (what == "stable") {
    j["model"] = to_string(model);
    j["count"] = count_stable_colorings(g, model);
    if (o.list) {
      Json states = Json::array();
      for (State s : list_stable_colorings(g, model)) states.push_back(Coloring::from_index(n, s).to_string());
      j["states"] = std::move(states);
    }
  } else if (what == "winning") {
    const NodeSet s = node_set();
    const auto mode = o.exhaustive ? WinningMode::exhaustive : WinningMode::shortcut;
    const WinningReport r = winning_set_report(g, s, model, mode);
    j["model"] = to_string(model);
    j["mode"] = o.exhaustive ? "exhaustive" : "shortcut";
    j["set"] = node_set_to_json(s);
    j["blue"] = r.blue;
    j["white"] = r.white;
    j["winning"] = r.winning();
  } else if (what == "min-winning") {
    const MinWinningSet r = min_winning_set(g, model, o.max_nodes ? o.max_nodes : kMinWinningMaxNodes);
    j["model"] = to_string(model);
    j["size"] = r.size;
    j["witness"] = node_set_to_json(r.witness);
  } else if (what == "hitting") {
    require(o.coloring != nullptr, "hitting needs a start coloring");
    require(o.coloring->coloring.size() == n, "coloring size differs from the graph");
    const NodeSet target = o.set_spec ? parse_set_spec(o.set_spec, n) : NodeSet::all(n);
    const std::uint64_t mask = target.mask();
    const auto r = expected_hitting_time(g, o.coloring->coloring, [mask](State s) { return (s & mask) == 0; },
                                         o.max_nodes ? o.max_nodes : kMarkovMaxNodes);
    j["target"] = "all-white";
    j["set"] = node_set_to_json(target);
    j["expected"] = format_number(r.expected, 12);
    j["reach_probability"] = format_number(r.reach_probability, 12);
    j["residual"] = r.residual;
  } else if (what == "stabilization") {
    require(o.coloring != nullptr, "stabilization needs a start coloring");
    j["expected"] = format_number(
        expected_stabilization_exact(g, o.coloring->coloring, o.max_nodes ? o.max_nodes : kMarkovMaxNodes), 12);
  } else if (what == "resilient") {
    const NodeSet s = node_set();
    j["model"] = to_string(model);
    j["set"] = node_set_to_json(s);
    j["resilient"] = is_resilient(g, s, model);
    j["largest_subset"] = node_set_to_json(largest_resilient_subset(g, s, model));
  } else {
    throw Error(Errc::parse, "unknown analysis '" + what +
                                 "' (markov, stable, winning, min-winning, hitting, stabilization, resilient)");
  }
  return j;
}

}  // namespace

extern "C" {

const char* majdyn_version(void) { return majdyn::kVersion; }

const char* majdyn_last_error(void) { return last_error.c_str(); }

const char* majdyn_status_name(majdyn_status status) {
  switch (status) {
    case MAJDYN_OK: return "ok";
    case MAJDYN_E_INVALID_SIZE: return "invalid-size";
    case MAJDYN_E_INVALID_PARAMETER: return "invalid-parameter";
    case MAJDYN_E_UNDEFINED_PARTITION: return "undefined-partition";
    case MAJDYN_E_SIZE_CAP: return "size-cap";
    case MAJDYN_E_PARSE: return "parse";
    case MAJDYN_E_IO: return "io";
    case MAJDYN_E_INTERNAL: return "internal";
  }
  return "unknown";
}

void majdyn_string_free(char* s) { std::free(s); }

majdyn_status majdyn_graph_from_spec(const char* spec, majdyn_graph** out) {
  return guarded([&] {
    require(spec && out, "null argument");
    *out = new majdyn_graph{majdyn::parse_graph_spec(spec)};
  });
}

majdyn_status majdyn_graph_from_edges(size_t n, const uint32_t* edges, size_t m, majdyn_graph** out) {
  return guarded([&] {
    require(out && (edges || m == 0), "null argument");
    std::vector<majdyn::Edge> list;
    list.reserve(m);
    for (size_t i = 0; i < m; ++i) list.emplace_back(edges[2 * i], edges[2 * i + 1]);
    *out = new majdyn_graph{majdyn::Graph(n, list)};
  });
}

size_t majdyn_graph_nodes(const majdyn_graph* g) { return g ? g->graph.n() : 0; }

size_t majdyn_graph_edge_count(const majdyn_graph* g) { return g ? g->graph.m() : 0; }

majdyn_status majdyn_graph_to_json(const majdyn_graph* g, char** out) {
  return guarded([&] {
    require(g && out, "null argument");
    *out = dup_string(majdyn::graph_to_json(g->graph).dump());
  });
}

majdyn_status majdyn_graph_to_edgelist(const majdyn_graph* g, char** out) {
  return guarded([&] {
    require(g && out, "null argument");
    *out = dup_string(majdyn::graph_to_edgelist(g->graph));
  });
}

void majdyn_graph_free(majdyn_graph* g) { delete g; }

majdyn_status majdyn_coloring_from_spec(const majdyn_graph* g, const char* spec, int has_seed, uint64_t seed,
                                        majdyn_coloring** out) {
  return guarded([&] {
    require(g && spec && out, "null argument");
    std::optional<std::uint64_t> s;
    if (has_seed) s = seed;
    *out = new majdyn_coloring{majdyn::parse_coloring_spec(spec, g->graph.n(), s)};
  });
}

size_t majdyn_coloring_size(const majdyn_coloring* c) { return c ? c->coloring.size() : 0; }

size_t majdyn_coloring_blue_count(const majdyn_coloring* c) { return c ? c->coloring.blue_count() : 0; }

majdyn_status majdyn_coloring_to_string(const majdyn_coloring* c, char** out) {
  return guarded([&] {
    require(c && out, "null argument");
    *out = dup_string(c->coloring.to_string());
  });
}

majdyn_status majdyn_coloring_to_json(const majdyn_coloring* c, char** out) {
  return guarded([&] {
    require(c && out, "null argument");
    *out = dup_string(majdyn::coloring_to_json(c->coloring).dump());
  });
}

void majdyn_coloring_free(majdyn_coloring* c) { delete c; }

void majdyn_simulate_options_init(majdyn_simulate_options* options) {
  if (!options) return;
  *options = majdyn_simulate_options{};
  options->model = MAJDYN_MM;
}

majdyn_status majdyn_simulate(const majdyn_graph* g, const majdyn_coloring* c0, const majdyn_simulate_options* options,
                              majdyn_result** out) {
  return guarded([&] {
    require(g && c0 && options && out, "null argument");
    require(c0->coloring.size() == g->graph.n(), "coloring size differs from the graph");
    const majdyn::Model model = to_model(options->model);
    std::optional<majdyn::TieRng> rng;
    if (model == majdyn::Model::rmm) {
      require(options->has_seed != 0, "RMM needs a seed");
      rng.emplace(options->seed);
    }
    const std::uint64_t cap = options->max_rounds ? options->max_rounds : majdyn::default_max_rounds(model, g->graph);
    majdyn::RunOptions ro;
    std::ofstream trace;
    if (options->trace_path) {
      trace.open(options->trace_path, std::ios::trunc);
      if (!trace) throw majdyn::Error(majdyn::Errc::io, std::string("cannot write '") + options->trace_path + "'");
      const bool with_coloring = options->trace_colorings != 0;
      ro.on_state = [&trace, with_coloring](std::uint64_t t, const majdyn::Coloring& c) {
        trace << majdyn::trace_line(t, c, with_coloring) << '\n';
      };
    }
    auto result = majdyn::run(model, g->graph, c0->coloring, cap, rng, ro);
    if (trace.is_open()) {
      trace.flush();
      if (!trace) throw majdyn::Error(majdyn::Errc::io, "trace write failed");
    }
    *out = new majdyn_result{std::move(result)};
  });
}

int64_t majdyn_result_rounds(const majdyn_result* r) {
  if (!r || !r->result.rounds) return -1;
  return static_cast<int64_t>(*r->result.rounds);
}

const char* majdyn_result_outcome(const majdyn_result* r) { return r ? majdyn::to_string(r->result.outcome) : ""; }

majdyn_status majdyn_result_final(const majdyn_result* r, majdyn_coloring** out) {
  return guarded([&] {
    require(r && out, "null argument");
    *out = new majdyn_coloring{r->result.final_coloring};
  });
}

majdyn_status majdyn_result_to_json(const majdyn_result* r, char** out) {
  return guarded([&] {
    require(r && out, "null argument");
    *out = dup_string(majdyn::run_result_to_json(r->result).dump());
  });
}

void majdyn_result_free(majdyn_result* r) { delete r; }

void majdyn_analyze_options_init(majdyn_analyze_options* options) {
  if (!options) return;
  *options = majdyn_analyze_options{};
  options->model = MAJDYN_MM;
}

majdyn_status majdyn_analyze(const majdyn_graph* g, const char* what, const majdyn_analyze_options* options,
                             char** out_json) {
  return guarded([&] {
    require(g && what && options && out_json, "null argument");
    *out_json = dup_string(analyze(g->graph, what, *options).dump());
  });
}

majdyn_status majdyn_experiment_run(const char* config_path, unsigned jobs, const char* output_override,
                                    majdyn_progress_fn progress, void* user, char** out_json) {
  return guarded([&] {
    require(config_path && out_json, "null argument");
    const auto config = majdyn::load_experiment_config(config_path);
    namespace fs = std::filesystem;
    const fs::path csv = output_override ? fs::path(output_override) : fs::path(config.output);
    if (fs::weakly_canonical(fs::path(csv).replace_extension(".json")) == fs::weakly_canonical(config_path)) {
      throw majdyn::Error(majdyn::Errc::invalid_parameter, "sidecar would overwrite the config file");
    }
    majdyn::RunnerOptions ro;
    ro.jobs = jobs;
    if (progress) ro.progress = [progress, user](const std::string& line) { progress(line.c_str(), user); };
    const auto report = majdyn::run_experiment(config, ro);
    std::optional<std::string> override_path;
    if (output_override) override_path = output_override;
    const auto [csv_path, json_path] = majdyn::write_experiment(config, report, override_path);
    auto doc = report.sidecar(config);
    doc["csv_path"] = csv_path;
    doc["sidecar_path"] = json_path;
    *out_json = dup_string(doc.dump());
  });
}

}  // extern "C"
