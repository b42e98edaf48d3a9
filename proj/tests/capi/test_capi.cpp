// Exercises the shared library through its C header only.

#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include <json.hpp>

#include "majdyn/majdyn.h"

namespace {

using nlohmann::json;

json take_json(char* s) {
  REQUIRE(s != nullptr);
  json j = json::parse(s);
  majdyn_string_free(s);
  return j;
}

majdyn_graph* graph(const char* spec) {
  majdyn_graph* g = nullptr;
  REQUIRE(majdyn_graph_from_spec(spec, &g) == MAJDYN_OK);
  return g;
}

std::string data_path(const std::string& name) { return std::string(MAJDYN_TEST_DATA_DIR) + "/capi_" + name; }

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(majdyn_version()) == "0.1.0");
  CHECK(std::string(majdyn_status_name(MAJDYN_OK)) == "ok");
  CHECK(std::string(majdyn_status_name(MAJDYN_E_SIZE_CAP)) == "size-cap");
  CHECK(std::string(majdyn_status_name(MAJDYN_E_PARSE)) == "parse");
  majdyn_string_free(nullptr);
}

TEST_CASE("graphs") {
  majdyn_graph* g = graph("cycle:5");
  CHECK(majdyn_graph_nodes(g) == 5);
  CHECK(majdyn_graph_edge_count(g) == 5);
  char* text = nullptr;
  REQUIRE(majdyn_graph_to_edgelist(g, &text) == MAJDYN_OK);
  CHECK(std::string(text) == "5\n0 1\n0 4\n1 2\n2 3\n3 4\n");
  majdyn_string_free(text);
  REQUIRE(majdyn_graph_to_json(g, &text) == MAJDYN_OK);
  CHECK(take_json(text)["n"] == 5);
  majdyn_graph_free(g);

  const uint32_t edges[] = {0, 1, 1, 2};
  majdyn_graph* path = nullptr;
  REQUIRE(majdyn_graph_from_edges(3, edges, 2, &path) == MAJDYN_OK);
  CHECK(majdyn_graph_edge_count(path) == 2);
  majdyn_graph_free(path);

  const uint32_t bad[] = {0, 7};
  majdyn_graph* out = nullptr;
  CHECK(majdyn_graph_from_edges(3, bad, 1, &out) == MAJDYN_E_INVALID_PARAMETER);
  CHECK(out == nullptr);
  CHECK(std::strlen(majdyn_last_error()) > 0);
  CHECK(majdyn_graph_from_spec("cycle:2", &out) == MAJDYN_E_INVALID_SIZE);
  CHECK(majdyn_graph_from_spec("wat:3", &out) == MAJDYN_E_PARSE);
  CHECK(majdyn_graph_from_spec(nullptr, &out) == MAJDYN_E_INVALID_PARAMETER);
  majdyn_graph_free(nullptr);
}

TEST_CASE("colorings") {
  majdyn_graph* g = graph("cycle:6");
  majdyn_coloring* c = nullptr;
  REQUIRE(majdyn_coloring_from_spec(g, "bw:BBWWBW", 0, 0, &c) == MAJDYN_OK);
  CHECK(majdyn_coloring_size(c) == 6);
  CHECK(majdyn_coloring_blue_count(c) == 3);
  char* s = nullptr;
  REQUIRE(majdyn_coloring_to_string(c, &s) == MAJDYN_OK);
  CHECK(std::string(s) == "bbwwbw");
  majdyn_string_free(s);
  REQUIRE(majdyn_coloring_to_json(c, &s) == MAJDYN_OK);
  CHECK(take_json(s)["blue"] == json::array({0, 1, 4}));
  majdyn_coloring_free(c);

  majdyn_coloring* r = nullptr;
  CHECK(majdyn_coloring_from_spec(g, "random:0.5", 0, 0, &r) == MAJDYN_E_INVALID_PARAMETER);
  REQUIRE(majdyn_coloring_from_spec(g, "random:0.5", 1, 9, &r) == MAJDYN_OK);
  majdyn_coloring_free(r);
  CHECK(majdyn_coloring_from_spec(g, "bw:BW", 0, 0, &r) == MAJDYN_E_INVALID_PARAMETER);
  CHECK(majdyn_coloring_from_spec(g, "alternating:1", 0, 0, &r) == MAJDYN_OK);
  majdyn_coloring_free(r);
  majdyn_graph_free(g);
}

TEST_CASE("simulation") {
  majdyn_graph* g = graph("cycle:11");
  majdyn_coloring* c = nullptr;
  REQUIRE(majdyn_coloring_from_spec(g, "extreme", 0, 0, &c) == MAJDYN_OK);
  majdyn_simulate_options o;
  majdyn_simulate_options_init(&o);
  majdyn_result* res = nullptr;
  REQUIRE(majdyn_simulate(g, c, &o, &res) == MAJDYN_OK);
  CHECK(majdyn_result_rounds(res) == 5);
  CHECK(std::string(majdyn_result_outcome(res)) == "fixed-coloring");
  majdyn_coloring* fin = nullptr;
  REQUIRE(majdyn_result_final(res, &fin) == MAJDYN_OK);
  CHECK(majdyn_coloring_blue_count(fin) == 0);
  majdyn_coloring_free(fin);
  char* j = nullptr;
  REQUIRE(majdyn_result_to_json(res, &j) == MAJDYN_OK);
  CHECK(take_json(j)["rounds"] == 5);
  majdyn_result_free(res);

  // A cap too small for stabilization.
  o.max_rounds = 2;
  REQUIRE(majdyn_simulate(g, c, &o, &res) == MAJDYN_OK);
  CHECK(majdyn_result_rounds(res) == -1);
  CHECK(std::string(majdyn_result_outcome(res)) == "cap-exceeded");
  majdyn_result_free(res);

  // RMM needs a seed.
  majdyn_simulate_options_init(&o);
  o.model = MAJDYN_RMM;
  CHECK(majdyn_simulate(g, c, &o, &res) == MAJDYN_E_INVALID_PARAMETER);
  o.has_seed = 1;
  o.seed = 4;
  const std::string trace = data_path("trace.jsonl");
  o.trace_path = trace.c_str();
  o.trace_colorings = 1;
  REQUIRE(majdyn_simulate(g, c, &o, &res) == MAJDYN_OK);
  const std::string outcome = majdyn_result_outcome(res);
  CHECK((outcome == "blue" || outcome == "white"));
  std::ifstream in(trace);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    const json t = json::parse(line);
    CHECK(t["t"] == lines);
    CHECK(t["coloring"].get<std::string>().size() == 11);
    ++lines;
  }
  CHECK(lines == majdyn_result_rounds(res) + 1);
  majdyn_result_free(res);
  std::remove(trace.c_str());

  majdyn_coloring_free(c);
  majdyn_graph_free(g);
}

TEST_CASE("analysis") {
  majdyn_analyze_options o;
  majdyn_analyze_options_init(&o);
  char* out = nullptr;

  majdyn_graph* c4 = graph("cycle:4");
  REQUIRE(majdyn_analyze(c4, "stable", &o, &out) == MAJDYN_OK);
  CHECK(take_json(out)["count"] == 6);
  REQUIRE(majdyn_analyze(c4, "markov", &o, &out) == MAJDYN_OK);
  CHECK(take_json(out)["absorbing_sizes"] == json::array({1, 1, 2}));
  CHECK(majdyn_analyze(c4, "nonsense", &o, &out) == MAJDYN_E_PARSE);
  CHECK(majdyn_analyze(c4, "winning", &o, &out) == MAJDYN_E_INVALID_PARAMETER);
  majdyn_graph_free(c4);

  majdyn_graph* c8 = graph("cycle:8");
  REQUIRE(majdyn_analyze(c8, "min-winning", &o, &out) == MAJDYN_OK);
  const json mw = take_json(out);
  CHECK(mw["size"] == 5);
  CHECK(mw["witness"] == json::array({0, 1, 2, 4, 6}));
  o.set_spec = "canonical";
  REQUIRE(majdyn_analyze(c8, "winning", &o, &out) == MAJDYN_OK);
  CHECK(take_json(out)["winning"] == true);
  o.exhaustive = 1;
  REQUIRE(majdyn_analyze(c8, "winning", &o, &out) == MAJDYN_OK);
  CHECK(take_json(out)["winning"] == true);
  o.model = MAJDYN_RMM;
  REQUIRE(majdyn_analyze(c8, "resilient", &o, &out) == MAJDYN_OK);
  CHECK(take_json(out)["resilient"] == false);
  majdyn_graph_free(c8);

  majdyn_graph* e9 = graph("expstab:9");
  majdyn_coloring* start = nullptr;
  REQUIRE(majdyn_coloring_from_spec(e9, "expstab", 0, 0, &start) == MAJDYN_OK);
  majdyn_analyze_options_init(&o);
  o.coloring = start;
  o.set_spec = "nodes:7,8";
  REQUIRE(majdyn_analyze(e9, "hitting", &o, &out) == MAJDYN_OK);
  const json h = take_json(out);
  CHECK(std::stod(h["expected"].get<std::string>()) == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(h["reach_probability"] == "1");
  majdyn_coloring_free(start);
  majdyn_graph_free(e9);

  majdyn_graph* big = graph("cycle:20");
  majdyn_analyze_options_init(&o);
  CHECK(majdyn_analyze(big, "markov", &o, &out) == MAJDYN_E_SIZE_CAP);
  majdyn_graph_free(big);
}

TEST_CASE("experiments") {
  const std::string config = data_path("config.json");
  const std::string csv = data_path("out.csv");
  {
    std::ofstream f(config);
    f << R"({"experiment":"martingale","output":"unused.csv","master_seed":3,"trials":5,"sizes":[21],"b0":[7],"horizon":4})";
  }
  int calls = 0;
  auto progress = [](const char*, void* user) { ++*static_cast<int*>(user); };
  char* out = nullptr;
  REQUIRE(majdyn_experiment_run(config.c_str(), 1, csv.c_str(), progress, &calls, &out) == MAJDYN_OK);
  const json doc = take_json(out);
  CHECK(doc["csv_path"] == csv);
  CHECK(doc["sidecar_path"] == data_path("out.json"));
  CHECK(doc["experiment"] == "martingale");
  CHECK(calls > 0);
  std::remove(csv.c_str());
  std::remove(data_path("out.json").c_str());

  {
    std::ofstream f(config);
    f << R"({"experiment":"martingale","output":"x.csv","master_seed":3,"typo":1})";
  }
  CHECK(majdyn_experiment_run(config.c_str(), 1, nullptr, nullptr, nullptr, &out) == MAJDYN_E_PARSE);
  CHECK(majdyn_experiment_run("/no/such/config.json", 1, nullptr, nullptr, nullptr, &out) == MAJDYN_E_IO);
  std::remove(config.c_str());
}

TEST_CASE("experiment sidecar may not replace its config") {
  const std::string config = data_path("clash.json");
  {
    std::ofstream f(config);
    f << R"({"experiment":"martingale","output":")" << data_path("clash.csv")
      << R"(","master_seed":3,"trials":2,"sizes":[11],"b0":[3],"horizon":2})";
  }
  char* out = nullptr;
  CHECK(majdyn_experiment_run(config.c_str(), 1, nullptr, nullptr, nullptr, &out) == MAJDYN_E_INVALID_PARAMETER);
  std::ifstream in(config);
  CHECK(json::parse(in)["experiment"] == "martingale");
  std::remove(config.c_str());
}
