#include "majdyn/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "majdyn/cycle_theory.hpp"
#include "majdyn/error.hpp"

namespace majdyn {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <class T>
T parse_integer(std::string_view text, const char* what) {
  text = trim(text);
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw Error(Errc::parse, std::string("expected an integer for ") + what + ", got '" + std::string(text) + "'");
  }
  return value;
}

double parse_real(std::string_view text, const char* what) {
  text = trim(text);
  const std::string copy(text);
  char* end = nullptr;
  const double value = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size()) {
    throw Error(Errc::parse, std::string("expected a number for ") + what + ", got '" + copy + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

Json parse_json(std::string_view text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse, std::string("invalid JSON in ") + what + ": " + e.what());
  }
}

bool looks_like_json(std::string_view text) {
  text = trim(text);
  return !text.empty() && text.front() == '{';
}

std::size_t spec_size(std::string_view arg, const char* what) {
  return parse_integer<std::size_t>(arg, what);
}

}  // namespace

std::string format_number(double value, int digits) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io, "cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(Errc::io, "write failed for '" + path + "'");
}

// ---- graphs ------------------------------------------------------------------

Json graph_to_json(const Graph& g) {
  Json edges = Json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  return Json{{"n", g.n()}, {"edges", std::move(edges)}};
}

Graph graph_from_json(const Json& j) {
  try {
    if (!j.is_object() || !j.contains("n") || !j.contains("edges")) {
      throw Error(Errc::parse, "graph JSON needs fields \"n\" and \"edges\"");
    }
    const auto n = j.at("n").get<std::size_t>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw Error(Errc::parse, "each edge must be a pair [u, v]");
      edges.emplace_back(e[0].get<NodeId>(), e[1].get<NodeId>());
    }
    return Graph(n, edges);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse, std::string("malformed graph JSON: ") + e.what());
  }
}

std::string graph_to_edgelist(const Graph& g) {
  std::string out = std::to_string(g.n()) + "\n";
  for (const auto& [u, v] : g.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

Graph graph_from_edgelist(std::string_view text) {
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  for (std::string_view line : split(text, '\n')) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    if (!n) {
      n = parse_integer<std::size_t>(line, "edge-list header");
      continue;
    }
    const std::size_t gap = line.find_first_of(" \t");
    if (gap == std::string_view::npos) throw Error(Errc::parse, "edge line needs two node ids: '" + std::string(line) + "'");
    edges.emplace_back(parse_integer<NodeId>(line.substr(0, gap), "edge endpoint"),
                       parse_integer<NodeId>(line.substr(gap + 1), "edge endpoint"));
  }
  if (!n) throw Error(Errc::parse, "edge list is missing its node-count header");
  return Graph(*n, edges);
}

Graph graph_from_text(std::string_view text) {
  if (looks_like_json(text)) return graph_from_json(parse_json(text, "graph"));
  return graph_from_edgelist(text);
}

Graph parse_graph_spec(std::string_view spec) {
  spec = trim(spec);
  if (looks_like_json(spec)) return graph_from_json(parse_json(spec, "graph spec"));
  const std::size_t colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  if (colon != std::string_view::npos) {
    if (head == "cycle") return make_cycle(spec_size(arg, "cycle:n"));
    if (head == "twocycle") return make_two_cycle(spec_size(arg, "twocycle:n"));
    if (head == "cyclerand") {
      const auto parts = split(arg, ':');
      if (parts.size() != 2) throw Error(Errc::parse, "expected cyclerand:n:seed");
      return make_cycle_plus_random(spec_size(parts[0], "cyclerand n"), parse_integer<std::uint64_t>(parts[1], "seed"));
    }
    if (head == "expstab") return make_exp_stabilization_graph(spec_size(arg, "expstab:n")).graph;
    if (head == "expperiod") return make_exp_periodicity_graph(spec_size(arg, "expperiod:n")).graph;
    if (head == "double") return double_graph(parse_graph_spec(arg));
  }
  const std::string path(spec);
  if (!std::filesystem::exists(path)) {
    throw Error(Errc::parse, "unknown graph spec '" + path + "' (not a generator and no such file)");
  }
  return graph_from_text(read_file(path));
}

// ---- colorings ---------------------------------------------------------------

Json coloring_to_json(const Coloring& c) {
  Json blue = Json::array();
  for (std::size_t v = 0; v < c.size(); ++v) {
    if (c.is_blue(v)) blue.push_back(v);
  }
  return Json{{"n", c.size()}, {"blue", std::move(blue)}};
}

Coloring coloring_from_json(const Json& j) {
  try {
    if (!j.is_object() || !j.contains("n") || !j.contains("blue")) {
      throw Error(Errc::parse, "coloring JSON needs fields \"n\" and \"blue\"");
    }
    const auto n = j.at("n").get<std::size_t>();
    Coloring c(n);
    for (const auto& v : j.at("blue")) {
      const auto idx = v.get<std::size_t>();
      if (idx >= n) throw Error(Errc::invalid_parameter, "blue index " + std::to_string(idx) + " out of range");
      c.set(idx, Color::blue);
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse, std::string("malformed coloring JSON: ") + e.what());
  }
}

namespace {

Coloring sized(Coloring c, std::size_t n) {
  if (c.size() != n) {
    throw Error(Errc::invalid_parameter,
                "coloring has " + std::to_string(c.size()) + " nodes but the graph has " + std::to_string(n));
  }
  return c;
}

std::uint64_t need_seed(std::optional<std::uint64_t> seed, std::string_view spec) {
  if (!seed) throw Error(Errc::invalid_parameter, "coloring '" + std::string(spec) + "' is random and needs a seed");
  return *seed;
}

}  // namespace

Coloring parse_coloring_spec(std::string_view spec, std::size_t n, std::optional<std::uint64_t> seed) {
  spec = trim(spec);
  if (looks_like_json(spec)) return sized(coloring_from_json(parse_json(spec, "coloring spec")), n);
  const std::size_t colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  if (colon == std::string_view::npos) {
    if (spec == "extreme") return extreme_tight_coloring(n);
    if (spec == "witness") return rmm_quadratic_witness(n);
    if (spec == "blue") return Coloring(n, Color::blue);
    if (spec == "white") return Coloring(n, Color::white);
    if (spec == "expstab") {
      const auto parts = make_exp_stabilization_graph(n);
      Coloring c(n, Color::blue);
      for (NodeId v : parts.s_w.members()) c.set(v, Color::white);
      return c;
    }
  } else {
    if (head == "alternating") {
      const auto bit = parse_integer<int>(arg, "alternating:<0|1>");
      if (bit != 0 && bit != 1) throw Error(Errc::parse, "alternating takes 0 (node 0 white) or 1 (node 0 blue)");
      return alternating_coloring(n, bit == 1 ? Color::blue : Color::white);
    }
    if (head == "bw") return sized(Coloring::parse(arg), n);
    if (head == "random") return p_random_coloring(n, parse_real(arg, "random:p"), need_seed(seed, spec));
    if (head == "density") {
      return exact_density_coloring(n, parse_integer<std::size_t>(arg, "density:k"), need_seed(seed, spec));
    }
    if (head == "kalt") return k_alternating_coloring(n, parse_integer<std::size_t>(arg, "kalt:k"));
  }
  const std::string path(spec);
  if (!std::filesystem::exists(path)) {
    throw Error(Errc::parse, "unknown coloring spec '" + path + "' (not a known form and no such file)");
  }
  const std::string text = read_file(path);
  if (looks_like_json(text)) return sized(coloring_from_json(parse_json(text, path.c_str())), n);
  return sized(Coloring::parse(trim(text)), n);
}

NodeSet parse_set_spec(std::string_view spec, std::size_t n) {
  spec = trim(spec);
  auto from_json = [n](const Json& j) {
    try {
      if (!j.is_object() || !j.contains("nodes")) throw Error(Errc::parse, "set JSON needs a \"nodes\" array");
      NodeSet s(n);
      for (const auto& v : j.at("nodes")) s.insert(v.get<NodeId>());
      return s;
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::parse, std::string("malformed set JSON: ") + e.what());
    }
  };
  if (looks_like_json(spec)) return from_json(parse_json(spec, "set spec"));
  if (spec == "all") return NodeSet::all(n);
  if (spec == "none") return NodeSet(n);
  if (spec == "canonical") return min_winning_size_cycle(n, Model::mm).witness;
  if (spec.substr(0, 6) == "nodes:") {
    NodeSet s(n);
    const std::string_view list = spec.substr(6);
    if (!trim(list).empty()) {
      for (std::string_view item : split(list, ',')) s.insert(parse_integer<NodeId>(item, "node id"));
    }
    return s;
  }
  const std::string path(spec);
  if (!std::filesystem::exists(path)) throw Error(Errc::parse, "unknown set spec '" + path + "'");
  return from_json(parse_json(read_file(path), path.c_str()));
}

Json node_set_to_json(const NodeSet& s) { return Json(s.members()); }

// ---- results -----------------------------------------------------------------

Json run_result_to_json(const RunResult& r) {
  Json j;
  j["rounds"] = r.rounds ? Json(*r.rounds) : Json(nullptr);
  j["outcome"] = to_string(r.outcome);
  j["final"] = r.final_coloring.to_string();
  j["final_blue"] = r.final_coloring.blue_count();
  if (r.partner) j["partner"] = r.partner->to_string();
  j["trace_len"] = r.trace_len;
  if (!r.blue_counts.empty()) j["blue_counts"] = r.blue_counts;
  return j;
}

std::string trace_line(std::uint64_t t, const Coloring& c, bool with_coloring) {
  Json j{{"t", t}, {"blue", c.blue_count()}};
  if (with_coloring) j["coloring"] = c.to_string();
  return j.dump();
}

Json markov_to_json(const MarkovAnalysis& m) {
  Json j;
  j["n"] = m.n;
  j["states"] = m.states();
  j["transitions"] = m.successors.size();
  // Smaller components first, ties by smallest state.
  std::vector<const std::vector<State>*> order;
  for (const auto& comp : m.absorbing) order.push_back(&comp);
  std::stable_sort(order.begin(), order.end(), [](const auto* a, const auto* b) { return a->size() < b->size(); });
  Json comps = Json::array();
  Json sizes = Json::array();
  for (const auto* comp_ptr : order) {
    const auto& comp = *comp_ptr;
    comps.push_back(comp);
    sizes.push_back(comp.size());
  }
  j["absorbing"] = std::move(comps);
  j["absorbing_sizes"] = std::move(sizes);
  Json hitting = Json::object();
  for (std::size_t s = 0; s < m.states(); ++s) hitting[std::to_string(s)] = format_number(m.hitting[s], 12);
  j["hitting"] = std::move(hitting);
  j["residual"] = m.residual;
  return j;
}

}  // namespace majdyn
