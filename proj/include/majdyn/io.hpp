#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "majdyn/coloring.hpp"
#include "majdyn/dynamics.hpp"
#include "majdyn/exact.hpp"
#include "majdyn/graph.hpp"

namespace majdyn {

using Json = nlohmann::ordered_json;

/// printf("%.*g") with the given significant digits; "nan"/"inf"/"-inf" for
/// non-finite values.
std::string format_number(double value, int digits = 9);

// ---- graphs ------------------------------------------------------------------

/// {"n": int, "edges": [[u,v],...]} with u < v, sorted.
Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

/// Header line "n", then one "u v" line per edge.
std::string graph_to_edgelist(const Graph& g);
Graph graph_from_edgelist(std::string_view text);

/// JSON when the first non-blank character is '{', edge list otherwise.
Graph graph_from_text(std::string_view text);

/// cycle:n, twocycle:n, cyclerand:n:seed, expstab:n, expperiod:n,
/// double:<spec>, an inline JSON object, or a file path.
Graph parse_graph_spec(std::string_view spec);

// ---- colorings ---------------------------------------------------------------

/// {"n": int, "blue": [indices]}.
Json coloring_to_json(const Coloring& c);
Coloring coloring_from_json(const Json& j);

/// extreme, alternating:<0|1>, bw:<string>, random:<p>, density:<k>,
/// kalt:<k>, witness, expstab, blue, white, an inline JSON object, or a file
/// (JSON or a b/w string). random and density need a seed.
Coloring parse_coloring_spec(std::string_view spec, std::size_t n, std::optional<std::uint64_t> seed = std::nullopt);

/// nodes:<i,j,...>, canonical (the cycle witness), all, none, an inline JSON
/// object {"nodes": [...]}, or a file holding one.
NodeSet parse_set_spec(std::string_view spec, std::size_t n);

Json node_set_to_json(const NodeSet& s);

// ---- results -----------------------------------------------------------------

Json run_result_to_json(const RunResult& r);

/// One trace line: {"t": int, "blue": int[, "coloring": "bw..."]}.
std::string trace_line(std::uint64_t t, const Coloring& c, bool with_coloring);

/// {"n", "absorbing": [[states]], "hitting": {"state": "value"}, ...} with the
/// absorbing components ordered by size, then by smallest state; hitting
/// values carry 12 significant digits.
Json markov_to_json(const MarkovAnalysis& m);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace majdyn
