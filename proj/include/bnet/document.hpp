#pragma once

// Canonical network document (UTF-8 JSON) and Graphviz export.
//
//   {"name": str,
//    "nodes": [{"id": str, "label": str, "values": [str, ...],
//               "parents": [str, ...], "cpt": [num, ...]}, ...],
//    "layout": {...}}          // optional editor sidecar, carried opaquely
//
// Unknown keys are rejected. serialize_network() is deterministic and
// parse_network(serialize_network(n)) == n for every valid n.

#include <string>
#include <string_view>

#include "bnet/network.hpp"

namespace bnet {

// Throws ParseError on malformed text or schema violations and
// ValidationError when the decoded network breaks a network invariant.
BeliefNetwork parse_network(std::string_view document);

std::string serialize_network(const BeliefNetwork& net);

// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double value);

// `digraph` with one node statement per variable and one edge per arc.
std::string network_to_dot(const BeliefNetwork& net);

std::string read_file(const std::string& path);
BeliefNetwork load_network(const std::string& path);

// Quoted and escaped for DOT identifiers/labels.
std::string dot_quote(std::string_view text);

}  // namespace bnet
