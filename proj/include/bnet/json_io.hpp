#pragma once

// JSON forms of reports exchanged by the CLI and the HTTP service.

#include "json.hpp"

#include "bnet/compiler.hpp"
#include "bnet/engine.hpp"
#include "bnet/network.hpp"

namespace bnet {

using Json = nlohmann::ordered_json;

// {"cliques", "trees", "max_clique_vars", "clique_cells", "separator_cells"}
Json stats_to_json(const ForestStats& stats);

// {"evidence": {var: label}, "p_evidence", "posteriors": {var: [...]},
//  "counters": {"checks", "cells_sent"}, "elapsed_us"}
Json report_to_json(const BeliefNetwork& net, const PosteriorReport& report);

Json issues_to_json(const ValidationReport& issues);

// {"var": "label", ...} -> evidence; throws EvidenceError.
EvidenceSet evidence_from_json(const BeliefNetwork& net, const Json& bindings);

}  // namespace bnet
