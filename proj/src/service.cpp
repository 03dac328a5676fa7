#include "bnet/service.hpp"

#include <functional>
#include <sstream>
#include <vector>

#include "bnet/document.hpp"
#include "bnet/json_io.hpp"

namespace bnet {

namespace {

HttpResponse json_response(int status, const Json& body) {
  return {status, "application/json", body.dump()};
}

HttpResponse error_response(int status, const std::string& error, const std::string& message) {
  Json body;
  body["error"] = error;
  if (!message.empty()) body["message"] = message;
  return json_response(status, body);
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::string current;
  const std::string clean = path.substr(0, path.find('?'));
  for (char c : clean) {
    if (c == '/') {
      if (!current.empty()) parts.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) parts.push_back(std::move(current));
  return parts;
}

std::string content_hash(const std::string& document) {
  std::ostringstream out;
  out << std::hex << std::hash<std::string>{}(document);
  return out.str();
}

// Parses a document into a network or an error response.
std::pair<std::optional<BeliefNetwork>, HttpResponse> decode(const std::string& body) {
  try {
    return {parse_network(body), {}};
  } catch (const ParseError& e) {
    Json out;
    out["error"] = "parse_error";
    out["message"] = e.what();
    out["line"] = e.line();
    out["column"] = e.column();
    return {std::nullopt, json_response(400, out)};
  } catch (const ValidationError& e) {
    Json out;
    out["error"] = "validation_failed";
    out["issues"] = issues_to_json(e.issues());
    return {std::nullopt, json_response(422, out)};
  }
}

Json evidence_labels(const BeliefNetwork& net, const EvidenceSet& evidence) {
  Json out = Json::object();
  for (const auto& var : net.variables)
    if (auto value = evidence.get(var.id)) out[var.id] = var.values[*value];
  return out;
}

}  // namespace

HttpResponse Service::handle(const HttpRequest& request) {
  const auto parts = split_path(request.path);
  const std::string& m = request.method;
  try {
    if (!parts.empty() && parts[0] == "networks") {
      if (parts.size() == 1) {
        if (m == "POST") return create_network(request.body);
        if (m == "GET") return list_networks();
      } else if (parts.size() == 2) {
        if (m == "GET") return get_network(parts[1]);
        if (m == "PUT") return replace_network(parts[1], request.body);
      } else if (parts.size() == 3) {
        if (parts[2] == "compile" && m == "POST") return compile_network(parts[1]);
        if (parts[2] == "dot" && m == "GET") return network_dot(parts[1]);
        if (parts[2] == "sessions" && m == "POST") return open_session(parts[1]);
      }
    } else if (!parts.empty() && parts[0] == "sessions" && parts.size() >= 2) {
      if (parts.size() == 2 && m == "GET") return get_session(parts[1]);
      if (parts.size() == 3 && parts[2] == "evidence") {
        if (m == "POST") return post_evidence(parts[1], request.body);
        if (m == "DELETE") return retract(parts[1]);
      }
      if (parts.size() == 3 && parts[2] == "propagate" && m == "POST") return propagate(parts[1]);
    }
    return error_response(404, "not_found", m + " " + request.path);
  } catch (const std::exception& e) {
    return error_response(500, "internal_error", e.what());
  }
}

std::shared_ptr<const CompiledNetwork> Service::template_for(NetworkRecord& record) {
  if (!record.compiled || record.compiled_hash != record.hash) {
    record.compiled = compile(record.network);
    record.compiled_hash = record.hash;
  }
  return record.compiled;
}

HttpResponse Service::create_network(const std::string& body) {
  auto [net, failure] = decode(body);
  if (!net) return failure;
  std::lock_guard lock(mutex_);
  NetworkRecord record;
  record.id = "n" + std::to_string(next_network_++);
  record.hash = content_hash(serialize_network(*net));
  record.network = std::move(*net);
  auto compiled = template_for(record);
  Json out;
  out["id"] = record.id;
  out["stats"] = stats_to_json(forest_stats(compiled->forest));
  networks_.emplace(record.id, std::move(record));
  return json_response(201, out);
}

HttpResponse Service::replace_network(const std::string& id, const std::string& body) {
  auto [net, failure] = decode(body);
  if (!net) return failure;
  std::lock_guard lock(mutex_);
  auto it = networks_.find(id);
  if (it == networks_.end()) return error_response(404, "unknown_network", id);
  auto& record = it->second;
  record.hash = content_hash(serialize_network(*net));
  record.network = std::move(*net);
  ++record.revision;
  auto compiled = template_for(record);
  Json out;
  out["id"] = record.id;
  out["stats"] = stats_to_json(forest_stats(compiled->forest));
  return json_response(200, out);
}

HttpResponse Service::get_network(const std::string& id) {
  std::lock_guard lock(mutex_);
  auto it = networks_.find(id);
  if (it == networks_.end()) return error_response(404, "unknown_network", id);
  return {200, "application/json", serialize_network(it->second.network)};
}

HttpResponse Service::list_networks() {
  std::lock_guard lock(mutex_);
  Json out = Json::array();
  for (const auto& [id, record] : networks_)
    out.push_back({{"id", id}, {"name", record.network.name}, {"hash", record.hash}});
  return json_response(200, out);
}

HttpResponse Service::compile_network(const std::string& id) {
  std::lock_guard lock(mutex_);
  auto it = networks_.find(id);
  if (it == networks_.end()) return error_response(404, "unknown_network", id);
  return json_response(200, stats_to_json(forest_stats(template_for(it->second)->forest)));
}

HttpResponse Service::network_dot(const std::string& id) {
  std::lock_guard lock(mutex_);
  auto it = networks_.find(id);
  if (it == networks_.end()) return error_response(404, "unknown_network", id);
  return {200, "text/plain", network_to_dot(it->second.network)};
}

HttpResponse Service::open_session(const std::string& id) {
  std::lock_guard lock(mutex_);
  auto it = networks_.find(id);
  if (it == networks_.end()) return error_response(404, "unknown_network", id);
  auto session = std::make_shared<SessionRecord>();
  session->id = "s" + std::to_string(next_session_++);
  session->network_id = id;
  session->revision = it->second.revision;
  session->compiled = template_for(it->second);
  sessions_.emplace(session->id, session);
  return json_response(201, Json{{"session_id", session->id}});
}

std::pair<std::shared_ptr<Service::SessionRecord>, std::optional<HttpResponse>>
Service::find_session(const std::string& sid) {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(sid);
  if (it == sessions_.end())
    return {nullptr, error_response(404, "unknown_session", sid)};
  auto session = it->second;
  auto net = networks_.find(session->network_id);
  if (net == networks_.end() || net->second.revision != session->revision)
    return {nullptr, error_response(409, "network_changed",
                                    "network " + session->network_id + " was replaced")};
  return {session, std::nullopt};
}

HttpResponse Service::get_session(const std::string& sid) {
  auto [session, failure] = find_session(sid);
  if (failure) return *failure;
  std::lock_guard lock(session->mutex);
  const auto& net = session->compiled->network;
  Json out;
  out["session_id"] = session->id;
  out["network_id"] = session->network_id;
  out["evidence"] = evidence_labels(net, session->applied);
  out["pending"] = evidence_labels(net, session->pending);
  return json_response(200, out);
}

HttpResponse Service::run_query(SessionRecord& session) {
  const auto& net = session.compiled->network;
  EvidenceSet all = session.applied;
  all.merge(session.pending);
  session.applied = all;
  session.pending = EvidenceSet{};
  try {
    session.latest = query(session.compiled, all);
  } catch (const ImpossibleEvidence& e) {
    session.latest.reset();
    return error_response(422, "impossible_evidence", e.what());
  }
  return json_response(200, report_to_json(net, *session.latest));
}

HttpResponse Service::post_evidence(const std::string& sid, const std::string& body) {
  auto [session, failure] = find_session(sid);
  if (failure) return *failure;
  std::lock_guard lock(session->mutex);
  const auto& net = session->compiled->network;

  Json request;
  try {
    request = Json::parse(body.empty() ? "{}" : body);
  } catch (const Json::parse_error& e) {
    return error_response(400, "parse_error", e.what());
  }
  if (!request.is_object()) return error_response(400, "bad_request", "body must be an object");
  const bool run = request.value("propagate", true);

  EvidenceSet incoming;
  try {
    incoming = evidence_from_json(net, request.value("set", Json::object()));
  } catch (const EvidenceError& e) {
    const char* kind =
        e.kind() == EvidenceError::Kind::UnknownVariable ? "unknown_variable" : "unknown_value";
    return error_response(400, kind, e.what());
  }

  EvidenceSet combined = session->applied;
  try {
    combined.merge(session->pending);
    combined.merge(incoming);
  } catch (const EvidenceError& e) {
    return error_response(409, "contradictory_evidence", e.what());
  }
  for (const auto& [id, value] : incoming)
    if (!session->applied.contains(id)) session->pending.set(id, value);

  if (!run) {
    Json out;
    out["accepted"] = true;
    out["pending"] = evidence_labels(net, session->pending);
    return json_response(202, out);
  }
  return run_query(*session);
}

HttpResponse Service::propagate(const std::string& sid) {
  auto [session, failure] = find_session(sid);
  if (failure) return *failure;
  std::lock_guard lock(session->mutex);
  return run_query(*session);
}

HttpResponse Service::retract(const std::string& sid) {
  auto [session, failure] = find_session(sid);
  if (failure) return *failure;
  std::lock_guard lock(session->mutex);
  session->applied = EvidenceSet{};
  session->pending = EvidenceSet{};
  return run_query(*session);
}

}  // namespace bnet
