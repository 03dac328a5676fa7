#pragma once

// HTTP+JSON facade over network storage, compilation and inference
// sessions. Service::handle() is transport-independent; serve() binds it
// to a socket.
//
//   POST   /networks                    create from a document   -> 201 {id, stats}
//   GET    /networks                    list ids
//   GET    /networks/{id}               canonical document
//   PUT    /networks/{id}               replace document; sessions become stale
//   POST   /networks/{id}/compile       forest stats
//   GET    /networks/{id}/dot           Graphviz text
//   POST   /networks/{id}/sessions      -> 201 {session_id}
//   GET    /sessions/{sid}              applied and pending evidence
//   POST   /sessions/{sid}/evidence     {"set": {var: label}, "propagate": bool}
//   POST   /sessions/{sid}/propagate    report for all batched evidence
//   DELETE /sessions/{sid}/evidence     retract everything, prior report

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "bnet/compiler.hpp"
#include "bnet/engine.hpp"
#include "bnet/network.hpp"

namespace bnet {

struct HttpRequest {
  std::string method;
  std::string path;
  std::string body;
};

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

class Service {
 public:
  HttpResponse handle(const HttpRequest& request);

 private:
  struct NetworkRecord {
    std::string id;
    BeliefNetwork network;
    std::string hash;
    std::uint64_t revision = 0;
    std::shared_ptr<const CompiledNetwork> compiled;
    std::string compiled_hash;
  };

  struct SessionRecord {
    std::string id;
    std::string network_id;
    std::uint64_t revision = 0;
    std::shared_ptr<const CompiledNetwork> compiled;
    EvidenceSet applied;
    EvidenceSet pending;
    std::optional<PosteriorReport> latest;
    std::mutex mutex;
  };

  HttpResponse create_network(const std::string& body);
  HttpResponse replace_network(const std::string& id, const std::string& body);
  HttpResponse get_network(const std::string& id);
  HttpResponse list_networks();
  HttpResponse compile_network(const std::string& id);
  HttpResponse network_dot(const std::string& id);
  HttpResponse open_session(const std::string& id);
  HttpResponse get_session(const std::string& sid);
  HttpResponse post_evidence(const std::string& sid, const std::string& body);
  HttpResponse propagate(const std::string& sid);
  HttpResponse retract(const std::string& sid);

  // Compiles on cache miss. Caller holds mutex_.
  std::shared_ptr<const CompiledNetwork> template_for(NetworkRecord& record);
  // Session plus a 404/409 response when it is unknown or stale.
  std::pair<std::shared_ptr<SessionRecord>, std::optional<HttpResponse>> find_session(
      const std::string& sid);
  // Runs the accumulated evidence through the engine and records the result.
  HttpResponse run_query(SessionRecord& session);

  std::mutex mutex_;
  std::map<std::string, NetworkRecord> networks_;
  std::map<std::string, std::shared_ptr<SessionRecord>> sessions_;
  std::uint64_t next_network_ = 1;
  std::uint64_t next_session_ = 1;
};

// Blocks serving `service` until the process is stopped.
void serve(Service& service, const std::string& host, int port);

}  // namespace bnet
