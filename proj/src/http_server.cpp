#include <iostream>

#include "httplib.h"

#include "bnet/service.hpp"

namespace bnet {

void serve(Service& service, const std::string& host, int port) {
  httplib::Server server;

  auto forward = [&service](const httplib::Request& req, httplib::Response& res) {
    HttpResponse out = service.handle({req.method, req.path, req.body});
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  };

  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, PUT, DELETE, OPTIONS"}});
  server.Get(".*", forward);
  server.Post(".*", forward);
  server.Put(".*", forward);
  server.Delete(".*", forward);
  server.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  if (!server.bind_to_port(host, port)) throw Error("cannot bind " + host + ":" + std::to_string(port));
  std::cerr << "listening on http://" << host << ":" << port << "\n";
  server.listen_after_bind();
}

}  // namespace bnet
