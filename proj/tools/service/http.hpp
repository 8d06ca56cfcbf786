#pragma once

#include "service.hpp"

#include <memory>
#include <string>

namespace httplib {
class Server;
}

namespace sitebias::service {

/// cpp-httplib front end for a Service. Error kinds map to status codes:
/// parse/domain/config/contract/empty -> 400, not_found -> 404, conflict -> 409, io -> 500.
class HttpServer {
public:
  explicit HttpServer(Service& service);
  ~HttpServer();

  /// Binds to `port` (0 picks a free one) and returns the bound port.
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after bind().
  void listen();
  void stop();
  void wait_until_ready() const;

private:
  Service& service_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace sitebias::service
