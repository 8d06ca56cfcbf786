#include "http.hpp"

#include "sitebias/documents.hpp"
#include "sitebias/error.hpp"

#include <httplib.h>
#include <json.hpp>

namespace sitebias::service {
namespace {

constexpr const char* kJson = "application/json";

int status_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::not_found: return 404;
    case ErrorKind::conflict: return 409;
    case ErrorKind::io: return 500;
    default: return 400;
  }
}

void send_error(httplib::Response& res, int status, std::string_view kind,
                const std::string& message) {
  nlohmann::ordered_json doc{{"schema_version", kSchemaVersion},
                             {"error", {{"kind", std::string(kind)}, {"message", message}}}};
  res.status = status;
  res.set_content(doc.dump(), kJson);
}

template <typename Fn>
httplib::Server::Handler guarded(int ok_status, const char* content_type, Fn fn) {
  return [=](const httplib::Request& req, httplib::Response& res) {
    try {
      std::string body = fn(req);
      res.status = ok_status;
      res.set_content(std::move(body), content_type);
    } catch (const Error& e) {
      send_error(res, status_for(e.kind()), to_string(e.kind()), e.what());
    } catch (const std::exception& e) {
      send_error(res, 500, "internal", e.what());
    }
  };
}

std::string param(const httplib::Request& req, const char* name) {
  return req.has_param(name) ? req.get_param_value(name) : std::string{};
}

}  // namespace

HttpServer::HttpServer(Service& service)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
  auto& s = *server_;
  s.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  s.Options(".*", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });

  s.Post("/collections", guarded(201, kJson, [this](const httplib::Request& req) {
           std::optional<std::string> id;
           if (req.has_param("collection_id")) id = req.get_param_value("collection_id");
           return service_.upload_collection(req.body, id);
         }));
  s.Get("/collections",
        guarded(200, kJson, [this](const httplib::Request&) { return service_.list_collections(); }));
  s.Post("/variables", guarded(201, kJson, [this](const httplib::Request& req) {
           if (!req.has_param("variable_id") || !req.has_param("kind")) {
             throw Error(ErrorKind::domain, "variable_id and kind query parameters are required");
           }
           return service_.upload_raster(req.body, param(req, "variable_id"), param(req, "kind"),
                                         param(req, "stat"), param(req, "units"));
         }));
  s.Get("/variables",
        guarded(200, kJson, [this](const httplib::Request&) { return service_.list_variables(); }));
  s.Post("/analyses", guarded(202, kJson, [this](const httplib::Request& req) {
           return service_.create_analysis(req.body);
         }));
  s.Get("/analyses",
        guarded(200, kJson, [this](const httplib::Request&) { return service_.list_analyses(); }));
  s.Get(R"(/analyses/([A-Za-z0-9_-]+))", guarded(200, kJson, [this](const httplib::Request& req) {
          return service_.get_analysis(req.matches[1]);
        }));
  s.Get(R"(/analyses/([A-Za-z0-9_-]+)/map)",
        guarded(200, kJson, [this](const httplib::Request& req) {
          return service_.get_map(req.matches[1]);
        }));
  s.Get(R"(/analyses/([A-Za-z0-9_-]+)/report\.csv)",
        guarded(200, "text/csv", [this](const httplib::Request& req) {
          return service_.get_report_csv(req.matches[1]);
        }));
  s.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      if (res.status == 404) {
        send_error(res, 404, "not_found", "no such endpoint");
      } else {
        send_error(res, res.status, "http", httplib::status_message(res.status));
      }
    }
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    int bound = server_->bind_to_any_port(host);
    if (bound < 0) throw Error(ErrorKind::io, "cannot bind " + host);
    return bound;
  }
  if (!server_->bind_to_port(host, port)) {
    throw Error(ErrorKind::io, "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void HttpServer::listen() { server_->listen_after_bind(); }

void HttpServer::stop() {
  if (server_->is_running()) server_->stop();
}

void HttpServer::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace sitebias::service
