#include "http.hpp"

#include "sitebias/error.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <iostream>

namespace {
sitebias::service::HttpServer* g_server = nullptr;
void on_signal(int) {
  if (g_server) g_server->stop();
}
}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HTTP service for representativeness analyses", "sitebias-server"};
  sitebias::service::ServiceConfig config;
  std::string data_dir = "sitebias-data";
  std::string host = "127.0.0.1";
  int port = 8080;
  double cell_area = 0.0;
  app.add_option("--data", data_dir, "Data directory")->envname("SITEBIAS_DATA")->capture_default_str();
  app.add_option("--host", host, "Listen address")->capture_default_str();
  app.add_option("--port", port, "Listen port (0 = any)")->capture_default_str();
  app.add_option("--cell-area", cell_area, "Grid cell area for a new catalog (km2)")
      ->check(CLI::PositiveNumber);
  app.add_option("--workers", config.workers, "Concurrent analyses")->capture_default_str();
  app.add_option("--threads", config.analysis_threads, "Threads per analysis (0 = all cores)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  config.data_dir = data_dir;
  if (cell_area > 0.0) {
    sitebias::GridConfig grid;
    grid.target_cell_area_km2 = cell_area;
    config.grid = grid;
  }
  try {
    sitebias::service::Service service(config);
    sitebias::service::HttpServer server(service);
    const int bound = server.bind(host, port);
    g_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::cout << "listening on http://" << host << ':' << bound << std::endl;
    server.listen();
    g_server = nullptr;
  } catch (const sitebias::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == sitebias::ErrorKind::conflict ? 2 : 1;
  }
  return 0;
}
