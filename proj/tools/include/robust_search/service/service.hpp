#pragma once

#include <memory>
#include <string>

#include "robust_search/service/params.hpp"
#include "robust_search/service/session_store.hpp"

namespace robust_search::service {

struct Response {
    int status = 200;
    std::string body;  // JSON
};

/// Transport-independent request handler behind the HTTP server.
class Service {
public:
    explicit Service(std::string state_file = {});

    [[nodiscard]] Response handle(const std::string& method, const std::string& path,
                                  const Params& query, const std::string& body);

    [[nodiscard]] SessionStore& store() { return store_; }

private:
    SessionStore store_;
};

/// Upper bounds on POST /ratio grids.
inline constexpr int kMaxRatioYPoints = 512;
inline constexpr int kMaxRatioZPerDecade = 512;

/// HTTP transport for a Service.
class HttpServer {
public:
    explicit HttpServer(Service& service);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds host:port (port 0 picks a free port). Returns the port or -1.
    int bind(const std::string& host, int port);
    /// Serves until stop(); returns false on a listen failure.
    bool listen();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace robust_search::service
