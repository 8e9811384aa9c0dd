#include <httplib.h>

#include "robust_search/service/service.hpp"

namespace robust_search::service {

struct HttpServer::Impl {
    httplib::Server server;
};

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>()) {
    const auto dispatch = [&service](const httplib::Request& req, httplib::Response& res) {
        Params query;
        for (const auto& [key, value] : req.params) query[key] = value;
        const Response r = service.handle(req.method, req.path, query, req.body);
        res.status = r.status;
        res.set_header("Access-Control-Allow-Origin", "*");
        res.set_content(r.body, "application/json");
    };
    auto& server = impl_->server;
    server.Get(R"(/.*)", dispatch);
    server.Post(R"(/.*)", dispatch);
    server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Origin", "*");
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        res.status = 204;
    });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) return impl_->server.bind_to_any_port(host);
    return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
    if (impl_) impl_->server.stop();
}

}  // namespace robust_search::service
