#include "sfwt/net/http.hpp"

#include <httplib.h>

#include <charconv>

namespace sfwt::net {

Endpoint Endpoint::parse(std::string_view text) {
    if (text.starts_with("http://")) text.remove_prefix(7);
    while (text.ends_with('/')) text.remove_suffix(1);
    auto colon = text.rfind(':');
    if (colon == std::string_view::npos || colon == 0) throw std::invalid_argument("endpoint must be host:port");
    Endpoint e;
    e.host = std::string(text.substr(0, colon));
    auto port = text.substr(colon + 1);
    auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), e.port);
    if (ec != std::errc{} || ptr != port.data() + port.size() || e.port <= 0 || e.port > 65535)
        throw std::invalid_argument("bad port in endpoint '" + std::string(text) + "'");
    return e;
}

std::string Endpoint::url() const { return "http://" + host + ":" + std::to_string(port); }

JsonClient::JsonClient(Endpoint endpoint, std::chrono::milliseconds timeout)
    : endpoint_(std::move(endpoint)), timeout_(timeout) {}

namespace {

json decode(const httplib::Result& res, const std::string& what) {
    if (!res) throw Unreachable(what + ": " + httplib::to_string(res.error()));
    json body;
    try {
        body = json::parse(res->body);
    } catch (const json::parse_error&) {
        throw Unreachable(what + ": non-JSON response (HTTP " + std::to_string(res->status) + ")");
    }
    if (res->status < 200 || res->status >= 300) {
        auto code = body.is_object() ? body.value("error", std::string("http_error")) : "http_error";
        auto msg = body.is_object() ? body.value("message", code) : res->body;
        throw HttpError(res->status, code, msg);
    }
    return body;
}

httplib::Client make_client(const Endpoint& e, std::chrono::milliseconds timeout) {
    httplib::Client c(e.host, e.port);
    c.set_connection_timeout(timeout);
    c.set_read_timeout(timeout);
    c.set_write_timeout(timeout);
    return c;
}

}  // namespace

json JsonClient::get(const std::string& path, const std::string& bearer) const {
    auto c = make_client(endpoint_, timeout_);
    httplib::Headers headers;
    if (!bearer.empty()) headers.emplace("Authorization", "Bearer " + bearer);
    return decode(c.Get(path, headers), "GET " + endpoint_.url() + path);
}

json JsonClient::post(const std::string& path, const json& body) const {
    auto c = make_client(endpoint_, timeout_);
    return decode(c.Post(path, body.dump(), "application/json"), "POST " + endpoint_.url() + path);
}

ServerThread::ServerThread(std::function<void(httplib::Server&)> install_routes)
    : server_(std::make_unique<httplib::Server>()) {
    install_routes(*server_);
    server_->set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        try {
            std::rethrow_exception(ep);
        } catch (const json::exception& e) {
            send_error(res, 400, "bad_request", e.what());
        } catch (const std::invalid_argument& e) {
            send_error(res, 400, "bad_request", e.what());
        } catch (const std::exception& e) {
            send_error(res, 500, "internal", e.what());
        }
    });
}

ServerThread::~ServerThread() { stop(); }

int ServerThread::start(const std::string& host, int port) {
    int bound = port;
    if (port == 0) {
        bound = server_->bind_to_any_port(host);
    } else if (!server_->bind_to_port(host, port)) {
        bound = -1;
    }
    if (bound < 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
    thread_ = std::thread([this] { server_->listen_after_bind(); });
    server_->wait_until_ready();
    return bound;
}

void ServerThread::stop() {
    if (server_) server_->stop();
    if (thread_.joinable()) thread_.join();
}

void ServerThread::wait() {
    if (thread_.joinable()) thread_.join();
}

void send_error(httplib::Response& res, int status, const std::string& code, const std::string& message) {
    res.status = status;
    res.set_content(json{{"error", code}, {"message", message}}.dump(), "application/json");
}

}  // namespace sfwt::net
