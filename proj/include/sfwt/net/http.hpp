#pragma once

#include <json.hpp>

#include <chrono>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <thread>

namespace httplib {
class Server;
struct Response;
}

namespace sfwt::net {

using nlohmann::json;

/// Connection refused, timeout, or a response that is not JSON.
class Unreachable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-2xx response carrying a JSON error body {error, message}.
class HttpError : public std::runtime_error {
public:
    HttpError(int status, std::string code, const std::string& message)
        : std::runtime_error(message), status_(status), code_(std::move(code)) {}
    int status() const { return status_; }
    const std::string& code() const { return code_; }

private:
    int status_;
    std::string code_;
};

/// "host:port", "http://host:port" or "http://host:port/".
struct Endpoint {
    std::string host;
    int port = 0;

    static Endpoint parse(std::string_view text);
    std::string url() const;
};

/// Blocking JSON-over-HTTP client. Each call opens its own connection, so one
/// instance may be used from several threads.
class JsonClient {
public:
    explicit JsonClient(Endpoint endpoint, std::chrono::milliseconds timeout = std::chrono::seconds(5));

    json get(const std::string& path, const std::string& bearer = {}) const;
    json post(const std::string& path, const json& body) const;

    const Endpoint& endpoint() const { return endpoint_; }

private:
    Endpoint endpoint_;
    std::chrono::milliseconds timeout_;
};

/// Owns an httplib server running on a background thread.
class ServerThread {
public:
    explicit ServerThread(std::function<void(httplib::Server&)> install_routes);
    ~ServerThread();
    ServerThread(const ServerThread&) = delete;
    ServerThread& operator=(const ServerThread&) = delete;

    /// Binds (port 0 picks a free port) and starts serving. Returns the bound port.
    int start(const std::string& host, int port);
    void stop();
    /// Blocks until stop() is called from elsewhere.
    void wait();

private:
    std::unique_ptr<httplib::Server> server_;
    std::thread thread_;
};

/// Writes a JSON error response.
void send_error(httplib::Response& res, int status, const std::string& code, const std::string& message);

}  // namespace sfwt::net
