#include "sfwt/ap/ap_server.hpp"

#include <httplib.h>

#include <iostream>

namespace sfwt::ap {

using nlohmann::json;

namespace {

void reply(httplib::Response& res, const json& body) { res.set_content(body.dump(), "application/json"); }

int status_of(ApError::Kind kind) {
    switch (kind) {
        case ApError::Kind::bad_request: return 400;
        case ApError::Kind::unknown_client: return 404;
        case ApError::Kind::conflict: return 409;
        case ApError::Kind::not_authorized: return 403;
        case ApError::Kind::throttled: return 429;
    }
    return 500;
}

const char* code_of(ApError::Kind kind) {
    switch (kind) {
        case ApError::Kind::bad_request: return "bad_request";
        case ApError::Kind::unknown_client: return "unknown_client";
        case ApError::Kind::conflict: return "conflict";
        case ApError::Kind::not_authorized: return "not_authorized";
        case ApError::Kind::throttled: return "throttled";
    }
    return "internal";
}

/// Maps gatekeeper and parsing failures onto HTTP errors.
template <typename Fn>
void guarded(httplib::Response& res, Fn&& fn) {
    try {
        fn();
    } catch (const ApError& e) {
        net::send_error(res, status_of(e.kind()), code_of(e.kind()), e.what());
    } catch (const net::Unreachable& e) {
        net::send_error(res, 503, "ledger_unreachable", e.what());
    } catch (const ledger::CallError& e) {
        net::send_error(res, 502, "ledger_error", e.what());
    } catch (const json::exception& e) {
        net::send_error(res, 400, "bad_request", e.what());
    } catch (const std::invalid_argument& e) {
        net::send_error(res, 400, "bad_request", e.what());
    }
}

std::string field(const json& body, const char* key) {
    if (!body.contains(key) || !body[key].is_string())
        throw std::invalid_argument(std::string("missing string field '") + key + "'");
    return body[key].get<std::string>();
}

}  // namespace

ApHttpServer::ApHttpServer(Gatekeeper& gatekeeper)
    : gatekeeper_(gatekeeper), server_([this](httplib::Server& s) { install(s); }) {}

ApHttpServer::~ApHttpServer() { stop(); }

void ApHttpServer::install(httplib::Server& server) {
    server.Get("/portal", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            if (!req.has_param("mac")) throw std::invalid_argument("missing query parameter 'mac'");
            reply(res, to_json(gatekeeper_.handle_connect(req.get_param_value("mac"))));
        });
    });

    server.Post("/auth/ari", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            auto body = json::parse(req.body);
            std::optional<Address> wallet;
            if (body.contains("walletAddr")) wallet = Address::from_hex(field(body, "walletAddr"));
            auto sid = gatekeeper_.handle_ari(field(body, "mac"), wallet);
            reply(res, json{{"sessionId", sid.to_hex()}});
        });
    });

    server.Post("/auth/verify", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            auto body = json::parse(req.body);
            auto token = TokenId::parse(field(body, "tokenId"));
            reply(res, to_json(gatekeeper_.handle_verify_wire(field(body, "mac"), field(body, "sessionId"),
                                                              field(body, "signature"), token)));
        });
    });

    server.Post("/usage", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            auto body = json::parse(req.body);
            auto used = gatekeeper_.record_usage(field(body, "mac"), parse_uint256(field(body, "deltaBytes")));
            reply(res, json{{"usedDataBytes", to_decimal(used)}});
        });
    });

    server.Get("/admin/authorized", [this](const httplib::Request& req, httplib::Response& res) {
        const auto& token = gatekeeper_.config().admin_token;
        if (token.empty()) {
            net::send_error(res, 403, "forbidden", "admin endpoints are disabled");
            return;
        }
        if (req.get_header_value("Authorization") != "Bearer " + token) {
            net::send_error(res, 401, "unauthorized", "bad or missing bearer token");
            return;
        }
        json list = json::array();
        for (const auto& e : gatekeeper_.authorized()) list.push_back(to_json(e));
        reply(res, list);
    });
}

void ApHttpServer::start_sweeper(std::chrono::milliseconds period) {
    sweeper_ = std::thread([this, period] {
        std::unique_lock lock(sweeper_mutex_);
        while (!sweeper_cv_.wait_for(lock, period, [this] { return stopping_; })) {
            lock.unlock();
            try {
                gatekeeper_.tick();
            } catch (const std::exception& e) {
                std::cerr << "sweep failed: " << e.what() << "\n";
            }
            lock.lock();
        }
    });
}

void ApHttpServer::stop() {
    {
        std::lock_guard lock(sweeper_mutex_);
        stopping_ = true;
    }
    sweeper_cv_.notify_all();
    if (sweeper_.joinable()) sweeper_.join();
    server_.stop();
}

}  // namespace sfwt::ap
