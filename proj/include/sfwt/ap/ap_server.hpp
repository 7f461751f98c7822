#pragma once

#include "sfwt/ap/gatekeeper.hpp"

#include <atomic>
#include <condition_variable>

namespace sfwt::ap {

/// HTTP front of a Gatekeeper:
///   GET  /portal?mac=                              -> {apId, walletUrl, state, authorized, remainingTimeSec?}
///   POST /auth/ari {mac, walletAddr?}              -> {sessionId}
///   POST /auth/verify {mac, sessionId, signature, tokenId}
///                                                  -> {ok, remainingTimeSec, remainingDataBytes, failReason?}
///   POST /usage {mac, deltaBytes}                  -> {usedDataBytes}
///   GET  /admin/authorized (Authorization: Bearer) -> [AuthorizedEntry...]
///
/// Errors are {error, message} with 400 bad_request, 401/403 for admin auth,
/// 404 unknown_client, 409 conflict, 403 not_authorized, 429 throttled, 503 ledger_unreachable.
class ApHttpServer {
public:
    explicit ApHttpServer(Gatekeeper& gatekeeper);
    ~ApHttpServer();

    int start(const std::string& host, int port) { return server_.start(host, port); }
    /// Calls Gatekeeper::tick every `period` of wall time until stop().
    void start_sweeper(std::chrono::milliseconds period);
    void stop();
    void wait() { server_.wait(); }

private:
    void install(httplib::Server& server);

    Gatekeeper& gatekeeper_;
    net::ServerThread server_;
    std::thread sweeper_;
    std::mutex sweeper_mutex_;
    std::condition_variable sweeper_cv_;
    bool stopping_ = false;
};

}  // namespace sfwt::ap
