#pragma once

#include "sfwt/ledger/ledger.hpp"
#include "sfwt/net/http.hpp"

namespace sfwt::ledger {

struct FacadeOptions {
    /// Enables POST /chain/advance.
    bool allow_advance = false;
};

/// HTTP/JSON facade over a Ledger:
///   POST /chain/tx {sender, payload}      -> {txId}
///   GET  /chain/receipt/{txId}            -> receipt, or {txId, status: "pending"}
///   POST /chain/call {contract, op, args} -> read result
///   GET  /chain/clock                     -> {nowSec, blockNumber, blockIntervalSec}
///   POST /chain/advance {deltaSec}        -> {nowSec, blockNumber}
class ChainHttpServer {
public:
    ChainHttpServer(Ledger& ledger, FacadeOptions options = {});

    int start(const std::string& host, int port) { return server_.start(host, port); }
    void stop() { server_.stop(); }
    void wait() { server_.wait(); }

private:
    void install(httplib::Server& server);

    Ledger& ledger_;
    FacadeOptions options_;
    net::ServerThread server_;
};

}  // namespace sfwt::ledger
