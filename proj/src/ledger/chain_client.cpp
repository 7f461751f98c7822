#include "sfwt/ledger/chain_client.hpp"

#include <thread>

namespace sfwt::ledger {

TxId LocalChainClient::submit(const Address& sender, const CallPayload& payload) {
    return ledger_.submit_transaction(sender, payload);
}

std::optional<GasReceipt> LocalChainClient::receipt(const TxId& id) {
    if (!ledger_.is_known(id)) throw LedgerError("unknown transaction " + id);
    return ledger_.receipt(id);
}

json LocalChainClient::call(const CallPayload& query) { return ledger_.call_read(query); }
TimeSec LocalChainClient::now() { return ledger_.now(); }
TimeSec LocalChainClient::block_interval() { return ledger_.config().block_interval_sec; }
TimeSec LocalChainClient::advance(TimeSec delta_sec) { return ledger_.advance_clock(delta_sec); }

HttpChainClient::HttpChainClient(net::Endpoint endpoint, std::chrono::milliseconds timeout)
    : http_(std::move(endpoint), timeout) {}

TxId HttpChainClient::submit(const Address& sender, const CallPayload& payload) {
    try {
        return http_.post("/chain/tx", json{{"sender", sender.to_hex()}, {"payload", to_json(payload)}})
            .at("txId")
            .get<std::string>();
    } catch (const net::HttpError& e) {
        throw LedgerError(e.what());
    }
}

std::optional<GasReceipt> HttpChainClient::receipt(const TxId& id) {
    try {
        auto j = http_.get("/chain/receipt/" + id);
        if (j.at("status") == "pending") return std::nullopt;
        return receipt_from_json(j);
    } catch (const net::HttpError& e) {
        throw LedgerError(e.what());
    }
}

json HttpChainClient::call(const CallPayload& query) {
    try {
        return http_.post("/chain/call", to_json(query));
    } catch (const net::HttpError& e) {
        throw CallError(e.what());
    }
}

TimeSec HttpChainClient::now() { return std::stoull(http_.get("/chain/clock").at("nowSec").get<std::string>()); }

TimeSec HttpChainClient::block_interval() {
    return std::stoull(http_.get("/chain/clock").at("blockIntervalSec").get<std::string>());
}

TimeSec HttpChainClient::advance(TimeSec delta_sec) {
    try {
        auto j = http_.post("/chain/advance", json{{"deltaSec", std::to_string(delta_sec)}});
        return std::stoull(j.at("nowSec").get<std::string>());
    } catch (const net::HttpError& e) {
        throw LedgerError(e.what());
    }
}

GasReceipt wait_for_receipt(ChainClient& chain, const TxId& id, std::chrono::milliseconds timeout,
                            std::chrono::milliseconds poll) {
    auto deadline = std::chrono::steady_clock::now() + timeout;
    for (;;) {
        if (auto r = chain.receipt(id)) return *r;
        if (std::chrono::steady_clock::now() >= deadline)
            throw LedgerError("transaction " + id + " not included before timeout");
        std::this_thread::sleep_for(poll);
    }
}

}  // namespace sfwt::ledger
