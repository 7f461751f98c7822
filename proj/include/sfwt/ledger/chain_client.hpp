#pragma once

#include "sfwt/ledger/ledger.hpp"
#include "sfwt/net/http.hpp"

#include <chrono>

namespace sfwt::ledger {

/// What the AP, wallet and tools need from a chain, local or remote.
/// Remote implementations throw net::Unreachable when the node cannot be reached;
/// rejected submissions throw LedgerError and rejected reads throw CallError.
class ChainClient {
public:
    virtual ~ChainClient() = default;

    virtual TxId submit(const Address& sender, const CallPayload& payload) = 0;
    /// nullopt while pending. Throws LedgerError for ids the chain never saw.
    virtual std::optional<GasReceipt> receipt(const TxId& id) = 0;
    virtual json call(const CallPayload& query) = 0;
    virtual TimeSec now() = 0;
    virtual TimeSec block_interval() = 0;
    /// Test hook; remote nodes refuse it unless started with advancing enabled.
    virtual TimeSec advance(TimeSec delta_sec) = 0;
};

class LocalChainClient : public ChainClient {
public:
    explicit LocalChainClient(Ledger& ledger) : ledger_(ledger) {}

    TxId submit(const Address& sender, const CallPayload& payload) override;
    std::optional<GasReceipt> receipt(const TxId& id) override;
    json call(const CallPayload& query) override;
    TimeSec now() override;
    TimeSec block_interval() override;
    TimeSec advance(TimeSec delta_sec) override;

private:
    Ledger& ledger_;
};

/// Client for the node's HTTP facade (see ChainHttpServer).
class HttpChainClient : public ChainClient {
public:
    explicit HttpChainClient(net::Endpoint endpoint, std::chrono::milliseconds timeout = std::chrono::seconds(5));

    TxId submit(const Address& sender, const CallPayload& payload) override;
    std::optional<GasReceipt> receipt(const TxId& id) override;
    json call(const CallPayload& query) override;
    TimeSec now() override;
    TimeSec block_interval() override;
    TimeSec advance(TimeSec delta_sec) override;

private:
    net::JsonClient http_;
};

/// Polls until the transaction is included. Throws LedgerError on timeout.
GasReceipt wait_for_receipt(ChainClient& chain, const TxId& id, std::chrono::milliseconds timeout,
                            std::chrono::milliseconds poll = std::chrono::milliseconds(20));

}  // namespace sfwt::ledger
