#pragma once

#include "sfwt/ap/gatekeeper.hpp"
#include "sfwt/ledger/chain_client.hpp"

namespace sfwt::wallet {

enum class TokenStatus { valid, expired, unbought };
std::string_view to_string(TokenStatus status);

/// One row of the wallet's token list.
struct TokenView {
    TokenId token_id;
    std::string ap_id;
    Amount price_wei = 0;
    TimeSec duration_sec = 0;
    Uint256 data_cap_bytes = 0;
    Amount balance = 0;
    TimeSec expiration_sec = 0;
    TokenStatus status = TokenStatus::unbought;

    bool operator==(const TokenView&) const = default;
};

/// Unbought without balance; Expired once now reaches the expiration; Valid otherwise.
TokenStatus derive_status(const Amount& balance, TimeSec expiration_sec, TimeSec now);

nlohmann::json to_json(const TokenView& v);
TokenView token_view_from_json(const nlohmann::json& j);

/// Tokens the address holds or has bought; with include_unbought, every minted offering.
std::vector<TokenView> list_tokens(ledger::ChainClient& chain, const Address& holder, bool include_unbought = false);

struct BuyOutcome {
    ledger::GasReceipt receipt;
    Amount sum = 0;
    Amount balance = 0;
    TimeSec expiration_sec = 0;
};

/// Looks up the price, submits buySfwt with sum = price * quantity and waits for inclusion.
/// Throws ledger::CallError for tokens that were never minted.
BuyOutcome buy(ledger::ChainClient& chain, const Address& buyer, const TokenId& token_id, const Amount& quantity,
               std::chrono::milliseconds timeout);

/// Client side of the AP HTTP API.
class ApClient {
public:
    explicit ApClient(net::Endpoint endpoint, std::chrono::milliseconds timeout = std::chrono::seconds(5))
        : http_(std::move(endpoint), timeout) {}

    nlohmann::json portal(const std::string& mac) const;
    crypto::SessionId ari(const std::string& mac, const Address& wallet) const;
    ap::VerifyResponse verify(const std::string& mac, const crypto::SessionId& session, const crypto::Signature& sig,
                              const TokenId& token_id) const;
    nlohmann::json usage(const std::string& mac, const Uint256& delta_bytes) const;

private:
    net::JsonClient http_;
};

struct ConnectOutcome {
    std::string ap_id;
    crypto::SessionId session_id;
    ap::VerifyResponse response;
};

/// connect -> ARI -> sign the session id -> verify.
ConnectOutcome connect(const ApClient& ap, const std::string& mac, const crypto::KeyPair& keys, const TokenId& token_id);

}  // namespace sfwt::wallet
