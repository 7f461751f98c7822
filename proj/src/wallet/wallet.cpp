#include "sfwt/wallet/wallet.hpp"

namespace sfwt::wallet {

using nlohmann::json;

std::string_view to_string(TokenStatus status) {
    switch (status) {
        case TokenStatus::valid: return "Valid";
        case TokenStatus::expired: return "Expired";
        case TokenStatus::unbought: return "Unbought";
    }
    return "?";
}

TokenStatus derive_status(const Amount& balance, TimeSec expiration_sec, TimeSec now) {
    if (balance == 0) return TokenStatus::unbought;
    return now >= expiration_sec ? TokenStatus::expired : TokenStatus::valid;
}

json to_json(const TokenView& v) {
    return json{{"tokenId", v.token_id.to_string()},
                {"apId", v.ap_id},
                {"priceWei", to_decimal(v.price_wei)},
                {"durationSec", std::to_string(v.duration_sec)},
                {"dataCapBytes", to_decimal(v.data_cap_bytes)},
                {"balance", to_decimal(v.balance)},
                {"expirationSec", std::to_string(v.expiration_sec)},
                {"status", std::string(to_string(v.status))}};
}

TokenView token_view_from_json(const json& j) {
    TokenView v;
    v.token_id = TokenId::parse(j.at("tokenId").get<std::string>());
    v.ap_id = j.at("apId").get<std::string>();
    v.price_wei = parse_uint256(j.at("priceWei").get<std::string>());
    v.duration_sec = std::stoull(j.at("durationSec").get<std::string>());
    v.data_cap_bytes = parse_uint256(j.at("dataCapBytes").get<std::string>());
    v.balance = parse_uint256(j.at("balance").get<std::string>());
    v.expiration_sec = std::stoull(j.at("expirationSec").get<std::string>());
    auto s = j.at("status").get<std::string>();
    if (s == "Valid") v.status = TokenStatus::valid;
    else if (s == "Expired") v.status = TokenStatus::expired;
    else if (s == "Unbought") v.status = TokenStatus::unbought;
    else throw std::invalid_argument("unknown token status " + s);
    return v;
}

namespace {

json read_sfwt(ledger::ChainClient& chain, const char* op, json args) {
    return chain.call({contract::SfwtContract::contract_name, op, std::move(args)});
}

}  // namespace

std::vector<TokenView> list_tokens(ledger::ChainClient& chain, const Address& holder, bool include_unbought) {
    auto now = chain.now();
    std::vector<TokenView> rows;
    auto minted = read_sfwt(chain, "listTokens", json::object());
    for (const auto& id_json : minted.at("tokenIds")) {
        auto id = id_json.get<std::string>();
        TokenView v;
        v.token_id = TokenId::parse(id);
        v.balance = parse_uint256(
            read_sfwt(chain, "balanceOf", json{{"owner", holder.to_hex()}, {"tokenId", id}}).at("balance").get<std::string>());
        v.expiration_sec = std::stoull(read_sfwt(chain, "getExpiration", json{{"tokenId", id}, {"holder", holder.to_hex()}})
                                           .at("expirationSec")
                                           .get<std::string>());
        if (!include_unbought && v.balance == 0 && v.expiration_sec == 0) continue;
        auto meta = read_sfwt(chain, "getMetadata", json{{"tokenId", id}});
        v.ap_id = meta.at("apId").get<std::string>();
        v.price_wei = parse_uint256(meta.at("price").get<std::string>());
        v.duration_sec = std::stoull(meta.at("duration").get<std::string>());
        v.data_cap_bytes = parse_uint256(meta.at("dataCap").get<std::string>());
        v.status = derive_status(v.balance, v.expiration_sec, now);
        rows.push_back(std::move(v));
    }
    return rows;
}

BuyOutcome buy(ledger::ChainClient& chain, const Address& buyer, const TokenId& token_id, const Amount& quantity,
               std::chrono::milliseconds timeout) {
    auto id = token_id.to_string();
    auto meta = read_sfwt(chain, "getMetadata", json{{"tokenId", id}});
    if (!meta.at("minted").get<bool>()) throw ledger::CallError("token " + id + " has not been minted");
    BuyOutcome out;
    out.sum = parse_uint256(meta.at("price").get<std::string>()) * quantity;
    auto tx = chain.submit(buyer, {contract::SfwtContract::contract_name, "buySfwt",
                                   json{{"tokenId", id}, {"quantity", to_decimal(quantity)}, {"sum", to_decimal(out.sum)}}});
    out.receipt = ledger::wait_for_receipt(chain, tx, timeout);
    out.balance = parse_uint256(
        read_sfwt(chain, "balanceOf", json{{"owner", buyer.to_hex()}, {"tokenId", id}}).at("balance").get<std::string>());
    out.expiration_sec = std::stoull(
        read_sfwt(chain, "getExpiration", json{{"tokenId", id}, {"holder", buyer.to_hex()}}).at("expirationSec").get<std::string>());
    return out;
}

json ApClient::portal(const std::string& mac) const { return http_.get("/portal?mac=" + mac); }

crypto::SessionId ApClient::ari(const std::string& mac, const Address& wallet) const {
    auto j = http_.post("/auth/ari", json{{"mac", mac}, {"walletAddr", wallet.to_hex()}});
    return crypto::SessionId::from_hex(j.at("sessionId").get<std::string>());
}

ap::VerifyResponse ApClient::verify(const std::string& mac, const crypto::SessionId& session,
                                    const crypto::Signature& sig, const TokenId& token_id) const {
    return ap::verify_response_from_json(http_.post(
        "/auth/verify",
        json{{"mac", mac}, {"sessionId", session.to_hex()}, {"signature", sig.to_hex()}, {"tokenId", token_id.to_string()}}));
}

json ApClient::usage(const std::string& mac, const Uint256& delta_bytes) const {
    return http_.post("/usage", json{{"mac", mac}, {"deltaBytes", to_decimal(delta_bytes)}});
}

ConnectOutcome connect(const ApClient& ap, const std::string& mac, const crypto::KeyPair& keys, const TokenId& token_id) {
    ConnectOutcome out;
    out.ap_id = ap.portal(mac).at("apId").get<std::string>();
    out.session_id = ap.ari(mac, crypto::address_of(keys.pub));
    out.response = ap.verify(mac, out.session_id, crypto::sign_session(out.session_id, keys.secret), token_id);
    return out;
}

}  // namespace sfwt::wallet
