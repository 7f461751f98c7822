#include "sfwt/contract/sfwt_contract.hpp"

#include "sfwt/contract/units.hpp"

#include <limits>

namespace sfwt::contract {

using ledger::CallError;
using ledger::json;
using ledger::Revert;

std::string_view to_string(FailReason reason) {
    switch (reason) {
        case FailReason::none: return "";
        case FailReason::unknown_token: return "UNKNOWN_TOKEN";
        case FailReason::no_balance: return "NO_BALANCE";
        case FailReason::wrong_ap: return "WRONG_AP";
        case FailReason::expired: return "EXPIRED";
        case FailReason::data_exhausted: return "DATA_EXHAUSTED";
    }
    return "";
}

std::optional<FailReason> parse_fail_reason(std::string_view text) {
    for (auto r : {FailReason::unknown_token, FailReason::no_balance, FailReason::wrong_ap, FailReason::expired,
                   FailReason::data_exhausted}) {
        if (to_string(r) == text) return r;
    }
    return std::nullopt;
}

json to_json(const VerifyResult& r) {
    json j{{"ok", r.ok},
           {"remainingTimeSec", std::to_string(r.remaining_time_sec)},
           {"remainingDataBytes", to_decimal(r.remaining_data_bytes)}};
    if (!r.ok) j["failReason"] = std::string(to_string(r.fail_reason));
    return j;
}

VerifyResult verify_result_from_json(const json& j) {
    VerifyResult r;
    r.ok = j.at("ok").get<bool>();
    r.remaining_time_sec = std::stoull(j.at("remainingTimeSec").get<std::string>());
    r.remaining_data_bytes = parse_uint256(j.at("remainingDataBytes").get<std::string>());
    if (!r.ok) {
        auto reason = parse_fail_reason(j.at("failReason").get<std::string>());
        if (!reason) throw std::invalid_argument("unknown failReason");
        r.fail_reason = *reason;
    }
    return r;
}

json to_json(const SfwtMetadata& m) {
    return json{{"apId", m.ap_id},
                {"price", to_decimal(m.price_wei)},
                {"duration", std::to_string(m.duration_sec)},
                {"dataCap", to_decimal(m.data_cap_bytes)}};
}

SfwtContract::SfwtContract(Address operator_addr, std::set<Address> admins)
    : operator_(operator_addr), admins_(std::move(admins)) {}

bool SfwtContract::has_transaction(std::string_view op) const { return op == "mintSfwt" || op == "buySfwt"; }

bool SfwtContract::has_read(std::string_view op) const {
    return op == "verifySfwt" || op == "getMetadata" || op == "getExpiration" || op == "balanceOf" ||
           op == "listTokens" || op == "info";
}

void SfwtContract::mint_sfwt(ledger::ExecContext& ctx, const Address& owner, const TokenId& id,
                             const SfwtMetadata& metadata, const Amount& quantity) {
    if (ctx.caller() != operator_ && !admins_.count(ctx.caller())) throw Revert("caller is not operator or admin");
    if (metadata.duration_sec == 0) throw Revert("duration must be positive");

    auto existing = metadata_.find(id);
    if (existing != metadata_.end()) {
        if (!(existing->second == metadata)) throw Revert("token " + id.to_string() + " already minted with different metadata");
    } else {
        for (int field = 0; field < 4; ++field) ctx.storage_write(false);
        metadata_.emplace(id, metadata);
    }
    tokens_.mint(ctx, ctx.caller(), owner, id, quantity);
    ctx.emit("SFWT_Mint", json{{"operator", ctx.caller().to_hex()},
                               {"owner", owner.to_hex()},
                               {"tokenId", id.to_string()},
                               {"apId", metadata.ap_id},
                               {"price", to_decimal(metadata.price_wei)},
                               {"duration", std::to_string(metadata.duration_sec)},
                               {"dataCap", to_decimal(metadata.data_cap_bytes)},
                               {"amount", to_decimal(quantity)}});
}

void SfwtContract::buy_sfwt(ledger::ExecContext& ctx, const TokenId& id, const Amount& quantity, const Amount& sum) {
    auto meta = metadata_.find(id);
    if (meta == metadata_.end()) throw Revert("token " + id.to_string() + " not minted");
    const auto& m = meta->second;

    Amount expected;
    try {
        expected = m.price_wei * quantity;
    } catch (const std::overflow_error&) {
        throw Revert("price * quantity overflows");
    }
    if (sum != expected) throw Revert("sum does not equal price * quantity");

    const Address buyer = ctx.caller();
    if (!ctx.transfer_native(buyer, operator_, sum)) throw Revert("insufficient funds");
    tokens_.safe_transfer(ctx, buyer, operator_, buyer, id, quantity);

    auto& per_holder = expirations_[id];
    auto slot = per_holder.find(buyer);
    TimeSec current = slot == per_holder.end() ? 0 : slot->second;
    Uint256 extension = Uint256(m.duration_sec) * quantity;
    Uint256 expiration = ctx.now() >= current ? Uint256(ctx.now()) + extension : Uint256(current) + extension;
    if (expiration > std::numeric_limits<TimeSec>::max()) throw Revert("expiration overflows");
    ctx.storage_write(slot != per_holder.end());
    per_holder[buyer] = expiration.convert_to<TimeSec>();

    ctx.emit("SFWT_Buy", json{{"buyer", buyer.to_hex()},
                              {"tokenId", id.to_string()},
                              {"quantity", to_decimal(quantity)},
                              {"sum", to_decimal(sum)},
                              {"timestamp", std::to_string(ctx.now())},
                              {"expiration", to_decimal(expiration)}});
}

VerifyResult SfwtContract::verify_sfwt(const Address& holder, const TokenId& id, std::string_view current_ap_id,
                                       const Uint256& used_data_bytes, TimeSec now) const {
    VerifyResult r;
    auto meta = metadata_.find(id);
    if (meta == metadata_.end()) {
        r.fail_reason = FailReason::unknown_token;
        return r;
    }
    const auto balance = tokens_.balance_of(holder, id);
    if (balance.is_zero()) {
        r.fail_reason = FailReason::no_balance;
        return r;
    }
    if (current_ap_id != meta->second.ap_id) {
        r.fail_reason = FailReason::wrong_ap;
        return r;
    }
    const auto expiration = get_expiration(id, holder);
    if (!(now < expiration)) {
        r.fail_reason = FailReason::expired;
        return r;
    }
    // dataCap * balance can exceed 256 bits only for absurd caps; saturate instead of throwing.
    Uint256 allowance;
    try {
        allowance = meta->second.data_cap_bytes * balance;
    } catch (const std::overflow_error&) {
        allowance = std::numeric_limits<Uint256>::max();
    }
    if (!(used_data_bytes < allowance)) {
        r.fail_reason = FailReason::data_exhausted;
        return r;
    }
    r.ok = true;
    r.remaining_time_sec = expiration - now;
    r.remaining_data_bytes = allowance - used_data_bytes;
    return r;
}

std::optional<SfwtMetadata> SfwtContract::get_metadata(const TokenId& id) const {
    auto it = metadata_.find(id);
    if (it == metadata_.end()) return std::nullopt;
    return it->second;
}

TimeSec SfwtContract::get_expiration(const TokenId& id, const Address& holder) const {
    auto per_token = expirations_.find(id);
    if (per_token == expirations_.end()) return 0;
    auto it = per_token->second.find(holder);
    return it == per_token->second.end() ? 0 : it->second;
}

std::vector<TokenId> SfwtContract::minted_tokens() const {
    std::vector<TokenId> ids;
    for (const auto& [id, _] : metadata_) ids.push_back(id);
    return ids;
}

namespace {

SfwtMetadata metadata_from_args(const json& args) {
    SfwtMetadata m;
    m.ap_id = ledger::arg_string(args, "apId");
    m.price_wei = ledger::arg_uint(args, "price");
    try {
        m.duration_sec = parse_duration(ledger::arg_string(args, "duration"));
        m.data_cap_bytes = parse_data_size(ledger::arg_string(args, "dataCap"));
    } catch (const std::invalid_argument& e) {
        throw CallError(e.what());
    }
    return m;
}

}  // namespace

json SfwtContract::execute(ledger::ExecContext& ctx, std::string_view op, const json& args) {
    if (op == "mintSfwt") {
        mint_sfwt(ctx, ledger::arg_address(args, "owner"), ledger::arg_token(args, "tokenId"), metadata_from_args(args),
                  ledger::arg_uint(args, "quantity"));
        return true;
    }
    if (op == "buySfwt") {
        buy_sfwt(ctx, ledger::arg_token(args, "tokenId"), ledger::arg_uint(args, "quantity"),
                 ledger::arg_uint(args, "sum"));
        return true;
    }
    throw CallError("unknown transaction " + std::string(op));
}

json SfwtContract::read(std::string_view op, const json& args, TimeSec now) const {
    if (op == "verifySfwt") {
        TimeSec at = ledger::has_arg(args, "nowSec") ? ledger::arg_u64(args, "nowSec") : now;
        return to_json(verify_sfwt(ledger::arg_address(args, "holder"), ledger::arg_token(args, "tokenId"),
                                   ledger::arg_string(args, "apId"), ledger::arg_uint(args, "usedDataBytes"), at));
    }
    if (op == "getMetadata") {
        auto m = get_metadata(ledger::arg_token(args, "tokenId"));
        auto j = to_json(m.value_or(SfwtMetadata{}));
        j["minted"] = m.has_value();
        return j;
    }
    if (op == "getExpiration") {
        return json{{"expirationSec", std::to_string(get_expiration(ledger::arg_token(args, "tokenId"),
                                                                    ledger::arg_address(args, "holder")))}};
    }
    if (op == "balanceOf") {
        return json{{"balance", to_decimal(balance_of(ledger::arg_address(args, "owner"),
                                                      ledger::arg_token(args, "tokenId")))}};
    }
    if (op == "listTokens") {
        json ids = json::array();
        for (const auto& id : minted_tokens()) ids.push_back(id.to_string());
        return json{{"tokenIds", ids}};
    }
    if (op == "info") {
        json admins = json::array();
        for (const auto& a : admins_) admins.push_back(a.to_hex());
        return json{{"operator", operator_.to_hex()}, {"admins", admins}};
    }
    throw CallError("unknown read " + std::string(op));
}

}  // namespace sfwt::contract
