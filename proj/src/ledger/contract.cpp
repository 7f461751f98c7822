#include "sfwt/ledger/contract.hpp"

namespace sfwt::ledger {

json to_json(const CallPayload& payload) {
    return json{{"contract", payload.contract}, {"op", payload.op}, {"args", payload.args}};
}

CallPayload payload_from_json(const json& j) {
    if (!j.is_object() || !j.contains("contract") || !j.contains("op") || !j["contract"].is_string() ||
        !j["op"].is_string()) {
        throw CallError("payload must be an object with string fields 'contract' and 'op'");
    }
    CallPayload p;
    p.contract = j["contract"].get<std::string>();
    p.op = j["op"].get<std::string>();
    if (j.contains("args")) {
        if (!j["args"].is_object()) throw CallError("payload 'args' must be an object");
        p.args = j["args"];
    }
    return p;
}

json to_json(const LogEvent& event) {
    return json{{"blockNumber", std::to_string(event.block_number)},
                {"txId", event.tx_id},
                {"contract", event.contract},
                {"event", event.name},
                {"args", event.fields}};
}

void ExecContext::emit(std::string name, json fields) {
    meter_.event();
    events_.push_back(LogEvent{block_number_, tx_id_, contract_, std::move(name), std::move(fields)});
}

Amount ExecContext::native_balance(const Address& who) const {
    auto it = accounts_.find(who);
    return it == accounts_.end() ? Amount(0) : it->second;
}

bool ExecContext::transfer_native(const Address& from, const Address& to, const Amount& amount) {
    auto it = accounts_.find(from);
    if (it == accounts_.end() || it->second < amount) return false;
    it->second -= amount;
    accounts_[to] += amount;
    return true;
}

namespace {

const json& require(const json& args, std::string_view key) {
    auto it = args.find(std::string(key));
    if (it == args.end()) throw CallError("missing argument '" + std::string(key) + "'");
    return *it;
}

}  // namespace

bool has_arg(const json& args, std::string_view key) { return args.contains(std::string(key)); }

Address arg_address(const json& args, std::string_view key) {
    const auto& v = require(args, key);
    if (!v.is_string()) throw CallError("argument '" + std::string(key) + "' must be a 0x address string");
    try {
        return Address::from_hex(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw CallError("argument '" + std::string(key) + "': " + e.what());
    }
}

Uint256 arg_uint(const json& args, std::string_view key) {
    const auto& v = require(args, key);
    if (v.is_number_unsigned()) return Uint256(v.get<std::uint64_t>());
    if (!v.is_string()) throw CallError("argument '" + std::string(key) + "' must be a decimal string");
    try {
        return parse_uint256(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw CallError("argument '" + std::string(key) + "': " + e.what());
    }
}

std::uint64_t arg_u64(const json& args, std::string_view key) {
    auto v = arg_uint(args, key);
    try {
        return to_u64(v);
    } catch (const std::out_of_range&) {
        throw CallError("argument '" + std::string(key) + "' exceeds 64 bits");
    }
}

TokenId arg_token(const json& args, std::string_view key) { return TokenId{arg_uint(args, key)}; }

std::string arg_string(const json& args, std::string_view key) {
    const auto& v = require(args, key);
    if (!v.is_string()) throw CallError("argument '" + std::string(key) + "' must be a string");
    return v.get<std::string>();
}

}  // namespace sfwt::ledger
