#pragma once

// Brute-force reference for the SFWT contract, rebuilt only from the ledger's committed
// event log. Shares no code with the contract's own bookkeeping.

#include "sfwt/contract/sfwt_contract.hpp"
#include "sfwt/ledger/ledger.hpp"

#include <map>
#include <string>

namespace sfwt::testing {

struct OracleMeta {
    std::string ap_id;
    Uint256 duration;
    Uint256 data_cap;
};

struct OracleState {
    std::map<std::string, OracleMeta> meta;                                  // tokenId -> metadata
    std::map<std::pair<std::string, std::string>, Uint256> balances;          // (tokenId, holder) -> qty
    std::map<std::pair<std::string, std::string>, Uint256> expirations;       // (tokenId, holder) -> time
};

inline OracleState replay_events(const std::vector<ledger::LogEvent>& events) {
    OracleState s;
    const std::string zero = Address{}.to_hex();
    for (const auto& e : events) {
        if (e.contract != "sfwt") continue;
        const auto& a = e.fields;
        if (e.name == "SFWT_Mint") {
            s.meta[a["tokenId"]] = OracleMeta{a["apId"], parse_uint256(a["duration"].get<std::string>()),
                                              parse_uint256(a["dataCap"].get<std::string>())};
        } else if (e.name == "TransferSingle") {
            Uint256 v = parse_uint256(a["value"].get<std::string>());
            std::string id = a["id"];
            if (a["from"] != zero) s.balances[{id, a["from"]}] -= v;
            s.balances[{id, a["to"]}] += v;
        } else if (e.name == "SFWT_Buy") {
            std::string id = a["tokenId"];
            Uint256 t = parse_uint256(a["timestamp"].get<std::string>());
            Uint256 q = parse_uint256(a["quantity"].get<std::string>());
            auto& exp = s.expirations[{id, a["buyer"]}];
            Uint256 start = t >= exp ? t : exp;
            exp = start + s.meta.at(id).duration * q;
        }
    }
    return s;
}

inline contract::VerifyResult oracle_verify(const OracleState& s, const Address& holder, const TokenId& id,
                                            const std::string& ap_id, const Uint256& used, TimeSec now) {
    using contract::FailReason;
    contract::VerifyResult r;
    auto key = std::make_pair(id.to_string(), holder.to_hex());
    auto meta = s.meta.find(id.to_string());
    auto bal_it = s.balances.find(key);
    Uint256 balance = bal_it == s.balances.end() ? Uint256(0) : bal_it->second;
    auto exp_it = s.expirations.find(key);
    Uint256 expiration = exp_it == s.expirations.end() ? Uint256(0) : exp_it->second;

    if (meta == s.meta.end()) r.fail_reason = FailReason::unknown_token;
    else if (!(balance > 0)) r.fail_reason = FailReason::no_balance;
    else if (!(ap_id == meta->second.ap_id)) r.fail_reason = FailReason::wrong_ap;
    else if (!(Uint256(now) < expiration)) r.fail_reason = FailReason::expired;
    else if (!(used < meta->second.data_cap * balance)) r.fail_reason = FailReason::data_exhausted;
    else {
        r.ok = true;
        r.remaining_time_sec = (expiration - now).convert_to<TimeSec>();
        r.remaining_data_bytes = meta->second.data_cap * balance - used;
    }
    return r;
}

}  // namespace sfwt::testing
