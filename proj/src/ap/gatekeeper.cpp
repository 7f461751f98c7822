#include "sfwt/ap/gatekeeper.hpp"

#include <cctype>
#include <ranges>

namespace sfwt::ap {

using nlohmann::json;

std::string_view to_string(ClientState state) {
    switch (state) {
        case ClientState::preauthenticated: return "Preauthenticated";
        case ClientState::challenged: return "Challenged";
        case ClientState::authenticated: return "Authenticated";
    }
    return "?";
}

namespace {

constexpr std::pair<AuthFailure, std::string_view> failure_names[] = {
    {AuthFailure::unknown_token, "UNKNOWN_TOKEN"},     {AuthFailure::no_balance, "NO_BALANCE"},
    {AuthFailure::wrong_ap, "WRONG_AP"},               {AuthFailure::expired, "EXPIRED"},
    {AuthFailure::data_exhausted, "DATA_EXHAUSTED"},   {AuthFailure::session_invalid, "SESSION_INVALID"},
    {AuthFailure::session_expired, "SESSION_EXPIRED"}, {AuthFailure::sig_invalid, "SIG_INVALID"},
};

AuthFailure from_chain(contract::FailReason r) {
    switch (r) {
        case contract::FailReason::none: return AuthFailure::none;
        case contract::FailReason::unknown_token: return AuthFailure::unknown_token;
        case contract::FailReason::no_balance: return AuthFailure::no_balance;
        case contract::FailReason::wrong_ap: return AuthFailure::wrong_ap;
        case contract::FailReason::expired: return AuthFailure::expired;
        case contract::FailReason::data_exhausted: return AuthFailure::data_exhausted;
    }
    return AuthFailure::none;
}

VerifyResponse failed(AuthFailure reason) {
    VerifyResponse r;
    r.fail_reason = reason;
    return r;
}

}  // namespace

std::string_view to_string(AuthFailure reason) {
    for (const auto& [r, name] : failure_names)
        if (r == reason) return name;
    return "";
}

std::optional<AuthFailure> parse_auth_failure(std::string_view text) {
    for (const auto& [r, name] : failure_names)
        if (name == text) return r;
    return std::nullopt;
}

bool is_chain_failure(AuthFailure reason) {
    switch (reason) {
        case AuthFailure::unknown_token:
        case AuthFailure::no_balance:
        case AuthFailure::wrong_ap:
        case AuthFailure::expired:
        case AuthFailure::data_exhausted: return true;
        default: return false;
    }
}

json to_json(const VerifyResponse& r) {
    json j{{"ok", r.ok},
           {"remainingTimeSec", std::to_string(r.remaining_time_sec)},
           {"remainingDataBytes", to_decimal(r.remaining_data_bytes)}};
    if (!r.ok) j["failReason"] = std::string(to_string(r.fail_reason));
    return j;
}

VerifyResponse verify_response_from_json(const json& j) {
    VerifyResponse r;
    r.ok = j.at("ok").get<bool>();
    r.remaining_time_sec = std::stoull(j.at("remainingTimeSec").get<std::string>());
    r.remaining_data_bytes = parse_uint256(j.at("remainingDataBytes").get<std::string>());
    if (!r.ok) {
        auto reason = parse_auth_failure(j.at("failReason").get<std::string>());
        if (!reason) throw std::invalid_argument("unknown failReason " + j.at("failReason").dump());
        r.fail_reason = *reason;
    }
    return r;
}

json to_json(const AuthorizedEntry& e) {
    return json{{"mac", e.mac},
                {"userAddr", e.user.to_hex()},
                {"tokenId", e.token_id.to_string()},
                {"expiresAtSec", std::to_string(e.expires_at_sec)},
                {"usedDataBytes", to_decimal(e.used_data_bytes)},
                {"inGrace", e.in_grace}};
}

json to_json(const PortalInfo& p) {
    json j{{"apId", p.ap_id}, {"walletUrl", p.wallet_url}, {"state", std::string(to_string(p.state))},
           {"authorized", p.authorized}};
    if (p.remaining_time_sec) j["remainingTimeSec"] = std::to_string(*p.remaining_time_sec);
    return j;
}

std::string normalize_mac(std::string_view mac) {
    std::string out(mac);
    bool ok = out.size() == 17;
    for (std::size_t i = 0; ok && i < out.size(); ++i) {
        if (i % 3 == 2) {
            ok = out[i] == ':';
        } else {
            ok = std::isxdigit(static_cast<unsigned char>(out[i])) != 0;
            out[i] = static_cast<char>(std::tolower(static_cast<unsigned char>(out[i])));
        }
    }
    if (!ok) throw ApError(ApError::Kind::bad_request, "MAC must look like aa:bb:cc:dd:ee:ff");
    return out;
}

Gatekeeper::Gatekeeper(ApConfig config, std::shared_ptr<ledger::ChainClient> chain,
                       std::unique_ptr<crypto::SessionIdSource> sessions)
    : config_(std::move(config)), chain_(std::move(chain)), sessions_source_(std::move(sessions)) {
    config_.validate();
    if (!chain_) throw std::invalid_argument("gatekeeper needs a chain client");
    if (!sessions_source_) sessions_source_ = crypto::make_session_source(config_.session_seed);
}

void Gatekeeper::transition(ClientSession& s, ClientState to, TimeSec now, std::string reason,
                            const AuthorizedEntry* admitted, const contract::VerifyResult* result) {
    if (s.state == to) return;
    Transition t{now, s.mac, s.state, to, std::move(reason), std::nullopt, std::nullopt, std::nullopt};
    if (admitted) {
        t.user = admitted->user;
        t.token_id = admitted->token_id;
    }
    if (result) t.chain_result = *result;
    log_.push_back(std::move(t));
    s.state = to;
}

void Gatekeeper::remove_entry(const std::string& mac, TimeSec now, std::string reason) {
    authorized_.erase(mac);
    auto it = sessions_.find(mac);
    if (it != sessions_.end()) {
        transition(it->second, ClientState::preauthenticated, now, std::move(reason));
        it->second.last_seen_sec = now;
    }
}

std::size_t Gatekeeper::pending_sessions() const {
    std::size_t n = 0;
    for (const auto& [mac, s] : sessions_)
        if (s.state != ClientState::authenticated) ++n;
    return n;
}

void Gatekeeper::prune_stale_sessions(TimeSec now) {
    std::erase_if(sessions_, [&](const auto& kv) {
        const auto& s = kv.second;
        return s.state != ClientState::authenticated && now >= s.last_seen_sec + config_.session_ttl_sec;
    });
}

contract::VerifyResult Gatekeeper::ask_chain(const Address& user, const TokenId& token_id, const Uint256& used,
                                             TimeSec now) {
    auto reply = chain_->call({contract::SfwtContract::contract_name, "verifySfwt",
                               json{{"holder", user.to_hex()},
                                    {"tokenId", token_id.to_string()},
                                    {"apId", config_.ap_id},
                                    {"usedDataBytes", to_decimal(used)},
                                    {"nowSec", std::to_string(now)}}});
    return contract::verify_result_from_json(reply);
}

PortalInfo Gatekeeper::handle_connect(std::string_view mac_in) {
    auto mac = normalize_mac(mac_in);
    auto now = chain_->now();
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(mac);
    if (it == sessions_.end()) {
        prune_stale_sessions(now);
        if (pending_sessions() >= config_.max_pending_sessions)
            throw ApError(ApError::Kind::throttled, "too many pending sessions");
        it = sessions_.emplace(mac, ClientSession{mac, ClientState::preauthenticated, std::nullopt, std::nullopt, now, now})
                 .first;
    } else {
        it->second.last_seen_sec = now;
    }
    PortalInfo info{config_.ap_id, config_.wallet_url, it->second.state, false, std::nullopt};
    auto entry = authorized_.find(mac);
    if (entry != authorized_.end() && entry->second.expires_at_sec > now) {
        info.authorized = true;
        info.remaining_time_sec = entry->second.expires_at_sec - now;
    }
    return info;
}

crypto::SessionId Gatekeeper::handle_ari(std::string_view mac_in, std::optional<Address> wallet_addr) {
    auto mac = normalize_mac(mac_in);
    auto now = chain_->now();
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(mac);
    if (it == sessions_.end())
        throw ApError(ApError::Kind::unknown_client, "no session for " + mac + "; connect first");
    auto& s = it->second;
    if (s.state == ClientState::authenticated)
        throw ApError(ApError::Kind::conflict, mac + " is already authenticated");
    s.session_id = sessions_source_->next();
    s.wallet_addr = wallet_addr;
    s.issued_at_sec = now;
    s.last_seen_sec = now;
    transition(s, ClientState::challenged, now, "ARI");
    return *s.session_id;
}

VerifyResponse Gatekeeper::handle_verify(std::string_view mac_in, const crypto::SessionId& session_id,
                                         const crypto::Signature& signature, const TokenId& token_id) {
    auto mac = normalize_mac(mac_in);
    auto now = chain_->now();
    std::optional<Address> declared;
    {
        std::lock_guard lock(mutex_);
        auto it = sessions_.find(mac);
        if (it == sessions_.end() || it->second.state != ClientState::challenged || !it->second.session_id ||
            *it->second.session_id != session_id)
            return failed(AuthFailure::session_invalid);
        auto& s = it->second;
        s.session_id.reset();
        declared = s.wallet_addr;
        if (now >= s.issued_at_sec + config_.session_ttl_sec) {
            transition(s, ClientState::preauthenticated, now, "SESSION_EXPIRED");
            return failed(AuthFailure::session_expired);
        }
        ++verify_evaluations_[session_id.to_hex()];
    }

    auto reject = [&](AuthFailure reason, const contract::VerifyResult* result = nullptr) {
        std::lock_guard lock(mutex_);
        auto it = sessions_.find(mac);
        // A fresh challenge issued meanwhile stays live.
        if (it != sessions_.end() && !it->second.session_id)
            transition(it->second, ClientState::preauthenticated, now, std::string(to_string(reason)), nullptr, result);
        auto r = failed(reason);
        if (result) {
            r.remaining_time_sec = result->remaining_time_sec;
            r.remaining_data_bytes = result->remaining_data_bytes;
        }
        return r;
    };

    Address signer;
    try {
        signer = crypto::recover_signer(session_id, signature);
    } catch (const crypto::CryptoError&) {
        return reject(AuthFailure::sig_invalid);
    }
    if (declared && *declared != signer) return reject(AuthFailure::sig_invalid);

    Uint256 used = usage_of(signer, token_id);
    contract::VerifyResult result;
    try {
        result = ask_chain(signer, token_id, used, now);
    } catch (const net::Unreachable&) {
        std::lock_guard lock(mutex_);
        auto it = sessions_.find(mac);
        if (it != sessions_.end() && !it->second.session_id)
            transition(it->second, ClientState::preauthenticated, now, "ledger unreachable");
        throw;
    }
    if (!result.ok) return reject(from_chain(result.fail_reason), &result);

    std::lock_guard lock(mutex_);
    AuthorizedEntry entry{mac, signer, token_id, now + result.remaining_time_sec, used, false};
    authorized_[mac] = entry;
    auto& s = sessions_[mac];
    s.mac = mac;
    s.session_id.reset();
    s.last_seen_sec = now;
    transition(s, ClientState::authenticated, now, "verified", &entry, &result);
    VerifyResponse r;
    r.ok = true;
    r.remaining_time_sec = result.remaining_time_sec;
    r.remaining_data_bytes = result.remaining_data_bytes;
    return r;
}

VerifyResponse Gatekeeper::handle_verify_wire(std::string_view mac, std::string_view session_hex,
                                              std::string_view signature_hex, const TokenId& token_id) {
    crypto::SessionId session_id;
    try {
        session_id = crypto::SessionId::from_hex(session_hex);
    } catch (const std::invalid_argument&) {
        normalize_mac(mac);
        return failed(AuthFailure::session_invalid);
    }
    crypto::Signature signature;
    try {
        signature = crypto::Signature::from_hex(signature_hex);
    } catch (const std::invalid_argument&) {
        // Route through the state machine so the session is still consumed; an all-zero
        // signature never recovers.
        signature = crypto::Signature{};
    }
    return handle_verify(mac, session_id, signature, token_id);
}

Uint256 Gatekeeper::record_usage(std::string_view mac_in, const Uint256& delta_bytes) {
    auto mac = normalize_mac(mac_in);
    std::lock_guard lock(mutex_);
    auto it = authorized_.find(mac);
    if (it == authorized_.end()) throw ApError(ApError::Kind::not_authorized, mac + " has no authorized entry");
    auto& counter = usage_[{it->second.user, it->second.token_id}];
    try {
        counter += delta_bytes;
    } catch (const std::overflow_error&) {
        throw ApError(ApError::Kind::bad_request, "usage counter overflow");
    }
    return counter;
}

std::vector<std::string> Gatekeeper::sweep(TimeSec now) {
    std::vector<AuthorizedEntry> due;
    {
        std::lock_guard lock(mutex_);
        prune_stale_sessions(now);
        for (const auto& [mac, e] : authorized_)
            if (e.expires_at_sec <= now) due.push_back(e);
    }
    if (due.empty()) return {};

    std::vector<contract::VerifyResult> results;
    bool unreachable = false;
    for (const auto& e : due) {
        try {
            results.push_back(ask_chain(e.user, e.token_id, usage_of(e.user, e.token_id), now));
        } catch (const net::Unreachable&) {
            unreachable = true;
            break;
        }
    }

    std::vector<std::string> removed;
    std::lock_guard lock(mutex_);
    consecutive_sweep_failures_ = unreachable ? consecutive_sweep_failures_ + 1 : 0;
    for (std::size_t i = 0; i < due.size(); ++i) {
        auto it = authorized_.find(due[i].mac);
        // Skip entries replaced or refreshed while the chain was being asked.
        if (it == authorized_.end() || it->second.expires_at_sec > now || it->second.user != due[i].user ||
            !(it->second.token_id == due[i].token_id))
            continue;
        if (unreachable) {
            if (consecutive_sweep_failures_ >= 2) {
                remove_entry(due[i].mac, now, "ledger unreachable");
                removed.push_back(due[i].mac);
            } else {
                it->second.expires_at_sec = now + config_.sweep_interval_sec;
                it->second.in_grace = true;
            }
            continue;
        }
        const auto& r = results[i];
        if (r.ok) {
            it->second.expires_at_sec = now + r.remaining_time_sec;
            it->second.in_grace = false;
        } else {
            remove_entry(due[i].mac, now, "sweep: " + std::string(contract::to_string(r.fail_reason)));
            removed.push_back(due[i].mac);
        }
    }
    return removed;
}

std::vector<std::string> Gatekeeper::tick() {
    TimeSec now = 0;
    try {
        now = chain_->now();
    } catch (const net::Unreachable&) {
        return {};
    }
    {
        std::lock_guard lock(mutex_);
        if (now < next_sweep_at_) return {};
        next_sweep_at_ = (now / config_.sweep_interval_sec + 1) * config_.sweep_interval_sec;
    }
    return sweep(now);
}

bool Gatekeeper::is_authorized(std::string_view mac_in, TimeSec now) const {
    auto mac = normalize_mac(mac_in);
    std::lock_guard lock(mutex_);
    auto it = authorized_.find(mac);
    return it != authorized_.end() && it->second.expires_at_sec > now;
}

std::optional<ClientState> Gatekeeper::state_of(std::string_view mac_in) const {
    auto mac = normalize_mac(mac_in);
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(mac);
    if (it == sessions_.end()) return std::nullopt;
    return it->second.state;
}

std::vector<AuthorizedEntry> Gatekeeper::authorized() const {
    std::lock_guard lock(mutex_);
    std::vector<AuthorizedEntry> out;
    for (auto e : authorized_ | std::views::values) {
        auto u = usage_.find({e.user, e.token_id});
        e.used_data_bytes = u == usage_.end() ? Uint256(0) : u->second;
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<Transition> Gatekeeper::transitions() const {
    std::lock_guard lock(mutex_);
    return log_;
}

Uint256 Gatekeeper::usage_of(const Address& user, const TokenId& token_id) const {
    std::lock_guard lock(mutex_);
    auto it = usage_.find({user, token_id});
    return it == usage_.end() ? Uint256(0) : it->second;
}

std::map<std::string, int> Gatekeeper::verify_evaluations() const {
    std::lock_guard lock(mutex_);
    return verify_evaluations_;
}

}  // namespace sfwt::ap
