#pragma once

#include "sfwt/ap/config.hpp"
#include "sfwt/contract/sfwt_contract.hpp"
#include "sfwt/crypto/session_source.hpp"
#include "sfwt/ledger/chain_client.hpp"

#include <map>
#include <mutex>

namespace sfwt::ap {

enum class ClientState { preauthenticated, challenged, authenticated };
std::string_view to_string(ClientState state);

/// Outcome of a verify attempt. Chain-side reasons are relayed unchanged; the
/// session_* and sig_invalid reasons are decided locally before the chain is asked.
enum class AuthFailure {
    none,
    unknown_token,
    no_balance,
    wrong_ap,
    expired,
    data_exhausted,
    session_invalid,
    session_expired,
    sig_invalid,
};
std::string_view to_string(AuthFailure reason);
std::optional<AuthFailure> parse_auth_failure(std::string_view text);
/// True for the reasons that come from the contract's verify guards.
bool is_chain_failure(AuthFailure reason);

struct VerifyResponse {
    bool ok = false;
    TimeSec remaining_time_sec = 0;
    Uint256 remaining_data_bytes = 0;
    AuthFailure fail_reason = AuthFailure::none;
};
nlohmann::json to_json(const VerifyResponse& r);
VerifyResponse verify_response_from_json(const nlohmann::json& j);

struct ClientSession {
    std::string mac;
    ClientState state = ClientState::preauthenticated;
    /// Set while challenged; cleared when consumed.
    std::optional<crypto::SessionId> session_id;
    std::optional<Address> wallet_addr;
    TimeSec issued_at_sec = 0;
    /// Last connect or ARI; idle unauthenticated stubs are dropped a TTL after this.
    TimeSec last_seen_sec = 0;
};

struct AuthorizedEntry {
    std::string mac;
    Address user;
    TokenId token_id;
    TimeSec expires_at_sec = 0;
    Uint256 used_data_bytes = 0;
    /// Set when the entry was kept past expiry because the ledger was unreachable.
    bool in_grace = false;
};
nlohmann::json to_json(const AuthorizedEntry& e);

struct PortalInfo {
    std::string ap_id;
    std::string wallet_url;
    ClientState state = ClientState::preauthenticated;
    bool authorized = false;
    std::optional<TimeSec> remaining_time_sec;
};
nlohmann::json to_json(const PortalInfo& p);

/// One state change of one client, in order of occurrence.
struct Transition {
    TimeSec at_sec = 0;
    std::string mac;
    ClientState from = ClientState::preauthenticated;
    ClientState to = ClientState::preauthenticated;
    std::string reason;
    /// For admissions: who was admitted and what the chain answered.
    std::optional<Address> user;
    std::optional<TokenId> token_id;
    std::optional<contract::VerifyResult> chain_result;
};

class ApError : public std::runtime_error {
public:
    enum class Kind { bad_request, unknown_client, conflict, not_authorized, throttled };
    ApError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Lower-cases and checks "aa:bb:cc:dd:ee:ff". Throws ApError(bad_request).
std::string normalize_mac(std::string_view mac);

/// The access point's authorization state machine.
///
/// Per MAC: Preauthenticated --ARI--> Challenged --verify ok--> Authenticated
///                                   Challenged --verify fail--> Preauthenticated
///          Authenticated --sweep removal--> Preauthenticated
///
/// The AP clock is the chain clock. All table mutations happen under one mutex; chain
/// reads during verify and sweep are made without holding it.
class Gatekeeper {
public:
    Gatekeeper(ApConfig config, std::shared_ptr<ledger::ChainClient> chain,
               std::unique_ptr<crypto::SessionIdSource> sessions);

    const ApConfig& config() const { return config_; }

    PortalInfo handle_connect(std::string_view mac);
    /// Throws ApError: unknown_client without a prior connect, conflict when already authenticated.
    crypto::SessionId handle_ari(std::string_view mac, std::optional<Address> wallet_addr = std::nullopt);
    /// Throws net::Unreachable when the chain cannot be reached. Once the session id has
    /// been matched it is consumed, whatever happens afterwards.
    VerifyResponse handle_verify(std::string_view mac, const crypto::SessionId& session_id,
                                 const crypto::Signature& signature, const TokenId& token_id);
    /// Like handle_verify, for callers holding raw wire bytes: a signature that does
    /// not even decode is reported as SIG_INVALID.
    VerifyResponse handle_verify_wire(std::string_view mac, std::string_view session_hex,
                                      std::string_view signature_hex, const TokenId& token_id);
    /// Throws ApError(not_authorized) for MACs without an authorized entry.
    Uint256 record_usage(std::string_view mac, const Uint256& delta_bytes);

    /// Re-verifies entries with expires_at <= now against the chain; refreshes the ones
    /// still valid and removes the rest. While the chain is unreachable, expired entries get
    /// one sweep interval of grace; a second consecutive failed sweep removes them.
    std::vector<std::string> sweep(TimeSec now);
    /// Runs sweep(now) when the chain clock has reached the next sweep time. Does nothing
    /// while the chain clock itself cannot be read.
    std::vector<std::string> tick();

    bool is_authorized(std::string_view mac, TimeSec now) const;
    std::optional<ClientState> state_of(std::string_view mac) const;
    std::vector<AuthorizedEntry> authorized() const;
    std::vector<Transition> transitions() const;
    Uint256 usage_of(const Address& user, const TokenId& token_id) const;
    /// How many verify attempts got past the session check, per session id. Single use
    /// means every count is 1.
    std::map<std::string, int> verify_evaluations() const;
    TimeSec now() const { return chain_->now(); }

private:
    void transition(ClientSession& s, ClientState to, TimeSec now, std::string reason,
                    const AuthorizedEntry* admitted = nullptr, const contract::VerifyResult* result = nullptr);
    void remove_entry(const std::string& mac, TimeSec now, std::string reason);
    contract::VerifyResult ask_chain(const Address& user, const TokenId& token_id, const Uint256& used, TimeSec now);
    void prune_stale_sessions(TimeSec now);
    std::size_t pending_sessions() const;

    ApConfig config_;
    std::shared_ptr<ledger::ChainClient> chain_;
    std::unique_ptr<crypto::SessionIdSource> sessions_source_;

    mutable std::mutex mutex_;
    std::map<std::string, ClientSession> sessions_;
    std::map<std::string, AuthorizedEntry> authorized_;
    std::map<std::pair<Address, TokenId>, Uint256> usage_;
    std::vector<Transition> log_;
    std::map<std::string, int> verify_evaluations_;
    int consecutive_sweep_failures_ = 0;
    TimeSec next_sweep_at_ = 0;
};

}  // namespace sfwt::ap
