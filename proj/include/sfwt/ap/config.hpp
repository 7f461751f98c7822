#pragma once

#include "sfwt/common/types.hpp"

#include <optional>
#include <string>

namespace sfwt::ap {

struct ApConfig {
    std::string ap_id;
    /// host:port of the ledger facade. Empty means an in-process ledger handle.
    std::string ledger_endpoint;
    std::string listen_addr = "127.0.0.1:8081";
    TimeSec sweep_interval_sec = 30;
    TimeSec session_ttl_sec = 120;
    std::size_t max_pending_sessions = 1024;
    /// Bearer token for /admin endpoints. Empty disables them.
    std::string admin_token;
    /// Advertised to clients by /portal.
    std::string wallet_url = "wallet://connect";
    /// Deterministic session ids for tests. Unset means CSPRNG.
    std::optional<std::uint64_t> session_seed;

    /// Throws std::invalid_argument on an empty apId or zero interval/TTL.
    void validate() const;
};

/// Parses either a JSON object or key=value lines ('#' starts a comment).
/// Keys: apId, ledgerEndpoint, listenAddr, sweepIntervalSec, sessionTtlSec,
/// maxPendingSessions, adminToken, walletUrl, sessionSeed. Unknown keys are errors.
/// Settings not present keep the values already in `base`.
ApConfig parse_config(std::string_view text, ApConfig base = {});
ApConfig load_config(const std::string& path, ApConfig base = {});

}  // namespace sfwt::ap
