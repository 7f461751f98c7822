#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace sfwt::wallet {

/// Process exit codes of the wallet CLI.
enum ExitCode : int {
    exit_ok = 0,
    /// Usage errors, keystore errors, unreachable services.
    exit_error = 1,
    /// The chain said no: reverted purchase or a failed verify guard.
    exit_chain_reject = 2,
    /// The AP said no before the chain was asked: bad session or signature.
    exit_session_error = 3,
};

struct CliEnv {
    std::function<std::optional<std::string>(const std::string&)> getenv;
};

/// Runs one `wallet` invocation. `args` excludes the program name.
///   wallet keygen  --label L [--seed N]
///   wallet list    (--label L | --address A) --ledger URL [--all]
///   wallet buy     --label L --token-id T [--quantity Q] --ledger URL [--timeout-sec S]
///   wallet connect --label L --token-id T --ap URL --mac M
///   wallet status  --ap URL --mac M
/// Common: --keystore PATH, --passphrase-env NAME (default WALLET_PASSPHRASE), --json.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const CliEnv& env = {});

}  // namespace sfwt::wallet
