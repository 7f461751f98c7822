#include "sfwt/wallet/cli.hpp"

#include "sfwt/contract/units.hpp"
#include "sfwt/wallet/keystore.hpp"
#include "sfwt/wallet/wallet.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>

namespace sfwt::wallet {

using nlohmann::json;

namespace {

struct Options {
    std::string keystore = "wallet-keystore.json";
    std::string passphrase_env = "WALLET_PASSPHRASE";
    bool json_out = false;
    std::string label;
    std::string address;
    std::string ledger;
    std::string ap;
    std::string mac;
    std::string token_id;
    std::string quantity = "1";
    std::optional<std::uint64_t> seed;
    std::uint32_t kdf_iterations = Keystore::default_iterations;
    std::uint64_t timeout_sec = 60;
    bool all = false;
};

/// Error carrying the exit code it should produce.
struct CliFailure : std::runtime_error {
    CliFailure(int code, const std::string& msg) : std::runtime_error(msg), code(code) {}
    int code;
};

std::string passphrase(const Options& o, const CliEnv& env) {
    auto value = env.getenv ? env.getenv(o.passphrase_env) : std::nullopt;
    if (!env.getenv)
        if (const char* p = std::getenv(o.passphrase_env.c_str())) value = p;
    if (!value || value->empty()) throw CliFailure(exit_error, "passphrase variable " + o.passphrase_env + " is not set");
    return *value;
}

std::string require(const std::string& value, const char* flag) {
    if (value.empty()) throw CliFailure(exit_error, std::string(flag) + " is required");
    return value;
}

Address holder_address(const Options& o) {
    if (!o.address.empty()) return Address::from_hex(o.address);
    return Keystore::open(o.keystore).find(require(o.label, "--label or --address")).address;
}

std::string pad(std::string s, std::size_t w) {
    if (s.size() < w) s.append(w - s.size(), ' ');
    return s;
}

void print_table(std::ostream& out, const std::vector<TokenView>& rows) {
    const std::vector<std::string> head{"TOKEN", "AP", "PRICE", "DURATION", "DATA CAP", "BALANCE", "EXPIRES", "STATUS"};
    std::vector<std::vector<std::string>> cells{head};
    for (const auto& v : rows)
        cells.push_back({v.token_id.to_string(), v.ap_id, to_decimal(v.price_wei), contract::format_duration(v.duration_sec),
                         contract::format_data_size(v.data_cap_bytes), to_decimal(v.balance),
                         v.expiration_sec ? std::to_string(v.expiration_sec) : "-", std::string(to_string(v.status))});
    std::vector<std::size_t> width(head.size(), 0);
    for (const auto& row : cells)
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    for (const auto& row : cells) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) line += pad(row[i], width[i] + 2);
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out << line << "\n";
    }
}

int cmd_keygen(const Options& o, const CliEnv& env, std::ostream& out) {
    auto ks = Keystore::open(o.keystore);
    auto label = require(o.label, "--label");
    auto pass = passphrase(o, env);
    auto keys = crypto::generate_keypair(o.seed);
    ks.add(label, keys, pass, o.kdf_iterations);
    ks.save();
    auto addr = crypto::address_of(keys.pub).to_hex();
    if (o.json_out) out << json{{"label", label}, {"address", addr}}.dump() << "\n";
    else out << addr << "\n";
    return exit_ok;
}

int cmd_list(const Options& o, std::ostream& out) {
    auto holder = holder_address(o);
    ledger::HttpChainClient chain(net::Endpoint::parse(require(o.ledger, "--ledger")));
    auto now = chain.now();
    auto rows = list_tokens(chain, holder, o.all);
    if (o.json_out) {
        json list = json::array();
        for (const auto& r : rows) list.push_back(to_json(r));
        out << json{{"address", holder.to_hex()}, {"nowSec", std::to_string(now)}, {"tokens", list}}.dump() << "\n";
    } else {
        out << "address " << holder.to_hex() << " at t=" << now << "\n";
        print_table(out, rows);
    }
    return exit_ok;
}

int cmd_buy(const Options& o, const CliEnv& env, std::ostream& out, std::ostream& err) {
    auto ks = Keystore::open(o.keystore);
    auto keys = ks.unlock(require(o.label, "--label"), passphrase(o, env));
    auto buyer = crypto::address_of(keys.pub);
    ledger::HttpChainClient chain(net::Endpoint::parse(require(o.ledger, "--ledger")));
    auto token = TokenId::parse(require(o.token_id, "--token-id"));
    BuyOutcome r;
    try {
        r = buy(chain, buyer, token, parse_uint256(o.quantity), std::chrono::seconds(o.timeout_sec));
    } catch (const ledger::LedgerError& e) {
        throw CliFailure(exit_error, std::string(e.what()) + "; the transaction may still be included, check with `wallet list`");
    }
    bool ok = r.receipt.status == ledger::TxStatus::success;
    if (o.json_out) {
        json j{{"txId", r.receipt.tx_id},
               {"status", ok ? "success" : "reverted"},
               {"gasUsed", std::to_string(r.receipt.gas_used)},
               {"blockNumber", std::to_string(r.receipt.block_number)},
               {"sum", to_decimal(r.sum)},
               {"balance", to_decimal(r.balance)},
               {"expirationSec", std::to_string(r.expiration_sec)}};
        if (!ok) j["revertReason"] = r.receipt.revert_reason;
        out << j.dump() << "\n";
    } else if (ok) {
        out << "bought " << o.quantity << " x token " << token.to_string() << " for " << to_decimal(r.sum)
            << " wei in block " << r.receipt.block_number << "\n"
            << "balance " << to_decimal(r.balance) << ", expires at t=" << r.expiration_sec << "\n";
    }
    if (!ok) {
        err << "purchase reverted: " << r.receipt.revert_reason << "\n";
        return exit_chain_reject;
    }
    return exit_ok;
}

int cmd_connect(const Options& o, const CliEnv& env, std::ostream& out, std::ostream& err) {
    auto ks = Keystore::open(o.keystore);
    auto keys = ks.unlock(require(o.label, "--label"), passphrase(o, env));
    ApClient ap(net::Endpoint::parse(require(o.ap, "--ap")));
    auto mac = ap::normalize_mac(require(o.mac, "--mac"));
    auto token = TokenId::parse(require(o.token_id, "--token-id"));
    ConnectOutcome c;
    try {
        c = connect(ap, mac, keys, token);
    } catch (const net::HttpError& e) {
        if (e.status() == 503 || e.status() == 502) throw CliFailure(exit_error, std::string("AP cannot reach the ledger: ") + e.what());
        throw CliFailure(exit_session_error, std::string("AP refused the session: ") + e.what());
    }
    const auto& r = c.response;
    if (o.json_out) {
        auto j = ap::to_json(r);
        j["mac"] = mac;
        j["apId"] = c.ap_id;
        j["tokenId"] = token.to_string();
        j["sessionId"] = c.session_id.to_hex();
        j["state"] = r.ok ? "Authenticated" : "Preauthenticated";
        out << j.dump() << "\n";
    } else if (r.ok) {
        out << "Authenticated at " << c.ap_id << " with token " << token.to_string() << "\n"
            << "remaining time " << contract::format_duration(r.remaining_time_sec) << " (" << r.remaining_time_sec
            << " s), remaining data " << contract::format_data_size(r.remaining_data_bytes) << "\n";
    }
    if (r.ok) return exit_ok;
    auto reason = std::string(ap::to_string(r.fail_reason));
    err << "access denied by " << c.ap_id << ": " << reason << "\n";
    return ap::is_chain_failure(r.fail_reason) ? exit_chain_reject : exit_session_error;
}

int cmd_status(const Options& o, std::ostream& out) {
    ApClient ap(net::Endpoint::parse(require(o.ap, "--ap")));
    auto p = ap.portal(ap::normalize_mac(require(o.mac, "--mac")));
    if (o.json_out) {
        out << p.dump() << "\n";
    } else {
        out << p.at("apId").get<std::string>() << ": " << p.at("state").get<std::string>();
        if (p.at("authorized").get<bool>())
            out << ", authorized for " << p.at("remainingTimeSec").get<std::string>() << " s";
        out << "\n";
    }
    return exit_ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const CliEnv& env) {
    Options o;
    CLI::App app{"Wi-Fi token wallet", "wallet"};
    app.require_subcommand(1);
    app.add_option("--keystore", o.keystore, "Keystore file")->capture_default_str();
    app.add_option("--passphrase-env", o.passphrase_env, "Environment variable holding the passphrase")->capture_default_str();
    app.add_flag("--json", o.json_out, "Machine-readable output");

    auto* keygen = app.add_subcommand("keygen", "Create a key and store it encrypted");
    keygen->add_option("--label", o.label)->required();
    keygen->add_option("--seed", o.seed, "Deterministic key (testing only)");
    keygen->add_option("--kdf-iterations", o.kdf_iterations)->check(CLI::PositiveNumber);

    auto* list = app.add_subcommand("list", "Show Wi-Fi tokens of an account");
    list->add_option("--label", o.label);
    list->add_option("--address", o.address);
    list->add_option("--ledger", o.ledger)->required();
    list->add_flag("--all", o.all, "Include offerings not bought yet");

    auto* buy_cmd = app.add_subcommand("buy", "Buy units of a token");
    buy_cmd->add_option("--label", o.label)->required();
    buy_cmd->add_option("--token-id", o.token_id)->required();
    buy_cmd->add_option("--quantity", o.quantity)->capture_default_str();
    buy_cmd->add_option("--ledger", o.ledger)->required();
    buy_cmd->add_option("--timeout-sec", o.timeout_sec)->capture_default_str();

    auto* connect_cmd = app.add_subcommand("connect", "Authenticate at an access point");
    connect_cmd->add_option("--label", o.label)->required();
    connect_cmd->add_option("--token-id", o.token_id)->required();
    connect_cmd->add_option("--ap", o.ap)->required();
    connect_cmd->add_option("--mac", o.mac)->required();

    auto* status = app.add_subcommand("status", "Ask an access point about a MAC");
    status->add_option("--ap", o.ap)->required();
    status->add_option("--mac", o.mac)->required();

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_error;
    }

    try {
        if (keygen->parsed()) return cmd_keygen(o, env, out);
        if (list->parsed()) return cmd_list(o, out);
        if (buy_cmd->parsed()) return cmd_buy(o, env, out, err);
        if (connect_cmd->parsed()) return cmd_connect(o, env, out, err);
        if (status->parsed()) return cmd_status(o, out);
    } catch (const CliFailure& e) {
        err << "error: " << e.what() << "\n";
        return e.code;
    } catch (const net::HttpError& e) {
        err << "error: HTTP " << e.status() << " " << e.code() << ": " << e.what() << "\n";
        return exit_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_error;
    }
    return exit_error;
}

}  // namespace sfwt::wallet
