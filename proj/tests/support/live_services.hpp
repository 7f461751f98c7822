#pragma once

#include "sfwt/ap/ap_server.hpp"
#include "sfwt/ledger/chain_server.hpp"
#include "sfwt/ledger/clock_driver.hpp"
#include "sfwt/wallet/cli.hpp"
#include "support/chain_fixture.hpp"

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <sstream>

namespace sfwt::testing {

/// A ledger node and one or more APs on loopback, all talking HTTP, with an
/// on-demand miner so wallet purchases get included.
struct LiveServices : ChainFixture {
    std::unique_ptr<ledger::ChainHttpServer> node;
    std::unique_ptr<ledger::ClockDriver> miner;
    int node_port = 0;

    struct Ap {
        std::unique_ptr<ap::Gatekeeper> gate;
        std::unique_ptr<ap::ApHttpServer> server;
        int port = 0;
        std::string url() const { return "127.0.0.1:" + std::to_string(port); }
    };
    std::vector<std::unique_ptr<Ap>> aps;
    std::filesystem::path dir;

    LiveServices() {
        node = std::make_unique<ledger::ChainHttpServer>(*chain, ledger::FacadeOptions{true});
        node_port = node->start("127.0.0.1", 0);
        miner = std::make_unique<ledger::ClockDriver>(*chain, ledger::ClockDriver::Mode::on_demand,
                                                      std::chrono::milliseconds(5));
        static std::atomic<int> counter{0};
        dir = std::filesystem::temp_directory_path() /
              ("sfwt-live-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::create_directories(dir);
    }

    ~LiveServices() {
        for (auto& a : aps) a->server->stop();
        miner->stop();
        node->stop();
        std::error_code ec;
        std::filesystem::remove_all(dir, ec);
    }

    std::string ledger_url() const { return "127.0.0.1:" + std::to_string(node_port); }

    Ap& add_ap(const std::string& ap_id, TimeSec sweep = 30) {
        auto a = std::make_unique<Ap>();
        ap::ApConfig cfg;
        cfg.ap_id = ap_id;
        cfg.ledger_endpoint = ledger_url();
        cfg.sweep_interval_sec = sweep;
        cfg.admin_token = "admin-" + ap_id;
        auto remote = std::make_shared<ledger::HttpChainClient>(net::Endpoint::parse(cfg.ledger_endpoint));
        a->gate = std::make_unique<ap::Gatekeeper>(cfg, remote, nullptr);
        a->server = std::make_unique<ap::ApHttpServer>(*a->gate);
        a->port = a->server->start("127.0.0.1", 0);
        aps.push_back(std::move(a));
        return *aps.back();
    }

    std::string keystore() const { return (dir / "keystore.json").string(); }

    struct CliRun {
        int code = -1;
        std::string out;
        std::string err;
    };

    /// Runs the wallet CLI in-process with the shared keystore and a fixed passphrase.
    CliRun wallet(std::vector<std::string> args, const std::string& pass = "correct horse") const {
        std::vector<std::string> full{"--keystore", keystore()};
        full.insert(full.end(), args.begin(), args.end());
        std::ostringstream out, err;
        wallet::CliEnv env;
        env.getenv = [pass](const std::string& name) -> std::optional<std::string> {
            if (name == "WALLET_PASSPHRASE") return pass;
            return std::nullopt;
        };
        CliRun r;
        r.code = wallet::run_cli(full, out, err, env);
        r.out = out.str();
        r.err = err.str();
        return r;
    }
};

}  // namespace sfwt::testing
