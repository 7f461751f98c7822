#include "sfwt/ap/ap_server.hpp"
#include "sfwt/ap/config.hpp"
#include "shutdown.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace sfwt;

int main(int argc, char** argv) {
    CLI::App app{"Access-point gatekeeper: captive portal and SFWT verification over HTTP"};
    std::string config_path, ap_id, ledger_endpoint, listen_addr, admin_token, wallet_url;
    TimeSec sweep = 0, ttl = 0;
    std::size_t max_pending = 0;
    std::uint64_t session_seed = 0;
    std::uint64_t poll_ms = 1000;
    app.add_option("--config", config_path, "JSON or key=value file; flags override its settings");
    auto* o_ap = app.add_option("--ap-id", ap_id, "Identifier tokens must be bound to");
    auto* o_ledger = app.add_option("--ledger-endpoint", ledger_endpoint, "host:port of the ledger facade");
    auto* o_listen = app.add_option("--listen-addr", listen_addr, "host:port to serve on (default 127.0.0.1:8081)");
    auto* o_sweep = app.add_option("--sweep-interval", sweep, "Simulated seconds between sweeps (default 30)");
    auto* o_ttl = app.add_option("--session-ttl", ttl, "Simulated seconds a session id stays valid (default 120)");
    auto* o_pending = app.add_option("--max-pending-sessions", max_pending, "Outstanding session ids before 429 (default 1024)");
    auto* o_admin = app.add_option("--admin-token", admin_token, "Bearer token for /admin; unset disables /admin");
    auto* o_wallet = app.add_option("--wallet-url", wallet_url, "Advertised on /portal");
    auto* o_seed = app.add_option("--session-seed", session_seed, "Deterministic session ids (testing only)");
    app.add_option("--poll-ms", poll_ms, "Wall-clock milliseconds between sweep checks")->capture_default_str()->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    try {
        ap::ApConfig cfg;
        if (!config_path.empty()) cfg = ap::load_config(config_path);
        if (*o_ap) cfg.ap_id = ap_id;
        if (*o_ledger) cfg.ledger_endpoint = ledger_endpoint;
        if (*o_listen) cfg.listen_addr = listen_addr;
        if (*o_sweep) cfg.sweep_interval_sec = sweep;
        if (*o_ttl) cfg.session_ttl_sec = ttl;
        if (*o_pending) cfg.max_pending_sessions = max_pending;
        if (*o_admin) cfg.admin_token = admin_token;
        if (*o_wallet) cfg.wallet_url = wallet_url;
        if (*o_seed) cfg.session_seed = session_seed;
        cfg.validate();
        if (cfg.ledger_endpoint.empty()) throw std::invalid_argument("--ledger-endpoint is required");

        auto set = tools::block_shutdown_signals();
        auto chain = std::make_shared<ledger::HttpChainClient>(net::Endpoint::parse(cfg.ledger_endpoint));
        ap::Gatekeeper gate(cfg, chain, nullptr);
        ap::ApHttpServer server(gate);
        auto ep = net::Endpoint::parse(cfg.listen_addr);
        int port = server.start(ep.host, ep.port);
        server.start_sweeper(std::chrono::milliseconds(poll_ms));
        std::cout << "AP " << cfg.ap_id << " listening on " << ep.host << ':' << port << ", ledger "
                  << cfg.ledger_endpoint << ", sweep every " << cfg.sweep_interval_sec << "s" << std::endl;
        tools::wait_for_shutdown(set);
        server.stop();
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "sfwt-ap: " << e.what() << '\n';
        return 1;
    }
}
