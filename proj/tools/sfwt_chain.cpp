#include "sfwt/contract/sfwt_contract.hpp"
#include "sfwt/ledger/chain_server.hpp"
#include "sfwt/ledger/clock_driver.hpp"
#include "shutdown.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace sfwt;

namespace {

std::pair<Address, Amount> parse_allocation(const std::string& spec) {
    auto eq = spec.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--fund expects ADDRESS=WEI, got " + spec);
    return {Address::from_hex(spec.substr(0, eq)), parse_uint256(spec.substr(eq + 1))};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulated ledger node with the SFWT contract and an HTTP facade"};
    std::string listen = "127.0.0.1:8545";
    TimeSec interval = 10;
    std::string op = "0x00000000000000000000000000000000000000c1";
    std::vector<std::string> funds;
    std::string clock = "steady";
    std::uint64_t tick_ms = 1000;
    bool allow_advance = false;
    std::string event_log;
    app.add_option("--listen", listen, "host:port of the HTTP facade (port 0 picks one)")->capture_default_str();
    app.add_option("--block-interval", interval, "Seconds between blocks")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--operator", op, "Operator address that may mint SFWTs")->capture_default_str();
    app.add_option("--fund", funds, "Genesis allocation ADDRESS=WEI (repeatable)");
    app.add_option("--clock", clock, "steady: one simulated second per tick; on-demand: jump to the next block when "
                                     "transactions are pending; manual: only /chain/advance moves time")
        ->check(CLI::IsMember({"steady", "on-demand", "manual"}))
        ->capture_default_str();
    app.add_option("--tick-ms", tick_ms, "Wall-clock milliseconds per clock tick")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_flag("--allow-advance", allow_advance, "Enable POST /chain/advance");
    app.add_option("--event-log", event_log, "Append every emitted event to this JSON-lines file");
    CLI11_PARSE(app, argc, argv);

    try {
        auto set = tools::block_shutdown_signals();
        ledger::ChainConfig cfg;
        cfg.block_interval_sec = interval;
        if (!event_log.empty()) cfg.event_log_path = event_log;
        ledger::Ledger chain(cfg);
        auto operator_addr = Address::from_hex(op);
        for (const auto& f : funds) {
            auto [who, wei] = parse_allocation(f);
            chain.create_account(who, wei);
        }
        if (!chain.has_account(operator_addr)) chain.create_account(operator_addr, 0);
        chain.deploy(std::make_unique<contract::SfwtContract>(operator_addr));

        ledger::ChainHttpServer server(chain, {allow_advance});
        auto ep = net::Endpoint::parse(listen);
        int port = server.start(ep.host, ep.port);
        std::unique_ptr<ledger::ClockDriver> driver;
        if (clock != "manual") {
            auto mode = clock == "steady" ? ledger::ClockDriver::Mode::steady : ledger::ClockDriver::Mode::on_demand;
            driver = std::make_unique<ledger::ClockDriver>(chain, mode, std::chrono::milliseconds(tick_ms), 1);
        }
        std::cout << "ledger listening on " << ep.host << ':' << port << ", block interval " << interval
                  << "s, operator " << operator_addr.to_hex() << std::endl;
        tools::wait_for_shutdown(set);
        if (driver) driver->stop();
        server.stop();
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "sfwt-chain: " << e.what() << '\n';
        return 1;
    }
}
