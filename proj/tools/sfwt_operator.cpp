#include "sfwt/ledger/chain_client.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace sfwt;

int main(int argc, char** argv) {
    CLI::App app{"Operator commands against a ledger node's HTTP facade"};
    app.require_subcommand(1);
    std::string ledger_url = "127.0.0.1:8545";
    std::uint64_t timeout_sec = 60;
    app.add_option("--ledger", ledger_url, "host:port of the ledger facade")->capture_default_str();
    app.add_option("--timeout-sec", timeout_sec, "Seconds to wait for block inclusion")->capture_default_str();

    auto* mint = app.add_subcommand("mint", "Mint SFWTs (mintSfwt) and wait for the receipt");
    std::string op, owner, token_id, ap_id, price, duration, data_cap, quantity;
    mint->add_option("--operator", op, "Sending address (the contract operator or an admin)")->required();
    mint->add_option("--owner", owner, "Receiving address; defaults to --operator");
    mint->add_option("--token-id", token_id)->required();
    mint->add_option("--ap-id", ap_id)->required();
    mint->add_option("--price", price, "Wei per unit")->required();
    mint->add_option("--duration", duration, "e.g. 30day, 3600, 1h")->required();
    mint->add_option("--data-cap", data_cap, "e.g. 10GB")->required();
    mint->add_option("--quantity", quantity)->required();

    auto* advance = app.add_subcommand("advance", "Move the simulated clock (node must allow it)");
    TimeSec delta = 0;
    advance->add_option("--delta-sec", delta)->required();

    auto* clock = app.add_subcommand("clock", "Print the node's clock");
    CLI11_PARSE(app, argc, argv);

    try {
        ledger::HttpChainClient chain(net::Endpoint::parse(ledger_url));
        if (*mint) {
            auto sender = Address::from_hex(op);
            auto to = owner.empty() ? sender : Address::from_hex(owner);
            ledger::json args{{"owner", to.to_hex()}, {"tokenId", token_id}, {"apId", ap_id},  {"price", price},
                              {"duration", duration}, {"dataCap", data_cap}, {"quantity", quantity}};
            auto id = chain.submit(sender, {"sfwt", "mintSfwt", args});
            auto r = ledger::wait_for_receipt(chain, id, std::chrono::seconds(timeout_sec));
            if (r.status != ledger::TxStatus::success) {
                std::cerr << "sfwt-operator: mint reverted: " << r.revert_reason << '\n';
                return 2;
            }
            std::cout << "minted " << quantity << " x token " << token_id << " to " << to.to_hex() << " in block "
                      << r.block_number << " (gas " << r.gas_used << ")\n";
        } else if (*advance) {
            std::cout << "now " << chain.advance(delta) << '\n';
        } else if (*clock) {
            std::cout << "now " << chain.now() << ", block interval " << chain.block_interval() << '\n';
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "sfwt-operator: " << e.what() << '\n';
        return 1;
    }
}
