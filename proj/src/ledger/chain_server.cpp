#include "sfwt/ledger/chain_server.hpp"

#include <httplib.h>

namespace sfwt::ledger {

namespace {

void reply(httplib::Response& res, const json& body) { res.set_content(body.dump(), "application/json"); }

}  // namespace

ChainHttpServer::ChainHttpServer(Ledger& ledger, FacadeOptions options)
    : ledger_(ledger), options_(options), server_([this](httplib::Server& s) { install(s); }) {}

void ChainHttpServer::install(httplib::Server& server) {
    server.Post("/chain/tx", [this](const httplib::Request& req, httplib::Response& res) {
        auto body = json::parse(req.body);
        try {
            auto id = ledger_.submit_transaction(Address::from_hex(body.at("sender").get<std::string>()),
                                                 payload_from_json(body.at("payload")));
            reply(res, json{{"txId", id}});
        } catch (const LedgerError& e) {
            net::send_error(res, 400, "rejected", e.what());
        } catch (const CallError& e) {
            net::send_error(res, 400, "rejected", e.what());
        }
    });

    server.Get(R"(/chain/receipt/([0-9a-fA-Fx]+))", [this](const httplib::Request& req, httplib::Response& res) {
        std::string id = req.matches[1];
        if (auto r = ledger_.receipt(id)) {
            reply(res, to_json(*r));
        } else if (ledger_.is_known(id)) {
            reply(res, json{{"txId", id}, {"status", "pending"}});
        } else {
            net::send_error(res, 404, "unknown_tx", "unknown transaction " + id);
        }
    });

    server.Post("/chain/call", [this](const httplib::Request& req, httplib::Response& res) {
        try {
            reply(res, ledger_.call_read(payload_from_json(json::parse(req.body))));
        } catch (const CallError& e) {
            net::send_error(res, 400, "call_error", e.what());
        }
    });

    server.Get("/chain/clock", [this](const httplib::Request&, httplib::Response& res) {
        reply(res, json{{"nowSec", std::to_string(ledger_.now())},
                        {"blockNumber", std::to_string(ledger_.head_block_number())},
                        {"blockIntervalSec", std::to_string(ledger_.config().block_interval_sec)}});
    });

    server.Post("/chain/advance", [this](const httplib::Request& req, httplib::Response& res) {
        if (!options_.allow_advance) {
            net::send_error(res, 403, "forbidden", "clock advancing is disabled on this node");
            return;
        }
        TimeSec delta = 0;
        try {
            delta = arg_u64(json::parse(req.body), "deltaSec");
        } catch (const CallError& e) {
            net::send_error(res, 400, "bad_request", e.what());
            return;
        }
        auto now = ledger_.advance_clock(delta);
        reply(res, json{{"nowSec", std::to_string(now)}, {"blockNumber", std::to_string(ledger_.head_block_number())}});
    });
}

}  // namespace sfwt::ledger
