#include "sfwt/contract/units.hpp"
#include "support/chain_fixture.hpp"
#include "support/sfwt_oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sfwt;
using namespace sfwt::contract;
using namespace sfwt::ledger;
using namespace sfwt::testing;

namespace {

const Uint256 GB = 1000000000;

/// Mines `payload` in the block whose timestamp is exactly `at` (a multiple of 10).
GasReceipt run_at(ChainFixture& f, TimeSec at, const Address& sender, CallPayload payload) {
    f.chain->advance_clock(at - 1 - f.chain->now());
    return f.run_at_boundary(sender, std::move(payload));
}

}  // namespace

TEST(units, parsing_and_formatting) {
    EXPECT_EQ(parse_duration("1day"), 86400u);
    EXPECT_EQ(parse_duration("3 days"), 3u * 86400);
    EXPECT_EQ(parse_duration("90"), 90u);
    EXPECT_EQ(parse_duration("2h"), 7200u);
    EXPECT_THROW(parse_duration("day"), std::invalid_argument);
    EXPECT_THROW(parse_duration("5 fortnights"), std::invalid_argument);
    EXPECT_EQ(parse_data_size("10GB"), 10 * GB);
    EXPECT_EQ(parse_data_size("512"), 512);
    EXPECT_THROW(parse_data_size("10GiB"), std::invalid_argument);
    EXPECT_EQ(format_duration(86400), "1day");
    EXPECT_EQ(format_duration(3725), "1h 2m 5s");
    EXPECT_EQ(format_data_size(10 * GB), "10GB");
    EXPECT_EQ(format_data_size(15 * GB / 10), "1.5GB");
    EXPECT_EQ(format_data_size(512), "512B");
}

TEST(mint_sfwt, published_example) {
    ChainFixture f;
    auto r = f.run(example_caller, example_mint_payload());
    ASSERT_EQ(r.status, TxStatus::success);
    EXPECT_EQ(r.output, true);
    f.with_contract([](const SfwtContract& c) {
        EXPECT_EQ(c.balance_of(example_owner, TokenId(1)), 10);
        auto m = c.get_metadata(TokenId(1));
        if (!m) { ADD_FAILURE() << "no metadata"; return 0; }
        EXPECT_EQ(m->ap_id, "access point 1");
        EXPECT_EQ(m->price_wei, 1);
        EXPECT_EQ(m->duration_sec, 86400u);
        EXPECT_EQ(m->data_cap_bytes, 10 * GB);
        return 0;
    });
    auto meta = f.chain->call_read({"sfwt", "getMetadata", json{{"tokenId", "1"}}});
    EXPECT_EQ(meta, (json{{"apId", "access point 1"}, {"price", "1"}, {"duration", "86400"},
                          {"dataCap", "10000000000"}, {"minted", true}}));
}

TEST(mint_sfwt, unauthorized_caller_returns_false) {
    ChainFixture f;
    auto stranger = numbered_address(7);
    f.chain->create_account(stranger, 0);
    auto r = f.run(stranger, example_mint_payload());
    EXPECT_EQ(r.status, TxStatus::reverted);
    EXPECT_EQ(r.output, false);
    EXPECT_FALSE(f.with_contract([](const SfwtContract& c) { return c.get_metadata(TokenId(1)).has_value(); }));
}

TEST(mint_sfwt, operator_may_mint_too) {
    ChainFixture f;
    EXPECT_EQ(f.run(example_owner, example_mint_payload()).status, TxStatus::success);
}

TEST(mint_sfwt, zero_quantity_stores_metadata_only) {
    ChainFixture f;
    auto r = f.run(example_caller, mint_payload(example_owner, 4, "AP1", "1", "1day", "10GB", "0"));
    EXPECT_EQ(r.status, TxStatus::success);
    f.with_contract([](const SfwtContract& c) {
        EXPECT_TRUE(c.get_metadata(TokenId(4)));
        EXPECT_EQ(c.balance_of(example_owner, TokenId(4)), 0);
        return 0;
    });
}

TEST(mint_sfwt, metadata_immutable) {
    ChainFixture f;
    f.run(example_caller, example_mint_payload());
    EXPECT_EQ(f.run(example_caller, mint_payload(example_owner, 1, "access point 1", "2", "1day", "10GB", "5")).status,
              TxStatus::reverted);
    auto top_up = f.run(example_caller, example_mint_payload());
    EXPECT_EQ(top_up.status, TxStatus::success);
    EXPECT_EQ(f.with_contract([](const SfwtContract& c) { return c.balance_of(example_owner, TokenId(1)); }), 20);
    EXPECT_EQ(f.run(example_caller, mint_payload(example_owner, 9, "AP1", "1", "0", "10GB", "5")).status, TxStatus::reverted);
}

TEST(buy_sfwt, expiration_arithmetic) {
    ChainFixture f;
    f.run(example_caller, example_mint_payload());
    auto buyer = numbered_address(3);
    f.chain->create_account(buyer, 10);

    auto r1 = run_at(f, 1000, buyer, buy_payload(1, "2", "2"));
    ASSERT_EQ(r1.status, TxStatus::success);
    EXPECT_EQ(f.with_contract([&](const SfwtContract& c) { return c.get_expiration(TokenId(1), buyer); }), 173800u);

    auto r2 = run_at(f, 2000, buyer, buy_payload(1, "1", "1"));
    ASSERT_EQ(r2.status, TxStatus::success);
    EXPECT_EQ(f.with_contract([&](const SfwtContract& c) { return c.get_expiration(TokenId(1), buyer); }), 260200u);
    EXPECT_EQ(f.chain->native_balance(buyer), 7);
    EXPECT_EQ(f.chain->native_balance(example_owner), 3);
}

TEST(buy_sfwt, lapsed_expiration_restarts_from_now) {
    ChainFixture f;
    f.run(example_caller, mint_payload(example_owner, 2, "AP1", "1", "100", "1GB", "10"));
    auto buyer = numbered_address(3);
    f.chain->create_account(buyer, 10);
    run_at(f, 100, buyer, buy_payload(2, "1", "1"));  // expires 200
    run_at(f, 500, buyer, buy_payload(2, "2", "2"));
    EXPECT_EQ(f.with_contract([&](const SfwtContract& c) { return c.get_expiration(TokenId(2), buyer); }), 700u);
}

TEST(buy_sfwt, wrong_sum_returns_false) {
    ChainFixture f;
    f.run(example_caller, example_mint_payload());
    auto buyer = numbered_address(3);
    f.chain->create_account(buyer, 10);
    auto r = f.run(buyer, buy_payload(1, "2", "3"));
    EXPECT_EQ(r.status, TxStatus::reverted);
    EXPECT_EQ(r.output, false);
    EXPECT_EQ(f.chain->native_balance(buyer), 10);
    EXPECT_EQ(f.with_contract([&](const SfwtContract& c) { return c.balance_of(buyer, TokenId(1)); }), 0);
    EXPECT_EQ(f.with_contract([&](const SfwtContract& c) { return c.get_expiration(TokenId(1), buyer); }), 0u);
}

TEST(buy_sfwt, insufficient_funds_or_stock_revert) {
    ChainFixture f;
    f.run(example_caller, example_mint_payload());
    auto poor = numbered_address(3);
    f.chain->create_account(poor, 1);
    EXPECT_EQ(f.run(poor, buy_payload(1, "2", "2")).status, TxStatus::reverted);
    EXPECT_EQ(f.chain->native_balance(poor), 1);

    auto rich = numbered_address(4);
    f.chain->create_account(rich, 100);
    auto r = f.run(rich, buy_payload(1, "11", "11"));
    EXPECT_EQ(r.status, TxStatus::reverted);
    EXPECT_EQ(f.chain->native_balance(rich), 100);
    EXPECT_EQ(f.run(rich, buy_payload(42, "1", "1")).status, TxStatus::reverted);
}

TEST(buy_sfwt, balances_match_event_log_replay) {
    ChainFixture f;
    f.run(example_caller, example_mint_payload());
    auto buyer = numbered_address(3);
    f.chain->create_account(buyer, 10);
    f.run(buyer, buy_payload(1, "2", "2"));
    auto state = replay_events(f.chain->events());
    EXPECT_EQ((state.balances[{"1", buyer.to_hex()}]), 2);
    EXPECT_EQ((state.balances[{"1", example_owner.to_hex()}]), 8);
    f.with_contract([&](const SfwtContract& c) {
        EXPECT_EQ(c.balance_of(buyer, TokenId(1)), 2);
        EXPECT_EQ(c.balance_of(example_owner, TokenId(1)), 8);
        return 0;
    });
}

TEST(verify_sfwt, guard_examples) {
    ChainFixture f;
    f.run(example_caller, mint_payload(example_owner, 2, "AP1", "1", "1day", "10GB", "10"));
    auto holder = numbered_address(3);
    f.chain->create_account(holder, 10);
    run_at(f, 1000, holder, buy_payload(2, "2", "2"));  // expiration 173800, cap 20 GB

    f.with_contract([&](const SfwtContract& c) {
        auto ok = c.verify_sfwt(holder, TokenId(2), "AP1", 5 * GB, 2000);
        EXPECT_TRUE(ok.ok);
        EXPECT_EQ(ok.remaining_data_bytes, 15 * GB);
        EXPECT_EQ(ok.remaining_time_sec, 171800u);

        EXPECT_EQ(c.verify_sfwt(holder, TokenId(2), "AP2", 0, 2000).fail_reason, FailReason::wrong_ap);
        EXPECT_EQ(c.verify_sfwt(holder, TokenId(2), "AP1", 0, 173800).fail_reason, FailReason::expired);
        EXPECT_TRUE(c.verify_sfwt(holder, TokenId(2), "AP1", 0, 173799).ok);
        EXPECT_EQ(c.verify_sfwt(holder, TokenId(2), "AP1", 20 * GB, 2000).fail_reason, FailReason::data_exhausted);
        EXPECT_TRUE(c.verify_sfwt(holder, TokenId(2), "AP1", 20 * GB - 1, 2000).ok);
        EXPECT_EQ(c.verify_sfwt(numbered_address(9), TokenId(2), "AP1", 0, 2000).fail_reason, FailReason::no_balance);
        EXPECT_EQ(c.verify_sfwt(holder, TokenId(77), "AP1", 0, 2000).fail_reason, FailReason::unknown_token);
        // first failing guard wins: wrong AP and expired -> WRONG_AP
        EXPECT_EQ(c.verify_sfwt(holder, TokenId(2), "AP9", 0, 999999).fail_reason, FailReason::wrong_ap);
        return 0;
    });
}

TEST(verify_sfwt, read_descriptor_and_json) {
    ChainFixture f;
    f.run(example_caller, mint_payload(example_owner, 2, "AP1", "1", "1day", "10GB", "10"));
    auto holder = numbered_address(3);
    f.chain->create_account(holder, 10);
    f.run(holder, buy_payload(2, "1", "1"));  // block 2, timestamp 20 -> expires 86420
    auto j = f.chain->call_read({"sfwt", "verifySfwt",
                                 json{{"holder", holder.to_hex()}, {"tokenId", "2"}, {"apId", "AP1"},
                                      {"usedDataBytes", "0"}, {"nowSec", "20"}}});
    EXPECT_EQ(j["ok"], true);
    EXPECT_EQ(j["remainingTimeSec"], "86400");
    EXPECT_EQ(verify_result_from_json(j), verify_result_from_json(to_json(verify_result_from_json(j))));
    auto expired = f.chain->call_read({"sfwt", "verifySfwt",
                                       json{{"holder", holder.to_hex()}, {"tokenId", "2"}, {"apId", "AP1"},
                                            {"usedDataBytes", "0"}, {"nowSec", "86420"}}});
    EXPECT_EQ(expired["failReason"], "EXPIRED");
}

TEST(getters, defaults_for_absent_entries) {
    ChainFixture f;
    f.run(example_caller, example_mint_payload());
    auto exp = f.chain->call_read({"sfwt", "getExpiration", json{{"tokenId", "1"}, {"holder", numbered_address(8).to_hex()}}});
    EXPECT_EQ(exp["expirationSec"], "0");
    auto meta = f.chain->call_read({"sfwt", "getMetadata", json{{"tokenId", "5"}}});
    EXPECT_EQ(meta["minted"], false);
    EXPECT_EQ(meta["apId"], "");
    auto list = f.chain->call_read({"sfwt", "listTokens", json::object()});
    EXPECT_EQ(list["tokenIds"], json::array({"1"}));
}

TEST(properties, random_states_agree_with_event_log_oracle) {
    std::mt19937_64 rng(2024);
    int compared = 0;
    for (int round = 0; round < 60; ++round) {
        ChainFixture f(1 + rng() % 20);
        std::vector<Address> holders;
        for (std::uint8_t h = 1; h <= 1 + rng() % 4; ++h) {
            holders.push_back(numbered_address(h));
            f.chain->create_account(holders.back(), 1000);
        }
        std::vector<std::string> aps{"AP1", "AP2"};
        std::uint64_t tokens = 1 + rng() % 3;
        for (std::uint64_t t = 1; t <= tokens; ++t) {
            f.chain->submit_transaction(example_caller, mint_payload(example_owner, t, aps[rng() % 2], std::to_string(rng() % 3),
                                                                  std::to_string(1 + rng() % 500), std::to_string(1 + rng() % 1000),
                                                                  std::to_string(rng() % 12)));
        }
        for (int step = 0; step < 15; ++step) {
            if (rng() % 2) {
                const auto& h = holders[rng() % holders.size()];
                auto t = 1 + rng() % tokens;
                auto q = rng() % 4;
                auto price = f.with_contract([&](const SfwtContract& c) {
                    auto m = c.get_metadata(TokenId(t));
                    return m ? m->price_wei : Amount(0);
                });
                auto sum = price * q + (rng() % 4 == 0 ? 1 : 0);
                f.chain->submit_transaction(h, buy_payload(t, std::to_string(q), to_decimal(sum)));
            }
            f.chain->advance_clock(rng() % 300);
        }
        auto oracle = replay_events(f.chain->events());
        f.with_contract([&](const SfwtContract& c) {
            for (int q = 0; q < 20; ++q) {
                const auto& h = holders[rng() % holders.size()];
                TokenId t(1 + rng() % (tokens + 1));
                auto ap = aps[rng() % 2];
                Uint256 used = rng() % 3000;
                TimeSec now = rng() % 6000;
                EXPECT_EQ(c.verify_sfwt(h, t, ap, used, now), oracle_verify(oracle, h, t, ap, used, now));
                auto key = std::make_pair(t.to_string(), h.to_hex());
                Uint256 expected_exp = oracle.expirations.count(key) ? oracle.expirations.at(key) : Uint256(0);
                EXPECT_EQ(Uint256(c.get_expiration(t, h)), expected_exp);
                ++compared;
            }
            return 0;
        });
    }
    EXPECT_EQ(compared, 1200);
}

TEST(properties, successful_buys_never_shorten_expiration) {
    std::mt19937_64 rng(9);
    ChainFixture f;
    f.run(example_caller, mint_payload(example_owner, 1, "AP1", "1", "50", "1GB", "1000"));
    auto buyer = numbered_address(2);
    f.chain->create_account(buyer, 1000);
    TimeSec last = 0;
    for (int i = 0; i < 100; ++i) {
        auto q = rng() % 3;
        f.chain->submit_transaction(buyer, buy_payload(1, std::to_string(q), std::to_string(q)));
        f.chain->advance_clock(rng() % 200);
        auto now_exp = f.with_contract([&](const SfwtContract& c) { return c.get_expiration(TokenId(1), buyer); });
        ASSERT_GE(now_exp, last);
        last = now_exp;
    }
}

TEST(properties, verify_is_pure) {
    ChainFixture f;
    f.run(example_caller, example_mint_payload());
    auto before = f.chain->events().size();
    auto head = f.chain->head_block_number();
    for (int i = 0; i < 50; ++i) {
        f.chain->call_read({"sfwt", "verifySfwt",
                            json{{"holder", example_owner.to_hex()}, {"tokenId", "1"}, {"apId", "access point 1"}, {"usedDataBytes", "0"}}});
    }
    EXPECT_EQ(f.chain->events().size(), before);
    EXPECT_EQ(f.chain->head_block_number(), head);
    EXPECT_EQ(f.chain->pending_count(), 0u);
}

TEST(properties, buy_conserves_currency_and_tokens) {
    ChainFixture f;
    f.run(example_caller, mint_payload(example_owner, 1, "AP1", "3", "50", "1GB", "10"));
    auto buyer = numbered_address(2);
    f.chain->create_account(buyer, 100);
    auto supply = f.chain->total_native_supply();
    f.run(buyer, buy_payload(1, "4", "12"));
    EXPECT_EQ(f.chain->total_native_supply(), supply);
    EXPECT_EQ(f.chain->native_balance(buyer), 88);
    f.with_contract([&](const SfwtContract& c) {
        EXPECT_EQ(c.tokens().total_supply(TokenId(1)), 10);
        EXPECT_EQ(c.balance_of(buyer, TokenId(1)), 4);
        return 0;
    });
}
