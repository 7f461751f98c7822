#include "sfwt/bench/auth_bench.hpp"
#include "sfwt/bench/gas_bench.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

namespace sfwt::bench {
namespace {

const std::vector<std::uint64_t> sweep_quantities{1, 10, 100, 1000};

std::vector<GasRow> select(const std::vector<GasRow>& rows, const std::string& standard, const std::string& op) {
    std::vector<GasRow> out;
    for (const auto& r : rows)
        if (r.standard == standard && r.operation == op) out.push_back(r);
    return out;
}

// Default schedule: base 21000, new slot 20000, updated slot 5000, event 2000.
TEST(GasBench, Erc1155FlatAcrossQuantities) {
    auto rows = run_gas_benchmark(sweep_quantities);
    ASSERT_EQ(rows.size(), 16u);
    for (const auto& r : select(rows, "ERC1155", "mint")) EXPECT_EQ(r.gas, 21000u + 20000 + 2000) << r.quantity;
    // Sender slot updated, receiver slot created, one event.
    for (const auto& r : select(rows, "ERC1155", "transfer")) EXPECT_EQ(r.gas, 21000u + 5000 + 20000 + 2000) << r.quantity;
}

TEST(GasBench, Erc721AffineWithPositiveSlope) {
    auto rows = run_gas_benchmark(sweep_quantities);
    auto mint = exact_affine_fit(select(rows, "ERC721", "mint"));
    ASSERT_TRUE(mint);
    EXPECT_EQ(mint->intercept, 21000);
    EXPECT_EQ(mint->slope, 22000);
    auto transfer = exact_affine_fit(select(rows, "ERC721", "transfer"));
    ASSERT_TRUE(transfer);
    EXPECT_EQ(transfer->intercept, 21000);
    EXPECT_EQ(transfer->slope, 7000);
    EXPECT_EQ(mint->slope - transfer->slope, 20000 - 5000);

    auto ls = fit_line(select(rows, "ERC721", "mint"));
    EXPECT_DOUBLE_EQ(ls.max_abs_residual, 0.0);
    EXPECT_NEAR(ls.slope, 22000.0, 1e-6);
}

TEST(GasBench, SingleTokenMintAgreesWithinFivePercent) {
    auto rows = run_gas_benchmark({1});
    double a = static_cast<double>(select(rows, "ERC1155", "mint").at(0).gas);
    double b = static_cast<double>(select(rows, "ERC721", "mint").at(0).gas);
    EXPECT_LE(std::abs(a - b) / std::min(a, b), 0.05);
}

TEST(GasBench, RepetitionsAgreeAndScheduleIsHonoured) {
    EXPECT_EQ(run_gas_benchmark(sweep_quantities, 5), run_gas_benchmark(sweep_quantities, 1));
    EXPECT_THROW(run_gas_benchmark(sweep_quantities, 0), std::invalid_argument);

    ledger::GasSchedule s;
    s.base_tx_gas = 1000;
    s.storage_write_new_gas = 100;
    s.storage_write_update_gas = 10;
    s.event_emit_gas = 1;
    auto rows = run_gas_benchmark({3}, 1, s);
    EXPECT_EQ(select(rows, "ERC1155", "mint").at(0).gas, 1101u);
    EXPECT_EQ(select(rows, "ERC721", "mint").at(0).gas, 1000u + 3 * 101);
    EXPECT_EQ(select(rows, "ERC721", "transfer").at(0).gas, 1000u + 3 * 11);
}

TEST(GasBench, CsvRoundTrip) {
    auto rows = run_gas_benchmark(sweep_quantities);
    std::stringstream ss;
    write_gas_csv(ss, rows);
    EXPECT_EQ(ss.str().substr(0, ss.str().find('\n')), "standard,operation,quantity,gas");
    EXPECT_EQ(read_gas_csv(ss), rows);

    std::stringstream bad_header("standard,quantity,gas\nERC1155,1,43000\n");
    EXPECT_THROW(read_gas_csv(bad_header), std::invalid_argument);
    std::stringstream bad_row("standard,operation,quantity,gas\nERC1155,mint,1x,43000\n");
    EXPECT_THROW(read_gas_csv(bad_row), std::invalid_argument);
}

TEST(GasBench, ExactFitRejectsNonAffinePoints) {
    std::vector<GasRow> rows{{"X", "mint", 1, 10}, {"X", "mint", 2, 20}, {"X", "mint", 3, 31}};
    EXPECT_FALSE(exact_affine_fit(rows));
    EXPECT_GT(fit_line(rows).max_abs_residual, 0.0);
    EXPECT_THROW(fit_line({{"X", "mint", 1, 10}}), std::invalid_argument);
}

// scipy.stats.truncnorm(a=(floor - mean) / sd, b=inf, loc=mean, scale=sd).mean()
TEST(AuthBench, TruncatedNormalMeanMatchesScipy) {
    EXPECT_NEAR(truncated_normal_mean(15, 3, 1), 15.000022338171803, 1e-9);
    EXPECT_NEAR(truncated_normal_mean(50, 5, 5), 50.0, 1e-9);
    EXPECT_NEAR(truncated_normal_mean(50, 10, 5), 50.00015983795414, 1e-9);
    EXPECT_NEAR(truncated_normal_mean(10, 10, 5), 15.091604338370335, 1e-9);
    EXPECT_NEAR(truncated_normal_mean(0, 1, 0), 0.7978845608028654, 1e-9);
    EXPECT_NEAR(truncated_normal_mean(5, 2, 8), 8.877354333245087, 1e-9);
    EXPECT_DOUBLE_EQ(truncated_normal_mean(3, 0, 5), 5.0);
}

TEST(AuthBench, SummarizeUsesSampleStddev) {
    auto s = summarize(std::vector<double>{1, 2, 3, 4});
    EXPECT_EQ(s.n, 4u);
    EXPECT_DOUBLE_EQ(s.mean, 2.5);
    EXPECT_NEAR(s.stddev, 1.2909944487358056, 1e-12);
    EXPECT_DOUBLE_EQ(s.min, 1);
    EXPECT_DOUBLE_EQ(s.max, 4);
    EXPECT_EQ(summarize(std::vector<double>{7}).stddev, 0.0);
}

TEST(AuthBench, SchemeNamesRoundTrip) {
    for (auto s : all_schemes) EXPECT_EQ(parse_scheme(to_string(s)), s);
    EXPECT_FALSE(parse_scheme("wpa2"));
}

TEST(AuthBench, RejectsInvalidModels) {
    LatencyModel m;
    m.chain_read_mean_ms = 0;
    EXPECT_THROW(run_auth_benchmark(Scheme::wpa2, 1, 10, m), std::invalid_argument);
    m = {};
    m.per_message_jitter_ms = -1;
    EXPECT_THROW(run_auth_benchmark(Scheme::wpa2, 1, 10, m), std::invalid_argument);
    EXPECT_THROW(run_auth_benchmark(Scheme::wpa2, 0, 10), std::invalid_argument);
    EXPECT_THROW(run_auth_benchmark(Scheme::block_broadcast, 1, 0), std::invalid_argument);
}

TEST(AuthBench, SeededRunsAreByteIdenticalAndSeedSensitive) {
    auto csv = [](std::uint64_t seed) {
        LatencyModel m;
        m.rng_seed = seed;
        std::vector<TrialResult> rows;
        for (auto s : all_schemes) {
            auto r = run_auth_benchmark(s, 20, 10, m);
            rows.insert(rows.end(), r.begin(), r.end());
        }
        std::stringstream ss;
        write_auth_csv(ss, rows);
        return ss.str();
    };
    EXPECT_EQ(csv(42), csv(42));
    EXPECT_NE(csv(42), csv(43));
}

TEST(AuthBench, CsvRoundTripIsExact) {
    auto rows = run_auth_benchmark(Scheme::block_broadcast, 50, 10);
    auto more = run_auth_benchmark(Scheme::sfwt_query, 50, 10);
    rows.insert(rows.end(), more.begin(), more.end());
    std::stringstream ss;
    write_auth_csv(ss, rows);
    EXPECT_EQ(read_auth_csv(ss), rows);

    std::stringstream bad("scheme,trial,latency_ms\nWpa2,0,abc\n");
    EXPECT_THROW(read_auth_csv(bad), std::invalid_argument);
    std::stringstream unknown("scheme,trial,latency_ms\nWep,0,1.5\n");
    EXPECT_THROW(read_auth_csv(unknown), std::invalid_argument);
}

TEST(AuthBench, SummaryListsEveryScheme) {
    std::vector<TrialResult> rows;
    for (auto s : all_schemes) {
        auto r = run_auth_benchmark(s, 5, 10);
        rows.insert(rows.end(), r.begin(), r.end());
    }
    std::stringstream ss;
    write_auth_summary(ss, rows);
    for (auto s : all_schemes) EXPECT_NE(ss.str().find(std::string(to_string(s))), std::string::npos);
}

TEST(AuthBench, LatenciesArePositiveAndBoundedByStructure) {
    const TimeSec interval = 10;
    for (auto s : all_schemes) {
        for (const auto& r : run_auth_benchmark(s, 100, interval)) {
            EXPECT_GT(r.latency_ms, 0);
            if (s == Scheme::block_broadcast) {
                // Waiting never exceeds one block on top of the message and read draws.
                EXPECT_LT(r.latency_ms, 1000.0 * interval + 1000.0);
            } else {
                EXPECT_LT(r.latency_ms, 1000.0);
            }
        }
    }
}

TEST(AuthBench, OrderingsHoldAcrossSeeds) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        LatencyModel m;
        m.rng_seed = seed;
        auto wpa2 = summarize(run_auth_benchmark(Scheme::wpa2, 100, 10, m), Scheme::wpa2);
        auto bb = summarize(run_auth_benchmark(Scheme::block_broadcast, 100, 10, m), Scheme::block_broadcast);
        auto nwpa2 = summarize(run_auth_benchmark(Scheme::nwpa2, 100, 10, m), Scheme::nwpa2);
        auto query = summarize(run_auth_benchmark(Scheme::sfwt_query, 100, 10, m), Scheme::sfwt_query);
        EXPECT_LT(query.mean, nwpa2.mean) << seed;
        EXPECT_LT(nwpa2.mean, bb.mean) << seed;
        EXPECT_GT(bb.stddev, std::max({wpa2.stddev, nwpa2.stddev, query.stddev})) << seed;
        EXPECT_LE(query.stddev, 2 * wpa2.stddev) << seed;
    }
}

TEST(AuthBench, EmpiricalMeansMatchClosedForm) {
    // 2000 trials: each mean within 4 standard errors of the model expectation.
    for (auto s : all_schemes) {
        auto st = summarize(run_auth_benchmark(s, 2000, 10), s);
        double se = st.stddev / std::sqrt(static_cast<double>(st.n));
        EXPECT_NEAR(st.mean, expected_latency_ms(s, 10), 4 * se) << to_string(s);
    }
    EXPECT_NEAR(expected_latency_ms(Scheme::wpa2, 10), 4 * 15.000022338171803, 1e-9);
    EXPECT_NEAR(expected_latency_ms(Scheme::block_broadcast, 10), 3 * 15.000022338171803 + 2 * 50.0 + 5000.0, 1e-9);
}

TEST(AuthBench, PhaseSamplingModesShareTheClosedForm) {
    // Stratified phases pin the 100-trial mean close to the closed form; independent
    // phases only agree within sampling error (sd of a uniform wait is interval/sqrt(12)).
    for (std::uint64_t seed : {1, 2, 3}) {
        LatencyModel m;
        m.rng_seed = seed;
        double expected = expected_latency_ms(Scheme::block_broadcast, 10, m);
        auto strat = summarize(run_auth_benchmark(Scheme::block_broadcast, 100, 10, m), Scheme::block_broadcast);
        EXPECT_NEAR(strat.mean, expected, 0.02 * expected) << seed;
        EXPECT_NEAR(strat.stddev, 10000 / std::sqrt(12.0), 300) << seed;
        m.stratified_phase = false;
        auto iid = summarize(run_auth_benchmark(Scheme::block_broadcast, 2000, 10, m), Scheme::block_broadcast);
        EXPECT_NEAR(iid.mean, expected, 4 * iid.stddev / std::sqrt(2000.0)) << seed;
    }
}

TEST(AuthBench, QueryLatencyIgnoresBlockInterval) {
    std::vector<Stats> query, bb;
    for (TimeSec interval : {1u, 10u, 100u}) {
        query.push_back(summarize(run_auth_benchmark(Scheme::sfwt_query, 100, interval), Scheme::sfwt_query));
        bb.push_back(summarize(run_auth_benchmark(Scheme::block_broadcast, 100, interval), Scheme::block_broadcast));
    }
    // The query scheme draws identically whatever the interval.
    EXPECT_DOUBLE_EQ(query[0].mean, query[1].mean);
    EXPECT_DOUBLE_EQ(query[1].mean, query[2].mean);
    EXPECT_LT(bb[0].mean, bb[1].mean);
    EXPECT_LT(bb[1].mean, bb[2].mean);
}

}  // namespace
}  // namespace sfwt::bench
