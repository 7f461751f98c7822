#include "sfwt/bench/auth_bench.hpp"
#include "sfwt/bench/gas_bench.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>

using namespace sfwt;
using namespace sfwt::bench;

namespace {

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw std::runtime_error("error writing " + path);
}

void print_gas_summary(const std::vector<GasRow>& rows) {
    for (std::string standard : {"ERC1155", "ERC721"}) {
        for (std::string op : {"mint", "transfer"}) {
            std::vector<GasRow> sel;
            for (const auto& r : rows)
                if (r.standard == standard && r.operation == op) sel.push_back(r);
            if (sel.empty()) continue;
            std::cout << std::left << std::setw(8) << standard << std::setw(9) << op;
            for (const auto& r : sel) std::cout << " N=" << r.quantity << ':' << r.gas;
            if (sel.size() >= 2) {
                if (auto fit = exact_affine_fit(sel))
                    std::cout << "  gas = " << fit->intercept << " + " << fit->slope << "*N";
                else
                    std::cout << "  (not affine)";
            }
            std::cout << '\n';
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gas and authentication-latency benchmarks on the simulated ledger"};
    app.require_subcommand(1);

    auto* gas = app.add_subcommand("gas", "Gas of ERC1155 vs ERC721 mint and transfer over token quantities");
    std::vector<std::uint64_t> quantities{1, 10, 100, 1000};
    int repetitions = 1;
    std::string gas_out = "gas.csv";
    gas->add_option("--quantities", quantities, "Comma-separated N values")->delimiter(',')->capture_default_str();
    gas->add_option("--repetitions", repetitions, "Fresh-ledger reruns that must agree")->capture_default_str()->check(CLI::PositiveNumber);
    gas->add_option("--out", gas_out, "CSV path")->capture_default_str();

    auto* auth = app.add_subcommand("auth", "Authentication latency of WPA2, block broadcast, N-WPA2 and SFWT query");
    std::string scheme_name = "all";
    int trials = 100;
    TimeSec interval = 10;
    std::string auth_out = "auth.csv";
    LatencyModel model;
    auth->add_option("--scheme", scheme_name, "all, Wpa2, BlockBroadcast, NWpa2 or SfwtQuery")->capture_default_str();
    auth->add_option("--trials", trials)->capture_default_str()->check(CLI::PositiveNumber);
    auth->add_option("--block-interval", interval, "Seconds")->capture_default_str()->check(CLI::PositiveNumber);
    auth->add_option("--seed", model.rng_seed)->capture_default_str();
    auth->add_option("--message-mean", model.per_message_mean_ms, "ms")->capture_default_str();
    auth->add_option("--message-jitter", model.per_message_jitter_ms, "ms")->capture_default_str();
    auth->add_option("--chain-read-mean", model.chain_read_mean_ms, "ms")->capture_default_str();
    auth->add_option("--chain-read-jitter", model.chain_read_jitter_ms, "ms")->capture_default_str();
    bool iid_phase = false;
    auth->add_flag("--iid-phase", iid_phase, "Draw BlockBroadcast phases independently instead of stratified");
    auth->add_option("--out", auth_out, "CSV path")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    try {
        auto started = std::chrono::steady_clock::now();
        if (*gas) {
            auto out = open_output(gas_out);
            auto rows = run_gas_benchmark(quantities, repetitions);
            write_gas_csv(out, rows);
            finish(out, gas_out);
            print_gas_summary(rows);
        } else {
            std::vector<Scheme> schemes;
            if (scheme_name == "all") {
                schemes.assign(std::begin(all_schemes), std::end(all_schemes));
            } else if (auto s = parse_scheme(scheme_name)) {
                schemes.push_back(*s);
            } else {
                throw std::invalid_argument("unknown scheme " + scheme_name);
            }
            model.stratified_phase = !iid_phase;
            auto out = open_output(auth_out);
            std::vector<TrialResult> rows;
            for (auto s : schemes) {
                auto r = run_auth_benchmark(s, trials, interval, model);
                rows.insert(rows.end(), r.begin(), r.end());
            }
            write_auth_csv(out, rows);
            finish(out, auth_out);
            write_auth_summary(std::cout, rows);
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
        std::cout << "wall time " << ms.count() << " ms\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "bench: " << e.what() << '\n';
        return 1;
    }
}
