#pragma once

#include "sfwt/common/types.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sfwt::bench {

enum class Scheme { wpa2, block_broadcast, nwpa2, sfwt_query };
inline constexpr Scheme all_schemes[] = {Scheme::wpa2, Scheme::block_broadcast, Scheme::nwpa2, Scheme::sfwt_query};

/// "Wpa2", "BlockBroadcast", "NWpa2", "SfwtQuery".
std::string_view to_string(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view name);

/// Network and node latencies on the simulated millisecond timeline. Each draw is a
/// normal variate resampled until it is at least the floor.
struct LatencyModel {
    double per_message_mean_ms = 15;
    double per_message_jitter_ms = 3;
    double per_message_floor_ms = 1;
    double chain_read_mean_ms = 50;
    double chain_read_jitter_ms = 5;
    double chain_read_floor_ms = 5;
    int wpa2_message_count = 4;
    int proposed_message_count = 3;
    /// BlockBroadcast start phases: each of n trials takes its phase from a distinct 1/n
    /// slice of the block cycle, slices in random order. False draws every phase
    /// independently. Either way each phase is uniform over the cycle.
    bool stratified_phase = true;
    std::uint64_t rng_seed = 42;

    /// Throws std::invalid_argument for non-positive means or negative jitter.
    void validate() const;
};

struct TrialResult {
    Scheme scheme = Scheme::wpa2;
    int trial = 0;
    double latency_ms = 0;

    bool operator==(const TrialResult&) const = default;
};

struct Stats {
    std::size_t n = 0;
    double mean = 0;
    /// Sample standard deviation (n - 1 denominator).
    double stddev = 0;
    double min = 0;
    double max = 0;
};
Stats summarize(const std::vector<double>& samples);
Stats summarize(const std::vector<TrialResult>& rows, Scheme scheme);

/// Runs `trials` authentications of one scheme.
///
/// Wpa2:           wpa2_message_count messages.
/// NWpa2:          one chain read (the token query) then the Wpa2 exchange.
/// SfwtQuery:      the real gatekeeper handshake (ARI, session id, signed response) against
///                 a local ledger, proposed_message_count messages plus one chain read.
/// BlockBroadcast: proposed_message_count messages, a real transaction submission (drawn
///                 like a chain read), the wait until that transaction's block, and a
///                 confirmation read. Trials start at uniformly random points of the block
///                 cycle (see LatencyModel::stratified_phase).
/// Each scheme draws from its own stream derived from (rng_seed, scheme).
std::vector<TrialResult> run_auth_benchmark(Scheme scheme, int trials, TimeSec block_interval_sec,
                                            const LatencyModel& model = {});

/// Expected latency from the model alone: truncated-normal means of each component
/// plus, for BlockBroadcast, half a block interval.
double expected_latency_ms(Scheme scheme, TimeSec block_interval_sec, const LatencyModel& model = {});
/// Mean of a normal(mean, sd) conditioned on being >= floor.
double truncated_normal_mean(double mean, double sd, double floor);

/// CSV with header scheme,trial,latency_ms; latencies use the shortest round-trip form.
void write_auth_csv(std::ostream& out, const std::vector<TrialResult>& rows);
std::vector<TrialResult> read_auth_csv(std::istream& in);

/// Plain-text table: scheme, n, mean, stddev, min, max.
void write_auth_summary(std::ostream& out, const std::vector<TrialResult>& rows);

}  // namespace sfwt::bench
