#pragma once

#include "sfwt/ledger/ledger.hpp"

#include <chrono>
#include <condition_variable>
#include <thread>

namespace sfwt::ledger {

/// Moves a ledger's simulated clock from a background thread.
///
/// steady: every `period` of wall time, advance by `step_sec` simulated seconds.
/// on_demand: every `period`, if transactions are pending, advance to the next block
/// boundary so they get mined; otherwise leave the clock alone.
class ClockDriver {
public:
    enum class Mode { steady, on_demand };

    ClockDriver(Ledger& ledger, Mode mode, std::chrono::milliseconds period, TimeSec step_sec = 1);
    ~ClockDriver();
    ClockDriver(const ClockDriver&) = delete;
    ClockDriver& operator=(const ClockDriver&) = delete;

    void stop();

private:
    void run();

    Ledger& ledger_;
    Mode mode_;
    std::chrono::milliseconds period_;
    TimeSec step_sec_;
    std::mutex mutex_;
    std::condition_variable cv_;
    bool stopping_ = false;
    std::thread thread_;
};

}  // namespace sfwt::ledger
