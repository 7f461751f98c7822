#include "sfwt/ledger/clock_driver.hpp"

namespace sfwt::ledger {

ClockDriver::ClockDriver(Ledger& ledger, Mode mode, std::chrono::milliseconds period, TimeSec step_sec)
    : ledger_(ledger), mode_(mode), period_(period), step_sec_(step_sec) {
    if (period.count() <= 0) throw std::invalid_argument("clock driver period must be positive");
    thread_ = std::thread([this] { run(); });
}

ClockDriver::~ClockDriver() { stop(); }

void ClockDriver::stop() {
    {
        std::lock_guard lock(mutex_);
        stopping_ = true;
    }
    cv_.notify_all();
    if (thread_.joinable()) thread_.join();
}

void ClockDriver::run() {
    std::unique_lock lock(mutex_);
    while (!cv_.wait_for(lock, period_, [this] { return stopping_; })) {
        if (mode_ == Mode::steady) {
            ledger_.advance_clock(step_sec_);
        } else if (ledger_.pending_count() > 0) {
            auto now = ledger_.now();
            auto next = ledger_.next_block_time();
            if (next > now) ledger_.advance_clock(next - now);
        }
    }
}

}  // namespace sfwt::ledger
