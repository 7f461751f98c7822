#pragma once

#include <cstdint>

namespace sfwt::ledger {

using Gas = std::uint64_t;

/// Gas prices per metered action. Magnitudes follow real-chain schedules; reads are free.
struct GasSchedule {
    Gas base_tx_gas = 21000;
    Gas storage_write_new_gas = 20000;
    Gas storage_write_update_gas = 5000;
    Gas event_emit_gas = 2000;
    Gas read_gas = 0;
};

/// Counts the metered actions of one transaction.
class GasMeter {
public:
    void storage_write(bool slot_existed) { slot_existed ? ++update_writes_ : ++new_writes_; }
    void event() { ++events_; }

    std::uint64_t new_writes() const { return new_writes_; }
    std::uint64_t update_writes() const { return update_writes_; }
    std::uint64_t events() const { return events_; }

    Gas total(const GasSchedule& schedule) const {
        return schedule.base_tx_gas + new_writes_ * schedule.storage_write_new_gas +
               update_writes_ * schedule.storage_write_update_gas + events_ * schedule.event_emit_gas;
    }

private:
    std::uint64_t new_writes_ = 0;
    std::uint64_t update_writes_ = 0;
    std::uint64_t events_ = 0;
};

}  // namespace sfwt::ledger
