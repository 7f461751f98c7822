#pragma once

#include "sfwt/ledger/contract.hpp"

#include <deque>
#include <fstream>
#include <optional>
#include <shared_mutex>
#include <unordered_map>

namespace sfwt::ledger {

struct ChainConfig {
    TimeSec block_interval_sec = 10;
    GasSchedule gas;
    /// Optional append-only JSON-lines log of every emitted event.
    std::optional<std::string> event_log_path;
};

struct Block {
    std::uint64_t number = 0;
    TimeSec timestamp_sec = 0;
    std::vector<TxId> included_tx_ids;
};

struct Transaction {
    TxId id;
    Address sender;
    CallPayload payload;
    TimeSec submitted_at_sec = 0;
};

enum class TxStatus { success, reverted };

struct GasReceipt {
    TxId tx_id;
    Gas gas_used = 0;
    std::uint64_t block_number = 0;
    TxStatus status = TxStatus::success;
    json output;
    std::string revert_reason;
};

json to_json(const GasReceipt& receipt);
GasReceipt receipt_from_json(const json& j);
json to_json(const Block& block);

class LedgerError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Deterministic simulated chain. Blocks are produced at exact multiples of the block
/// interval on a simulated clock; submitted transactions execute in FIFO order when the
/// next block is produced, reads are answered against committed state with no wait.
///
/// All mutations are serialised behind one writer lock; reads take a shared lock, so a
/// Ledger may be shared between threads.
class Ledger {
public:
    explicit Ledger(ChainConfig config = {});

    const ChainConfig& config() const { return config_; }

    /// Genesis-style allocation; the only operation that creates native currency.
    void create_account(const Address& who, const Amount& initial_balance);
    bool has_account(const Address& who) const;
    Amount native_balance(const Address& who) const;
    Amount total_native_supply() const;
    /// Direct value transfer outside any contract. False on insufficient balance or unknown sender.
    bool transfer_native(const Address& from, const Address& to, const Amount& amount);

    /// Throws LedgerError when a contract of the same name exists.
    void deploy(std::unique_ptr<Contract> contract);

    /// Throws LedgerError for unknown senders and for payloads that do not name a
    /// registered transaction operation.
    TxId submit_transaction(const Address& sender, CallPayload payload);
    /// nullopt while pending (or unknown).
    std::optional<GasReceipt> receipt(const TxId& id) const;
    bool is_pending(const TxId& id) const;
    bool is_known(const TxId& id) const;

    /// Contract "chain" is built in: nativeBalance{address}, clock{}.
    /// Throws CallError for unknown contracts/operations or malformed arguments.
    json call_read(const CallPayload& query) const;

    Block produce_block();
    /// Produces one block per boundary crossed, in order. Returns the new time.
    TimeSec advance_clock(TimeSec delta_sec);

    TimeSec now() const;
    std::uint64_t head_block_number() const;
    /// Timestamp of the next block advance_clock would produce; always later than now().
    TimeSec next_block_time() const;
    std::vector<Block> blocks() const;
    std::vector<LogEvent> events() const;
    std::size_t pending_count() const;

    /// Runs `fn` with a const reference to a deployed contract under the read lock.
    template <typename C, typename Fn>
    auto inspect(const std::string& name, Fn&& fn) const {
        std::shared_lock lock(mutex_);
        const auto* c = dynamic_cast<const C*>(find_contract(name));
        if (!c) throw LedgerError("no contract '" + name + "' of requested type");
        return fn(*c);
    }

private:
    const Contract* find_contract(const std::string& name) const;
    GasReceipt execute(const Transaction& tx, const Block& block);
    Block produce_block_locked();

    ChainConfig config_;
    mutable std::shared_mutex mutex_;
    TimeSec now_ = 0;
    std::map<Address, Amount> accounts_;
    std::map<std::string, std::unique_ptr<Contract>> contracts_;
    std::deque<Transaction> pending_;
    std::unordered_map<TxId, GasReceipt> receipts_;
    std::vector<Block> blocks_;
    std::vector<LogEvent> events_;
    std::uint64_t tx_counter_ = 0;
    std::ofstream event_log_;
};

}  // namespace sfwt::ledger
