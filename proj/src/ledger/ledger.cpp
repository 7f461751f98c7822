#include "sfwt/ledger/ledger.hpp"

#include "sfwt/crypto/keccak.hpp"

#include <mutex>

namespace sfwt::ledger {

json to_json(const GasReceipt& r) {
    json j{{"txId", r.tx_id},
           {"status", r.status == TxStatus::success ? "success" : "reverted"},
           {"gasUsed", std::to_string(r.gas_used)},
           {"blockNumber", std::to_string(r.block_number)},
           {"output", r.output}};
    if (!r.revert_reason.empty()) j["revertReason"] = r.revert_reason;
    return j;
}

GasReceipt receipt_from_json(const json& j) {
    GasReceipt r;
    r.tx_id = j.at("txId").get<std::string>();
    r.status = j.at("status").get<std::string>() == "success" ? TxStatus::success : TxStatus::reverted;
    r.gas_used = std::stoull(j.at("gasUsed").get<std::string>());
    r.block_number = std::stoull(j.at("blockNumber").get<std::string>());
    r.output = j.value("output", json());
    r.revert_reason = j.value("revertReason", "");
    return r;
}

json to_json(const Block& block) {
    return json{{"number", std::to_string(block.number)},
                {"timestampSec", std::to_string(block.timestamp_sec)},
                {"includedTxIds", block.included_tx_ids}};
}

Ledger::Ledger(ChainConfig config) : config_(std::move(config)) {
    if (config_.block_interval_sec == 0) throw LedgerError("block interval must be positive");
    if (config_.gas.read_gas != 0) throw LedgerError("reads are free: read_gas must be 0");
    if (config_.event_log_path) {
        event_log_.open(*config_.event_log_path, std::ios::app);
        if (!event_log_) throw LedgerError("cannot open event log " + *config_.event_log_path);
    }
    blocks_.push_back(Block{0, 0, {}});
}

void Ledger::create_account(const Address& who, const Amount& initial_balance) {
    std::unique_lock lock(mutex_);
    accounts_[who] += initial_balance;
}

bool Ledger::has_account(const Address& who) const {
    std::shared_lock lock(mutex_);
    return accounts_.count(who) > 0;
}

Amount Ledger::native_balance(const Address& who) const {
    std::shared_lock lock(mutex_);
    auto it = accounts_.find(who);
    return it == accounts_.end() ? Amount(0) : it->second;
}

Amount Ledger::total_native_supply() const {
    std::shared_lock lock(mutex_);
    Amount total = 0;
    for (const auto& [_, balance] : accounts_) total += balance;
    return total;
}

bool Ledger::transfer_native(const Address& from, const Address& to, const Amount& amount) {
    std::unique_lock lock(mutex_);
    auto it = accounts_.find(from);
    if (it == accounts_.end() || it->second < amount) return false;
    it->second -= amount;
    accounts_[to] += amount;
    return true;
}

void Ledger::deploy(std::unique_ptr<Contract> contract) {
    std::unique_lock lock(mutex_);
    auto name = contract->name();
    if (name == "chain" || contracts_.count(name)) throw LedgerError("contract name taken: " + name);
    contracts_.emplace(std::move(name), std::move(contract));
}

const Contract* Ledger::find_contract(const std::string& name) const {
    auto it = contracts_.find(name);
    return it == contracts_.end() ? nullptr : it->second.get();
}

TxId Ledger::submit_transaction(const Address& sender, CallPayload payload) {
    std::unique_lock lock(mutex_);
    if (!accounts_.count(sender)) throw LedgerError("unknown sender " + sender.to_hex());
    const auto* c = find_contract(payload.contract);
    if (!c || !c->has_transaction(payload.op)) {
        throw LedgerError("no transaction operation " + payload.contract + "." + payload.op);
    }
    std::array<std::uint8_t, 8> counter{};
    for (int i = 0; i < 8; ++i) counter[i] = static_cast<std::uint8_t>(tx_counter_ >> (56 - 8 * i));
    ++tx_counter_;
    auto id = to_hex(crypto::Keccak256{}.update("sfwt/tx").update(sender.bytes()).update(counter).finish());
    pending_.push_back(Transaction{id, sender, std::move(payload), now_});
    return id;
}

std::optional<GasReceipt> Ledger::receipt(const TxId& id) const {
    std::shared_lock lock(mutex_);
    auto it = receipts_.find(id);
    if (it == receipts_.end()) return std::nullopt;
    return it->second;
}

bool Ledger::is_pending(const TxId& id) const {
    std::shared_lock lock(mutex_);
    for (const auto& tx : pending_) {
        if (tx.id == id) return true;
    }
    return false;
}

bool Ledger::is_known(const TxId& id) const {
    if (is_pending(id)) return true;
    std::shared_lock lock(mutex_);
    return receipts_.count(id) > 0;
}

json Ledger::call_read(const CallPayload& query) const {
    std::shared_lock lock(mutex_);
    if (query.contract == "chain") {
        if (query.op == "nativeBalance") {
            auto who = arg_address(query.args, "address");
            auto it = accounts_.find(who);
            return json{{"balance", to_decimal(it == accounts_.end() ? Amount(0) : it->second)}};
        }
        if (query.op == "clock") {
            return json{{"nowSec", std::to_string(now_)}, {"blockNumber", std::to_string(blocks_.back().number)}};
        }
        throw CallError("unknown read operation chain." + query.op);
    }
    const auto* c = find_contract(query.contract);
    if (!c) throw CallError("unknown contract '" + query.contract + "'");
    if (!c->has_read(query.op)) throw CallError("unknown read operation " + query.contract + "." + query.op);
    return c->read(query.op, query.args, now_);
}

GasReceipt Ledger::execute(const Transaction& tx, const Block& block) {
    GasReceipt receipt;
    receipt.tx_id = tx.id;
    receipt.block_number = block.number;

    auto& live = contracts_.at(tx.payload.contract);
    auto working = live->clone();
    auto accounts = accounts_;
    ExecContext ctx(tx.sender, block.timestamp_sec, block.number, tx.id, tx.payload.contract, accounts);
    try {
        receipt.output = working->execute(ctx, tx.payload.op, tx.payload.args);
        receipt.status = TxStatus::success;
        receipt.gas_used = ctx.meter().total(config_.gas);
        live = std::move(working);
        accounts_ = std::move(accounts);
        for (auto& e : ctx.take_events()) {
            if (event_log_) event_log_ << to_json(e).dump() << '\n';
            events_.push_back(std::move(e));
        }
    } catch (const Revert& e) {
        receipt.status = TxStatus::reverted;
        receipt.revert_reason = e.what();
    } catch (const CallError& e) {
        receipt.status = TxStatus::reverted;
        receipt.revert_reason = std::string("bad call: ") + e.what();
    } catch (const std::overflow_error&) {
        receipt.status = TxStatus::reverted;
        receipt.revert_reason = "arithmetic overflow";
    } catch (const std::range_error&) {
        receipt.status = TxStatus::reverted;
        receipt.revert_reason = "arithmetic underflow";
    }
    if (receipt.status == TxStatus::reverted) {
        receipt.output = false;
        receipt.gas_used = config_.gas.base_tx_gas;
    }
    return receipt;
}

Block Ledger::produce_block_locked() {
    Block block;
    block.number = blocks_.back().number + 1;
    block.timestamp_sec = block.number * config_.block_interval_sec;
    while (!pending_.empty()) {
        auto tx = std::move(pending_.front());
        pending_.pop_front();
        auto receipt = execute(tx, block);
        block.included_tx_ids.push_back(tx.id);
        receipts_.emplace(tx.id, std::move(receipt));
    }
    if (event_log_) event_log_.flush();
    blocks_.push_back(block);
    return block;
}

Block Ledger::produce_block() {
    std::unique_lock lock(mutex_);
    return produce_block_locked();
}

TimeSec Ledger::advance_clock(TimeSec delta_sec) {
    std::unique_lock lock(mutex_);
    TimeSec target = now_ + delta_sec;
    while ((blocks_.back().number + 1) * config_.block_interval_sec <= target) {
        now_ = (blocks_.back().number + 1) * config_.block_interval_sec;
        produce_block_locked();
    }
    now_ = target;
    return now_;
}

TimeSec Ledger::now() const {
    std::shared_lock lock(mutex_);
    return now_;
}

std::uint64_t Ledger::head_block_number() const {
    std::shared_lock lock(mutex_);
    return blocks_.back().number;
}

TimeSec Ledger::next_block_time() const {
    std::shared_lock lock(mutex_);
    return (blocks_.back().number + 1) * config_.block_interval_sec;
}

std::vector<Block> Ledger::blocks() const {
    std::shared_lock lock(mutex_);
    return blocks_;
}

std::vector<LogEvent> Ledger::events() const {
    std::shared_lock lock(mutex_);
    return events_;
}

std::size_t Ledger::pending_count() const {
    std::shared_lock lock(mutex_);
    return pending_.size();
}

}  // namespace sfwt::ledger
