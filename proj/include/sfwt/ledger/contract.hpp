#pragma once

#include "sfwt/common/types.hpp"
#include "sfwt/ledger/gas.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sfwt::ledger {

using nlohmann::json;
using TxId = std::string;

/// Contract call descriptor: contract name, operation name, JSON arguments. Integers in
/// args are decimal strings; addresses are 0x-hex strings.
struct CallPayload {
    std::string contract;
    std::string op;
    json args = json::object();
};

json to_json(const CallPayload& payload);
CallPayload payload_from_json(const json& j);

struct LogEvent {
    std::uint64_t block_number = 0;
    TxId tx_id;
    std::string contract;
    std::string name;
    json fields;
};

json to_json(const LogEvent& event);

/// Contract guard failure. The transaction is rolled back and charged base gas only.
class Revert : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed call: unknown contract or operation, bad arguments.
class CallError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The view of chain state a contract sees while executing one transaction. Native
/// balances are a working copy that the ledger commits only on success.
class ExecContext {
public:
    ExecContext(Address caller, TimeSec now, std::uint64_t block_number, TxId tx_id, std::string contract,
                std::map<Address, Amount>& accounts)
        : caller_(caller), now_(now), block_number_(block_number), tx_id_(std::move(tx_id)),
          contract_(std::move(contract)), accounts_(accounts) {}

    const Address& caller() const { return caller_; }
    TimeSec now() const { return now_; }
    std::uint64_t block_number() const { return block_number_; }
    GasMeter& meter() { return meter_; }
    const GasMeter& meter() const { return meter_; }

    void storage_write(bool slot_existed) { meter_.storage_write(slot_existed); }
    void emit(std::string name, json fields);

    Amount native_balance(const Address& who) const;
    /// Returns false (and changes nothing) when `from` cannot cover `amount`.
    bool transfer_native(const Address& from, const Address& to, const Amount& amount);

    std::vector<LogEvent> take_events() { return std::move(events_); }

private:
    Address caller_;
    TimeSec now_;
    std::uint64_t block_number_;
    TxId tx_id_;
    std::string contract_;
    std::map<Address, Amount>& accounts_;
    GasMeter meter_;
    std::vector<LogEvent> events_;
};

class Contract {
public:
    virtual ~Contract() = default;

    virtual std::string name() const = 0;
    virtual std::unique_ptr<Contract> clone() const = 0;

    virtual bool has_transaction(std::string_view op) const = 0;
    virtual bool has_read(std::string_view op) const = 0;

    /// Throws Revert on guard failure, CallError on malformed arguments.
    virtual json execute(ExecContext& ctx, std::string_view op, const json& args) = 0;
    /// `now` is the ledger clock, used when the query does not carry its own time.
    virtual json read(std::string_view op, const json& args, TimeSec now) const = 0;
};

// Argument helpers; all throw CallError with the offending key in the message.
Address arg_address(const json& args, std::string_view key);
Uint256 arg_uint(const json& args, std::string_view key);
std::uint64_t arg_u64(const json& args, std::string_view key);
TokenId arg_token(const json& args, std::string_view key);
std::string arg_string(const json& args, std::string_view key);
bool has_arg(const json& args, std::string_view key);

}  // namespace sfwt::ledger
