#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "argus/bytes.hpp"
#include "argus/incentive/reward.hpp"

namespace argus::ledger {

using Money = incentive::Money;
using Address = std::string;

struct GasSchedule {
    std::uint64_t base_tx = 21000;
    std::uint64_t per_hash = 36;
    std::uint64_t per_hash_word = 6;
    std::uint64_t storage_write_new = 20000;
    std::uint64_t storage_write_update = 5000;
    std::uint64_t storage_read = 800;
    std::uint64_t sig_verify = 3000;
    std::uint64_t group_op = 6000;
    std::uint64_t per_calldata_byte = 16;
};

/// Counts of metered primitives inside one call.
struct GasMeter {
    std::uint64_t hashes = 0;
    std::uint64_t hash_words = 0;
    std::uint64_t writes_new = 0;
    std::uint64_t writes_update = 0;
    std::uint64_t reads = 0;
    std::uint64_t sig_verifies = 0;
    std::uint64_t group_ops = 0;

    /// One hash over `bytes` input bytes (words rounded up).
    void hash(std::size_t bytes) {
        ++hashes;
        hash_words += (bytes + 31) / 32;
    }
    /// A Merkle fold step: 64 bytes in.
    void hash_pairs(std::uint64_t n) {
        hashes += n;
        hash_words += 2 * n;
    }
    /// Gas of the metered operations, excluding base and calldata.
    std::uint64_t gas(const GasSchedule& s) const;
};

struct Event {
    std::string name;
    std::vector<std::pair<std::string, std::string>> fields;

    std::string field(const std::string& key) const;
};

enum class TxStatus { Ok, Reverted };

struct Receipt {
    std::uint64_t tx_id = 0;
    Address caller;
    std::uint32_t period = 0;
    std::string function;
    std::uint64_t gas_used = 0;
    std::uint64_t calldata_bytes = 0;
    Bytes calldata;
    Money value = 0;
    TxStatus status = TxStatus::Ok;
    std::string error;
    std::vector<Event> events;
    GasMeter meter;
};

/// Raised by contract handlers to abort a call.
class Revert : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Ledger;

/// Handle a contract sees during one call. Balance moves are staged on the
/// ledger and rolled back if the call reverts.
class CallContext {
public:
    const Address& caller() const { return caller_; }
    const Address& self() const { return self_; }
    std::uint32_t time() const { return period_; }
    const Money& value() const { return value_; }
    GasMeter& meter() { return meter_; }
    void emit(Event e) { events_.push_back(std::move(e)); }
    /// Pays out of the contract's balance. Throws Revert when short.
    void pay(const Address& to, const Money& amount);
    Money self_balance() const;

private:
    friend class Ledger;
    CallContext(Ledger& ledger, Address caller, Address self, std::uint32_t period, Money value)
        : ledger_(ledger), caller_(std::move(caller)), self_(std::move(self)), period_(period), value_(std::move(value)) {}

    Ledger& ledger_;
    Address caller_;
    Address self_;
    std::uint32_t period_;
    Money value_;
    GasMeter meter_;
    std::vector<Event> events_;
};

class Contract {
public:
    virtual ~Contract() = default;
    virtual std::unique_ptr<Contract> clone() const = 0;
    /// Throws Revert (or DecodeError on malformed calldata) to abort.
    virtual void call(CallContext& ctx, const std::string& function, ByteView calldata) = 0;
};

/// Deterministic ledger: period clock from 1, ordered receipts, exact
/// balances. Submissions are serialized by an internal mutex.
class Ledger {
public:
    explicit Ledger(GasSchedule schedule = {}) : schedule_(schedule) {}

    const GasSchedule& schedule() const { return schedule_; }

    /// Throws ConfigError on a duplicate address.
    void register_contract(const Address& addr, std::unique_ptr<Contract> contract);
    const Contract& contract(const Address& addr) const;

    /// Genesis mint; the only way coins enter the system.
    void credit(const Address& addr, const Money& amount);
    Money balance(const Address& addr) const;
    Money total_supply() const;
    /// Plain transfer. Returns false (no state change) on insufficient funds
    /// or a negative amount.
    bool transfer(const Address& from, const Address& to, const Money& amount);

    /// Runs `function` on the contract. `value` moves from caller to the
    /// contract first. Reverted calls leave state unchanged but still burn
    /// metered gas.
    Receipt submit(const Address& caller, const Address& contract, const std::string& function, ByteView calldata,
                   const Money& value = 0);

    std::uint32_t time() const { return period_; }
    void advance_period() { ++period_; }

    const std::vector<Receipt>& tx_log() const { return log_; }

private:
    friend class CallContext;

    GasSchedule schedule_;
    std::map<Address, std::unique_ptr<Contract>> contracts_;
    std::map<Address, Money> balances_;
    std::vector<Receipt> log_;
    std::uint32_t period_ = 1;
    std::mutex mu_;
};

const char* to_string(TxStatus s);

}  // namespace argus::ledger
