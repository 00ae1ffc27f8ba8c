#include "argus/ledger/ledger.hpp"

namespace argus::ledger {

std::uint64_t GasMeter::gas(const GasSchedule& s) const {
    return hashes * s.per_hash + hash_words * s.per_hash_word + writes_new * s.storage_write_new +
           writes_update * s.storage_write_update + reads * s.storage_read + sig_verifies * s.sig_verify +
           group_ops * s.group_op;
}

std::string Event::field(const std::string& key) const {
    for (const auto& [k, v] : fields) {
        if (k == key) return v;
    }
    throw NotFoundError("event " + name + " has no field " + key);
}

const char* to_string(TxStatus s) { return s == TxStatus::Ok ? "OK" : "REVERTED"; }

void CallContext::pay(const Address& to, const Money& amount) {
    if (amount < 0) throw Revert("negative payment");
    if (amount == 0) return;
    if (!ledger_.transfer(self_, to, amount)) throw Revert("contract balance too low for payment");
}

Money CallContext::self_balance() const { return ledger_.balance(self_); }

void Ledger::register_contract(const Address& addr, std::unique_ptr<Contract> contract) {
    std::lock_guard lock(mu_);
    if (contracts_.count(addr) != 0) throw ConfigError("contract already deployed at " + addr);
    contracts_.emplace(addr, std::move(contract));
}

const Contract& Ledger::contract(const Address& addr) const {
    auto it = contracts_.find(addr);
    if (it == contracts_.end()) throw NotFoundError("no contract at " + addr);
    return *it->second;
}

void Ledger::credit(const Address& addr, const Money& amount) {
    if (amount < 0) throw std::invalid_argument("credit must be nonnegative");
    balances_[addr] += amount;
}

Money Ledger::balance(const Address& addr) const {
    auto it = balances_.find(addr);
    return it == balances_.end() ? Money(0) : it->second;
}

Money Ledger::total_supply() const {
    Money total = 0;
    for (const auto& [addr, b] : balances_) total += b;
    return total;
}

bool Ledger::transfer(const Address& from, const Address& to, const Money& amount) {
    if (amount < 0 || balance(from) < amount) return false;
    balances_[from] -= amount;
    balances_[to] += amount;
    return true;
}

Receipt Ledger::submit(const Address& caller, const Address& contract, const std::string& function,
                       ByteView calldata, const Money& value) {
    std::lock_guard lock(mu_);
    Receipt rc;
    rc.tx_id = log_.size() + 1;
    rc.caller = caller;
    rc.period = period_;
    rc.function = function;
    rc.calldata_bytes = calldata.size();
    rc.calldata.assign(calldata.begin(), calldata.end());
    rc.value = value;

    auto it = contracts_.find(contract);
    CallContext ctx(*this, caller, contract, period_, value);
    if (it == contracts_.end()) {
        rc.status = TxStatus::Reverted;
        rc.error = "no contract at " + contract;
    } else {
        auto state_backup = it->second->clone();
        auto balance_backup = balances_;
        try {
            if (value != 0 && !transfer(caller, contract, value)) throw Revert("insufficient funds for call value");
            it->second->call(ctx, function, calldata);
            rc.events = std::move(ctx.events_);
        } catch (const std::exception& e) {
            it->second = std::move(state_backup);
            balances_ = std::move(balance_backup);
            rc.status = TxStatus::Reverted;
            rc.error = e.what();
        }
    }
    rc.meter = ctx.meter_;
    rc.gas_used = schedule_.base_tx + rc.calldata_bytes * schedule_.per_calldata_byte + rc.meter.gas(schedule_);
    log_.push_back(rc);
    return rc;
}

}  // namespace argus::ledger
