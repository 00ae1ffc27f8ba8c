#include "argus/cli/commands.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>

#include "argus/cli/bench.hpp"

namespace argus::cli {

namespace fs = std::filesystem;
using incentive::to_decimal;

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string events_field(const std::vector<ledger::Event>& events) {
    std::string out;
    for (const auto& ev : events) {
        if (!out.empty()) out += '|';
        out += ev.name + '{';
        bool first = true;
        for (const auto& [k, v] : ev.fields) {
            if (k == "exact") continue;
            if (!first) out += ';';
            out += k + '=' + v;
            first = false;
        }
        out += '}';
    }
    return out;
}

/// Writes to <out>/<file> or stdout when no --out was given.
void emit(const CommonOptions& opts, const std::string& file, const std::string& body) {
    if (!opts.out) {
        std::cout << body;
        return;
    }
    fs::create_directories(*opts.out);
    std::ofstream f(*opts.out / file, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + (*opts.out / file).string());
    f << body;
}

}  // namespace

std::string reward_curve_csv(const ledger::Money& c, int guarantee_len, const std::vector<long>& n_list, int max_i) {
    if (c <= 0 || guarantee_len < 0 || max_i < 1) throw ConfigError("reward curve needs c > 0, guarantee_len >= 0");
    for (long n : n_list) {
        if (n < 1) throw ConfigError("n values must be positive");
    }
    const auto argus = incentive::RewardSchedule::geometric(c, guarantee_len);
    std::ostringstream os;
    os << "i,n,reward,immediate,deferred,legacy\n";
    for (long n : n_list) {
        for (long i = 1; i <= std::min<long>(max_i, n); ++i) {
            os << i << ',' << n << ',' << to_decimal(argus.reward(i, n)) << ',' << to_decimal(argus.immediate(i)) << ','
               << to_decimal(argus.deferred(n)) << ',' << to_decimal(incentive::legacy_reward(c, n)) << '\n';
        }
    }
    // n -> infinity: only the guaranteed part survives, the legacy reward vanishes.
    for (long i = 1; i <= max_i; ++i) {
        os << i << ",inf," << to_decimal(argus.immediate(i)) << ',' << to_decimal(argus.immediate(i)) << ','
           << to_decimal(0) << ',' << to_decimal(0) << '\n';
    }
    return os.str();
}

std::string receipts_csv(const std::vector<ledger::Receipt>& log) {
    std::ostringstream os;
    os << "tx_id,period,caller,function,status,gas_used,calldata_bytes,value,hashes,hash_words,reads,writes_new,"
          "writes_update,sig_verifies,group_ops,events,error\n";
    for (const auto& rc : log) {
        const auto& m = rc.meter;
        os << rc.tx_id << ',' << rc.period << ',' << csv_field(rc.caller) << ',' << rc.function << ','
           << ledger::to_string(rc.status) << ',' << rc.gas_used << ',' << rc.calldata_bytes << ',' << to_decimal(rc.value)
           << ',' << m.hashes << ',' << m.hash_words << ',' << m.reads << ',' << m.writes_new << ',' << m.writes_update
           << ',' << m.sig_verifies << ',' << m.group_ops << ',' << csv_field(events_field(rc.events)) << ','
           << csv_field(rc.error) << '\n';
    }
    return os.str();
}

std::string bandwidth_csv(const pir::BandwidthLedger& ledger) {
    std::ostringstream os;
    os << "phase,party,sent,received\n";
    for (const auto& [key, counts] : ledger.rows()) {
        os << key.first << ',' << key.second << ',' << counts.sent << ',' << counts.received << '\n';
    }
    return os.str();
}

nlohmann::ordered_json outcome_json(const ScenarioConfig& sc, std::uint64_t seed, const actors::GameResult& res) {
    using nlohmann::ordered_json;
    const auto& c = sc.campaign;
    ordered_json j;
    j["scenario"] = sc.name;
    j["seed"] = seed;
    j["backend"] = c.backend;
    j["campaign"] = {{"lambda", c.lambda},
                     {"n", c.n_versions},
                     {"k", c.k_periods},
                     {"m", c.m_licensees},
                     {"guarantee_len", c.guarantee_len},
                     {"v", to_decimal(c.v)},
                     {"timeout", c.timeout}};
    const char* phases[] = {"init", "trade", "report", "appeal", "run"};
    j["stopped_after"] = phases[static_cast<int>(res.stopped_after)];
    j["passed"] = res.passed();
    j["owner_strategy"] = actors::to_string(sc.assignment.owner);
    if (res.framed_version) j["framed_version"] = *res.framed_version;

    ordered_json lics = ordered_json::array();
    for (std::uint32_t x = 1; x <= c.m_licensees; ++x) {
        ordered_json l;
        l["x"] = x;
        l["address"] = fmt::format("licensee-{}", x);
        l["strategy"] = actors::to_string(sc.assignment.licensees.at(x - 1));
        if (x <= res.choices.size()) l["choice"] = res.choices[x - 1];
        l["status"] = contract::to_string(res.outcome.statuses.at(x - 1));
        l["report_number"] = res.outcome.report_numbers.at(x - 1);
        lics.push_back(l);
    }
    j["licensees"] = lics;
    ordered_json pay = ordered_json::object();
    for (const auto& [addr, amount] : res.outcome.payouts) pay[addr] = to_decimal(amount);
    j["payouts"] = pay;
    j["accepted_reports"] = res.outcome.accepted_reports;
    j["rejected_reports"] = res.outcome.rejected_reports;
    j["supply"] = {{"before", to_decimal(res.supply_before)}, {"after", to_decimal(res.supply_after)}};
    ordered_json asserts = ordered_json::array();
    for (const auto& a : res.assertions) asserts.push_back({{"name", a.name}, {"passed", a.passed}, {"detail", a.detail}});
    j["assertions"] = asserts;
    j["notes"] = res.notes;
    j["transactions"] = res.receipts.size();
    return j;
}

ScenarioConfig resolve_scenario(const CommonOptions& opts, std::uint64_t& seed) {
    if (!opts.config) throw ConfigError("--config is required");
    auto sc = load_scenario(*opts.config);
    if (opts.backend) sc.campaign.backend = *opts.backend;
    if (opts.gas_schedule) sc.campaign.gas = load_gas_schedule(*opts.gas_schedule, sc.campaign.gas);
    if (opts.seed) {
        seed = *opts.seed;
    } else if (sc.seed) {
        seed = *sc.seed;
    } else {
        throw ConfigError("a seed is required (--seed or seed = ... in the config)");
    }
    sc.campaign.validate();
    return sc;
}

int cmd_run(const CommonOptions& opts, actors::Phase stop_after) {
    std::uint64_t seed = 0;
    const auto sc = resolve_scenario(opts, seed);
    const auto res = actors::run_game(sc.campaign, sc.assignment, seed, stop_after);

    CommonOptions to_dir = opts;
    if (!to_dir.out) to_dir.out = fs::path("argus-out");
    emit(to_dir, "outcome.json", outcome_json(sc, seed, res).dump(2) + "\n");
    emit(to_dir, "receipts.csv", receipts_csv(res.receipts));
    emit(to_dir, "bandwidth.csv", bandwidth_csv(res.bandwidth));

    for (const auto& a : res.assertions) {
        std::cout << (a.passed ? "PASS " : "FAIL ") << a.name;
        if (!a.detail.empty()) std::cout << " (" << a.detail << ')';
        std::cout << '\n';
    }
    for (const auto& n : res.notes) std::cout << "note: " << n << '\n';
    std::cout << fmt::format("{}: {} transactions, outputs in {}\n", sc.name, res.receipts.size(), to_dir.out->string());
    return res.passed() ? kExitOk : kExitFailed;
}

int cmd_reward_curve(const ledger::Money& c, int guarantee_len, const std::vector<long>& n_list, const CommonOptions& opts) {
    emit(opts, "reward_curve.csv", reward_curve_csv(c, guarantee_len, n_list));
    return kExitOk;
}

int cmd_bench(const std::string& dimension, std::vector<std::uint32_t> sweep, const CommonOptions& opts) {
    const std::uint64_t seed = opts.seed.value_or(1);
    const std::string backend = opts.backend.value_or("tiny");
    ledger::GasSchedule gas;
    if (opts.gas_schedule) gas = load_gas_schedule(*opts.gas_schedule);
    std::ostringstream os;
    if (dimension == "appeal-size") {
        if (sweep.empty()) sweep = {10, 100, 1000, 10000};
        os << "n,argus_calldata_bytes,baseline_calldata_bytes,argus_gas,baseline_gas,gas_ratio,argus_ok,baseline_ok\n";
        for (auto n : sweep) {
            const auto p = measure_appeal(n, seed, backend, gas);
            os << fmt::format("{},{},{},{},{},{:.2f},{},{}\n", p.n, p.argus_bytes, p.baseline_bytes, p.argus_gas,
                              p.baseline_gas, p.gas_ratio(), p.argus_ok, p.baseline_ok);
        }
    } else if (dimension == "ot-latency") {
        if (sweep.empty()) sweep = {16, 64, 256, 1024};
        os << "n,backend,owner_init_ms,owner_transfer_ms,licensee_receive_ms\n";
        for (auto n : sweep) {
            const auto p = measure_ot_latency(n, seed, backend);
            os << fmt::format("{},{},{:.3f},{:.3f},{:.3f}\n", p.n, backend, p.owner_init_ms, p.owner_transfer_ms,
                              p.licensee_receive_ms);
        }
    } else if (dimension == "caching") {
        if (sweep.empty()) sweep = {16, 256, 1024};
        os << "n,k,policy,reports,accepted,hash_ops,merkle_hash_ops,gas\n";
        for (auto n : sweep) {
            for (auto policy : {contract::CachePolicy::None, contract::CachePolicy::Checkpoints, contract::CachePolicy::All}) {
                const auto p = measure_caching(policy, n, 8, 50, seed, gas);
                os << fmt::format("{},{},{},{},{},{},{},{}\n", p.n, p.k, to_string(p.policy), p.reports, p.accepted,
                                  p.hash_ops, p.merkle_hash_ops, p.gas);
            }
        }
    } else if (dimension == "bandwidth") {
        if (sweep.empty()) sweep = {10, 100, 1000};
        os << "n,payload_bytes,hybrid_licensee_received,direct_licensee_received,hybrid_bound\n";
        for (auto n : sweep) {
            const auto p = measure_bandwidth(n, 4096, seed, backend);
            os << fmt::format("{},{},{},{},{}\n", p.n, p.payload_bytes, p.hybrid_received, p.direct_received, p.hybrid_bound());
        }
    } else {
        throw ConfigError("unknown bench dimension: " + dimension);
    }
    emit(opts, "bench_" + dimension + ".csv", os.str());
    return kExitOk;
}

}  // namespace argus::cli
