#include "argus/actors/game.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "argus/contract/calls.hpp"

namespace argus::actors {

using contract::Status;

const char* to_string(OwnerStrategy s) { return s == OwnerStrategy::Honest ? "HONEST" : "FALSE_ACCUSER"; }

OwnerStrategy parse_owner_strategy(const std::string& s) {
    if (s == "HONEST") return OwnerStrategy::Honest;
    if (s == "FALSE_ACCUSER") return OwnerStrategy::FalseAccuser;
    throw ConfigError("unknown owner strategy: " + s);
}

Phase parse_phase(const std::string& s) {
    if (s == "init") return Phase::Initiate;
    if (s == "trade") return Phase::Trade;
    if (s == "report") return Phase::Report;
    if (s == "appeal") return Phase::Appeal;
    if (s == "run" || s == "all") return Phase::All;
    throw ConfigError("unknown phase: " + s);
}

bool GameResult::passed() const {
    return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed; });
}

Outcome outcome_from_log(const std::vector<ledger::Receipt>& log, std::uint32_t m_licensees) {
    Outcome o;
    o.statuses.assign(m_licensees, Status::Normal);
    o.report_numbers.assign(m_licensees, 0);
    for (const auto& rc : log) {
        if (rc.function == "report" && rc.status != ledger::TxStatus::Ok) ++o.rejected_reports;
        if (rc.status != ledger::TxStatus::Ok) continue;
        for (const auto& ev : rc.events) {
            if (ev.name == "BountyPaid") {
                o.payouts[ev.field("pk")] += Money(ev.field("exact"));
                continue;
            }
            if (ev.name != "Accused" && ev.name != "Exonerated" && ev.name != "Guilty" && ev.name != "Reported") continue;
            const auto x = static_cast<std::uint32_t>(std::stoul(ev.field("x")));
            if (x < 1 || x > m_licensees) continue;
            if (ev.name == "Accused") o.statuses[x - 1] = Status::Accused;
            if (ev.name == "Exonerated") o.statuses[x - 1] = Status::Exonerated;
            if (ev.name == "Guilty") o.statuses[x - 1] = Status::Guilty;
            if (ev.name == "Reported") {
                o.report_numbers[x - 1] += 1;
                ++o.accepted_reports;
            }
        }
    }
    return o;
}

namespace {

void check_assignment(const CampaignConfig& cfg, const Assignment& a) {
    if (a.licensees.size() != cfg.m_licensees) {
        throw ConfigError(fmt::format("assignment names {} licensees, campaign has {}", a.licensees.size(), cfg.m_licensees));
    }
    if (a.owner == OwnerStrategy::FalseAccuser && (a.frame_target < 1 || a.frame_target > cfg.m_licensees)) {
        throw ConfigError("frame target outside 1..M");
    }
    if (cfg.k_periods < 3) throw ConfigError("a game needs K >= 3 (commit, reveal, replay)");
    std::set<std::string> names;
    for (const auto& s : a.informers) {
        if (s.name.empty()) throw ConfigError("informer needs a name");
        if (!names.insert(s.name).second) throw ConfigError("duplicate informer name " + s.name);
    }
}

bool is_ok(const ledger::Receipt& rc) { return rc.status == ledger::TxStatus::Ok; }

void advance_to(ledger::Ledger& ledger, std::uint32_t t) {
    while (ledger.time() < t) ledger.advance_period();
}

struct Reporter {
    InformerActor actor;
    bool open_population = false;
    bool self_report = false;
    bool shill = false;
    std::vector<ledger::Receipt> reveals;
};

}  // namespace

GameResult run_game(const CampaignConfig& cfg, const Assignment& a, std::uint64_t seed, Phase stop_after) {
    cfg.validate();
    check_assignment(cfg, a);

    GameResult res;
    Rng root(seed);
    auto group = crypto::make_group(cfg.backend);
    ledger::Ledger ledger(cfg.gas);

    OwnerActor owner(cfg, group, root.fork("owner"));
    std::vector<LicenseeActor> licensees;
    std::vector<Address> addrs;
    std::vector<crypto::GroupPoint> pks;
    for (std::uint32_t x = 1; x <= cfg.m_licensees; ++x) {
        licensees.emplace_back(x, a.licensees[x - 1], root.fork(fmt::format("licensee-{}", x)));
        addrs.push_back(licensees.back().address());
        pks.push_back(licensees.back().keys().pub);
    }

    ledger.credit(owner.address(), cfg.v * static_cast<long>(cfg.m_licensees));
    res.supply_before = ledger.total_supply();

    auto finish = [&](Phase p) {
        res.stopped_after = p;
        res.receipts = ledger.tx_log();
        res.supply_after = ledger.total_supply();
        res.outcome = outcome_from_log(res.receipts, cfg.m_licensees);
        return res;
    };

    // Initiate
    owner.initiate(ledger, addrs, pks);
    if (stop_after == Phase::Initiate) return finish(Phase::Initiate);

    // ShareData
    bool round_trip = true;
    for (auto& lic : licensees) {
        lic.acquire(owner);
        res.choices.push_back(lic.record()->l);
        res.bandwidth.merge(lic.bandwidth());
        try {
            if (watermark::detect(lic.copy(), cfg.segments(), cfg.id_bytes()) != owner.id_of(lic.x(), lic.record()->l)) {
                round_trip = false;
            }
        } catch (const watermark::DetectionError&) {
            round_trip = false;
        }
    }
    if (stop_after == Phase::Trade) return finish(Phase::Trade);

    // ReportPiracy, commit period.
    const std::uint32_t t_commit = ledger.time();
    std::vector<std::pair<std::uint32_t, Bytes>> published;
    for (const auto& lic : licensees) {
        if (lic.leaks()) published.emplace_back(lic.x(), lic.copy());
    }

    std::vector<Reporter> reporters;
    if (a.owner == OwnerStrategy::FalseAccuser) {
        auto srng = root.fork("false-accuser");
        res.framed_version = static_cast<std::uint32_t>(srng.uniform_range(1, cfg.n_versions));
        reporters.push_back({InformerActor({InformerKind::Honest, 1, "owner-shill"}, srng), false, false, true, {}});
    }
    for (const auto& spec : a.informers) {
        reporters.push_back({InformerActor(spec, root.fork("informer-" + spec.name)), false, false, false, {}});
    }
    for (std::uint32_t j = 1; j <= a.open_population; ++j) {
        const auto name = fmt::format("P{}", j);
        reporters.push_back({InformerActor({InformerKind::Honest, 1, name}, root.fork("open-" + name)), true, false, false, {}});
    }
    if (a.self_report) {
        for (const auto& lic : licensees) {
            if (!lic.leaks()) continue;
            reporters.push_back({InformerActor({InformerKind::Honest, 1, lic.address()}, root.fork("self-" + lic.address())),
                                 false, true, false, {}});
        }
    }

    for (auto& r : reporters) {
        if (r.shill) {
            r.actor.commit(ledger, owner, owner.copy_of(a.frame_target, *res.framed_version), cfg.segments(), cfg.id_bytes());
            continue;
        }
        if (r.actor.spec().kind == InformerKind::Guesser) {
            r.actor.commit_guess(ledger, cfg);
            continue;
        }
        for (const auto& [x, copy] : published) {
            if (r.self_report && licensees[x - 1].address() != r.actor.name()) continue;
            r.actor.commit(ledger, owner, copy, cfg.segments(), cfg.id_bytes());
        }
    }

    // Reveal period.
    ledger.advance_period();
    for (auto& r : reporters) r.reveals = r.actor.reveal(ledger, owner, owner.id_store().shape());

    std::vector<ledger::Receipt> replay_attempts;
    for (auto& r : reporters) {
        if (r.actor.spec().kind != InformerKind::Replayer) continue;
        const auto& log = ledger.tx_log();
        auto seen = std::find_if(log.begin(), log.end(), [&](const ledger::Receipt& rc) {
            return rc.function == "report" && is_ok(rc) && rc.period == ledger.time() && rc.caller != r.actor.name();
        });
        if (seen == log.end()) {
            res.notes.push_back(r.actor.name() + ": no accepted reveal to replay");
            continue;
        }
        const auto observed = *seen;
        for (auto& rc : r.actor.replay_now(ledger, observed)) replay_attempts.push_back(rc);
        r.actor.replay_commit(ledger, observed);
    }
    if (stop_after == Phase::Report) return finish(Phase::Report);

    // Appeal while the window is open.
    for (const auto& lic : licensees) {
        if (!lic.appeals()) continue;
        if (argus(ledger).licensee(lic.x()).status != Status::Accused) continue;
        for (auto& rc : lic.appeal(ledger, owner)) {
            if (!is_ok(rc)) res.notes.push_back(fmt::format("{} appeal rejected: {}", lic.address(), rc.error));
        }
    }
    if (stop_after == Phase::Appeal) return finish(Phase::Appeal);

    // Cross-period replay reveal.
    ledger.advance_period();
    for (auto& r : reporters) {
        for (auto& rc : r.actor.replay_reveal(ledger)) replay_attempts.push_back(rc);
    }

    // ConfirmInfringer
    advance_to(ledger, t_commit + cfg.timeout + 1);
    for (const auto& lic : licensees) {
        if (argus(ledger).licensee(lic.x()).status != Status::Accused) continue;
        const auto rc = ledger.submit(owner.address(), kContractAddress, "set_guilty", contract::LicenseeCall{lic.x()}.encode());
        if (!is_ok(rc)) res.notes.push_back("set_guilty rejected: " + rc.error);
    }

    // ClaimBounty
    advance_to(ledger, cfg.k_periods);
    for (const auto& lic : licensees) {
        const auto informers = argus(ledger).licensee(lic.x()).is_informer;
        for (const auto& [addr, unpaid] : informers) {
            if (!unpaid) continue;
            const auto rc =
                ledger.submit(addr, kContractAddress, "allocate_bounty", contract::AllocateCall{lic.x(), addr}.encode());
            if (!is_ok(rc)) res.notes.push_back("allocate_bounty rejected: " + rc.error);
        }
    }

    finish(Phase::All);
    const auto& c = argus(ledger);
    const auto& sched = c.schedule();

    // Live outcome, read from contract state and balances.
    Outcome live;
    for (std::uint32_t x = 1; x <= cfg.m_licensees; ++x) {
        live.statuses.push_back(c.licensee(x).status);
        live.report_numbers.push_back(c.licensee(x).report_number);
        live.accepted_reports += c.licensee(x).report_number;
    }
    std::set<Address> candidates;
    for (const auto& r : reporters) {
        for (const auto& addr : r.actor.addresses()) candidates.insert(addr);
    }
    for (const auto& addr : candidates) {
        const auto b = ledger.balance(addr);
        if (b != 0) live.payouts[addr] = b;
    }
    for (const auto& rc : res.receipts) {
        if (rc.function == "report" && !is_ok(rc)) ++live.rejected_reports;
    }

    auto assert_that = [&](std::string name, bool ok, std::string detail = {}) {
        res.assertions.push_back({std::move(name), ok, std::move(detail)});
    };
    auto paid = [&](const Address& addr) {
        auto it = res.outcome.payouts.find(addr);
        return it == res.outcome.payouts.end() ? Money(0) : it->second;
    };
    // (address, x) -> index assigned on chain
    std::map<std::pair<Address, std::uint32_t>, std::uint32_t> index_of;
    std::map<std::pair<Address, std::uint32_t>, Money> paid_for;
    for (const auto& rc : res.receipts) {
        if (!is_ok(rc)) continue;
        for (const auto& ev : rc.events) {
            if (ev.name == "Reported") {
                index_of[{ev.field("informer"), static_cast<std::uint32_t>(std::stoul(ev.field("x")))}] =
                    static_cast<std::uint32_t>(std::stoul(ev.field("number")));
            }
            if (ev.name == "BountyPaid") {
                paid_for[{ev.field("pk"), static_cast<std::uint32_t>(std::stoul(ev.field("x")))}] += Money(ev.field("exact"));
            }
        }
    }

    assert_that("conservation", res.supply_before == res.supply_after,
                fmt::format("supply {} -> {}", incentive::to_decimal(res.supply_before), incentive::to_decimal(res.supply_after)));
    assert_that("replayable outcome", live == res.outcome);
    assert_that("watermark round trip", round_trip);

    const bool any_reporter_for_leaks = std::any_of(reporters.begin(), reporters.end(), [](const Reporter& r) {
        const auto k = r.actor.spec().kind;
        return !r.shill && (k == InformerKind::Honest || k == InformerKind::Sybil);
    });

    if (a.owner == OwnerStrategy::Honest) {
        for (const auto& lic : licensees) {
            const auto x = lic.x();
            const auto st = c.licensee(x).status;
            if (lic.leaks()) {
                if (any_reporter_for_leaks) {
                    assert_that(fmt::format("owner: infringer {} identified", lic.address()), st == Status::Guilty,
                                contract::to_string(st));
                }
            } else {
                assert_that(fmt::format("owner: innocent {} never accused", lic.address()), st == Status::Normal,
                            contract::to_string(st));
            }
            // Every accepted report comes from a distinct address holding the copy.
            std::uint32_t expected = 0;
            if (lic.leaks()) {
                for (const auto& r : reporters) {
                    const auto k = r.actor.spec().kind;
                    if (r.self_report && r.actor.name() != lic.address()) continue;
                    if (k == InformerKind::Honest || k == InformerKind::Sybil) {
                        expected += static_cast<std::uint32_t>(r.actor.addresses().size());
                    }
                }
            }
            const auto n = c.licensee(x).report_number;
            assert_that(fmt::format("owner: report number for {} uninflated", lic.address()),
                        n == expected && (!lic.leaks() || !any_reporter_for_leaks || n >= 1),
                        fmt::format("ReportNumber {} expected {}", n, expected));
        }
        for (const auto& r : reporters) {
            const auto k = r.actor.spec().kind;
            if (k != InformerKind::Replayer && k != InformerKind::Guesser) continue;
            const auto got = paid(r.actor.name());
            assert_that(fmt::format("owner: {} {} earns nothing", to_string(k), r.actor.name()), got == 0,
                        incentive::to_decimal(got));
        }
    }

    for (const auto& lic : licensees) {
        if (lic.strategy() != LicenseeStrategy::Honest) continue;
        const auto st = c.licensee(lic.x()).status;
        const bool framed = a.owner == OwnerStrategy::FalseAccuser && a.frame_target == lic.x();
        const bool lucky_guess = framed && *res.framed_version == lic.record()->l;
        bool ok = st != Status::Guilty || lucky_guess;
        if (framed && !lucky_guess) ok = ok && st == Status::Exonerated;
        std::string detail = contract::to_string(st);
        if (framed) detail += fmt::format(" (framed version {}, chose {})", *res.framed_version, lic.record()->l);
        assert_that(fmt::format("licensee: honest {} not convicted", lic.address()), ok, detail);
        if (lucky_guess) res.notes.push_back(lic.address() + " convicted by a correct 1/N guess");
    }

    for (const auto& r : reporters) {
        if (r.shill || r.self_report || r.actor.spec().kind != InformerKind::Honest) continue;
        const auto& name = r.actor.name();
        const bool all_ok = std::all_of(r.reveals.begin(), r.reveals.end(), is_ok);
        Money expect = 0;
        for (const auto& [key, i] : index_of) {
            if (key.first != name) continue;
            expect += sched.reward(i, c.licensee(key.second).report_number);
        }
        const auto got = paid(name);
        assert_that(fmt::format("informer: {} accepted and paid per schedule", name),
                    all_ok && got == expect && (r.reveals.empty() || got > 0),
                    fmt::format("{} reveals, paid {} expected {}", r.reveals.size(), incentive::to_decimal(got),
                                incentive::to_decimal(expect)));
    }

    for (const auto& r : reporters) {
        if (r.actor.spec().kind != InformerKind::Sybil) continue;
        const auto ids = r.actor.addresses();
        for (const auto& lic : licensees) {
            const auto x = lic.x();
            std::uint32_t i0 = 0;
            Money total = 0;
            for (const auto& addr : ids) {
                auto it = index_of.find({addr, x});
                if (it == index_of.end()) continue;
                i0 = i0 == 0 ? it->second : std::min(i0, it->second);
                total += paid_for[{addr, x}];
            }
            if (i0 == 0) continue;
            const auto n = c.licensee(x).report_number;
            const long k = static_cast<long>(ids.size());
            const Money single = sched.reward(i0, n - k + 1);
            assert_that(fmt::format("sybil: {} x{} under-earns on {}", r.actor.name(), k, lic.address()), total < single,
                        fmt::format("split {} vs single {}", incentive::to_decimal(total), incentive::to_decimal(single)));
        }
    }

    for (const auto& r : reporters) {
        if (!r.self_report) continue;
        const auto x = std::stoul(r.actor.name().substr(r.actor.name().find('-') + 1));
        res.notes.push_back(fmt::format("self-report: {} collected {} and ends {}", r.actor.name(),
                                        incentive::to_decimal(paid(r.actor.name())),
                                        contract::to_string(c.licensee(static_cast<std::uint32_t>(x)).status)));
    }
    for (const auto& rc : replay_attempts) {
        res.notes.push_back(fmt::format("replay by {} in period {}: {}", rc.caller, rc.period,
                                        is_ok(rc) ? std::string("accepted") : rc.error));
    }
    return res;
}

std::vector<Scenario> scenario_matrix() {
    using LS = LicenseeStrategy;
    auto inf = [](InformerKind k, const std::string& name, std::uint32_t sybil_k = 1) {
        return InformerSpec{k, sybil_k, name};
    };
    auto honest = [&](const std::string& n) { return inf(InformerKind::Honest, n); };
    std::vector<Scenario> out;
    auto add = [&](std::string name, std::string role, Assignment a) { out.push_back({std::move(name), std::move(role), std::move(a)}); };

    // Honest owner.
    add("owner/malicious-L1-honest-I1", "owner", {OwnerStrategy::Honest, {LS::Leaker, LS::Honest}, {honest("I1")}});
    add("owner/honest-L1-malicious-I1", "owner",
        {OwnerStrategy::Honest, {LS::Honest, LS::Honest}, {inf(InformerKind::Guesser, "I1")}});
    add("owner/malicious-L1-malicious-I1", "owner",
        {OwnerStrategy::Honest, {LS::GuiltyAppealer, LS::Honest}, {inf(InformerKind::Sybil, "I1", 3)}});
    add("owner/coalition-L1-I1", "owner",
        {OwnerStrategy::Honest, {LS::Leaker, LS::Honest}, {inf(InformerKind::Silent, "I1")}, 1});
    add("owner/coalition-L1-L2", "owner", {OwnerStrategy::Honest, {LS::Leaker, LS::Leaker}, {honest("I1")}});
    add("owner/coalition-I1-I2", "owner",
        {OwnerStrategy::Honest, {LS::Leaker, LS::Honest}, {inf(InformerKind::Replayer, "I1"), inf(InformerKind::Guesser, "I2")}, 1});
    add("owner/coalition-L1-L2-I1", "owner",
        {OwnerStrategy::Honest, {LS::Leaker, LS::Leaker}, {inf(InformerKind::Silent, "I1")}, 1});
    add("owner/coalition-L1-L2-I1-I2", "owner",
        {OwnerStrategy::Honest,
         {LS::GuiltyAppealer, LS::Leaker},
         {inf(InformerKind::Silent, "I1"), inf(InformerKind::Sybil, "I2", 2)},
         1});

    // Honest licensee L1.
    add("licensee/malicious-O", "licensee", {OwnerStrategy::FalseAccuser, {LS::Honest, LS::Honest}, {honest("I1"), honest("I2")}});
    add("licensee/coalition-L2-I1-I2", "licensee",
        {OwnerStrategy::Honest, {LS::Honest, LS::Leaker}, {inf(InformerKind::Guesser, "I1"), inf(InformerKind::Guesser, "I2")}});
    add("licensee/coalition-O-L2-I1-I2", "licensee",
        {OwnerStrategy::FalseAccuser,
         {LS::Honest, LS::Leaker},
         {inf(InformerKind::Guesser, "I1"), inf(InformerKind::Replayer, "I2")}});

    // Honest informer I1.
    add("informer/malicious-L1", "informer", {OwnerStrategy::Honest, {LS::GuiltyAppealer, LS::Honest}, {honest("I1")}});
    add("informer/malicious-I2", "informer",
        {OwnerStrategy::Honest, {LS::Leaker, LS::Honest}, {honest("I1"), inf(InformerKind::Sybil, "I2", 3)}});
    add("informer/coalition-L1-I2", "informer",
        {OwnerStrategy::Honest, {LS::GuiltyAppealer, LS::Honest}, {honest("I1"), inf(InformerKind::Replayer, "I2")}});
    return out;
}

MonteCarloResult false_accusation_trials(std::uint32_t n, std::uint64_t trials, std::uint64_t seed,
                                         const std::string& backend) {
    Rng rng(seed);
    auto group = crypto::make_group(backend);
    auto krng = rng.fork("keys");
    const auto owner = crypto::KeyPair::generate(krng);
    const auto licensee = crypto::KeyPair::generate(krng);
    auto irng = rng.fork("init");
    auto init = ot::initialize(group, n, irng, owner.secret);
    std::vector<crypto::GroupPoint> p_prime;
    for (std::uint32_t i = 1; i <= n; ++i) p_prime.push_back(init.secret->p_prime(i));

    MonteCarloResult out;
    for (std::uint64_t t = 0; t < trials; ++t) {
        // One campaign per trial: a fresh seen-set, same published points.
        ot::OwnerOtSecret secret(init.secret->s(), p_prime);
        const auto l = static_cast<std::uint32_t>(rng.uniform_range(1, n));
        const auto record = ot::choose(init.params, l, rng);
        const auto ev = ot::generate_evidence(init.params, secret, record, licensee.secret, licensee.pub, owner.secret);
        const auto framed = static_cast<std::uint32_t>(rng.uniform_range(1, n));
        const auto verdict =
            ot::appeal_verdict(init.params, ot::make_appeal(ev, record), licensee.pub, owner.pub, framed);
        ++out.trials;
        if (verdict == ot::Verdict::FalselyAccused) {
            ++out.exonerated;
        } else {
            ++out.guilty;
        }
    }
    return out;
}

MonteCarloResult false_accusation_games(const CampaignConfig& cfg, std::uint64_t games, std::uint64_t seed) {
    Assignment a;
    a.owner = OwnerStrategy::FalseAccuser;
    a.licensees.assign(cfg.m_licensees, LicenseeStrategy::Honest);
    MonteCarloResult out;
    for (std::uint64_t g = 0; g < games; ++g) {
        const auto res = run_game(cfg, a, seed + g);
        ++out.trials;
        const auto st = res.outcome.statuses.at(a.frame_target - 1);
        if (st == Status::Exonerated) ++out.exonerated;
        if (st == Status::Guilty) ++out.guilty;
    }
    return out;
}

}  // namespace argus::actors
