#include "mergemix/econ_sim.hpp"

#include <algorithm>
#include <set>

#include "mergemix/random.hpp"

namespace mergemix {

void Ledger::credit(NodeId id, const Amount& amount) {
    balances_[id] += amount;
    total_ += amount;
}

void Ledger::debit(NodeId id, const Amount& amount) {
    balances_[id] -= amount;
    total_ -= amount;
}

Amount Ledger::balance(NodeId id) const {
    const auto it = balances_.find(id);
    return it == balances_.end() ? Amount{0} : it->second;
}

Amount Ledger::recount() const {
    Amount sum{0};
    for (const auto& [id, b] : balances_) sum += b;
    return sum;
}

Ledger apply_delivery(Ledger ledger, const Route& route, const TabulatedScheme& t) {
    const int l = route.length();
    const Amount r = reward(t, l);
    ledger.debit(route.applicant(), cost(t, l));
    for (NodeId c : route.concealers()) ledger.credit(c, r);
    return ledger;
}

std::pair<Ledger, AdvantageReport> apply_attack(Ledger ledger, const Route& route, const AttackSpec& atk,
                                                const TabulatedScheme& t) {
    std::set<NodeId> sybils;
    for (NodeId s : atk.sybils)
        if (route.contains(s) || !sybils.insert(s).second)
            throw Error(ErrorCode::SybilCollision, "sybil id " + std::to_string(s) + " is not fresh");
    if (atk.attacker.role == Attacker::Role::Concealer &&
        (atk.attacker.index < 1 || atk.attacker.index > route.length()))
        throw Error(ErrorCode::InvalidConfig, "attacking concealer index out of route");

    const int l = route.length();
    const int k = atk.k();
    const int settled = l + k;
    AdvantageReport report = advantage(t, l, k);

    const Amount r = reward(t, settled);
    const NodeId attacker = atk.attacker.role == Attacker::Role::Applicant
                                ? route.applicant()
                                : route.concealers()[static_cast<std::size_t>(atk.attacker.index - 1)];
    ledger.debit(route.applicant(), cost(t, settled));
    for (NodeId c : route.concealers()) ledger.credit(c, r);
    // Sybil quotas go to whoever forged them.
    ledger.credit(attacker, Amount{k} * r);
    return {std::move(ledger), std::move(report)};
}

Amount expected_drift(const TabulatedScheme& t, const LengthDistribution& dist) {
    Amount drift{0};
    for (const auto& [l, p] : dist.pmf()) drift -= p * tax(t, l);
    return drift;
}

Amount tax_variance(const TabulatedScheme& t, const LengthDistribution& dist) {
    Amount mean{0};
    Amount second{0};
    for (const auto& [l, p] : dist.pmf()) {
        const Amount x = tax(t, l);
        mean += p * x;
        second += p * x * x;
    }
    return second - mean * mean;
}

namespace {

class LengthSampler {
public:
    explicit LengthSampler(const LengthDistribution& dist) {
        const Amount scale = Amount::pow2(63);
        Amount cumulative{0};
        for (const auto& [l, p] : dist.pmf()) {
            cumulative += p;
            entries_.push_back({l, cumulative * scale});
        }
    }

    int draw(Rng& rng) const {
        const Amount u{static_cast<std::int64_t>(rng.next() >> 1)};
        for (const auto& [l, bound] : entries_)
            if (u < bound) return l;
        return entries_.back().first;
    }

private:
    std::vector<std::pair<int, Amount>> entries_;
};

std::vector<NodeId> draw_distinct(Rng& rng, std::uint64_t pool, int count) {
    std::vector<NodeId> out;
    out.reserve(static_cast<std::size_t>(count));
    while (static_cast<int>(out.size()) < count) {
        const auto id = static_cast<NodeId>(rng.uniform(0, static_cast<std::int64_t>(pool) - 1));
        if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
    }
    return out;
}

}  // namespace

SimReport simulate(const SimConfig& config) {
    if (config.messages < 1) throw Error(ErrorCode::InvalidConfig, "need at least one message");
    const int longest = config.lengths.max_length();
    const int k = config.attacks.kind == AttackPolicy::Kind::None ? 0 : config.attacks.k;
    if (k < 0) throw Error(ErrorCode::InvalidConfig, "negative sybil count");
    if (config.pool_size < static_cast<std::uint64_t>(longest) + 1)
        throw Error(ErrorCode::InvalidConfig, "node pool smaller than the longest route plus applicant");
    if (!config.scheme.covers(longest + k))
        throw Error(ErrorCode::InvalidConfig, "scheme table does not cover l=" + std::to_string(longest + k));

    Rng rng(config.seed);
    const LengthSampler sampler(config.lengths);
    const std::int64_t stride = (config.messages + 999) / 1000;

    SimReport report;
    report.messages = config.messages;
    report.seed = config.seed;
    report.prng = Rng::kAlgorithm;

    Ledger ledger;
    report.initial_total = ledger.total();
    NodeId next_sybil = config.pool_size;

    for (std::int64_t msg = 1; msg <= config.messages; ++msg) {
        const int l = sampler.draw(rng);
        std::vector<NodeId> nodes = draw_distinct(rng, config.pool_size, l + 1);
        const NodeId applicant = nodes.front();
        nodes.erase(nodes.begin());
        const Route route(applicant, std::move(nodes));

        if (config.attacks.kind == AttackPolicy::Kind::None) {
            ledger = apply_delivery(std::move(ledger), route, config.scheme);
        } else {
            AttackSpec atk;
            atk.attacker = config.attacks.kind == AttackPolicy::Kind::Applicant
                               ? Attacker::applicant()
                               : Attacker::concealer(static_cast<int>(rng.uniform(1, l)));
            for (int s = 0; s < k; ++s) atk.sybils.push_back(next_sybil++);
            ledger = apply_attack(std::move(ledger), route, atk, config.scheme).first;
        }

        if (msg % stride == 0 || msg == config.messages) report.supply_trace.emplace_back(msg, ledger.total());
    }

    report.final_total = ledger.total();
    report.drift_per_message = (report.final_total - report.initial_total) / Amount{config.messages};
    report.per_node = ledger.balances();
    return report;
}

}  // namespace mergemix
