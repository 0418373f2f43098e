#include "mergemix/mixing_scheme.hpp"

#include <string>

#include "mergemix/random.hpp"

namespace mergemix {

Amount s_closed(int l) {
    if (l < 1) throw Error(ErrorCode::OutOfDomain, "S(l) needs l >= 1");
    return Amount{2} - Amount{l + 1} * Amount::pow2(1 - l);
}

Amount s_sum(int l) {
    if (l < 1) throw Error(ErrorCode::OutOfDomain, "S(l) needs l >= 1");
    Amount sum{0};
    for (int j = 1; j < l; ++j) sum += Amount{j} * Amount::pow2(-j);
    return sum;
}

namespace {

void require_covers(const TabulatedScheme& t, int l) {
    if (!t.covers(l))
        throw Error(ErrorCode::OutOfDomain,
                    "l=" + std::to_string(l) + " outside table [1, " + std::to_string(t.size()) + "]");
}

void require_attack_domain(const TabulatedScheme& t, int l, int k) {
    if (l < 1 || k < 0) throw Error(ErrorCode::OutOfDomain, "need l >= 1 and k >= 0");
    require_covers(t, l + k);
}

}  // namespace

Amount reward(const TabulatedScheme& t, int l) {
    require_covers(t, l);
    return t.rewards()(l - 1);
}

Amount tax(const TabulatedScheme& t, int l) {
    require_covers(t, l);
    return t.taxes()(l - 1);
}

Amount cost(const TabulatedScheme& t, int l) { return Amount{l} * reward(t, l) + tax(t, l); }

Amount advantage_concealer(const TabulatedScheme& t, int l, int k) {
    require_attack_domain(t, l, k);
    return Amount{k + 1} * reward(t, l + k);
}

Amount advantage_applicant(const TabulatedScheme& t, int l, int k) {
    require_attack_domain(t, l, k);
    return Amount{l} * reward(t, l + k) + tax(t, l + k);
}

AdvantageReport advantage(const TabulatedScheme& t, int l, int k) {
    return {l, k, advantage_concealer(t, l, k), advantage_applicant(t, l, k)};
}

bool reevaluates_as_violated(const TabulatedScheme& t, const Verdict& v) {
    if (v.passed()) return false;
    if (v.kind == Verdict::Kind::Concealer)
        return advantage_concealer(t, v.l, v.k) > reward(t, v.l);
    return advantage_applicant(t, v.l, v.k) < cost(t, v.l);
}

Verdict verify(const TabulatedScheme& t, int Lmax, int Kmax) {
    if (Lmax < 1 || Kmax < 1) throw Error(ErrorCode::OutOfDomain, "Lmax and Kmax must be >= 1");
    require_covers(t, Lmax + Kmax);
    for (int l = 1; l <= Lmax; ++l) {
        const Amount honest_reward = reward(t, l);
        const Amount honest_cost = cost(t, l);
        for (int k = 1; k <= Kmax; ++k) {
            Amount hoarded = advantage_concealer(t, l, k);
            if (hoarded > honest_reward)
                return {Verdict::Status::Violation, Verdict::Kind::Concealer, l, k, std::move(hoarded), honest_reward};
            Amount paid = advantage_applicant(t, l, k);
            if (paid < honest_cost)
                return {Verdict::Status::Violation, Verdict::Kind::Applicant, l, k, std::move(paid), honest_cost};
        }
    }
    return Verdict::pass();
}

Verdict verify_base_case(const TabulatedScheme& t, int Lmax) { return verify(t, Lmax, 1); }

Verdict impossibility_witness(const AmountVector& rewards, int Lmax) {
    if (Lmax < 1) throw Error(ErrorCode::OutOfDomain, "Lmax must be >= 1");
    if (rewards.size() < Lmax + 1)
        throw Error(ErrorCode::OutOfDomain, "reward table must cover [1, Lmax+1]");
    // TabulatedScheme rejects non-positive rewards with NonPositiveReward.
    const TabulatedScheme t = TabulatedScheme::zero_sum(rewards);
    return verify(t, Lmax, t.size() - Lmax);
}

bool lemma_check(const TabulatedScheme& t, int Lmax, int Kmax) {
    const Verdict base = verify_base_case(t, Lmax + Kmax - 1);
    if (!base.passed())
        throw Error(ErrorCode::BaseCaseFails,
                    "k=1 conditions fail at l=" + std::to_string(base.l));
    return verify(t, Lmax, Kmax).passed();
}

TabulatedScheme gen_base_case_scheme(std::uint64_t seed, int Lmax, BaseCaseGenOptions options) {
    if (Lmax < 1) throw Error(ErrorCode::OutOfDomain, "Lmax must be >= 1");
    Rng rng(seed);
    auto unit_interval = [&rng] {
        const std::int64_t den = rng.uniform(1, 64);
        return Amount{rng.uniform(1, den), den};
    };

    AmountVector rewards(Lmax);
    AmountVector taxes(Lmax);
    rewards(0) = Amount{rng.uniform(1, 1000), rng.uniform(1, 100)};
    taxes(0) = Amount{0};
    for (int l = 1; l < Lmax; ++l) {
        const Amount decay = options.unit_decay ? Amount{1} : unit_interval();
        const Amount slack = (options.zero_slack || rng.uniform(0, 1) == 0) ? Amount{0}
                                                                          : Amount{rng.uniform(0, 50), rng.uniform(1, 16)};
        rewards(l) = rewards(l - 1) / Amount{2} * decay;
        taxes(l) = taxes(l - 1) + Amount{l} * (rewards(l - 1) - rewards(l)) + slack;
    }
    return TabulatedScheme(std::move(rewards), std::move(taxes));
}

Amount neutral_T0(const RewardScheme& scheme, const LengthDistribution& dist) {
    if (dist.max_length() > scheme.Lmax)
        throw Error(ErrorCode::InvalidPmf, "pmf reaches past Lmax=" + std::to_string(scheme.Lmax));
    RewardScheme untaxed = scheme;
    untaxed.T0 = Amount{0};
    const TabulatedScheme t = materialize(untaxed, dist.max_length());
    Amount expected{0};
    for (const auto& [l, p] : dist.pmf()) expected += p * tax(t, l);
    return -expected;
}

}  // namespace mergemix
