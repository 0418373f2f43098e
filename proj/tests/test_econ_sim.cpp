#include <doctest.h>

#include "mergemix/econ_sim.hpp"
#include "oracles.hpp"

using namespace mergemix;

namespace {

TabulatedScheme anchor(Amount T0 = Amount{0}, int upto = 20) {
    RewardScheme s;
    s.R0 = Amount{8};
    s.T0 = std::move(T0);
    return materialize(s, upto);
}

TabulatedScheme uniform4() { return TabulatedScheme::zero_sum(AmountVector::Constant(20, Amount{4})); }

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::ParseError;
}

}  // namespace

TEST_SUITE("ledger") {
    TEST_CASE("total tracks balances") {
        Ledger ledger;
        ledger.credit(1, Amount{5, 2});
        ledger.debit(2, Amount{7});
        ledger.credit(1, Amount{1, 2});
        CHECK(ledger.balance(1) == Amount{3});
        CHECK(ledger.balance(2) == Amount{-7});
        CHECK(ledger.balance(9) == Amount{0});
        CHECK(ledger.total() == Amount{-4});
        CHECK(ledger.total() == ledger.recount());
    }
}

TEST_SUITE("apply_delivery") {
    TEST_CASE("zero-sum scheme leaves the total unchanged") {
        const auto after = apply_delivery(Ledger{}, Route(0, {1, 2, 3}), uniform4());
        CHECK(after.total() == Amount{0});
        CHECK(after.balance(0) == Amount{-12});
    }

    TEST_CASE("anchor scheme, l = 2") {
        const auto after = apply_delivery(Ledger{}, Route(0, {1, 2}), anchor());
        CHECK(after.balance(0) == Amount{-12});
        CHECK(after.balance(1) == Amount{4});
        CHECK(after.balance(2) == Amount{4});
        CHECK(after.total() == Amount{-4});
    }

    TEST_CASE("shifted T0 makes l = 2 neutral") {
        const auto after = apply_delivery(Ledger{}, Route(0, {1, 2}), anchor(Amount{-4}));
        CHECK(after.total() == Amount{0});
    }

    TEST_CASE("route longer than the table") {
        CHECK(code_of([] { (void)apply_delivery(Ledger{}, Route(0, {1, 2, 3}), anchor(Amount{0}, 2)); }) ==
              ErrorCode::OutOfDomain);
    }
}

TEST_SUITE("apply_attack") {
    TEST_CASE("no sybils is a plain delivery") {
        const Route route(0, {1, 2});
        const auto [ledger, report] = apply_attack(Ledger{}, route, {Attacker::concealer(1), {}}, anchor());
        CHECK(ledger == apply_delivery(Ledger{}, route, anchor()));
        CHECK(report.k == 0);
        CHECK(report.concealer_adv == Amount{4});
        CHECK(report.applicant_cost == Amount{12});
    }

    TEST_CASE("hoarding concealer under a uniform reward") {
        const auto [ledger, report] = apply_attack(Ledger{}, Route(0, {1}), {Attacker::concealer(1), {100}}, uniform4());
        CHECK(ledger.balance(1) == Amount{8});
        CHECK(ledger.balance(100) == Amount{0});
        CHECK(ledger.total() == Amount{0});
        CHECK(report.concealer_adv == Amount{8});
    }

    TEST_CASE("applicant gains nothing at the anchor boundary") {
        const auto [ledger, report] = apply_attack(Ledger{}, Route(0, {1, 2}), {Attacker::applicant(), {100}}, anchor());
        CHECK(ledger.balance(0) == Amount{-12});
        CHECK(report.applicant_cost == Amount{12});
        CHECK(ledger.balance(1) == Amount{2});
        CHECK(ledger.total() == Amount{-8});  // -T(3)
    }

    TEST_CASE("collisions and bad positions") {
        const Route route(0, {1, 2});
        CHECK(code_of([&] { (void)apply_attack(Ledger{}, route, {Attacker::applicant(), {2}}, anchor()); }) ==
              ErrorCode::SybilCollision);
        CHECK(code_of([&] { (void)apply_attack(Ledger{}, route, {Attacker::applicant(), {7, 7}}, anchor()); }) ==
              ErrorCode::SybilCollision);
        CHECK(code_of([&] { (void)apply_attack(Ledger{}, route, {Attacker::concealer(3), {7}}, anchor()); }) ==
              ErrorCode::InvalidConfig);
        CHECK(code_of([&] {
                  (void)apply_attack(Ledger{}, route, {Attacker::applicant(), {7, 8}}, anchor(Amount{0}, 3));
              }) == ErrorCode::OutOfDomain);
    }

    TEST_CASE("attacker deltas match the advantage formulas") {
        Rng rng(3);
        for (int trial = 0; trial < 100; ++trial) {
            AmountVector R(16);
            AmountVector T(16);
            for (int i = 0; i < 16; ++i) {
                R(i) = oracle::random_positive(rng, 100, 9);
                T(i) = oracle::random_signed(rng, 100, 9);
            }
            const TabulatedScheme t(R, T);
            const int l = static_cast<int>(rng.uniform(1, 8));
            const int k = static_cast<int>(rng.uniform(0, 8));
            std::vector<NodeId> concealers;
            for (int c = 1; c <= l; ++c) concealers.push_back(static_cast<NodeId>(c));
            const Route route(0, concealers);
            std::vector<NodeId> sybils;
            for (int s = 0; s < k; ++s) sybils.push_back(static_cast<NodeId>(1000 + s));

            const auto idx = static_cast<int>(rng.uniform(1, l));
            const auto by_concealer = apply_attack(Ledger{}, route, {Attacker::concealer(idx), sybils}, t);
            // (k + 1) R(l + k), straight from the table
            CHECK(by_concealer.first.balance(static_cast<NodeId>(idx)) == Amount{k + 1} * R(l + k - 1));
            CHECK(by_concealer.second.concealer_adv == Amount{k + 1} * R(l + k - 1));

            const auto by_applicant = apply_attack(Ledger{}, route, {Attacker::applicant(), sybils}, t);
            const Amount paid = -by_applicant.first.balance(0);
            CHECK(paid == Amount{l} * R(l + k - 1) + T(l + k - 1));
            CHECK(paid == by_applicant.second.applicant_cost);
            // Saving against honest settlement: C(l) - AD(l, k)
            const Amount honest = Amount{l} * R(l - 1) + T(l - 1);
            CHECK(honest - paid == cost(t, l) - advantage_applicant(t, l, k));

            for (const auto& outcome : {by_concealer.first, by_applicant.first}) {
                CHECK(outcome.total() == -T(l + k - 1));
                CHECK(outcome.total() == outcome.recount());
            }
        }
    }
}

TEST_SUITE("expected_drift") {
    TEST_CASE("examples") {
        const LengthDistribution two = LengthDistribution::degenerate(2);
        CHECK(expected_drift(uniform4(), two) == Amount{0});
        CHECK(expected_drift(anchor(), two) == Amount{-4});

        const LengthDistribution uniform({{1, Amount{1, 2}}, {2, Amount{1, 2}}});
        RewardScheme s;
        s.R0 = Amount{8};
        s.T0 = neutral_T0(s, uniform);
        CHECK(expected_drift(materialize(s, 4), uniform) == Amount{0});
        CHECK(tax_variance(materialize(s, 4), uniform) == Amount{4});
    }
}

TEST_SUITE("simulate") {
    TEST_CASE("zero-sum conservation with attacks") {
        for (auto kind : {AttackPolicy::Kind::None, AttackPolicy::Kind::Concealer, AttackPolicy::Kind::Applicant}) {
            SimConfig cfg{uniform4(), LengthDistribution({{1, Amount{1, 3}}, {3, Amount{2, 3}}}), 2000,
                          AttackPolicy{kind, 2}, 5, 16};
            const auto r = simulate(cfg);
            CHECK(r.final_total == r.initial_total);
            for (const auto& [idx, total] : r.supply_trace) CHECK(total == Amount{0});
        }
    }

    TEST_CASE("degenerate length gives the exact drift") {
        SimConfig cfg{anchor(), LengthDistribution::degenerate(2), 1000, {}, 1, 64};
        const auto r = simulate(cfg);
        CHECK(r.drift_per_message == Amount{-4});
        CHECK(r.final_total == Amount{-4000});
    }

    TEST_CASE("report bookkeeping") {
        SimConfig cfg{anchor(), LengthDistribution({{1, Amount{1, 4}}, {2, Amount{3, 4}}}), 2500, {}, 9, 10};
        const auto r = simulate(cfg);
        CHECK(r.messages == 2500);
        CHECK(r.prng == "mt19937_64");
        CHECK(r.drift_per_message == (r.final_total - r.initial_total) / Amount{2500});
        // stride ceil(2500 / 1000) = 3, plus the final message
        CHECK(r.supply_trace.size() == 834);
        CHECK(r.supply_trace.front().first == 3);
        CHECK(r.supply_trace.back().first == 2500);
        CHECK(r.supply_trace.back().second == r.final_total);
        Amount sum{0};
        for (const auto& [id, b] : r.per_node) {
            CHECK(id < 10);
            sum += b;
        }
        CHECK(sum == r.final_total);
    }

    TEST_CASE("same seed, same report") {
        SimConfig cfg{anchor(), LengthDistribution({{1, Amount{1, 2}}, {4, Amount{1, 2}}}), 3000,
                      AttackPolicy{AttackPolicy::Kind::Concealer, 1}, 77, 32};
        CHECK(simulate(cfg) == simulate(cfg));
        SimConfig other = cfg;
        other.seed = 78;
        CHECK_FALSE(simulate(cfg) == simulate(other));
    }

    TEST_CASE("invalid configs") {
        CHECK(code_of([] { (void)simulate({anchor(), LengthDistribution::degenerate(2), 0, {}, 1, 64}); }) ==
              ErrorCode::InvalidConfig);
        CHECK(code_of([] { (void)simulate({anchor(), LengthDistribution::degenerate(5), 10, {}, 1, 5}); }) ==
              ErrorCode::InvalidConfig);
        CHECK(code_of([] {
                  (void)simulate({anchor(Amount{0}, 4), LengthDistribution::degenerate(3), 10,
                                  AttackPolicy{AttackPolicy::Kind::Applicant, 2}, 1, 64});
              }) == ErrorCode::InvalidConfig);
    }
}
