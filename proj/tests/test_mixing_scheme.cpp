#include <doctest.h>

#include "mergemix/mixing_scheme.hpp"
#include "oracles.hpp"

using namespace mergemix;

namespace {

AmountVector amounts(std::initializer_list<Amount> values) {
    AmountVector v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (const auto& a : values) v(i++) = a;
    return v;
}

TabulatedScheme anchor(int upto = 64) {
    RewardScheme s;
    s.R0 = Amount{8};
    return materialize(s, upto);
}

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

TEST_SUITE("S(l)") {
    TEST_CASE("closed form values") {
        CHECK(s_closed(1) == Amount{0});
        CHECK(s_closed(2) == Amount{1, 2});
        CHECK(s_closed(4) == Amount{11, 8});
    }
    TEST_CASE("direct sum values") {
        CHECK(s_sum(1) == Amount{0});
        CHECK(s_sum(3) == Amount{1});
        CHECK(s_sum(5) == Amount{13, 8});
    }
    TEST_CASE("closed form equals the sum on [1, 64]") {
        for (int l = 1; l <= 64; ++l) CHECK(s_closed(l) == s_sum(l));
    }
    TEST_CASE("domain") { CHECK(code_of([] { (void)s_closed(0); }) == ErrorCode::OutOfDomain); }
}

TEST_SUITE("reward tax cost") {
    TEST_CASE("anchor scheme values") {
        const auto t = anchor();
        CHECK(reward(t, 1) == Amount{8});
        CHECK(tax(t, 1) == Amount{0});
        CHECK(cost(t, 1) == Amount{8});
        CHECK(cost(t, 2) == Amount{12});
        CHECK(cost(t, 3) == Amount{14});
        CHECK(code_of([&] { (void)cost(t, 65); }) == ErrorCode::OutOfDomain);
        CHECK(code_of([&] { (void)reward(t, 0); }) == ErrorCode::OutOfDomain);
    }
}

TEST_SUITE("advantages") {
    TEST_CASE("concealer") {
        const auto t = anchor();
        for (int l = 1; l <= 10; ++l) CHECK(advantage_concealer(t, l, 0) == reward(t, l));
        CHECK(advantage_concealer(t, 2, 1) == Amount{4});
        CHECK(advantage_concealer(t, 2, 1) == reward(t, 2));
        const auto uniform = TabulatedScheme::zero_sum(amounts({4, 4, 4}));
        CHECK(advantage_concealer(uniform, 1, 1) == Amount{8});
        CHECK(code_of([&] { (void)advantage_concealer(t, 60, 5); }) == ErrorCode::OutOfDomain);
    }

    TEST_CASE("applicant") {
        const auto t = anchor();
        for (int l = 1; l <= 10; ++l) CHECK(advantage_applicant(t, l, 0) == cost(t, l));
        CHECK(advantage_applicant(t, 2, 1) == Amount{12});
        CHECK(advantage_applicant(t, 2, 1) == cost(t, 2));
        CHECK(advantage_applicant(t, 1, 2) == Amount{10});
        CHECK(cost(t, 1) == Amount{8});
    }

    TEST_CASE("zero-sum forms agree") {
        Rng rng(41);
        for (int trial = 0; trial < 50; ++trial) {
            AmountVector R(20);
            for (int i = 0; i < 20; ++i) R(i) = oracle::random_positive(rng);
            const auto t = TabulatedScheme::zero_sum(R);
            for (int l = 1; l <= 10; ++l)
                for (int k = 0; k <= 10; ++k) {
                    CHECK(advantage_applicant(t, l, k) == cost(t, l + k) - Amount{k} * reward(t, l + k));
                    CHECK(advantage_concealer(t, l, k) == Amount{k + 1} * R(l + k - 1));
                }
        }
    }
}

TEST_SUITE("verify") {
    TEST_CASE("anchor scheme passes") { CHECK(verify(anchor(), 10, 10).passed()); }

    TEST_CASE("uniform zero-sum scheme: concealer violation at (1,1)") {
        const auto t = TabulatedScheme::zero_sum(AmountVector::Constant(20, Amount{4}));
        const auto v = verify(t, 10, 10);
        CHECK(v.status == Verdict::Status::Violation);
        CHECK(v.kind == Verdict::Kind::Concealer);
        CHECK(v.l == 1);
        CHECK(v.k == 1);
        CHECK(v.lhs == Amount{8});
        CHECK(v.rhs == Amount{4});
        CHECK(reevaluates_as_violated(t, v));
    }

    TEST_CASE("halving zero-sum scheme: applicant violation at (1,1)") {
        AmountVector R(20);
        for (int i = 0; i < 20; ++i) R(i) = Amount{4} * Amount::pow2(-i);
        const auto t = TabulatedScheme::zero_sum(R);
        const auto v = verify(t, 10, 10);
        CHECK(v.kind == Verdict::Kind::Applicant);
        CHECK(v.l == 1);
        CHECK(v.k == 1);
        CHECK(v.lhs == Amount{2});
        CHECK(v.rhs == Amount{4});
    }

    TEST_CASE("table must cover Lmax + Kmax") {
        CHECK(code_of([] { (void)verify(anchor(10), 6, 5); }) == ErrorCode::OutOfDomain);
        CHECK_NOTHROW((void)verify(anchor(10), 5, 5));
    }

    TEST_CASE("witness is the lexicographic minimum") {
        // Fine for l = 1; the applicant condition breaks first at (2, 1).
        const auto t = TabulatedScheme(amounts({8, 4, 2, 1}), amounts({0, 4, 6, 6}));
        const auto v = verify(t, 2, 2);
        CHECK(v.kind == Verdict::Kind::Applicant);
        CHECK(v.l == 2);
        CHECK(v.k == 1);
        // brute scan in the same order
        bool found = false;
        for (int l = 1; l <= 2 && !found; ++l)
            for (int k = 1; k <= 2 && !found; ++k) {
                const bool bad = Amount{k + 1} * t.rewards()(l + k - 1) > t.rewards()(l - 1) ||
                                 Amount{l} * t.rewards()(l + k - 1) + t.taxes()(l + k - 1) <
                                     Amount{l} * t.rewards()(l - 1) + t.taxes()(l - 1);
                if (bad) {
                    found = true;
                    CHECK(l == v.l);
                    CHECK(k == v.k);
                }
            }
        CHECK(found);
    }
}

TEST_SUITE("verify_base_case") {
    TEST_CASE("anchor scheme is tight everywhere") {
        const auto t = anchor();
        CHECK(verify_base_case(t, 40).passed());
        for (int l = 1; l <= 40; ++l) {
            CHECK(advantage_concealer(t, l, 1) == reward(t, l));
            CHECK(advantage_applicant(t, l, 1) == cost(t, l));
        }
    }

    TEST_CASE("concealer failure") {
        const auto t = TabulatedScheme(amounts({4, Amount{5, 2}}), amounts({0, 100}));
        const auto v = verify_base_case(t, 1);
        CHECK(v.kind == Verdict::Kind::Concealer);
        CHECK(v.l == 1);
        CHECK(v.lhs == Amount{5});
        CHECK(v.rhs == Amount{4});
    }

    TEST_CASE("applicant failure without a rising tax") {
        const auto t = TabulatedScheme(amounts({4, 2}), amounts({0, 0}));
        const auto v = verify_base_case(t, 1);
        CHECK(v.kind == Verdict::Kind::Applicant);
        CHECK(v.l == 1);
        CHECK(v.k == 1);
        // T(2) = 2 = 1 * (R(1) - R(2)) is the smallest passing tax
        CHECK(verify_base_case(TabulatedScheme(amounts({4, 2}), amounts({0, 2})), 1).passed());
        CHECK_FALSE(verify_base_case(TabulatedScheme(amounts({4, 2}), amounts({0, Amount{19, 10}})), 1).passed());
    }
}

TEST_SUITE("impossibility") {
    TEST_CASE("examples") {
        const auto constant = impossibility_witness(AmountVector::Constant(6, Amount{7, 3}), 5);
        CHECK(constant.kind == Verdict::Kind::Concealer);
        CHECK(constant.l == 1);
        CHECK(constant.k == 1);

        AmountVector halving(6);
        for (int i = 0; i < 6; ++i) halving(i) = Amount::pow2(4 - i);
        const auto h = impossibility_witness(halving, 5);
        CHECK(h.kind == Verdict::Kind::Applicant);
        CHECK(h.l == 1);
        CHECK(h.k == 1);

        const auto bumpy = impossibility_witness(amounts({4, 4, 1, 1}), 3);
        CHECK(bumpy.kind == Verdict::Kind::Concealer);
        CHECK(bumpy.l == 1);
    }

    TEST_CASE("errors") {
        CHECK(code_of([] { (void)impossibility_witness(amounts({4, 0, 1}), 2); }) == ErrorCode::NonPositiveReward);
        CHECK(code_of([] { (void)impossibility_witness(amounts({4}), 1); }) == ErrorCode::OutOfDomain);
    }

    TEST_CASE("never passes on random positive tables") {
        Rng rng(1234);
        for (int trial = 0; trial < 100; ++trial) {
            AmountVector R(21);
            for (int i = 0; i < 21; ++i) R(i) = oracle::random_positive(rng, 50, 7);
            const auto v = impossibility_witness(R, 20);
            REQUIRE_FALSE(v.passed());
            CHECK(reevaluates_as_violated(TabulatedScheme::zero_sum(R), v));
        }
    }
}

TEST_SUITE("k=1 sufficiency") {
    TEST_CASE("anchor scheme") { CHECK(lemma_check(anchor(), 30, 10)); }

    TEST_CASE("generated schemes") {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto t = gen_base_case_scheme(seed, 40);
            CHECK(verify_base_case(t, 39).passed());
            CHECK(lemma_check(t, 30, 10));
        }
    }

    TEST_CASE("base case failure is a precondition error") {
        const auto t = TabulatedScheme::zero_sum(AmountVector::Constant(10, Amount{1}));
        CHECK(code_of([&] { (void)lemma_check(t, 5, 5); }) == ErrorCode::BaseCaseFails);
    }

    TEST_CASE("generator determinism and limiting family") {
        CHECK(gen_base_case_scheme(42, 30) == gen_base_case_scheme(42, 30));
        CHECK_FALSE(gen_base_case_scheme(42, 30) == gen_base_case_scheme(43, 30));

        const auto t = gen_base_case_scheme(9, 30, {true, true});
        const Amount R1 = t.rewards()(0);
        for (int l = 1; l <= 30; ++l) {
            CHECK(t.rewards()(l - 1) == R1 * Amount::pow2(1 - l));
            CHECK(t.taxes()(l - 1) == t.taxes()(0) + s_sum(l) * R1);
        }
    }
}

TEST_SUITE("neutral T0") {
    TEST_CASE("examples") {
        RewardScheme s;
        s.R0 = Amount{8};
        CHECK(neutral_T0(s, LengthDistribution::degenerate(2)) == Amount{-4});
        s.T0 = Amount{-4};
        CHECK(tax(materialize(s, 2), 2) == Amount{0});

        const LengthDistribution uniform({{1, Amount{1, 2}}, {2, Amount{1, 2}}});
        const Amount t0 = neutral_T0(s, uniform);
        CHECK(t0 == Amount{-2});
        s.T0 = t0;
        const auto t = materialize(s, 2);
        CHECK(tax(t, 1) == Amount{-2});
        CHECK(tax(t, 2) == Amount{2});

        CHECK(neutral_T0(s, LengthDistribution::degenerate(1)) == Amount{0});
    }

    TEST_CASE("expected tax vanishes for arbitrary schemes") {
        Rng rng(77);
        for (int trial = 0; trial < 30; ++trial) {
            RewardScheme s;
            s.R0 = oracle::random_positive(rng);
            s.T0 = oracle::random_signed(rng);  // ignored
            s.rho = seq::ExponentialDecay{oracle::random_positive(rng, 10, 3), Amount{rng.uniform(1, 4), 4}};
            s.tau = seq::Step{{{1, Amount{0}}, {3, oracle::random_positive(rng, 10, 3)}}};
            std::vector<std::pair<int, Amount>> pmf;
            Amount left{1};
            for (int l = 1; l < 6; ++l) {
                const Amount p = left * Amount{rng.uniform(0, 3), 4};
                pmf.emplace_back(l, p);
                left -= p;
            }
            pmf.emplace_back(6, left);
            const LengthDistribution dist(pmf);
            s.T0 = neutral_T0(s, dist);
            const auto t = materialize(s, 6);
            Amount mean{0};
            for (const auto& [l, p] : dist.pmf()) mean += p * tax(t, l);
            CHECK(mean == Amount{0});
        }
    }

    TEST_CASE("pmf past Lmax") {
        RewardScheme s;
        s.Lmax = 2;
        CHECK(code_of([&] { (void)neutral_T0(s, LengthDistribution::degenerate(3)); }) == ErrorCode::InvalidPmf);
    }
}

TEST_SUITE("materialized families") {
    TEST_CASE("unit rho with any non-decreasing tau passes") {
        Rng rng(55);
        for (int trial = 0; trial < 20; ++trial) {
            RewardScheme s;
            s.R0 = oracle::random_positive(rng);
            s.T0 = oracle::random_signed(rng);
            std::vector<Amount> tau;
            Amount acc{0};
            for (int l = 1; l <= 32; ++l) {
                acc += Amount{rng.uniform(0, 5), rng.uniform(1, 3)};
                tau.push_back(acc);
            }
            s.tau = seq::Table{tau};
            s.Lmax = 16;
            s.Kmax = 16;
            CHECK(verify(materialize(s, 32), 16, 16).passed());
        }
    }

    // The constructed tax only offsets rho's drop by an unweighted sum, so
    // rho above 1 leaves the applicant condition short by l (rho - 1) R0 2^-l.
    TEST_CASE("rho above one can fail the applicant condition") {
        RewardScheme s;
        s.R0 = Amount{8};
        s.rho = seq::Constant{Amount{2}};
        const auto t = materialize(s, 4);
        const auto v = verify(t, 2, 2);
        CHECK(v.kind == Verdict::Kind::Applicant);
        CHECK(v.l == 1);
        CHECK(v.k == 1);
        CHECK(v.lhs == Amount{12});
        CHECK(v.rhs == Amount{16});
    }

    TEST_CASE("constant rho at most one always passes") {
        Rng rng(66);
        for (int trial = 0; trial < 20; ++trial) {
            RewardScheme s;
            s.R0 = oracle::random_positive(rng);
            s.T0 = oracle::random_signed(rng);
            s.rho = seq::Constant{Amount{rng.uniform(1, 10), 10}};
            CHECK(verify(materialize(s, 32), 16, 16).passed());
        }
    }
}
