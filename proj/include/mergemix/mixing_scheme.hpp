#pragma once

#include <cstdint>

#include "mergemix/domain.hpp"

namespace mergemix {

/// Net effect of an edge insertion of k Sybils into a route of length l.
struct AdvantageReport {
    int l = 1;
    int k = 0;
    Amount concealer_adv;   ///< (k+1) * R(l+k): what an attacking concealer collects
    Amount applicant_cost;  ///< l * R(l+k) + T(l+k): what an attacking applicant ends up paying

    friend bool operator==(const AdvantageReport&, const AdvantageReport&) = default;
};

/// Outcome of checking the two edge-insertion conditions
///   concealer: (k+1) R(l+k) <= R(l)
///   applicant: l R(l+k) + T(l+k) >= l R(l) + T(l)
/// over a finite (l, k) grid.
struct Verdict {
    enum class Status { Pass, Violation };
    enum class Kind { Concealer, Applicant };

    Status status = Status::Pass;
    Kind kind = Kind::Concealer;
    int l = 0;
    int k = 0;
    Amount lhs;
    Amount rhs;

    bool passed() const { return status == Status::Pass; }
    static Verdict pass() { return {}; }

    friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// S(l) = 2 - (l+1) 2^(1-l).
Amount s_closed(int l);
/// S(l) = sum_{j=1}^{l-1} j 2^(-j), term by term.
Amount s_sum(int l);

/// All three throw Error(OutOfDomain) when l is outside the table.
Amount reward(const TabulatedScheme& t, int l);
Amount tax(const TabulatedScheme& t, int l);
/// C(l) = l R(l) + T(l)
Amount cost(const TabulatedScheme& t, int l);

/// (k+1) R(l+k)
Amount advantage_concealer(const TabulatedScheme& t, int l, int k);
/// l R(l+k) + T(l+k)
Amount advantage_applicant(const TabulatedScheme& t, int l, int k);

AdvantageReport advantage(const TabulatedScheme& t, int l, int k);

/// True iff the concealer (resp. applicant) inequality is violated as
/// reported; recomputed from the table rather than trusting lhs/rhs.
bool reevaluates_as_violated(const TabulatedScheme& t, const Verdict& v);

/// Scans l in [1, Lmax], then k in [1, Kmax], checking the concealer
/// condition before the applicant one; returns the first failure.
/// The table must cover [1, Lmax + Kmax], else Error(OutOfDomain).
Verdict verify(const TabulatedScheme& t, int Lmax, int Kmax);

/// verify() restricted to k = 1.
Verdict verify_base_case(const TabulatedScheme& t, int Lmax);

/// Zero-sum schemes can never satisfy both conditions; this returns the
/// violation found for T == 0. The table must be positive on [1, Lmax+1]
/// (Error(NonPositiveReward) otherwise, Error(OutOfDomain) if too short).
Verdict impossibility_witness(const AmountVector& rewards, int Lmax);

/// Empirical check that k = 1 sufficiency extends to all k <= Kmax.
/// Throws Error(BaseCaseFails) when verify_base_case(t, Lmax + Kmax - 1)
/// does not pass.
bool lemma_check(const TabulatedScheme& t, int Lmax, int Kmax);

struct BaseCaseGenOptions {
    bool unit_decay = false;  ///< u_l = 1: R halves exactly
    bool zero_slack = false;  ///< T grows by exactly l (R(l) - R(l+1))
};

/// Random scheme over l = 1..Lmax that meets both k = 1 conditions by
/// construction:
///   R(l+1) = R(l)/2 * u_l,   u_l in (0, 1]
///   T(l+1) = T(l) + l (R(l) - R(l+1)) + slack_l,   slack_l >= 0
/// Deterministic in seed (mt19937_64).
TabulatedScheme gen_base_case_scheme(std::uint64_t seed, int Lmax, BaseCaseGenOptions options = {});

/// T0 that makes E[T(L)] = 0 under dist for the materialized scheme. The
/// scheme's own T0 is ignored. Error(InvalidPmf) if dist reaches past Lmax.
Amount neutral_T0(const RewardScheme& scheme, const LengthDistribution& dist);

}  // namespace mergemix
