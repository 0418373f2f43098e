#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mergemix/mixing_scheme.hpp"

namespace mergemix {

/// Per-node credit balances. Balances may go negative; total is kept equal to
/// the sum of balances after every mutation.
class Ledger {
public:
    void credit(NodeId id, const Amount& amount);
    void debit(NodeId id, const Amount& amount);

    Amount balance(NodeId id) const;
    const Amount& total() const { return total_; }
    const std::map<NodeId, Amount>& balances() const { return balances_; }

    /// Sum of balances from scratch.
    Amount recount() const;

    friend bool operator==(const Ledger&, const Ledger&) = default;

private:
    std::map<NodeId, Amount> balances_;
    Amount total_{0};
};

/// Applicant pays C(l); each concealer receives R(l). Total moves by -T(l).
Ledger apply_delivery(Ledger ledger, const Route& route, const TabulatedScheme& t);

/// Settles the bogus route of length l + k. Sybil rewards land on the
/// attacker: a concealer ends with (k+1) R(l+k), an applicant pays
/// l R(l+k) + T(l+k). Honest concealers receive R(l+k) each.
/// Throws SybilCollision when a Sybil id repeats or belongs to the route,
/// InvalidConfig for a bad concealer index, OutOfDomain past the table.
std::pair<Ledger, AdvantageReport> apply_attack(Ledger ledger, const Route& route, const AttackSpec& atk,
                                                const TabulatedScheme& t);

/// -E[T(L)]: expected change of total supply per message.
Amount expected_drift(const TabulatedScheme& t, const LengthDistribution& dist);

/// Var[T(L)] under dist, exactly.
Amount tax_variance(const TabulatedScheme& t, const LengthDistribution& dist);

struct AttackPolicy {
    enum class Kind { None, Concealer, Applicant };
    Kind kind = Kind::None;
    int k = 0;
};

struct SimConfig {
    TabulatedScheme scheme;
    LengthDistribution lengths;
    std::int64_t messages = 1;
    AttackPolicy attacks;
    std::uint64_t seed = 0;
    std::uint64_t pool_size = 64;
};

struct SimReport {
    std::int64_t messages = 0;
    std::uint64_t seed = 0;
    std::string prng = "mt19937_64";
    Amount initial_total;
    Amount final_total;
    Amount drift_per_message;
    /// (messages settled so far, total supply), every ceil(n/1000) messages
    /// and always at the last message.
    std::vector<std::pair<std::int64_t, Amount>> supply_trace;
    std::map<NodeId, Amount> per_node;

    friend bool operator==(const SimReport&, const SimReport&) = default;
};

/// Samples a route length from the pmf and distinct nodes from [0, pool_size)
/// per message, then settles a delivery, or an attack when the policy asks
/// for one. Every message is attacked under a non-None policy: a uniformly
/// chosen concealer, or the applicant. Sybil ids are drawn past the pool.
/// Throws InvalidConfig for n < 1, a pool too small for the longest route,
/// or settled lengths past the table.
SimReport simulate(const SimConfig& config);

}  // namespace mergemix
