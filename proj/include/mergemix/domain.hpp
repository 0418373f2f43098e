#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "mergemix/amount.hpp"
#include "mergemix/error.hpp"

namespace mergemix {

// ---------------------------------------------------------------------------
// Merge avoidance values
// ---------------------------------------------------------------------------

using Value = std::int64_t;
using ValueVector = Eigen::Matrix<Value, Eigen::Dynamic, 1>;
/// m(i, j): amount routed from input i to output j.
using SplitMatrix = Eigen::Matrix<Value, Eigen::Dynamic, Eigen::Dynamic>;

ValueVector to_value_vector(const std::vector<Value>& values);
std::vector<Value> to_std_vector(const ValueVector& values);

/// One transaction: input value nodes s_1..s_l and output value nodes t_1..t_r.
struct MAInstance {
    ValueVector inputs;
    ValueVector outputs;

    Eigen::Index input_count() const { return inputs.size(); }
    Eigen::Index output_count() const { return outputs.size(); }
};

/// A split of an MAInstance; every strictly positive cell is one transaction.
struct MASolution {
    SplitMatrix m;

    Eigen::Index tx_count() const { return (m.array() > 0).count(); }
};

struct SingleTargetInstance {
    ValueVector values;
    Value target = 0;
};

struct PartitionInstance {
    std::vector<Value> elements;
};

/// Throws Error(NonPositiveValue) or Error(Unbalanced).
void validate_instance(const MAInstance& inst);

/// Exact row/column sum check. Throws Error(DimensionMismatch) when the
/// matrix is not inputs x outputs; otherwise never throws.
bool check_solution(const MAInstance& inst, const MASolution& sol);

// ---------------------------------------------------------------------------
// Reward / tax schemes
// ---------------------------------------------------------------------------

/// Sequences over route lengths l = 1, 2, ...
namespace seq {

struct Constant {
    Amount value;
};

/// value * base^(l-1); base must be positive.
struct ExponentialDecay {
    Amount value;
    Amount base;
};

/// Piecewise constant. Each (from, value) holds from route length `from`
/// until the next breakpoint; the first breakpoint must start at 1.
struct Step {
    std::vector<std::pair<int, Amount>> breakpoints;
};

/// Explicit values for l = 1..size(); undefined beyond.
struct Table {
    std::vector<Amount> values;
};

}  // namespace seq

using SequenceSpec = std::variant<seq::Constant, seq::ExponentialDecay, seq::Step, seq::Table>;

/// Throws Error(OutOfDomain) for l < 1 or past the end of a table.
Amount evaluate(const SequenceSpec& spec, int l);

/// Throws Error(InvalidConfig) on structurally broken specs (empty tables,
/// non-positive decay base, unordered step breakpoints).
void validate_sequence(const SequenceSpec& spec);

struct RewardScheme {
    Amount R0{1};
    Amount T0{0};
    SequenceSpec rho = seq::Constant{Amount{1}};
    SequenceSpec tau = seq::Constant{Amount{0}};
    int Lmax = 32;
    int Kmax = 32;
};

/// Materialized reward and tax tables, R(l) and T(l) for l = 1..size().
class TabulatedScheme {
public:
    /// Throws Error(DimensionMismatch) on unequal lengths or empty tables and
    /// Error(NonPositiveReward) if any R(l) <= 0.
    TabulatedScheme(AmountVector rewards, AmountVector taxes);

    /// Zero-sum scheme: T == 0 everywhere.
    static TabulatedScheme zero_sum(AmountVector rewards);

    const AmountVector& rewards() const { return rewards_; }
    const AmountVector& taxes() const { return taxes_; }
    int size() const { return static_cast<int>(rewards_.size()); }
    bool covers(int l) const { return l >= 1 && l <= size(); }

    friend bool operator==(const TabulatedScheme& a, const TabulatedScheme& b);

private:
    AmountVector rewards_;
    AmountVector taxes_;
};

/// Tables of R(l) = R0 * 2^(1-l) * rho(l) and
/// T(l) = T0 + R0 * S(l) + sum_{i<l} [rho(i) - rho(l)] + tau(l), for l = 1..upto.
/// Throws MonotonicityViolation when rho increases or tau decreases on
/// [1, upto], NonPositiveReward when R0 <= 0 or rho(l) <= 0, NonPositiveValue
/// when tau(l) < 0, and OutOfDomain when upto exceeds Lmax + Kmax.
TabulatedScheme materialize(const RewardScheme& scheme, int upto);

// ---------------------------------------------------------------------------
// Routes and attacks
// ---------------------------------------------------------------------------

using NodeId = std::uint64_t;

/// Applicant r_0 followed by concealers r_1..r_l.
class Route {
public:
    /// Throws InvalidConfig when there are no concealers and DuplicateNode when
    /// any id repeats.
    Route(NodeId applicant, std::vector<NodeId> concealers);

    NodeId applicant() const { return applicant_; }
    const std::vector<NodeId>& concealers() const { return concealers_; }
    int length() const { return static_cast<int>(concealers_.size()); }
    bool contains(NodeId id) const;

private:
    NodeId applicant_;
    std::vector<NodeId> concealers_;
};

struct Attacker {
    enum class Role { Applicant, Concealer };
    Role role = Role::Applicant;
    int index = 0;  ///< 1-based concealer position; ignored for the applicant.

    static Attacker applicant() { return {Role::Applicant, 0}; }
    static Attacker concealer(int index) { return {Role::Concealer, index}; }
};

struct AttackSpec {
    Attacker attacker;
    std::vector<NodeId> sybils;

    int k() const { return static_cast<int>(sybils.size()); }
};

/// Route length law: exact pmf over distinct lengths >= 1.
class LengthDistribution {
public:
    /// Throws InvalidPmf unless lengths are distinct and >= 1, probabilities
    /// are non-negative and they sum to exactly 1.
    explicit LengthDistribution(std::vector<std::pair<int, Amount>> pmf);

    static LengthDistribution degenerate(int l) { return LengthDistribution({{l, Amount{1}}}); }

    const std::vector<std::pair<int, Amount>>& pmf() const { return pmf_; }
    int max_length() const;

private:
    std::vector<std::pair<int, Amount>> pmf_;
};

}  // namespace mergemix
