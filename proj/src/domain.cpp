#include "mergemix/domain.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "mergemix/mixing_scheme.hpp"

namespace mergemix {

ValueVector to_value_vector(const std::vector<Value>& values) {
    return Eigen::Map<const ValueVector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

std::vector<Value> to_std_vector(const ValueVector& values) {
    return {values.data(), values.data() + values.size()};
}

void validate_instance(const MAInstance& inst) {
    if (inst.inputs.size() == 0 || inst.outputs.size() == 0)
        throw Error(ErrorCode::NonPositiveValue, "instance needs at least one input and one output");
    if ((inst.inputs.array() <= 0).any() || (inst.outputs.array() <= 0).any())
        throw Error(ErrorCode::NonPositiveValue, "every value node must be positive");
    if (inst.inputs.sum() != inst.outputs.sum())
        throw Error(ErrorCode::Unbalanced,
                    "unbalanced: inputs sum to " + std::to_string(inst.inputs.sum()) +
                        ", outputs to " + std::to_string(inst.outputs.sum()));
}

bool check_solution(const MAInstance& inst, const MASolution& sol) {
    if (sol.m.rows() != inst.inputs.size() || sol.m.cols() != inst.outputs.size())
        throw Error(ErrorCode::DimensionMismatch, "split matrix must be inputs x outputs");
    if ((sol.m.array() < 0).any()) return false;
    return sol.m.rowwise().sum() == inst.inputs && sol.m.colwise().sum().transpose() == inst.outputs;
}

// ---------------------------------------------------------------------------

namespace {

struct Evaluator {
    int l;

    Amount operator()(const seq::Constant& c) const { return c.value; }

    Amount operator()(const seq::ExponentialDecay& e) const {
        Amount out = e.value;
        for (int i = 1; i < l; ++i) out *= e.base;
        return out;
    }

    Amount operator()(const seq::Step& s) const {
        Amount out;
        for (const auto& [from, value] : s.breakpoints) {
            if (from > l) break;
            out = value;
        }
        return out;
    }

    Amount operator()(const seq::Table& t) const {
        if (l > static_cast<int>(t.values.size()))
            throw Error(ErrorCode::OutOfDomain,
                        "table has no entry for l=" + std::to_string(l));
        return t.values[static_cast<std::size_t>(l - 1)];
    }
};

}  // namespace

Amount evaluate(const SequenceSpec& spec, int l) {
    if (l < 1) throw Error(ErrorCode::OutOfDomain, "route lengths start at 1");
    return std::visit(Evaluator{l}, spec);
}

void validate_sequence(const SequenceSpec& spec) {
    if (const auto* e = std::get_if<seq::ExponentialDecay>(&spec)) {
        if (e->base.sign() <= 0) throw Error(ErrorCode::InvalidConfig, "decay base must be positive");
    } else if (const auto* s = std::get_if<seq::Step>(&spec)) {
        if (s->breakpoints.empty() || s->breakpoints.front().first != 1)
            throw Error(ErrorCode::InvalidConfig, "step sequence must start at l=1");
        for (std::size_t i = 1; i < s->breakpoints.size(); ++i)
            if (s->breakpoints[i].first <= s->breakpoints[i - 1].first)
                throw Error(ErrorCode::InvalidConfig, "step breakpoints must strictly increase");
    } else if (const auto* t = std::get_if<seq::Table>(&spec)) {
        if (t->values.empty()) throw Error(ErrorCode::InvalidConfig, "empty table");
    }
}

TabulatedScheme::TabulatedScheme(AmountVector rewards, AmountVector taxes)
    : rewards_(std::move(rewards)), taxes_(std::move(taxes)) {
    if (rewards_.size() == 0 || rewards_.size() != taxes_.size())
        throw Error(ErrorCode::DimensionMismatch, "reward and tax tables must be non-empty and equally long");
    for (Eigen::Index i = 0; i < rewards_.size(); ++i)
        if (rewards_(i).sign() <= 0)
            throw Error(ErrorCode::NonPositiveReward,
                        "R(" + std::to_string(i + 1) + ") = " + rewards_(i).to_string() + " is not positive");
}

TabulatedScheme TabulatedScheme::zero_sum(AmountVector rewards) {
    AmountVector taxes = AmountVector::Constant(rewards.size(), Amount{0});
    return TabulatedScheme(std::move(rewards), std::move(taxes));
}

bool operator==(const TabulatedScheme& a, const TabulatedScheme& b) {
    return a.size() == b.size() && a.rewards_ == b.rewards_ && a.taxes_ == b.taxes_;
}

TabulatedScheme materialize(const RewardScheme& scheme, int upto) {
    if (upto < 1 || upto > scheme.Lmax + scheme.Kmax)
        throw Error(ErrorCode::OutOfDomain,
                    "cannot tabulate up to l=" + std::to_string(upto) + " (capacity Lmax+Kmax = " +
                        std::to_string(scheme.Lmax + scheme.Kmax) + ")");
    if (scheme.R0.sign() <= 0) throw Error(ErrorCode::NonPositiveReward, "R0 must be positive");
    validate_sequence(scheme.rho);
    validate_sequence(scheme.tau);

    std::vector<Amount> rho(static_cast<std::size_t>(upto));
    std::vector<Amount> tau(static_cast<std::size_t>(upto));
    for (int l = 1; l <= upto; ++l) {
        rho[l - 1] = evaluate(scheme.rho, l);
        tau[l - 1] = evaluate(scheme.tau, l);
        if (rho[l - 1].sign() <= 0)
            throw Error(ErrorCode::NonPositiveReward, "rho(" + std::to_string(l) + ") must be positive");
        if (tau[l - 1].sign() < 0)
            throw Error(ErrorCode::NonPositiveValue, "tau(" + std::to_string(l) + ") must be non-negative");
        if (l > 1 && rho[l - 1] > rho[l - 2])
            throw Error(ErrorCode::MonotonicityViolation, "rho increases at l=" + std::to_string(l));
        if (l > 1 && tau[l - 1] < tau[l - 2])
            throw Error(ErrorCode::MonotonicityViolation, "tau decreases at l=" + std::to_string(l));
    }

    AmountVector rewards(upto);
    AmountVector taxes(upto);
    Amount rho_prefix{0};  // sum_{i<l} rho(i)
    for (int l = 1; l <= upto; ++l) {
        const Amount& rho_l = rho[l - 1];
        rewards(l - 1) = scheme.R0 * Amount::pow2(1 - l) * rho_l;
        taxes(l - 1) = scheme.T0 + scheme.R0 * s_closed(l) + (rho_prefix - Amount{l - 1} * rho_l) + tau[l - 1];
        rho_prefix += rho_l;
    }
    return TabulatedScheme(std::move(rewards), std::move(taxes));
}

// ---------------------------------------------------------------------------

Route::Route(NodeId applicant, std::vector<NodeId> concealers)
    : applicant_(applicant), concealers_(std::move(concealers)) {
    if (concealers_.empty()) throw Error(ErrorCode::InvalidConfig, "a route needs at least one concealer");
    std::set<NodeId> seen{applicant_};
    for (NodeId id : concealers_)
        if (!seen.insert(id).second)
            throw Error(ErrorCode::DuplicateNode, "node " + std::to_string(id) + " appears twice in route");
}

bool Route::contains(NodeId id) const {
    return id == applicant_ || std::find(concealers_.begin(), concealers_.end(), id) != concealers_.end();
}

LengthDistribution::LengthDistribution(std::vector<std::pair<int, Amount>> pmf) : pmf_(std::move(pmf)) {
    if (pmf_.empty()) throw Error(ErrorCode::InvalidPmf, "empty pmf");
    std::set<int> lengths;
    Amount total{0};
    for (const auto& [l, p] : pmf_) {
        if (l < 1) throw Error(ErrorCode::InvalidPmf, "route lengths start at 1");
        if (!lengths.insert(l).second)
            throw Error(ErrorCode::InvalidPmf, "length " + std::to_string(l) + " listed twice");
        if (p.sign() < 0) throw Error(ErrorCode::InvalidPmf, "negative probability");
        total += p;
    }
    if (total != Amount{1})
        throw Error(ErrorCode::InvalidPmf, "probabilities sum to " + total.to_string() + ", not 1");
}

int LengthDistribution::max_length() const {
    int out = 0;
    for (const auto& [l, p] : pmf_) out = std::max(out, l);
    return out;
}

}  // namespace mergemix
