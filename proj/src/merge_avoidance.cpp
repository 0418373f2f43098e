#include "mergemix/merge_avoidance.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace mergemix {

namespace {

void validate_single(const SingleTargetInstance& inst) {
    if (inst.values.size() == 0 || (inst.values.array() <= 0).any() || inst.target <= 0)
        throw Error(ErrorCode::NonPositiveValue, "single-target values and target must be positive");
    if (inst.values.sum() < inst.target)
        throw Error(ErrorCode::Infeasible, "values sum to " + std::to_string(inst.values.sum()) +
                                               ", below target " + std::to_string(inst.target));
}

}  // namespace

IndexSet solve_single_target(const SingleTargetInstance& inst) {
    validate_single(inst);
    std::vector<int> order(static_cast<std::size_t>(inst.values.size()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return inst.values(a) > inst.values(b); });

    IndexSet chosen;
    Value covered = 0;
    for (int i : order) {
        if (covered >= inst.target) break;
        chosen.push_back(i);
        covered += inst.values(i);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

IndexSet brute_single_target(const SingleTargetInstance& inst) {
    constexpr Eigen::Index kMaxValues = 20;
    if (inst.values.size() > kMaxValues)
        throw Error(ErrorCode::TooLarge, "brute force is limited to 20 values");
    validate_single(inst);

    const int n = static_cast<int>(inst.values.size());
    for (int size = 1; size <= n; ++size) {
        std::vector<int> pick(static_cast<std::size_t>(size));
        std::iota(pick.begin(), pick.end(), 0);
        while (true) {
            Value sum = 0;
            for (int i : pick) sum += inst.values(i);
            if (sum >= inst.target) return pick;

            // next combination in lexicographic order
            int pos = size - 1;
            while (pos >= 0 && pick[pos] == n - size + pos) --pos;
            if (pos < 0) break;
            ++pick[pos];
            for (int q = pos + 1; q < size; ++q) pick[q] = pick[q - 1] + 1;
        }
    }
    throw Error(ErrorCode::Infeasible, "no subset reaches the target");  // unreachable after validation
}

MABounds bounds(const MAInstance& inst) {
    return {inst.input_count(), inst.input_count() * inst.output_count()};
}

// ---------------------------------------------------------------------------

namespace {

class SplitSearch {
public:
    SplitSearch(const MAInstance& inst, MASolution incumbent)
        : rows_(inst.input_count()),
          cols_(inst.output_count()),
          row_left_(inst.inputs),
          col_left_(inst.outputs),
          current_(SplitMatrix::Zero(rows_, cols_)),
          best_(std::move(incumbent)),
          best_count_(best_.tx_count()),
          open_rows_(rows_),
          open_cols_(cols_) {}

    MASolution run() {
        visit(0);
        return best_;
    }

private:
    void visit(Eigen::Index cell) {
        if (cell == rows_ * cols_) {
            if (placed_ < best_count_) {
                best_.m = current_;
                best_count_ = placed_;
            }
            return;
        }
        // Every open row and every open column still needs one more positive cell.
        if (placed_ + std::max(open_rows_, open_cols_) >= best_count_) return;

        const Eigen::Index i = cell / cols_;
        const Eigen::Index j = cell % cols_;
        const bool last_col = j == cols_ - 1;
        const bool last_row = i == rows_ - 1;
        Value hi = std::min(row_left_(i), col_left_(j));
        Value lo = 0;
        if (last_col) {
            if (row_left_(i) > col_left_(j)) return;
            lo = row_left_(i);
        }
        if (last_row) {
            if (col_left_(j) > row_left_(i)) return;
            lo = std::max(lo, col_left_(j));
        }
        for (Value v = hi; v >= lo; --v) {
            assign(i, j, v);
            visit(cell + 1);
            assign(i, j, -v);
            if (placed_ + std::max(open_rows_, open_cols_) >= best_count_) return;
        }
    }

    // Moves v units into cell (i, j); a negative v undoes a previous move.
    void assign(Eigen::Index i, Eigen::Index j, Value v) {
        if (v == 0) return;
        const bool row_was_open = row_left_(i) > 0;
        const bool col_was_open = col_left_(j) > 0;
        row_left_(i) -= v;
        col_left_(j) -= v;
        current_(i, j) += v;
        placed_ += v > 0 ? 1 : -1;
        open_rows_ += (row_left_(i) > 0) - row_was_open;
        open_cols_ += (col_left_(j) > 0) - col_was_open;
    }

    Eigen::Index rows_;
    Eigen::Index cols_;
    ValueVector row_left_;
    ValueVector col_left_;
    SplitMatrix current_;
    MASolution best_;
    Eigen::Index best_count_;
    Eigen::Index placed_ = 0;
    Eigen::Index open_rows_;
    Eigen::Index open_cols_;
};

}  // namespace

MASolution solve_multi_target_exact(const MAInstance& inst, ExactLimits limits) {
    validate_instance(inst);
    if (inst.input_count() * inst.output_count() > limits.max_cells)
        throw Error(ErrorCode::TooLarge,
                    "exact search limited to " + std::to_string(limits.max_cells) + " cells, instance has " +
                        std::to_string(inst.input_count() * inst.output_count()));
    MASolution incumbent = heuristic_multi_target(inst);
    // Nothing beats one transaction per input.
    if (incumbent.tx_count() == inst.input_count()) return incumbent;
    return SplitSearch(inst, std::move(incumbent)).run();
}

MASolution heuristic_multi_target(const MAInstance& inst) {
    validate_instance(inst);
    ValueVector row_left = inst.inputs;
    ValueVector col_left = inst.outputs;
    MASolution sol{SplitMatrix::Zero(inst.input_count(), inst.output_count())};
    Eigen::Index i = 0;
    Eigen::Index j = 0;
    while (i < row_left.size() && j < col_left.size()) {
        const Value v = std::min(row_left(i), col_left(j));
        sol.m(i, j) = v;
        row_left(i) -= v;
        col_left(j) -= v;
        if (row_left(i) == 0) ++i;
        if (col_left(j) == 0) ++j;
    }
    return sol;
}

MAInstance partition_to_ma(const PartitionInstance& p) {
    if (p.elements.empty() || std::any_of(p.elements.begin(), p.elements.end(), [](Value v) { return v <= 0; }))
        throw Error(ErrorCode::NonPositiveValue, "partition elements must be positive and non-empty");
    const Value total = std::accumulate(p.elements.begin(), p.elements.end(), Value{0});
    if (total % 2 != 0) throw Error(ErrorCode::OddSum, "odd total " + std::to_string(total));
    MAInstance inst;
    inst.inputs = to_value_vector(p.elements);
    inst.outputs = ValueVector::Constant(2, total / 2);
    return inst;
}

bool has_partition(const PartitionInstance& p) {
    const Value total = std::accumulate(p.elements.begin(), p.elements.end(), Value{0});
    if (total % 2 != 0) return false;
    const Value half = total / 2;
    std::vector<char> reachable(static_cast<std::size_t>(half) + 1, 0);
    reachable[0] = 1;
    for (Value e : p.elements)
        for (Value s = half; s >= e; --s)
            if (reachable[s - e]) reachable[s] = 1;
    return reachable[half] != 0;
}

}  // namespace mergemix
