#include "mergemix/io.hpp"

#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace mergemix::io {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const json& field(const json& j, const char* key) {
    if (!j.is_object()) malformed("expected a JSON object");
    const auto it = j.find(key);
    if (it == j.end()) malformed(std::string("missing field '") + key + "'");
    return *it;
}

std::int64_t integer(const json& j, const char* what) {
    if (!j.is_number_integer()) malformed(std::string(what) + " must be an integer");
    return j.get<std::int64_t>();
}

std::uint64_t unsigned_integer(const json& j, const char* what) {
    if (!j.is_number_unsigned()) malformed(std::string(what) + " must be a non-negative integer");
    return j.get<std::uint64_t>();
}

int small_integer(const json& j, const char* what) {
    const auto v = integer(j, what);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        malformed(std::string(what) + " out of range");
    return static_cast<int>(v);
}

const json& array(const json& j, const char* what) {
    if (!j.is_array()) malformed(std::string(what) + " must be an array");
    return j;
}

std::vector<Value> value_list(const json& j, const char* what) {
    std::vector<Value> out;
    for (const auto& e : array(j, what)) out.push_back(integer(e, what));
    return out;
}

std::vector<Amount> amount_list(const json& j, const char* what) {
    std::vector<Amount> out;
    for (const auto& e : array(j, what)) out.push_back(amount_from_json(e));
    return out;
}

AmountVector to_amount_vector(const std::vector<Amount>& values) {
    AmountVector out(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) out(static_cast<Eigen::Index>(i)) = values[i];
    return out;
}

json amount_array(const AmountVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
    return out;
}

int bound_field(const json& j, const char* key, int fallback) {
    if (!j.contains(key)) return fallback;
    const int v = small_integer(j.at(key), key);
    if (v < 1) malformed(std::string(key) + " must be >= 1");
    return v;
}

}  // namespace

Amount amount_from_json(const json& j) {
    if (j.is_string()) return Amount::parse(j.get<std::string>());
    if (j.is_number_integer()) return Amount{j.get<std::int64_t>()};
    malformed("amounts must be \"p/q\" strings or integers, got " + j.dump());
}

json to_json(const Amount& a) { return a.to_string(); }

MAInstance ma_instance_from_json(const json& j) {
    MAInstance inst;
    inst.inputs = to_value_vector(value_list(field(j, "inputs"), "inputs"));
    inst.outputs = to_value_vector(value_list(field(j, "outputs"), "outputs"));
    return inst;
}

SingleTargetInstance single_target_from_json(const json& j) {
    SingleTargetInstance inst;
    inst.values = to_value_vector(value_list(field(j, "values"), "values"));
    inst.target = integer(field(j, "v"), "v");
    return inst;
}

PartitionInstance partition_from_json(const json& j) {
    return PartitionInstance{value_list(field(j, "elements"), "elements")};
}

json to_json(const MAInstance& inst) {
    return {{"inputs", to_std_vector(inst.inputs)}, {"outputs", to_std_vector(inst.outputs)}};
}

json to_json(const MASolution& sol, const MABounds& b) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < sol.m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index c = 0; c < sol.m.cols(); ++c) row.push_back(sol.m(i, c));
        rows.push_back(std::move(row));
    }
    return {{"tx_count", sol.tx_count()}, {"m", std::move(rows)}, {"bounds", {b.lower, b.upper}}};
}

MASolution ma_solution_from_json(const json& j) {
    const json& rows = array(field(j, "m"), "m");
    const auto n_rows = static_cast<Eigen::Index>(rows.size());
    const auto n_cols = n_rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(array(rows[0], "m row").size());
    MASolution sol{SplitMatrix(n_rows, n_cols)};
    for (Eigen::Index i = 0; i < n_rows; ++i) {
        const auto row = value_list(rows[static_cast<std::size_t>(i)], "m row");
        if (static_cast<Eigen::Index>(row.size()) != n_cols) malformed("ragged split matrix");
        for (Eigen::Index c = 0; c < n_cols; ++c) sol.m(i, c) = row[static_cast<std::size_t>(c)];
    }
    return sol;
}

json single_target_to_json(const IndexSet& k) { return {{"K", k}, {"size", k.size()}}; }

// ---------------------------------------------------------------------------

SequenceSpec sequence_from_json(const json& j) {
    const json& kind_field = field(j, "kind");
    if (!kind_field.is_string()) malformed("sequence kind must be a string");
    const auto kind = kind_field.get<std::string>();
    SequenceSpec spec;
    if (kind == "const") {
        spec = seq::Constant{amount_from_json(field(j, "value"))};
    } else if (kind == "exp") {
        spec = seq::ExponentialDecay{amount_from_json(field(j, "value")), amount_from_json(field(j, "base"))};
    } else if (kind == "step") {
        seq::Step step;
        for (const auto& bp : array(field(j, "steps"), "steps")) {
            if (!bp.is_array() || bp.size() != 2) malformed("step breakpoints are [from, value] pairs");
            step.breakpoints.emplace_back(small_integer(bp[0], "step start"), amount_from_json(bp[1]));
        }
        spec = std::move(step);
    } else if (kind == "table") {
        spec = seq::Table{amount_list(field(j, "values"), "values")};
    } else {
        malformed("unknown sequence kind '" + kind + "'");
    }
    try {
        validate_sequence(spec);
    } catch (const Error& e) {
        malformed(e.what());
    }
    return spec;
}

namespace {

struct SequenceWriter {
    json operator()(const seq::Constant& c) const { return {{"kind", "const"}, {"value", to_json(c.value)}}; }
    json operator()(const seq::ExponentialDecay& e) const {
        return {{"kind", "exp"}, {"value", to_json(e.value)}, {"base", to_json(e.base)}};
    }
    json operator()(const seq::Step& s) const {
        json steps = json::array();
        for (const auto& [from, value] : s.breakpoints) steps.push_back({from, to_json(value)});
        return {{"kind", "step"}, {"steps", std::move(steps)}};
    }
    json operator()(const seq::Table& t) const {
        json values = json::array();
        for (const auto& v : t.values) values.push_back(to_json(v));
        return {{"kind", "table"}, {"values", std::move(values)}};
    }
};

}  // namespace

json to_json(const SequenceSpec& spec) { return std::visit(SequenceWriter{}, spec); }

RewardScheme scheme_from_json(const json& j) {
    RewardScheme s;
    s.R0 = amount_from_json(field(j, "R0"));
    s.T0 = j.contains("T0") ? amount_from_json(j.at("T0")) : Amount{0};
    if (j.contains("rho")) s.rho = sequence_from_json(j.at("rho"));
    if (j.contains("tau")) s.tau = sequence_from_json(j.at("tau"));
    s.Lmax = bound_field(j, "Lmax", s.Lmax);
    s.Kmax = bound_field(j, "Kmax", s.Kmax);
    return s;
}

json to_json(const RewardScheme& scheme) {
    return {{"R0", to_json(scheme.R0)}, {"T0", to_json(scheme.T0)}, {"rho", to_json(scheme.rho)},
            {"tau", to_json(scheme.tau)}, {"Lmax", scheme.Lmax},       {"Kmax", scheme.Kmax}};
}

json tables_to_json(const TabulatedScheme& t) {
    return {{"R", amount_array(t.rewards())}, {"T", amount_array(t.taxes())}};
}

LengthDistribution pmf_from_json(const json& j) {
    std::vector<std::pair<int, Amount>> pmf;
    for (const auto& entry : array(j, "length_pmf")) {
        if (!entry.is_array() || entry.size() != 2) malformed("pmf entries are [length, probability] pairs");
        pmf.emplace_back(small_integer(entry[0], "length"), amount_from_json(entry[1]));
    }
    return LengthDistribution(std::move(pmf));
}

json to_json(const LengthDistribution& dist) {
    json out = json::array();
    for (const auto& [l, p] : dist.pmf()) out.push_back({l, to_json(p)});
    return out;
}

json to_json(const Verdict& v) {
    if (v.passed()) return {{"status", "pass"}};
    return {{"status", "violation"},
            {"kind", v.kind == Verdict::Kind::Concealer ? "concealer" : "applicant"},
            {"l", v.l},
            {"k", v.k},
            {"lhs", to_json(v.lhs)},
            {"rhs", to_json(v.rhs)}};
}

Verdict verdict_from_json(const json& j) {
    const json& status = field(j, "status");
    if (status == "pass") return Verdict::pass();
    if (status != "violation") malformed("verdict status must be pass or violation");
    Verdict v;
    v.status = Verdict::Status::Violation;
    const json& kind = field(j, "kind");
    if (kind == "concealer") v.kind = Verdict::Kind::Concealer;
    else if (kind == "applicant") v.kind = Verdict::Kind::Applicant;
    else malformed("verdict kind must be concealer or applicant");
    v.l = small_integer(field(j, "l"), "l");
    v.k = small_integer(field(j, "k"), "k");
    v.lhs = amount_from_json(field(j, "lhs"));
    v.rhs = amount_from_json(field(j, "rhs"));
    return v;
}

// ---------------------------------------------------------------------------

SimFile sim_from_json(const json& j) {
    const json& scheme_json = field(j, "scheme");
    bool neutral = false;
    RewardScheme scheme;
    std::optional<TabulatedScheme> tables;
    if (scheme_json.is_object() && scheme_json.contains("R")) {
        AmountVector rewards = to_amount_vector(amount_list(scheme_json.at("R"), "R"));
        AmountVector taxes = scheme_json.contains("T") ? to_amount_vector(amount_list(scheme_json.at("T"), "T"))
                                                       : AmountVector::Constant(rewards.size(), Amount{0});
        tables.emplace(std::move(rewards), std::move(taxes));
    } else if (scheme_json.is_object() && scheme_json.contains("T0") && scheme_json.at("T0") == "neutral") {
        json copy = scheme_json;
        copy.erase("T0");
        scheme = scheme_from_json(copy);
        neutral = true;
    } else {
        scheme = scheme_from_json(scheme_json);
    }

    AttackPolicy attacks;
    if (j.contains("attacks")) {
        const json& a = j.at("attacks");
        const json& policy = field(a, "policy");
        if (policy == "none") attacks.kind = AttackPolicy::Kind::None;
        else if (policy == "concealer") attacks.kind = AttackPolicy::Kind::Concealer;
        else if (policy == "applicant") attacks.kind = AttackPolicy::Kind::Applicant;
        else malformed("attack policy must be none, concealer or applicant");
        attacks.k = a.contains("k") ? small_integer(a.at("k"), "k") : 0;
        if (attacks.k < 0) malformed("k must be >= 0");
    }

    const auto messages = integer(field(j, "messages"), "messages");
    if (messages < 1) malformed("messages must be >= 1");
    const auto pool = j.contains("pool_size") ? unsigned_integer(j.at("pool_size"), "pool_size") : std::uint64_t{64};

    return SimFile{std::move(scheme),
                   neutral,
                   std::move(tables),
                   pmf_from_json(field(j, "length_pmf")),
                   messages,
                   unsigned_integer(field(j, "seed"), "seed"),
                   attacks,
                   pool};
}

SimConfig to_sim_config(const SimFile& file) {
    if (file.tables)
        return SimConfig{*file.tables, file.lengths, file.messages, file.attacks, file.seed, file.pool_size};
    RewardScheme scheme = file.scheme;
    if (file.neutral_t0) scheme.T0 = neutral_T0(scheme, file.lengths);
    return SimConfig{materialize(scheme, scheme.Lmax + scheme.Kmax), file.lengths, file.messages, file.attacks,
                     file.seed, file.pool_size};
}

json to_json(const SimReport& r) {
    json trace = json::array();
    for (const auto& [idx, total] : r.supply_trace) trace.push_back({idx, to_json(total)});
    json per_node = json::object();
    for (const auto& [id, balance] : r.per_node) per_node[std::to_string(id)] = to_json(balance);
    return {{"messages", r.messages},
            {"seed", r.seed},
            {"prng", r.prng},
            {"initial_total", to_json(r.initial_total)},
            {"final_total", to_json(r.final_total)},
            {"drift_per_message", to_json(r.drift_per_message)},
            {"supply_trace", std::move(trace)},
            {"per_node", std::move(per_node)}};
}

SimReport sim_report_from_json(const json& j) {
    SimReport r;
    r.messages = integer(field(j, "messages"), "messages");
    r.seed = unsigned_integer(field(j, "seed"), "seed");
    const json& prng = field(j, "prng");
    if (!prng.is_string()) malformed("prng must be a string");
    r.prng = prng.get<std::string>();
    r.initial_total = amount_from_json(field(j, "initial_total"));
    r.final_total = amount_from_json(field(j, "final_total"));
    r.drift_per_message = amount_from_json(field(j, "drift_per_message"));
    for (const auto& e : array(field(j, "supply_trace"), "supply_trace")) {
        if (!e.is_array() || e.size() != 2) malformed("trace entries are [index, total] pairs");
        r.supply_trace.emplace_back(integer(e[0], "trace index"), amount_from_json(e[1]));
    }
    const json& per_node = field(j, "per_node");
    if (!per_node.is_object()) malformed("per_node must be an object");
    for (const auto& [key, value] : per_node.items()) {
        try {
            std::size_t used = 0;
            const auto id = std::stoull(key, &used);
            if (used != key.size()) malformed("bad node id '" + key + "'");
            r.per_node.emplace(id, amount_from_json(value));
        } catch (const std::logic_error&) {
            malformed("bad node id '" + key + "'");
        }
    }
    return r;
}

std::string trace_csv(const SimReport& r) {
    std::ostringstream out;
    out << "message_index,total\n";
    for (const auto& [idx, total] : r.supply_trace) out << idx << ',' << total << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------

json parse_document(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        malformed(std::string("invalid JSON: ") + e.what());
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) malformed("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_document(buf.str());
}

void write_output(const std::string& path, const std::string& text, std::ostream& fallback) {
    if (path.empty() || path == "-") {
        fallback << text;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidConfig, "cannot write '" + path + "'");
    out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace mergemix::io
