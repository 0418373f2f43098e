#include "mergemix/commands.hpp"

#include <ostream>

#include "mergemix/io.hpp"

namespace mergemix::cli {

namespace {

using io::json;

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::Infeasible:
        case ErrorCode::TooLarge:
            return kLimits;
        case ErrorCode::OddSum:
        case ErrorCode::BaseCaseFails:
            return kNegative;
        default:
            return kMalformed;
    }
}

int ma_solve(const RunConfig& cfg, std::ostream& out) {
    const json doc = io::read_json_file(cfg.input);
    if (cfg.single) {
        const IndexSet k = solve_single_target(io::single_target_from_json(doc));
        io::write_output(cfg.output, io::dump(io::single_target_to_json(k)), out);
        return kOk;
    }
    const MAInstance inst = io::ma_instance_from_json(doc);
    const MASolution sol = cfg.heuristic ? heuristic_multi_target(inst)
                                         : solve_multi_target_exact(inst, ExactLimits{cfg.max_cells});
    io::write_output(cfg.output, io::dump(io::to_json(sol, bounds(inst))), out);
    return kOk;
}

int ma_reduce(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const PartitionInstance p = io::partition_from_json(io::read_json_file(cfg.input));
    MAInstance inst;
    try {
        inst = partition_to_ma(p);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::OddSum) throw;
        err << "odd total: " << e.what() << '\n';
        io::write_output(cfg.output, io::dump({{"has_partition", false}}), out);
        return kNegative;
    }
    io::write_output(cfg.output, io::dump({{"instance", io::to_json(inst)}, {"has_partition", has_partition(p)}}),
                     out);
    return kOk;
}

int scheme_verify(const RunConfig& cfg, std::ostream& out) {
    const json doc = io::read_json_file(cfg.input);
    Verdict verdict;
    json report;
    if (cfg.impossibility) {
        if (!doc.is_object() || !doc.contains("R")) throw Error(ErrorCode::ParseError, "missing field 'R'");
        AmountVector rewards(static_cast<Eigen::Index>(doc.at("R").is_array() ? doc.at("R").size() : 0));
        if (!doc.at("R").is_array()) throw Error(ErrorCode::ParseError, "R must be an array");
        for (Eigen::Index i = 0; i < rewards.size(); ++i)
            rewards(i) = io::amount_from_json(doc.at("R")[static_cast<std::size_t>(i)]);
        int lmax = static_cast<int>(rewards.size()) - 1;
        if (doc.contains("Lmax")) lmax = doc.at("Lmax").get<int>();
        if (cfg.lmax) lmax = *cfg.lmax;
        verdict = impossibility_witness(rewards, lmax);
        report = io::to_json(verdict);
        report["Lmax"] = lmax;
    } else {
        RewardScheme scheme = io::scheme_from_json(doc);
        if (cfg.lmax) scheme.Lmax = *cfg.lmax;
        if (cfg.kmax) scheme.Kmax = *cfg.kmax;
        if (cfg.base_case) {
            verdict = verify_base_case(materialize(scheme, scheme.Lmax + 1), scheme.Lmax);
            report = io::to_json(verdict);
            report["Lmax"] = scheme.Lmax;
            report["Kmax"] = 1;
        } else {
            verdict = verify(materialize(scheme, scheme.Lmax + scheme.Kmax), scheme.Lmax, scheme.Kmax);
            report = io::to_json(verdict);
            report["Lmax"] = scheme.Lmax;
            report["Kmax"] = scheme.Kmax;
        }
    }
    io::write_output(cfg.output, io::dump(report), out);
    return verdict.passed() ? kOk : kNegative;
}

int scheme_design(const RunConfig& cfg, std::ostream& out) {
    RewardScheme scheme = io::scheme_from_json(io::read_json_file(cfg.input));
    if (cfg.lmax) scheme.Lmax = *cfg.lmax;
    if (cfg.kmax) scheme.Kmax = *cfg.kmax;
    json pmf_doc = io::read_json_file(cfg.pmf);
    if (pmf_doc.is_object() && pmf_doc.contains("length_pmf")) pmf_doc = pmf_doc.at("length_pmf");
    const LengthDistribution dist = io::pmf_from_json(pmf_doc);
    scheme.T0 = neutral_T0(scheme, dist);
    json doc = io::to_json(scheme);
    doc["tables"] = io::tables_to_json(materialize(scheme, scheme.Lmax + scheme.Kmax));
    io::write_output(cfg.output, io::dump(doc), out);
    return kOk;
}

int sim_run(const RunConfig& cfg, std::ostream& out) {
    io::SimFile file = io::sim_from_json(io::read_json_file(cfg.input));
    if (cfg.seed) file.seed = *cfg.seed;
    const SimReport report = simulate(io::to_sim_config(file));
    if (cfg.format == RunConfig::Format::Csv) {
        io::write_output(cfg.output, io::trace_csv(report), out);
    } else {
        io::write_output(cfg.output, io::dump(io::to_json(report)), out);
    }
    if (!cfg.trace.empty()) io::write_output(cfg.trace, io::trace_csv(report), out);
    return kOk;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        switch (config.command) {
            case RunConfig::Command::MaSolve: return ma_solve(config, out);
            case RunConfig::Command::MaReduce: return ma_reduce(config, out, err);
            case RunConfig::Command::SchemeVerify: return scheme_verify(config, out);
            case RunConfig::Command::SchemeDesign: return scheme_design(config, out);
            case RunConfig::Command::SimRun: return sim_run(config, out);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const json::exception& e) {
        err << "error: malformed input: " << e.what() << '\n';
        return kMalformed;
    }
    return kMalformed;
}

}  // namespace mergemix::cli
