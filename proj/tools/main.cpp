#include "beckfiala/engine.hpp"
#include "beckfiala/generator.hpp"
#include "beckfiala/oracle.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using nlohmann::json;

namespace {

// Stable exit codes: 0 ok, 2 parse error, 3 infeasible profile,
// 4 cohort-seed abort, 5 step cap exceeded, 6 invariant failure, 1 internal.
constexpr int kOk = 0, kInternal = 1, kParse = 2, kInfeasible = 3, kSeedAbort = 4, kStepCap = 5,
              kInvariant = 6;

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in) throw bf::ParseError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spill(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

int abort_code(bf::AbortKind k) {
    switch (k) {
        case bf::AbortKind::SeedNotFound: return kSeedAbort;
        case bf::AbortKind::StepCapExceeded: return kStepCap;
        case bf::AbortKind::InvariantFailure: return kInvariant;
        case bf::AbortKind::InternalError: return kInternal;
        case bf::AbortKind::None: return kOk;
    }
    return kInternal;
}

const char* abort_name(bf::AbortKind k) {
    switch (k) {
        case bf::AbortKind::SeedNotFound: return "seed-not-found";
        case bf::AbortKind::StepCapExceeded: return "step-cap-exceeded";
        case bf::AbortKind::InvariantFailure: return "invariant-failure";
        case bf::AbortKind::InternalError: return "internal-error";
        case bf::AbortKind::None: return "none";
    }
    return "?";
}

bf::CheckMode parse_check_mode(const std::string& s, long long& every) {
    if (s == "off") return bf::CheckMode::Off;
    if (s == "per-step") return bf::CheckMode::PerStep;
    if (s.rfind("every-", 0) == 0) {
        every = std::stoll(s.substr(6));
        if (every < 1) throw bf::ParseError("every-K needs K >= 1");
        return bf::CheckMode::EveryK;
    }
    throw bf::ParseError("check-invariants must be off, per-step or every-K");
}

bf::ConstantProfile load_profile(const std::string& spec, const bf::SetSystem& sys) {
    if (spec == "paper") return bf::paper_profile(bf::BigInt(sys.degree));
    return bf::profile_from_json(slurp(spec));
}

int cmd_run(const std::string& input, const std::string& mode, const std::string& profile_spec,
            const std::string& check_spec, const std::string& trace_path, long long step_cap,
            const std::string& resume_path, bool flip) {
    auto sys = std::make_shared<const bf::SetSystem>(bf::parse_set_system(slurp(input)));
    bf::RunOptions opt;
    opt.check = parse_check_mode(check_spec, opt.check_every);
    opt.record_trace = !trace_path.empty();
    opt.step_cap = step_cap;
    opt.sign_convention = flip ? -1 : +1;

    bf::RunResult res;
    if (mode == "classic") {
        res = bf::classic_beck_fiala(sys, opt);
    } else if (mode == "cohort") {
        std::string spec = profile_spec;
        if (spec.empty()) {
            const char* env = std::getenv("BECKFIALA_PROFILE");
            if (env) spec = env;
        }
        if (spec.empty()) throw bf::ParseError("cohort mode requires --profile (or BECKFIALA_PROFILE)");
        bf::ConstantProfile profile = load_profile(spec, *sys);
        if (!resume_path.empty()) {
            bf::AlgorithmState st = bf::state_from_json(sys, slurp(resume_path));
            res = bf::run_from(std::move(st), opt);
        } else {
            res = bf::run(sys, profile, opt);
        }
    } else {
        throw bf::ParseError("mode must be classic or cohort");
    }

    if (!trace_path.empty()) spill(trace_path, bf::trace_to_jsonl(res.trace));

    if (!res.terminated()) {
        json j;
        j["abort"] = abort_name(res.abort);
        j["detail"] = res.abort_detail;
        j["steps_executed"] = res.steps_executed;
        std::cout << j.dump() << "\n";
        std::cerr << "aborted (" << abort_name(res.abort) << "): " << res.abort_detail << "\n";
        return abort_code(res.abort);
    }

    std::cout << bf::coloring_to_json(*sys, res.final_coloring) << "\n";
    std::cerr << "mode=" << mode << " d=" << sys->degree << " discrepancy=" << res.discrepancy
              << " bound=" << res.bound_claimed << " steps=" << res.steps_executed << "\n";
    return kOk;
}

int cmd_verify(const std::string& input, const std::string& coloring_path) {
    bf::SetSystem sys = bf::parse_set_system(slurp(input));
    bf::FloatingColoring chi = bf::coloring_from_json(sys, slurp(coloring_path));
    json per = json::array();
    long long worst = 0;
    for (int s = 0; s < sys.num_sets(); ++s) {
        long long v = 0;
        for (int x : sys.sets[s]) v += chi.values[x] == 1 ? 1 : -1;
        if (v < 0) v = -v;
        per.push_back(v);
        worst = std::max(worst, v);
        std::cerr << "set " << s << ": |chi(S)| = " << v << "\n";
    }
    std::cerr << "max = " << worst << "\n";
    json j;
    j["per_set"] = per;
    j["max"] = worst;
    std::cout << j.dump() << "\n";
    return kOk;
}

int cmd_gen(const std::string& kind, int n, int sets, int d, uint64_t seed, const std::string& out) {
    bf::GeneratorSpec spec;
    spec.kind = bf::kind_from_string(kind);
    spec.n = n;
    spec.num_sets = sets;
    spec.d = d;
    spec.seed = seed;
    bf::SetSystem sys = bf::generate(spec);
    std::string doc = bf::instance_to_json(sys);
    if (out.empty())
        std::cout << doc << "\n";
    else
        spill(out, doc + "\n");
    std::cerr << "generated n=" << sys.n << " sets=" << sys.num_sets() << " degree=" << sys.degree << "\n";
    return kOk;
}

int cmd_oracle(const std::string& input, int cap) {
    bf::SetSystem sys = bf::parse_set_system(slurp(input));
    long long disc = bf::brute_force_discrepancy(sys, cap);
    json j;
    j["discrepancy"] = disc;
    std::cout << j.dump() << "\n";
    std::cerr << "exact discrepancy = " << disc << "\n";
    return kOk;
}

int cmd_check_constants(long long d_arg, const std::string& profile_path, long long d_for_profile) {
    bf::ConstantProfile profile;
    bf::BigInt d;
    if (!profile_path.empty()) {
        profile = bf::profile_from_json(slurp(profile_path));
        d = d_for_profile > 0 ? bf::BigInt(d_for_profile) : bf::BigInt(100);
    } else {
        d = d_arg;
        profile = bf::paper_tables(d);  // no W gate here: report instead
    }
    bf::InequalityReport rep = bf::check_inequalities(profile, d);
    std::cout << bf::inequality_report_to_json(rep) << "\n";
    std::cerr << "delta=" << profile.delta << " alpha=" << bf::rat_to_string(profile.alpha)
              << " W=" << profile.w << (profile.w < 1 ? " (infeasible: W < 1)" : "") << "\n";
    for (const auto& e : rep.entries) {
        const char* v = e.verdict == bf::InequalityEntry::Verdict::Holds          ? "holds"
                        : e.verdict == bf::InequalityEntry::Verdict::Fails        ? "FAILS"
                        : e.verdict == bf::InequalityEntry::Verdict::NotApplicable ? "n/a"
                                                                                   : "unrepresentable";
        std::cerr << "(" << e.id << ")";
        if (e.r >= 0) std::cerr << " r=" << e.r;
        std::cerr << ": " << v;
        if (!e.lhs.empty()) std::cerr << "  [" << e.lhs << " vs " << e.rhs << "]";
        std::cerr << "\n";
    }
    return kOk;
}

int cmd_inspect_trace(const std::string& trace_path) {
    auto trace = bf::trace_from_jsonl(slurp(trace_path));
    std::array<long long, 10> hist{};
    long long monotonic_violations = 0, frozen_total = 0, checked = 0;
    std::string first_failure;
    for (const auto& rec : trace) {
        if (rec.step >= 1 && rec.step <= 9) ++hist[rec.step];
        if (rec.step != 5 && rec.potential_after <= rec.potential_before) ++monotonic_violations;
        frozen_total += rec.frozen_delta;
        if (rec.checked) ++checked;
        if (first_failure.empty() && !rec.failure.empty()) first_failure = rec.failure;
    }
    json j;
    j["steps"] = trace.size();
    j["histogram"] = std::vector<long long>(hist.begin() + 1, hist.end());
    j["potential_violations"] = monotonic_violations;
    j["frozen_total"] = frozen_total;
    j["checked_stages"] = checked;
    j["first_failure"] = first_failure;
    std::cout << j.dump() << "\n";
    std::cerr << "steps=" << trace.size() << " checked=" << checked
              << " potential-violations=" << monotonic_violations << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bounded-degree set-system discrepancy solvers"};
    app.require_subcommand(1);

    std::string input, mode = "cohort", profile_spec, check_spec = "off", trace_path, resume_path;
    long long step_cap = -1;
    bool flip = false;
    auto* run = app.add_subcommand("run", "two-color an instance");
    run->add_option("--input", input, "instance JSON")->required();
    run->add_option("--mode", mode, "classic | cohort");
    run->add_option("--profile", profile_spec, "'paper' or a profile JSON path (cohort mode)");
    run->add_option("--check-invariants", check_spec, "off | per-step | every-K");
    run->add_option("--trace", trace_path, "write the step trace (JSONL)");
    run->add_option("--step-cap", step_cap, "abort after this many steps");
    run->add_option("--resume", resume_path, "debug: resume from a state snapshot JSON");
    run->add_flag("--flip-signs", flip, "mirror every sign preference");

    std::string v_input, v_coloring;
    auto* verify = app.add_subcommand("verify", "recompute the discrepancy of a coloring");
    verify->add_option("--input", v_input)->required();
    verify->add_option("--coloring", v_coloring, "coloring JSON path (or - for stdin)")->required();

    std::string g_kind = "random-bounded-degree", g_out;
    int g_n = 0, g_sets = 0, g_d = 0;
    uint64_t g_seed = 0;
    auto* gen = app.add_subcommand("gen", "emit a pseudo-random instance");
    gen->add_option("--kind", g_kind, "random-bounded-degree | near-regular | tight-sets");
    gen->add_option("--n", g_n)->required();
    gen->add_option("--sets", g_sets)->required();
    gen->add_option("--d", g_d, "degree bound")->required();
    gen->add_option("--seed", g_seed);
    gen->add_option("--out", g_out, "output path (default stdout)");

    std::string o_input;
    int o_cap = 24;
    auto* oracle = app.add_subcommand("oracle", "exact brute-force discrepancy");
    oracle->add_option("--input", o_input)->required();
    oracle->add_option("--cap", o_cap, "max n for enumeration");

    long long c_d = 0, c_d_for_profile = 0;
    std::string c_profile;
    auto* cc = app.add_subcommand("check-constants", "evaluate the constant inequalities");
    cc->add_option("--d", c_d, "derive the paper tables from this degree");
    cc->add_option("--profile", c_profile, "profile JSON path");
    cc->add_option("--profile-d", c_d_for_profile, "degree to evaluate a profile file against (default 100)");

    std::string t_path;
    auto* it = app.add_subcommand("inspect-trace", "summarize a trace JSONL file");
    it->add_option("--trace", t_path)->required();

    try {
        app.parse(argc, argv);
        if (run->parsed())
            return cmd_run(input, mode, profile_spec, check_spec, trace_path, step_cap, resume_path, flip);
        if (verify->parsed()) return cmd_verify(v_input, v_coloring);
        if (gen->parsed()) return cmd_gen(g_kind, g_n, g_sets, g_d, g_seed, g_out);
        if (oracle->parsed()) return cmd_oracle(o_input, o_cap);
        if (cc->parsed()) {
            if (c_profile.empty() && c_d < 2) throw bf::ParseError("check-constants needs --d or --profile");
            return cmd_check_constants(c_d, c_profile, c_d_for_profile);
        }
        if (it->parsed()) return cmd_inspect_trace(t_path);
        return kParse;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kParse;
    } catch (const bf::ProfileError& e) {
        std::cerr << "profile error: " << e.what() << "\n";
        return e.kind == bf::ProfileError::Kind::Invalid ? kParse : kInfeasible;
    } catch (const bf::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const bf::GeneratorError& e) {
        std::cerr << "generator error: " << e.what() << "\n";
        return kParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}
