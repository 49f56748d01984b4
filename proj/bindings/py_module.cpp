#include "beckfiala/engine.hpp"
#include "beckfiala/generator.hpp"
#include "beckfiala/oracle.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace {

long long to_ll(const bf::BigInt& v) { return v.convert_to<long long>(); }

py::dict result_to_dict(const bf::SetSystem& sys, const bf::RunResult& res) {
    py::dict d;
    d["terminated"] = res.terminated();
    if (res.terminated()) {
        std::vector<int> colors;
        for (int x = 0; x < res.final_coloring.size(); ++x)
            colors.push_back(res.final_coloring.values[x] == 1 ? 1 : -1);
        d["colors"] = colors;
        d["discrepancy"] = to_ll(res.discrepancy);
        d["bound"] = to_ll(res.bound_claimed);
    }
    d["steps"] = res.steps_executed;
    std::vector<long long> hist(res.step_histogram.begin() + 1, res.step_histogram.end());
    d["histogram"] = hist;
    switch (res.guarantee) {
        case bf::RunResult::Guarantee::Classic2dMinus2: d["guarantee"] = "classic-2d-2"; break;
        case bf::RunResult::Guarantee::Cohort2dMinusDelta: d["guarantee"] = "cohort-2d-delta"; break;
        default: d["guarantee"] = "none";
    }
    switch (res.abort) {
        case bf::AbortKind::None: d["abort"] = ""; break;
        case bf::AbortKind::SeedNotFound: d["abort"] = "seed-not-found"; break;
        case bf::AbortKind::StepCapExceeded: d["abort"] = "step-cap-exceeded"; break;
        case bf::AbortKind::InvariantFailure: d["abort"] = "invariant-failure"; break;
        case bf::AbortKind::InternalError: d["abort"] = "internal-error"; break;
    }
    d["detail"] = res.abort_detail;
    d["trace_jsonl"] = bf::trace_to_jsonl(res.trace);
    (void)sys;
    return d;
}

bf::RunOptions make_options(const std::string& check, bool flip, long long step_cap, bool trace) {
    bf::RunOptions opt;
    if (check == "per-step")
        opt.check = bf::CheckMode::PerStep;
    else if (check.rfind("every-", 0) == 0) {
        opt.check = bf::CheckMode::EveryK;
        opt.check_every = std::stoll(check.substr(6));
    }
    opt.sign_convention = flip ? -1 : +1;
    opt.step_cap = step_cap;
    opt.record_trace = trace;
    return opt;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "bounded-degree set-system discrepancy solvers";

    py::class_<bf::SetSystem, std::shared_ptr<bf::SetSystem>>(m, "SetSystem")
        .def_readonly("n", &bf::SetSystem::n)
        .def_readonly("d", &bf::SetSystem::degree)
        .def_readonly("sets", &bf::SetSystem::sets)
        .def("__repr__", [](const bf::SetSystem& s) {
            return "SetSystem(n=" + std::to_string(s.n) + ", sets=" + std::to_string(s.num_sets()) +
                   ", d=" + std::to_string(s.degree) + ")";
        });

    py::class_<bf::ConstantProfile>(m, "ConstantProfile")
        .def_property_readonly("delta", [](const bf::ConstantProfile& p) { return p.delta; })
        .def("to_json", &bf::profile_to_json);

    m.def("parse_instance", [](const std::string& text) {
        return std::make_shared<bf::SetSystem>(bf::parse_set_system(text));
    });
    m.def("instance_json", [](const std::shared_ptr<bf::SetSystem>& sys) { return bf::instance_to_json(*sys); });
    m.def(
        "generate",
        [](const std::string& kind, int n, int sets, int d, uint64_t seed) {
            bf::GeneratorSpec spec;
            spec.kind = bf::kind_from_string(kind);
            spec.n = n;
            spec.num_sets = sets;
            spec.d = d;
            spec.seed = seed;
            return std::make_shared<bf::SetSystem>(bf::generate(spec));
        },
        py::arg("kind"), py::arg("n"), py::arg("sets"), py::arg("d"), py::arg("seed") = 0);

    m.def("brute_force_discrepancy",
          [](const std::shared_ptr<bf::SetSystem>& sys, int cap) { return bf::brute_force_discrepancy(*sys, cap); },
          py::arg("sys"), py::arg("cap") = 24);

    m.def("log_star", [](long long x) { return bf::log_star(bf::BigInt(x)); });
    m.def("r_term", [](long long D, long long delta) { return to_ll(bf::r_term(D, delta)); });

    m.def("toy_profile",
          [](long long delta, const std::string& alpha, const std::vector<long long>& tw,
             const std::vector<long long>& beta, long long w) {
              std::vector<bf::BigInt> tw_b(tw.begin(), tw.end()), beta_b(beta.begin(), beta.end());
              return bf::manual_profile(delta, bf::rat_from_string(alpha), tw_b, beta_b, bf::BigInt(w));
          },
          py::arg("delta"), py::arg("alpha"), py::arg("tw"), py::arg("beta"), py::arg("w"));
    m.def("profile_from_json", &bf::profile_from_json);
    m.def("paper_profile_info", [](long long d) {
        py::dict out;
        try {
            bf::ConstantProfile p = bf::paper_tables(bf::BigInt(d));
            out["delta"] = p.delta;
            std::vector<std::string> tw, beta;
            for (const auto& v : p.tw) tw.push_back(v.str());
            for (const auto& v : p.beta) beta.push_back(v.str());
            out["tw"] = tw;
            out["beta"] = beta;
            out["w"] = p.w.str();
            out["feasible"] = p.w >= 1;
        } catch (const bf::ProfileError& e) {
            out["feasible"] = false;
            out["error"] = std::string(e.what());
        }
        return out;
    });
    m.def("check_inequalities", [](const bf::ConstantProfile& p, long long d) {
        return bf::inequality_report_to_json(bf::check_inequalities(p, bf::BigInt(d)));
    });

    m.def(
        "run_classic",
        [](const std::shared_ptr<bf::SetSystem>& sys, bool flip, long long step_cap, bool trace) {
            return result_to_dict(*sys, bf::classic_beck_fiala(sys, make_options("off", flip, step_cap, trace)));
        },
        py::arg("sys"), py::arg("flip") = false, py::arg("step_cap") = -1, py::arg("trace") = false);

    m.def(
        "run_cohort",
        [](const std::shared_ptr<bf::SetSystem>& sys, const bf::ConstantProfile& profile,
           const std::string& check, bool flip, long long step_cap, bool trace) {
            return result_to_dict(*sys, bf::run(sys, profile, make_options(check, flip, step_cap, trace)));
        },
        py::arg("sys"), py::arg("profile"), py::arg("check") = "off", py::arg("flip") = false,
        py::arg("step_cap") = -1, py::arg("trace") = false);

    m.def("verify", [](const std::shared_ptr<bf::SetSystem>& sys, const std::vector<int>& colors) {
        if (static_cast<int>(colors.size()) != sys->n) throw std::invalid_argument("length mismatch");
        bf::FloatingColoring chi;
        for (int v : colors) {
            if (v != 1 && v != -1) throw std::invalid_argument("colors must be +-1");
            chi.values.push_back(bf::Rat(v));
        }
        bf::Rat d = bf::discrepancy_of(*sys, chi);
        return to_ll(bf::rat_num(d));
    });
}
