#pragma once

#include "beckfiala/cohort_search.hpp"
#include "beckfiala/invariants.hpp"
#include "beckfiala/perturbation.hpp"
#include "beckfiala/state.hpp"

#include <array>
#include <optional>

namespace bf {

enum class CheckMode { Off, PerStep, EveryK };

struct RunOptions {
    CheckMode check = CheckMode::Off;
    long long check_every = 1;  // for EveryK
    bool record_trace = false;
    long long step_cap = -1;  // -1: 10 * d * |X| * (|X| + 4|F|)
    // -1 mirrors every sign preference (rounding order, walk direction,
    // seed search, residual rounding); used for the flip-symmetry property.
    int sign_convention = +1;
};

struct Witness {
    int set = -1, set2 = -1, element = -1, cohort = -1, sign = 0;
};

struct StepRecord {
    long long stage = 0;
    int step = 0;  // 1..9
    Witness witness;
    long long potential_before = 0, potential_after = 0;
    int frozen_delta = 0;
    int checked = 0;            // 1 when the invariant/lemma sweep ran at this stage
    std::string failure;        // first violated predicate, empty when clean
};

enum class AbortKind { None, SeedNotFound, StepCapExceeded, InvariantFailure, InternalError };

struct RunResult {
    enum class Guarantee { None, Classic2dMinus2, Cohort2dMinusDelta };

    FloatingColoring final_coloring;  // all frozen iff terminated()
    BigInt discrepancy = 0;
    long long steps_executed = 0;
    std::array<long long, 10> step_histogram{};  // [1..9]
    std::vector<StepRecord> trace;               // when record_trace
    Guarantee guarantee = Guarantee::None;
    BigInt bound_claimed = 0;  // a-posteriori bound for terminated runs
    AbortKind abort = AbortKind::None;
    std::string abort_detail;

    bool terminated() const { return abort == AbortKind::None; }
};

// Witness of the given step's guard on cur, or nullopt when it cannot fire.
std::optional<Witness> step_guard(int step, const AlgorithmState& cur, int sign_convention = +1);

// Smallest step whose guard holds, 0 at termination. Greedy dispatch order.
int first_fireable_step(const AlgorithmState& cur, int sign_convention = +1);

// Applies the smallest fireable step. Returns 0 at termination (no guard
// fires), the executed step id otherwise; fills rec.witness. Throws only on
// internal inconsistencies; Step-9 seed absence is reported via the outparam.
int execute_step(AlgorithmState& cur, Witness& w, int sign_convention, std::string& seed_failure);

// All floating elements to +1 (or -1 under a flipped convention).
FloatingColoring round_residual(const AlgorithmState& st, int sign_convention = +1);

RunResult run(std::shared_ptr<const SetSystem> sys, ConstantProfile profile, const RunOptions& opt = {});
RunResult run_from(AlgorithmState start, const RunOptions& opt = {});

// Classic floating-colors algorithm: keep chi(S) = 0 on every set whose
// threat still exceeds the classic bound, perturb along exact kernel
// directions, resolve the degenerate regular case by rounding against the
// frozen mass. Guarantees discrepancy <= 2d-2 for d >= 2 (2d-1 at d = 1).
RunResult classic_beck_fiala(const std::shared_ptr<const SetSystem>& sys, const RunOptions& opt = {});
// Test hook: same loop from a given coloring.
RunResult classic_beck_fiala_from(const std::shared_ptr<const SetSystem>& sys, FloatingColoring start,
                                  const RunOptions& opt = {});
BigInt classic_bound(int d);

std::string step_record_to_json(const StepRecord& rec);
std::string trace_to_jsonl(const std::vector<StepRecord>& trace);
std::vector<StepRecord> trace_from_jsonl(const std::string& text);

}  // namespace bf
