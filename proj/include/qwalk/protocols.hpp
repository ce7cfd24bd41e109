#pragma once
// End-to-end drivers: search for a single marked vertex, state transfer with
// a mark switch, simultaneous-marking transfer, and the parameter sweeps.
//
// Fidelity is always the squared overlap with the receiver's loop basis
// state. On a mark switch the residual loop amplitude left at the old sender
// is no longer touched by the walk; it is surfaced as `leakage` rather than
// silently discarded.

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "qwalk/analytic.hpp"
#include "qwalk/core.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

struct Trace {
    int n = 0;
    double l = 0.0;
    std::string protocol;
    Vertex sender = 0;
    Vertex receiver = 0;
    std::vector<double> values;  // values[t] for t = 0..T
    double leakage = 0.0;        // switch protocol only
};

struct SearchRun {
    Trace trace;
    int argmax = 0;
    double peak = 0.0;
};

//! Loop probability at the marked origin over t = 0..T, starting from the
//! equal superposition.
inline SearchRun run_search(int n, double l, int T) {
    if (T < 1) throw std::invalid_argument("step count must be at least 1");
    const StepOperator op{make_config(n, {{0, l}})};
    FullState state = equal_superposition(n);
    SearchRun run;
    run.trace = {n, l, "search", 0, 0, {}, 0.0};
    run.trace.values.reserve(T + 1);
    for (int t = 0; t <= T; ++t) {
        const double p = loop_probability(state, 0);
        run.trace.values.push_back(p);
        if (p > run.peak) {
            run.peak = p;
            run.argmax = t;
        }
        if (t < T) apply_step_inplace(op, state);
    }
    return run;
}

struct SwitchRun {
    Trace trace;       // receiver loop probability over t = 0..2*T1
    double fidelity = 0.0;
    double leakage = 0.0;
    long t1 = 0;
};

//! Search-based transfer: mark the sender for T1 steps starting from its
//! loop, then re-mark the receiver for T1 more steps.
inline SwitchRun transfer_with_switch(int n, double l, Vertex sender, Vertex receiver) {
    if (sender == receiver) throw std::invalid_argument("sender and receiver must differ");
    const long T1 = search_schedule(n, l).T1;
    SwitchRun run;
    run.t1 = T1;
    run.trace = {n, l, "switch", sender, receiver, {}, 0.0};
    run.trace.values.reserve(2 * T1 + 1);
    FullState state = loop_state(n, sender);
    const StepOperator phase1{make_config(n, {{sender, l}})};
    const StepOperator phase2{make_config(n, {{receiver, l}})};
    for (long t = 0; t <= 2 * T1; ++t) {
        run.trace.values.push_back(std::norm(state.amp[basis_index(n, receiver, 0)]));
        if (t == 2 * T1) break;
        apply_step_inplace(t < T1 ? phase1 : phase2, state);
    }
    run.fidelity = run.trace.values.back();
    run.leakage = std::norm(state.amp[basis_index(n, sender, 0)]);
    run.trace.leakage = run.leakage;
    return run;
}

//! Both vertices marked with weight l; fidelity trace of the receiver loop
//! starting from the sender loop.
inline Trace transfer_simultaneous(int n, double l, Vertex sender, Vertex receiver, int T) {
    if (sender == receiver) throw std::invalid_argument("sender and receiver must differ");
    if (T < 0) throw std::invalid_argument("step count must be nonnegative");
    const StepOperator op{make_config(n, {{sender, l}, {receiver, l}})};
    Trace trace{n, l, "transfer", sender, receiver, {}, 0.0};
    trace.values.reserve(T + 1);
    FullState state = loop_state(n, sender);
    for (int t = 0; t <= T; ++t) {
        trace.values.push_back(std::norm(state.amp[basis_index(n, receiver, 0)]));
        if (t < T) apply_step_inplace(op, state);
    }
    return trace;
}

namespace detail {

inline unsigned worker_count(std::size_t jobs) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("QWALK_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && v > 0) hw = static_cast<unsigned>(std::min<unsigned long>(v, 256));
    }
    return static_cast<unsigned>(std::min<std::size_t>(hw, jobs));
}

// Runs fn(i) for i = 0..count-1; each index is processed exactly once and
// writes only its own output slot, so results are thread-count independent.
template <class F>
inline void parallel_for(std::size_t count, F&& fn) {
    const unsigned workers = worker_count(count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace detail

struct DistanceSweep {
    int n = 0;
    double l = 0.0;
    long t3 = 0;
    std::vector<double> fidelity;  // fidelity[d-1] at step T3, d = 1..n
};

//! Fidelity at T3 for receivers at every distance, harmonic weight.
inline DistanceSweep distance_sweep(int n) {
    if (n < 3) throw std::invalid_argument("distance sweep requires n >= 3");
    DistanceSweep sweep;
    sweep.n = n;
    sweep.l = transfer_weight(n);
    sweep.t3 = transfer_schedule(n, sweep.l).T3;
    sweep.fidelity.assign(n, 0.0);
    detail::parallel_for(n, [&](std::size_t i) {
        const int d = static_cast<int>(i) + 1;
        const Trace tr = transfer_simultaneous(n, sweep.l, 0, weight_vertex(d),
                                               static_cast<int>(sweep.t3));
        sweep.fidelity[i] = tr.values.back();
    });
    return sweep;
}

struct MinFidelityPoint {
    int n = 0;
    double min_fid = 0.0;  // minimum over d = 2..n at step T3
    double d1_fid = 0.0;
    double d1_pred = 0.0;  // (1+x^2)^2/4 from the neighbour coefficients
};

//! Per-dimension worst-case transfer fidelity plus the neighbour prediction.
inline std::vector<MinFidelityPoint> min_fidelity_sweep(int n_lo, int n_hi) {
    if (n_lo < 3 || n_hi < n_lo) throw std::invalid_argument("bad dimension range");
    std::vector<MinFidelityPoint> points(n_hi - n_lo + 1);
    for (int n = n_lo; n <= n_hi; ++n) {
        const DistanceSweep sweep = distance_sweep(n);
        MinFidelityPoint pt;
        pt.n = n;
        pt.min_fid = sweep.fidelity[1];
        for (int d = 2; d <= n; ++d) pt.min_fid = std::min(pt.min_fid, sweep.fidelity[d - 1]);
        pt.d1_fid = sweep.fidelity[0];
        pt.d1_pred = neighbour_analytics(n).fmax;
        points[n - n_lo] = pt;
    }
    return points;
}

}  // namespace qwalk
