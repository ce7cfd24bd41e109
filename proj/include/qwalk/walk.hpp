#pragma once
// Matrix-free application of the perturbed step operator.
//
// One step is shift-after-coin: first the coin mixes the directions at each
// vertex, then the shift moves amplitude along the edges. Unmarked vertices
// carry the Grover coin G = 2|s><s| - I on their n edge slots; a marked
// vertex carries -G' on all n+1 slots, where G' reflects about
// (sqrt(l), 1, ..., 1)/sqrt(n+l). The shift exchanges (v,d) with (v^e_d,d)
// and fixes every loop slot, so residual loop amplitude at an unmarked
// vertex (possible after a mark switch) is frozen in place.

#include <cmath>

#include "qwalk/core.hpp"

namespace qwalk {

enum class Ordering { ShiftAfterCoin, CoinAfterShift };

struct StepOperator {
    WalkConfig config;
    Ordering ordering = Ordering::ShiftAfterCoin;
};

inline void check_conforms(const WalkConfig& cfg, const FullState& s) {
    if (s.n != cfg.n || s.amp.size() != state_size(cfg.n))
        throw std::invalid_argument("state does not conform to walk dimension");
}

inline void apply_shift_inplace(const WalkConfig& cfg, FullState& s) {
    check_conforms(cfg, s);
    const int n = cfg.n;
    const std::size_t stride = n + 1;
    const Vertex nv = static_cast<Vertex>(num_vertices(n));
    for (int d = 1; d <= n; ++d) {
        const Vertex mask = Vertex{1} << (d - 1);
        for (Vertex v = 0; v < nv; ++v) {
            if (v & mask) continue;  // each edge once
            std::swap(s.amp[static_cast<std::size_t>(v) * stride + d],
                      s.amp[static_cast<std::size_t>(v ^ mask) * stride + d]);
        }
    }
}

inline void apply_coin_inplace(const WalkConfig& cfg, FullState& s) {
    check_conforms(cfg, s);
    const int n = cfg.n;
    const std::size_t stride = n + 1;
    const Vertex nv = static_cast<Vertex>(num_vertices(n));
    const Vertex m0 = cfg.marks.size() > 0 ? cfg.marks[0].vertex : nv;
    const Vertex m1 = cfg.marks.size() > 1 ? cfg.marks[1].vertex : nv;
    const double two_over_n = 2.0 / n;
    for (Vertex v = 0; v < nv; ++v) {
        if (v == m0 || v == m1) continue;
        const std::size_t base = static_cast<std::size_t>(v) * stride;
        cplx sum = 0.0;
        for (int d = 1; d <= n; ++d) sum += s.amp[base + d];
        const cplx mean = two_over_n * sum;
        for (int d = 1; d <= n; ++d) s.amp[base + d] = mean - s.amp[base + d];
    }
    for (const Mark& mk : cfg.marks) {
        // -G' = I - 2|s_l><s_l| on all n+1 slots
        const double l = mk.weight;
        const double rl = std::sqrt(l);
        const std::size_t base = static_cast<std::size_t>(mk.vertex) * stride;
        cplx proj = rl * s.amp[base];
        for (int d = 1; d <= n; ++d) proj += s.amp[base + d];
        const cplx q = proj * (2.0 / (n + l));
        s.amp[base] -= q * rl;
        for (int d = 1; d <= n; ++d) s.amp[base + d] -= q;
    }
}

inline void apply_step_inplace(const StepOperator& op, FullState& s) {
    if (op.ordering == Ordering::ShiftAfterCoin) {
        apply_coin_inplace(op.config, s);
        apply_shift_inplace(op.config, s);
    } else {
        apply_shift_inplace(op.config, s);
        apply_coin_inplace(op.config, s);
    }
}

inline FullState apply_shift(const WalkConfig& cfg, FullState s) {
    apply_shift_inplace(cfg, s);
    return s;
}

inline FullState apply_coin(const WalkConfig& cfg, FullState s) {
    apply_coin_inplace(cfg, s);
    return s;
}

inline FullState apply_step(const StepOperator& op, FullState s) {
    apply_step_inplace(op, s);
    return s;
}

inline FullState evolve(const StepOperator& op, FullState s, long t) {
    if (t < 0) throw std::invalid_argument("step count must be nonnegative");
    for (long i = 0; i < t; ++i) apply_step_inplace(op, s);
    return s;
}

inline double loop_probability(const FullState& s, Vertex v) {
    return std::norm(s.amp[basis_index(s.n, v, 0)]);
}

}  // namespace qwalk
