#pragma once
// Shared test utilities.

#include <random>

#include "qwalk/core.hpp"
#include "qwalk/walk.hpp"

namespace qwalk::test {

inline FullState random_state(int n, std::mt19937_64& rng) {
    FullState s = zero_state(n);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (auto& a : s.amp) a = cplx(gauss(rng), gauss(rng));
    normalize(s);
    return s;
}

//! || U v - v ||, the eigenvalue-1 residual.
inline double residual_of(const StepOperator& op, const FullState& v) {
    FullState uv = apply_step(op, v);
    add_scaled(uv, -1.0, v);
    return norm(uv);
}

}  // namespace qwalk::test
