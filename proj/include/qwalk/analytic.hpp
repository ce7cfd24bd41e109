#pragma once
// Closed-form quantities for the loop-weighted hypercube walk: optimal loop
// weights, success probability, rotation angles, run-times, fidelity curves
// and the named invariant-subspace vectors.
//
// All returned frequencies and run-times use the exact normalization
// constant c; the 1 - 1/(2n) approximation of 1/c is exposed separately for
// asymptotic comparisons only.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/core.hpp"
#include "qwalk/line.hpp"

namespace qwalk {

//! Largest shell entering the slow-subspace vectors: floor(n/2) - 2.
inline int slow_subspace_cutoff(int n) { return n / 2 - 2; }

//! Exact normalization c = sqrt(sum_{x=0}^{floor(n/2)-2} 1/C(n-1,x)).
inline double c_exact(int n) {
    if (n < 4) throw std::invalid_argument("normalization constant requires n >= 4");
    double sum = 0.0;
    for (int x = 0; x <= slow_subspace_cutoff(n); ++x) sum += 1.0 / binomial(n - 1, x);
    return std::sqrt(sum);
}

//! Leading-order approximation of 1/c.
inline double inv_c_approx(int n) { return 1.0 - 1.0 / (2.0 * n); }

struct OptimalWeights {
    double search = 0.0;    // n / 2^n
    double transfer = 0.0;  // (2/3) n / 2^n
};

inline double search_weight(int n) { return n / static_cast<double>(num_vertices(n)); }
inline double transfer_weight(int n) { return 2.0 / 3.0 * search_weight(n); }
inline OptimalWeights optimal_weights(int n) {
    if (n < 2) throw std::invalid_argument("hypercube dimension must be >= 2");
    return {search_weight(n), transfer_weight(n)};
}

//! Peak probability of finding the walker in the loop: 4nl2^n/(n+l2^n)^2.
inline double search_success_probability(int n, double l) {
    if (l < 0.0) throw std::invalid_argument("loop weight must be nonnegative");
    const double lN = l * num_vertices(n);
    return 4.0 * n * lN / ((n + lN) * (n + lN));
}

struct SearchAnalytics {
    int n = 0;
    double l = 0.0;
    double c = 0.0;      // exact normalization
    double omega = 0.0;  // rotation angle per step
    long T1 = 0;         // steps to peak loop probability
    long T2 = 0;         // switch-transfer run-time, 2*T1
};

inline SearchAnalytics search_schedule(int n, double l) {
    if (!(l > 0.0)) throw std::invalid_argument("loop weight must be positive");
    SearchAnalytics a;
    a.n = n;
    a.l = l;
    a.c = c_exact(n);
    a.omega = std::sqrt(2.0 * n * (l + n / static_cast<double>(num_vertices(n)))) /
              (a.c * (n + l));
    a.T1 = std::lround(kPi / a.omega);
    a.T2 = 2 * a.T1;
    return a;
}

struct TransferAnalytics {
    int n = 0;
    double l = 0.0;
    double c = 0.0;
    double omega1 = 0.0;  // fast frequency
    double omega2 = 0.0;  // slow frequency; harmonic tuning gives omega1 = 2*omega2
    long T3 = 0;          // transfer run-time, round(pi/omega2)
};

inline TransferAnalytics transfer_schedule(int n, double l) {
    if (!(l > 0.0)) throw std::invalid_argument("loop weight must be positive");
    TransferAnalytics a;
    a.n = n;
    a.l = l;
    a.c = c_exact(n);
    const double N = static_cast<double>(num_vertices(n));
    a.omega1 = std::sqrt(2.0 * n * (l + 2.0 * n / N)) / (a.c * (n + l));
    a.omega2 = std::sqrt(2.0 * l * n) / (a.c * (n + l));
    a.T3 = std::lround(kPi / a.omega2);
    return a;
}

//! Asymptotic slow frequency at the harmonic weight, using 1/c ~ 1 - 1/(2n).
inline double transfer_omega2_asymptotic(int n) {
    const double N = static_cast<double>(num_vertices(n));
    return (2.0 * n - 1.0) / (std::sqrt(3.0) * n * (1.0 + 2.0 / (3.0 * N))) / std::sqrt(N);
}

//! Antipodal transfer fidelity (1/64)(3 + cos(2wt) - 4cos(wt))^2 at the
//! harmonic weight; t need not be an integer.
inline double antipodal_fidelity_curve(int n, double t) {
    if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
    const double w = transfer_schedule(n, transfer_weight(n)).omega2;
    const double f = 3.0 + std::cos(2.0 * w * t) - 4.0 * std::cos(w * t);
    return f * f / 64.0;
}

struct NeighbourAnalytics {
    int n = 0;
    double a = 0.0;  // 2^n + 2n - 4
    double b = 0.0;  // 3*2^n + 8n - 12 - 2^{2-n}
    double x = 0.0;  // loop coefficient, -> 1 for large n
    double y = 0.0;  // equal-superposition coefficient
    double z = 0.0;  // shared-edge coefficient
    double fmax = 0.0;           // (1+x^2)^2 / 4
    double residual_norm2 = 0.0; // squared norm of the leftover component, (1-x^2)/2
};

inline NeighbourAnalytics neighbour_analytics(int n) {
    if (n < 2) throw std::invalid_argument("hypercube dimension must be >= 2");
    NeighbourAnalytics r;
    r.n = n;
    const double N = static_cast<double>(num_vertices(n));
    r.a = N + 2.0 * n - 4.0;
    r.b = 3.0 * N + 8.0 * n - 12.0 - 4.0 / N;
    r.x = std::sqrt(3.0 * r.a / r.b);
    r.y = -2.0 * (n - 1.0) / std::sqrt(r.a * r.b);
    r.z = -std::sqrt(2.0 * n * N) * (1.0 - 2.0 / N) / std::sqrt(r.a * r.b);
    r.fmax = (1.0 + r.x * r.x) * (1.0 + r.x * r.x) / 4.0;
    r.residual_norm2 = (1.0 - r.x * r.x) / 2.0;
    return r;
}

//! Neighbour transfer fidelity (1/4)(x^2 - cos(wt))^2 at the harmonic weight.
inline double neighbour_fidelity_curve(int n, double t) {
    const double w = transfer_schedule(n, transfer_weight(n)).omega2;
    const double x = neighbour_analytics(n).x;
    const double f = x * x - std::cos(w * t);
    return f * f / 4.0;
}

//! Large-n limit of the neighbour curve: sin^4(wt/2).
inline double neighbour_fidelity_limit(int n, double t) {
    const double w = transfer_schedule(n, transfer_weight(n)).omega2;
    const double s = std::sin(0.5 * w * t);
    return s * s * s * s;
}

//! Slow-subspace line vector for the search end: sum over low shells of
//! (|x,R> - |x+1,L>) / sqrt(2 C(n-1,x)), normalized by c.
inline LineState psi1_line(int n, LineMode mode) {
    const double c = c_exact(n);
    LineState s = line_zero_state(n, mode);
    for (int x = 0; x <= slow_subspace_cutoff(n); ++x) {
        const double w = 1.0 / (c * std::sqrt(2.0 * binomial(n - 1, x)));
        s.amp[r_slot(n, x)] += w;
        s.amp[l_slot(n, x + 1)] -= w;
    }
    return s;
}

//! Mirror image of psi1 about the far end of the line.
inline LineState psi2_line(int n, LineMode mode) {
    const double c = c_exact(n);
    LineState s = line_zero_state(n, mode);
    for (int x = 0; x <= slow_subspace_cutoff(n); ++x) {
        const double w = 1.0 / (c * std::sqrt(2.0 * binomial(n - 1, x)));
        s.amp[l_slot(n, n - x)] += w;
        s.amp[r_slot(n, n - x - 1)] -= w;
    }
    return s;
}

struct SearchAlphaSet {
    FullState alpha1;  // exact 1-eigenvector of the one-mark walk
    FullState alpha2;
    FullState alpha3;
};

inline SearchAlphaSet search_alpha_vectors(int n, double l) {
    if (!(l > 0.0)) throw std::invalid_argument("loop weight must be positive");
    const double lN = l * num_vertices(n);
    const double p = std::sqrt(lN / (n + lN));
    const double q = std::sqrt(n / (n + lN));
    const FullState psi0 = equal_superposition(n);
    const FullState loop0 = loop_state(n, 0);
    SearchAlphaSet set;
    set.alpha1 = zero_state(n);
    add_scaled(set.alpha1, p, psi0);
    add_scaled(set.alpha1, -q, loop0);
    set.alpha2 = zero_state(n);
    add_scaled(set.alpha2, q, psi0);
    add_scaled(set.alpha2, p, loop0);
    set.alpha3 = embed_line_state(psi1_line(n, LineMode::Search));
    return set;
}

struct TransferBetaSet {
    FullState beta1;  // exact 1-eigenvector of the antipodal two-mark walk
    FullState beta2;
    FullState beta3;
    FullState beta4;
    FullState beta5;
};

inline TransferBetaSet transfer_beta_vectors(int n, double l) {
    if (!(l > 0.0)) throw std::invalid_argument("loop weight must be positive");
    const double lN = l * num_vertices(n);
    const FullState psi0 = equal_superposition(n);
    const FullState loop0 = loop_state(n, 0);
    const FullState loopn = loop_state(n, antipode(n, 0));
    TransferBetaSet set;
    set.beta1 = zero_state(n);
    add_scaled(set.beta1, std::sqrt(lN / (lN + 2.0 * n)), psi0);
    add_scaled(set.beta1, -std::sqrt(n / (lN + 2.0 * n)), loop0);
    add_scaled(set.beta1, -std::sqrt(n / (lN + 2.0 * n)), loopn);
    set.beta2 = zero_state(n);
    add_scaled(set.beta2, std::sqrt(2.0 * n / (lN + 2.0 * n)), psi0);
    add_scaled(set.beta2, std::sqrt(lN / (2.0 * (lN + 2.0 * n))), loop0);
    add_scaled(set.beta2, std::sqrt(lN / (2.0 * (lN + 2.0 * n))), loopn);
    const FullState psi1 = embed_line_state(psi1_line(n, LineMode::AntipodalTransfer));
    const FullState psi2 = embed_line_state(psi2_line(n, LineMode::AntipodalTransfer));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    set.beta3 = zero_state(n);
    add_scaled(set.beta3, inv_sqrt2, psi1);
    add_scaled(set.beta3, -inv_sqrt2, psi2);
    set.beta4 = zero_state(n);
    add_scaled(set.beta4, inv_sqrt2, loop0);
    add_scaled(set.beta4, -inv_sqrt2, loopn);
    set.beta5 = zero_state(n);
    add_scaled(set.beta5, inv_sqrt2, psi1);
    add_scaled(set.beta5, inv_sqrt2, psi2);
    return set;
}

struct GammaSet {
    FullState gamma1;  // exact 1-eigenvector for two marks at any distance
    FullState gamma2;
    FullState gamma4;
};

//! Two-mark subspace vectors for an arbitrary receiver; the forms reduce to
//! the antipodal beta1/beta2/beta4 when the receiver is the antipode.
inline GammaSet gamma_vectors(int n, double l, Vertex receiver) {
    if (!(l > 0.0)) throw std::invalid_argument("loop weight must be positive");
    if (receiver == 0 || receiver >= num_vertices(n))
        throw std::invalid_argument("receiver must differ from the sender and be in range");
    const double lN = l * num_vertices(n);
    const FullState psi0 = equal_superposition(n);
    const FullState loop0 = loop_state(n, 0);
    const FullState loopr = loop_state(n, receiver);
    GammaSet set;
    set.gamma1 = zero_state(n);
    add_scaled(set.gamma1, std::sqrt(lN / (lN + 2.0 * n)), psi0);
    add_scaled(set.gamma1, -std::sqrt(n / (lN + 2.0 * n)), loop0);
    add_scaled(set.gamma1, -std::sqrt(n / (lN + 2.0 * n)), loopr);
    set.gamma2 = zero_state(n);
    add_scaled(set.gamma2, std::sqrt(2.0 * n / (lN + 2.0 * n)), psi0);
    add_scaled(set.gamma2, std::sqrt(lN / (2.0 * (lN + 2.0 * n))), loop0);
    add_scaled(set.gamma2, std::sqrt(lN / (2.0 * (lN + 2.0 * n))), loopr);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    set.gamma4 = zero_state(n);
    add_scaled(set.gamma4, inv_sqrt2, loop0);
    add_scaled(set.gamma4, -inv_sqrt2, loopr);
    return set;
}

//! Exact 1-eigenvector for neighbouring marks at the harmonic weight. The
//! receiver must sit at Hamming distance 1 from the origin.
inline FullState gamma0_vector(int n, Vertex receiver = 1) {
    if (hamming_weight(receiver) != 1 || receiver >= num_vertices(n))
        throw std::invalid_argument("receiver must be a direct neighbour of the origin");
    int dir = 1;
    while (!vertex_bit(receiver, dir)) ++dir;
    const NeighbourAnalytics na = neighbour_analytics(n);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    FullState v = zero_state(n);
    add_scaled(v, na.x * inv_sqrt2, loop_state(n, 0));
    add_scaled(v, na.x * inv_sqrt2, loop_state(n, receiver));
    add_scaled(v, na.y, equal_superposition(n));
    v.amp[basis_index(n, 0, dir)] += na.z * inv_sqrt2;
    v.amp[basis_index(n, receiver, dir)] += na.z * inv_sqrt2;
    return v;
}

enum class SubspaceKind { SearchAlpha, TransferBeta, ArbitraryGamma, NeighbourGamma0 };

//! Named vector sets; for ArbitraryGamma the receiver is the lowest-label
//! vertex of Hamming weight d. NeighbourGamma0 is defined at the harmonic
//! weight and ignores l.
inline std::vector<std::pair<std::string, FullState>> subspace_vectors(int n, double l,
                                                                       SubspaceKind kind,
                                                                       int d = -1) {
    std::vector<std::pair<std::string, FullState>> out;
    switch (kind) {
        case SubspaceKind::SearchAlpha: {
            SearchAlphaSet s = search_alpha_vectors(n, l);
            out.emplace_back("alpha1", std::move(s.alpha1));
            out.emplace_back("alpha2", std::move(s.alpha2));
            out.emplace_back("alpha3", std::move(s.alpha3));
            break;
        }
        case SubspaceKind::TransferBeta: {
            TransferBetaSet s = transfer_beta_vectors(n, l);
            out.emplace_back("beta1", std::move(s.beta1));
            out.emplace_back("beta2", std::move(s.beta2));
            out.emplace_back("beta3", std::move(s.beta3));
            out.emplace_back("beta4", std::move(s.beta4));
            out.emplace_back("beta5", std::move(s.beta5));
            break;
        }
        case SubspaceKind::ArbitraryGamma: {
            if (d < 1 || d > n) throw std::invalid_argument("distance d must be in 1..n");
            GammaSet s = gamma_vectors(n, l, weight_vertex(d));
            out.emplace_back("gamma1", std::move(s.gamma1));
            out.emplace_back("gamma2", std::move(s.gamma2));
            out.emplace_back("gamma4", std::move(s.gamma4));
            break;
        }
        case SubspaceKind::NeighbourGamma0:
            out.emplace_back("gamma0", gamma0_vector(n));
            break;
    }
    return out;
}

}  // namespace qwalk
