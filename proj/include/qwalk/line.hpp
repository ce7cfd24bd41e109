#pragma once
// Exact reduction of the one-mark search walk and of the two-mark antipodal
// walk to a line indexed by Hamming distance from the origin.
//
// Basis slots, in storage order: |x,R> for x = 0..n-1 (uniform over shell-x
// vertices and outgoing directions), |x,L> for x = 1..n (incoming
// directions), the loop at the origin, and for the antipodal mode the loop
// at the far end. The reduced step operator is a dense (2n+1) or (2n+2)
// dimensional unitary assembled in the same shift/coin order as the full
// walk; its dense eigendecomposition serves as the numerical oracle for the
// small eigenphases.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <vector>

#include "qwalk/core.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

enum class LineMode { Search, AntipodalTransfer };

inline int line_dim(int n, LineMode mode) {
    return 2 * n + 1 + (mode == LineMode::AntipodalTransfer ? 1 : 0);
}

inline int r_slot(int n, int x) {
    if (x < 0 || x >= n) throw std::out_of_range("R slot requires 0 <= x <= n-1");
    return x;
}

inline int l_slot(int n, int x) {
    if (x < 1 || x > n) throw std::out_of_range("L slot requires 1 <= x <= n");
    return n + x - 1;
}

inline int loop0_slot(int n) { return 2 * n; }
inline int loopn_slot(int n) { return 2 * n + 1; }

struct LineState {
    int n = 0;
    LineMode mode = LineMode::Search;
    std::vector<cplx> amp;
};

inline LineState line_zero_state(int n, LineMode mode) {
    return LineState{n, mode, std::vector<cplx>(line_dim(n, mode))};
}

inline cplx line_inner(const LineState& a, const LineState& b) {
    if (a.n != b.n || a.mode != b.mode) throw std::invalid_argument("line states do not match");
    cplx r = 0.0;
    for (std::size_t i = 0; i < a.amp.size(); ++i) r += std::conj(a.amp[i]) * b.amp[i];
    return r;
}

inline double line_norm(const LineState& s) {
    double r = 0.0;
    for (const cplx& a : s.amp) r += std::norm(a);
    return std::sqrt(r);
}

inline double line_distance(const LineState& a, const LineState& b) {
    if (a.n != b.n || a.mode != b.mode) throw std::invalid_argument("line states do not match");
    double r = 0.0;
    for (std::size_t i = 0; i < a.amp.size(); ++i) r += std::norm(a.amp[i] - b.amp[i]);
    return std::sqrt(r);
}

//! (cos, sin) of the shell coin angle: cos = 1 - 2x/n, sin = (2/n)sqrt(x(n-x)).
inline std::pair<double, double> coin_angle(int n, int x) {
    if (x < 1 || x > n - 1) throw std::out_of_range("shell coin is scalar outside 1 <= x <= n-1");
    const double c = 1.0 - 2.0 * x / n;
    const double s = 2.0 / n * std::sqrt(static_cast<double>(x) * (n - x));
    return {c, s};
}

//! Dense reduced step operator (real entries), row-major.
struct LineOperator {
    int n = 0;
    LineMode mode = LineMode::Search;
    int dim = 0;
    std::vector<double> m;

    double at(int i, int j) const { return m[static_cast<std::size_t>(i) * dim + j]; }
};

inline LineState apply(const LineOperator& op, const LineState& s) {
    if (s.n != op.n || s.mode != op.mode) throw std::invalid_argument("line state does not conform");
    LineState out = line_zero_state(op.n, op.mode);
    for (int i = 0; i < op.dim; ++i) {
        cplx acc = 0.0;
        const double* row = op.m.data() + static_cast<std::size_t>(i) * op.dim;
        for (int j = 0; j < op.dim; ++j) acc += row[j] * s.amp[j];
        out.amp[i] = acc;
    }
    return out;
}

namespace detail {

// Shift permutation on line slots: R_x <-> L_{x+1}, loops fixed.
inline std::vector<int> line_shift_perm(int n, LineMode mode) {
    const int dim = line_dim(n, mode);
    std::vector<int> sigma(dim);
    for (int i = 0; i < dim; ++i) sigma[i] = i;
    for (int x = 0; x < n; ++x) {
        sigma[r_slot(n, x)] = l_slot(n, x + 1);
        sigma[l_slot(n, x + 1)] = r_slot(n, x);
    }
    return sigma;
}

}  // namespace detail

inline LineOperator build_line_operator(int n, double l, LineMode mode,
                                        Ordering ordering = Ordering::ShiftAfterCoin) {
    if (n < 2) throw std::invalid_argument("hypercube dimension must be >= 2");
    if (!(l > 0.0)) throw std::invalid_argument("loop weight must be positive");
    const int dim = line_dim(n, mode);
    std::vector<double> coin(static_cast<std::size_t>(dim) * dim, 0.0);
    auto set = [&](int i, int j, double v) { coin[static_cast<std::size_t>(i) * dim + j] = v; };

    // marked-coin block, basis {edge slot, loop slot}
    const double g = (n - l) / (n + l);
    const double h = 2.0 * std::sqrt(static_cast<double>(n) * l) / (n + l);
    set(r_slot(n, 0), r_slot(n, 0), -g);
    set(r_slot(n, 0), loop0_slot(n), -h);
    set(loop0_slot(n), r_slot(n, 0), -h);
    set(loop0_slot(n), loop0_slot(n), g);

    for (int x = 1; x <= n - 1; ++x) {
        const auto [c, s] = coin_angle(n, x);
        set(r_slot(n, x), r_slot(n, x), c);
        set(r_slot(n, x), l_slot(n, x), s);
        set(l_slot(n, x), r_slot(n, x), s);
        set(l_slot(n, x), l_slot(n, x), -c);
    }

    if (mode == LineMode::Search) {
        set(l_slot(n, n), l_slot(n, n), 1.0);
    } else {
        set(l_slot(n, n), l_slot(n, n), -g);
        set(l_slot(n, n), loopn_slot(n), -h);
        set(loopn_slot(n), l_slot(n, n), -h);
        set(loopn_slot(n), loopn_slot(n), g);
    }

    LineOperator op{n, mode, dim, std::vector<double>(static_cast<std::size_t>(dim) * dim, 0.0)};
    const std::vector<int> sigma = detail::line_shift_perm(n, mode);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            // S*C permutes coin rows; C*S permutes coin columns
            const double v = (ordering == Ordering::ShiftAfterCoin)
                                 ? coin[static_cast<std::size_t>(sigma[i]) * dim + j]
                                 : coin[static_cast<std::size_t>(i) * dim + sigma[j]];
            op.m[static_cast<std::size_t>(i) * dim + j] = v;
        }
    return op;
}

namespace detail {

inline double r_coeff(int n, int x) {
    return 1.0 / std::sqrt((n - x) * binomial(n, x));
}

inline double l_coeff(int n, int x) {
    return 1.0 / std::sqrt(x * binomial(n, x));
}

}  // namespace detail

//! Isometry from the line basis into the full hypercube space.
inline FullState embed_line_state(const LineState& line) {
    const int n = line.n;
    FullState full = zero_state(n);
    const std::size_t stride = n + 1;
    for (Vertex v = 0; v < num_vertices(n); ++v) {
        const int x = hamming_weight(v);
        const std::size_t base = static_cast<std::size_t>(v) * stride;
        const cplx ar = x < n ? line.amp[r_slot(n, x)] * detail::r_coeff(n, x) : cplx{0.0};
        const cplx al = x > 0 ? line.amp[l_slot(n, x)] * detail::l_coeff(n, x) : cplx{0.0};
        for (int d = 1; d <= n; ++d) full.amp[base + d] = vertex_bit(v, d) ? al : ar;
    }
    full.amp[basis_index(n, 0, 0)] = line.amp[loop0_slot(n)];
    if (line.mode == LineMode::AntipodalTransfer)
        full.amp[basis_index(n, antipode(n, 0), 0)] = line.amp[loopn_slot(n)];
    return full;
}

//! Adjoint of the embedding plus the norm of the component left behind.
inline std::pair<LineState, double> reduce_full_state(const FullState& full, LineMode mode) {
    const int n = full.n;
    if (full.amp.size() != state_size(n)) throw std::invalid_argument("malformed full state");
    LineState line = line_zero_state(n, mode);
    const std::size_t stride = n + 1;
    for (Vertex v = 0; v < num_vertices(n); ++v) {
        const int x = hamming_weight(v);
        const std::size_t base = static_cast<std::size_t>(v) * stride;
        cplx sr = 0.0, sl = 0.0;
        for (int d = 1; d <= n; ++d)
            (vertex_bit(v, d) ? sl : sr) += full.amp[base + d];
        if (x < n) line.amp[r_slot(n, x)] += sr * detail::r_coeff(n, x);
        if (x > 0) line.amp[l_slot(n, x)] += sl * detail::l_coeff(n, x);
    }
    line.amp[loop0_slot(n)] = full.amp[basis_index(n, 0, 0)];
    if (mode == LineMode::AntipodalTransfer)
        line.amp[loopn_slot(n)] = full.amp[basis_index(n, antipode(n, 0), 0)];
    return {line, distance(full, embed_line_state(line))};
}

//! Reduced equal superposition: R_x = 2^{-n/2} sqrt(C(n-1,x)), L_x likewise.
inline LineState psi0_line(int n, LineMode mode) {
    LineState s = line_zero_state(n, mode);
    const double scale = std::pow(2.0, -0.5 * n);
    for (int x = 0; x <= n - 1; ++x) s.amp[r_slot(n, x)] = scale * std::sqrt(binomial(n - 1, x));
    for (int x = 1; x <= n; ++x) s.amp[l_slot(n, x)] = scale * std::sqrt(binomial(n - 1, x - 1));
    return s;
}

inline LineState line_basis_state(int n, LineMode mode, int slot) {
    LineState s = line_zero_state(n, mode);
    s.amp.at(slot) = 1.0;
    return s;
}

struct LineEigenPair {
    double phase = 0.0;            // eigenvalue e^{i phase}
    std::vector<cplx> vec;         // normalized eigenvector in line slots
};

//! Dense eigendecomposition of the reduced operator, sorted by |phase|.
inline std::vector<LineEigenPair> line_eigendecomposition(const LineOperator& op) {
    Eigen::MatrixXcd M(op.dim, op.dim);
    for (int i = 0; i < op.dim; ++i)
        for (int j = 0; j < op.dim; ++j) M(i, j) = op.at(i, j);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M);
    if (es.info() != Eigen::Success) throw std::runtime_error("line eigendecomposition failed");
    std::vector<LineEigenPair> out(op.dim);
    for (int k = 0; k < op.dim; ++k) {
        out[k].phase = std::arg(es.eigenvalues()[k]);
        out[k].vec.resize(op.dim);
        for (int i = 0; i < op.dim; ++i) out[k].vec[i] = es.eigenvectors()(i, k);
    }
    std::sort(out.begin(), out.end(), [](const LineEigenPair& a, const LineEigenPair& b) {
        return std::abs(a.phase) < std::abs(b.phase);
    });
    return out;
}

inline std::vector<double> line_eigenphases(const LineOperator& op) {
    std::vector<double> phases;
    for (const auto& p : line_eigendecomposition(op)) phases.push_back(p.phase);
    return phases;
}

//! Protocol initial state for a mode: reduced psi0 for search, the origin
//! loop for antipodal transfer.
inline LineState line_initial_state(int n, LineMode mode) {
    if (mode == LineMode::Search) return psi0_line(n, mode);
    return line_basis_state(n, mode, loop0_slot(n));
}

inline WalkConfig line_mode_config(int n, double l, LineMode mode) {
    if (mode == LineMode::Search) return make_config(n, {{0, l}});
    return make_config(n, {{0, l}, {antipode(n, 0), l}});
}

//! Evolves the protocol initial state t steps in both representations and
//! returns the largest per-step distance between the reduced full state and
//! the line state.
inline double crosscheck_evolutions(int n, double l, LineMode mode, int t,
                                    Ordering ordering = Ordering::ShiftAfterCoin) {
    if (t < 0) throw std::invalid_argument("step count must be nonnegative");
    const StepOperator full_op{line_mode_config(n, l, mode), ordering};
    const LineOperator line_op = build_line_operator(n, l, mode, ordering);
    FullState full = mode == LineMode::Search ? equal_superposition(n) : loop_state(n, 0);
    LineState line = line_initial_state(n, mode);
    double worst = 0.0;
    for (int step = 0; step <= t; ++step) {
        worst = std::max(worst, line_distance(reduce_full_state(full, mode).first, line));
        if (step == t) break;
        apply_step_inplace(full_op, full);
        line = apply(line_op, line);
    }
    return worst;
}

}  // namespace qwalk
