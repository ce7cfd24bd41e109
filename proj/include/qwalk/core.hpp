#pragma once
// State-vector plumbing for coined walks on the n-dimensional hypercube.
//
// Vertices are n-bit strings packed into an unsigned integer; bit d of the
// string (directions are 1-based) lives at bit position d-1, so moving along
// direction d is a single xor. Every vertex carries n+1 coin slots: slot 0
// is the self-loop, slots 1..n are the edge directions. Only marked vertices
// may hold amplitude in slot 0; the walk operators never read or write the
// loop slot of an unmarked vertex.

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qwalk {

using cplx = std::complex<double>;
using Vertex = std::uint32_t;

inline constexpr double kPi = 3.14159265358979323846;

inline std::uint64_t num_vertices(int n) { return std::uint64_t{1} << n; }
inline bool vertex_bit(Vertex v, int d) { return (v >> (d - 1)) & 1u; }
inline Vertex flip_bit(Vertex v, int d) { return v ^ (Vertex{1} << (d - 1)); }
inline int hamming_weight(Vertex v) { return std::popcount(v); }
inline Vertex antipode(int n, Vertex v) {
    return v ^ static_cast<Vertex>(num_vertices(n) - 1);
}
//! Lowest-label vertex at Hamming distance d from the origin.
inline Vertex weight_vertex(int d) {
    return static_cast<Vertex>((std::uint64_t{1} << d) - 1);
}

//! Binomial coefficient as a double; exact for the small n used here.
inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (k > n - k) k = n - k;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

struct Mark {
    Vertex vertex = 0;
    double weight = 0.0;  // loop weight l > 0
};

struct WalkConfig {
    int n = 0;
    std::vector<Mark> marks;  // 0, 1 or 2 marked vertices

    const Mark* find_mark(Vertex v) const {
        for (const auto& m : marks)
            if (m.vertex == v) return &m;
        return nullptr;
    }
};

//! Validates dimension and mark list (distinct vertices, positive weights).
inline WalkConfig make_config(int n, std::vector<Mark> marks = {}) {
    if (n < 2) throw std::invalid_argument("hypercube dimension must be >= 2");
    if (marks.size() > 2) throw std::invalid_argument("at most two marked vertices supported");
    for (std::size_t i = 0; i < marks.size(); ++i) {
        if (marks[i].vertex >= num_vertices(n))
            throw std::invalid_argument("marked vertex label out of range");
        if (!(marks[i].weight > 0.0))
            throw std::invalid_argument("loop weight must be positive");
        for (std::size_t j = i + 1; j < marks.size(); ++j)
            if (marks[i].vertex == marks[j].vertex)
                throw std::invalid_argument("marked vertices must be distinct");
    }
    return WalkConfig{n, std::move(marks)};
}

inline std::size_t state_size(int n) {
    return static_cast<std::size_t>(num_vertices(n)) * (n + 1);
}

//! index(v, d) = v*(n+1) + d; bijective over 0 <= v < 2^n, 0 <= d <= n.
inline std::size_t basis_index(int n, Vertex v, int d) {
    if (v >= num_vertices(n)) throw std::out_of_range("vertex label out of range");
    if (d < 0 || d > n) throw std::out_of_range("direction out of range");
    return static_cast<std::size_t>(v) * (n + 1) + d;
}

inline std::pair<Vertex, int> deindex(int n, std::size_t i) {
    if (i >= state_size(n)) throw std::out_of_range("state index out of range");
    return {static_cast<Vertex>(i / (n + 1)), static_cast<int>(i % (n + 1))};
}

//! Amplitudes over the (vertex, direction) basis, vertex-major.
struct FullState {
    int n = 0;
    std::vector<cplx> amp;
};

inline FullState zero_state(int n) { return FullState{n, std::vector<cplx>(state_size(n))}; }

inline FullState basis_state(int n, Vertex v, int d) {
    FullState s = zero_state(n);
    s.amp[basis_index(n, v, d)] = 1.0;
    return s;
}

inline FullState loop_state(int n, Vertex v) { return basis_state(n, v, 0); }

//! Equal superposition over all edge slots, zero in every loop slot.
inline FullState equal_superposition(int n) {
    if (n < 2) throw std::invalid_argument("hypercube dimension must be >= 2");
    FullState s = zero_state(n);
    const double a = 1.0 / std::sqrt(static_cast<double>(n) * num_vertices(n));
    const std::size_t stride = n + 1;
    for (Vertex v = 0; v < num_vertices(n); ++v)
        for (int d = 1; d <= n; ++d) s.amp[v * stride + d] = a;
    return s;
}

inline void check_same_space(const FullState& a, const FullState& b) {
    if (a.n != b.n || a.amp.size() != b.amp.size())
        throw std::invalid_argument("state dimensions do not match");
}

namespace detail {

// Neumaier compensated accumulator; keeps long reductions at O(eps) error.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double t = sum + v;
        comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

}  // namespace detail

//! <a|b>, conjugate-linear in the first argument.
inline cplx inner_product(const FullState& a, const FullState& b) {
    check_same_space(a, b);
    detail::KahanSum re, im;
    for (std::size_t i = 0; i < a.amp.size(); ++i) {
        const cplx t = std::conj(a.amp[i]) * b.amp[i];
        re.add(t.real());
        im.add(t.imag());
    }
    return {re.value(), im.value()};
}

inline double norm(const FullState& s) {
    detail::KahanSum acc;
    for (const cplx& a : s.amp) acc.add(std::norm(a));
    return std::sqrt(acc.value());
}

inline void scale(FullState& s, cplx c) {
    for (cplx& a : s.amp) a *= c;
}

inline void normalize(FullState& s) {
    const double nr = norm(s);
    if (nr == 0.0) throw std::invalid_argument("cannot normalize the zero state");
    scale(s, 1.0 / nr);
}

//! dst += c * src
inline void add_scaled(FullState& dst, cplx c, const FullState& src) {
    check_same_space(dst, src);
    for (std::size_t i = 0; i < dst.amp.size(); ++i) dst.amp[i] += c * src.amp[i];
}

inline double distance(const FullState& a, const FullState& b) {
    check_same_space(a, b);
    detail::KahanSum acc;
    for (std::size_t i = 0; i < a.amp.size(); ++i) acc.add(std::norm(a.amp[i] - b.amp[i]));
    return std::sqrt(acc.value());
}

}  // namespace qwalk
