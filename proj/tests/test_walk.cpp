#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "qwalk/analytic.hpp"
#include "qwalk/walk.hpp"

using namespace qwalk;
using Catch::Approx;

TEST_CASE("shift moves edge amplitude along one bit-flip") {
    const WalkConfig cfg = make_config(2, {{0, 0.5}});
    const FullState out = apply_shift(cfg, basis_state(2, 0, 1));
    CHECK(out.amp[basis_index(2, 1, 1)] == cplx(1.0));
    CHECK(norm(out) == Approx(1.0));
}

TEST_CASE("shift fixes the marked loop") {
    const WalkConfig cfg = make_config(3, {{0, 0.25}});
    const FullState out = apply_shift(cfg, loop_state(3, 0));
    CHECK(out.amp[basis_index(3, 0, 0)] == cplx(1.0));
}

TEST_CASE("shift and coin are involutions") {
    std::mt19937_64 rng(11);
    const WalkConfig cfg = make_config(6, {{0, 0.3}, {63, 0.02}});
    const FullState s = test::random_state(6, rng);
    CHECK(distance(apply_shift(cfg, apply_shift(cfg, s)), s) < 1e-14);
    CHECK(distance(apply_coin(cfg, apply_coin(cfg, s)), s) < 1e-14);
}

TEST_CASE("Grover coin for n=2 swaps the two edge amplitudes") {
    const WalkConfig cfg = make_config(2, {{3, 0.5}});  // vertex 0 unmarked
    const FullState out = apply_coin(cfg, basis_state(2, 0, 1));
    CHECK(std::abs(out.amp[basis_index(2, 0, 1)]) < 1e-15);
    CHECK(out.amp[basis_index(2, 0, 2)].real() == Approx(1.0));
}

TEST_CASE("marked coin negates its reflection axis") {
    // (sqrt(l), 1, ..., 1)/sqrt(n+l) with l = n is the +1 eigenvector of the
    // underlying reflection, so the marked coin sends it to its negative
    const int n = 4;
    const double l = 4.0;
    const WalkConfig cfg = make_config(n, {{0, l}});
    FullState s = zero_state(n);
    s.amp[basis_index(n, 0, 0)] = std::sqrt(l / (n + l));
    for (int d = 1; d <= n; ++d) s.amp[basis_index(n, 0, d)] = std::sqrt(1.0 / (n + l));
    const FullState out = apply_coin(cfg, s);
    FullState sum = out;
    add_scaled(sum, 1.0, s);
    CHECK(norm(sum) < 1e-14);
}

TEST_CASE("step is unitary") {
    std::mt19937_64 rng(3);
    const StepOperator op{make_config(6, {{0, search_weight(6)}})};
    FullState s = test::random_state(6, rng);
    for (int t = 0; t < 100; ++t) {
        apply_step_inplace(op, s);
        REQUIRE(std::abs(norm(s) - 1.0) < 1e-12);
    }
}

TEST_CASE("unmarked walk fixes the equal superposition") {
    const StepOperator op{make_config(5)};
    const FullState psi0 = equal_superposition(5);
    CHECK(distance(evolve(op, psi0, 7), psi0) < 1e-13);
}

TEST_CASE("alpha1 is an exact 1-eigenvector of the one-mark walk") {
    for (int n : {6, 10}) {
        for (double f : {1.0, 2.3}) {
            const double l = f * search_weight(n);
            const StepOperator op{make_config(n, {{0, l}})};
            CHECK(test::residual_of(op, search_alpha_vectors(n, l).alpha1) < 1e-12);
        }
    }
}

TEST_CASE("beta1 is an exact 1-eigenvector of the antipodal walk") {
    for (int n : {6, 9}) {
        const double l = 1.7 * transfer_weight(n);
        const StepOperator op{make_config(n, {{0, l}, {antipode(n, 0), l}})};
        CHECK(test::residual_of(op, transfer_beta_vectors(n, l).beta1) < 1e-12);
    }
}

TEST_CASE("gamma1 is an exact 1-eigenvector at every distance") {
    const int n = 8;
    for (int d : {1, 3, 8}) {
        const double l = 0.8 * transfer_weight(n);
        const Vertex r = weight_vertex(d);
        const StepOperator op{make_config(n, {{0, l}, {r, l}})};
        CHECK(test::residual_of(op, gamma_vectors(n, l, r).gamma1) < 1e-12);
    }
}

TEST_CASE("both shift/coin orders give the same search trace") {
    const int n = 6;
    const double l = search_weight(n);
    const StepOperator sc{make_config(n, {{0, l}}), Ordering::ShiftAfterCoin};
    const StepOperator cs{make_config(n, {{0, l}}), Ordering::CoinAfterShift};
    FullState a = equal_superposition(n);
    FullState b = a;
    for (int t = 0; t < 40; ++t) {
        CHECK(std::abs(loop_probability(a, 0) - loop_probability(b, 0)) < 1e-12);
        apply_step_inplace(sc, a);
        apply_step_inplace(cs, b);
    }
}

TEST_CASE("search preserves Hamming-shell symmetry") {
    const int n = 6;
    const StepOperator op{make_config(n, {{0, search_weight(n)}})};
    const FullState s = evolve(op, equal_superposition(n), 25);
    for (int x = 0; x <= n; ++x)
        for (int cls = 0; cls <= 1; ++cls) {
            cplx ref = 0.0;
            bool have = false;
            for (Vertex v = 0; v < num_vertices(n); ++v) {
                if (hamming_weight(v) != x) continue;
                for (int d = 1; d <= n; ++d) {
                    if (vertex_bit(v, d) != (cls == 1)) continue;
                    const cplx a = s.amp[basis_index(n, v, d)];
                    if (!have) {
                        ref = a;
                        have = true;
                    }
                    REQUIRE(std::abs(a - ref) < 1e-13);
                }
            }
        }
}

TEST_CASE("loop slots of unmarked vertices are never written") {
    const int n = 5;
    const StepOperator op{make_config(n, {{0, transfer_weight(n)},
                                          {weight_vertex(2), transfer_weight(n)}})};
    const FullState s = evolve(op, loop_state(n, 0), 50);
    for (Vertex v = 0; v < num_vertices(n); ++v) {
        if (v == 0 || v == weight_vertex(2)) continue;
        REQUIRE(s.amp[basis_index(n, v, 0)] == cplx(0.0));  // exactly, not approximately
    }
}

TEST_CASE("switch transfer is symmetric under sender/receiver exchange") {
    const int n = 6;
    const double l = transfer_weight(n);
    const Vertex r = weight_vertex(2);
    const StepOperator fwd{make_config(n, {{0, l}, {r, l}})};
    const StepOperator bwd{make_config(n, {{r, l}, {0, l}})};
    FullState a = loop_state(n, 0);
    FullState b = loop_state(n, r);
    for (int t = 0; t < 30; ++t) {
        CHECK(std::abs(std::norm(a.amp[basis_index(n, r, 0)]) -
                       std::norm(b.amp[basis_index(n, 0, 0)])) < 1e-12);
        apply_step_inplace(fwd, a);
        apply_step_inplace(bwd, b);
    }
}

TEST_CASE("evolve basics") {
    const StepOperator op{make_config(4, {{0, 0.25}})};
    const FullState psi0 = equal_superposition(4);
    CHECK(distance(evolve(op, psi0, 0), psi0) == 0.0);
    CHECK_THROWS_AS(evolve(op, psi0, -1), std::invalid_argument);
    CHECK_THROWS_AS(apply_step(op, equal_superposition(5)), std::invalid_argument);
}
