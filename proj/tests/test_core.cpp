#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "qwalk/core.hpp"

using namespace qwalk;
using Catch::Approx;

TEST_CASE("basis_index layout") {
    CHECK(basis_index(3, 0, 0) == 0);
    CHECK(basis_index(3, 1, 3) == 7);
    CHECK(basis_index(10, 1023, 10) == 11263);  // last slot = 2^10 * 11 - 1
    CHECK_THROWS_AS(basis_index(3, 8, 0), std::out_of_range);
    CHECK_THROWS_AS(basis_index(3, 0, 4), std::out_of_range);
    CHECK_THROWS_AS(basis_index(3, 0, -1), std::out_of_range);
}

TEST_CASE("basis_index is a bijection with deindex") {
    for (int n : {3, 6}) {
        for (Vertex v = 0; v < num_vertices(n); ++v)
            for (int d = 0; d <= n; ++d) {
                const auto [v2, d2] = deindex(n, basis_index(n, v, d));
                REQUIRE(v2 == v);
                REQUIRE(d2 == d);
            }
        CHECK_THROWS_AS(deindex(n, state_size(n)), std::out_of_range);
    }
}

TEST_CASE("equal superposition amplitudes") {
    const FullState s2 = equal_superposition(2);
    for (Vertex v = 0; v < 4; ++v) {
        CHECK(s2.amp[basis_index(2, v, 0)] == cplx(0.0));
        for (int d = 1; d <= 2; ++d)
            CHECK(s2.amp[basis_index(2, v, d)].real() == Approx(1.0 / std::sqrt(8.0)));
    }
    CHECK(norm(s2) == Approx(1.0).margin(1e-14));

    const FullState s10 = equal_superposition(10);
    CHECK(s10.amp[basis_index(10, 77, 4)].real() == Approx(0.0098821176880).margin(1e-12));
    CHECK(norm(s10) == Approx(1.0).margin(1e-13));
}

TEST_CASE("inner products") {
    const FullState psi0 = equal_superposition(4);
    CHECK(inner_product(psi0, psi0).real() == Approx(1.0).margin(1e-14));
    CHECK(std::abs(inner_product(loop_state(4, 0), psi0)) == 0.0);
    CHECK(inner_product(psi0, basis_state(4, 9, 2)).real() ==
          Approx(1.0 / std::sqrt(4.0 * 16.0)).margin(1e-15));

    std::mt19937_64 rng(7);
    const FullState a = test::random_state(4, rng);
    const FullState b = test::random_state(4, rng);
    // conjugate-linear in the bra, linear in the ket
    const cplx c(0.3, -1.1);
    FullState ca = a;
    scale(ca, c);
    CHECK(std::abs(inner_product(ca, b) - std::conj(c) * inner_product(a, b)) < 1e-13);
    FullState cb = b;
    scale(cb, c);
    CHECK(std::abs(inner_product(a, cb) - c * inner_product(a, b)) < 1e-13);
    CHECK(inner_product(a, a).imag() == Approx(0.0).margin(1e-15));

    CHECK_THROWS_AS(inner_product(equal_superposition(3), psi0), std::invalid_argument);
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(make_config(1), std::invalid_argument);
    CHECK_THROWS_AS(make_config(4, {{0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_config(4, {{0, -0.5}}), std::invalid_argument);
    CHECK_THROWS_AS(make_config(4, {{0, 0.1}, {0, 0.1}}), std::invalid_argument);
    CHECK_THROWS_AS(make_config(4, {{16, 0.1}}), std::invalid_argument);
    CHECK_THROWS_AS(make_config(4, {{0, 0.1}, {1, 0.1}, {2, 0.1}}), std::invalid_argument);
    const WalkConfig cfg = make_config(4, {{0, 0.1}, {3, 0.2}});
    CHECK(cfg.find_mark(3)->weight == 0.2);
    CHECK(cfg.find_mark(5) == nullptr);
}

TEST_CASE("vertex helpers") {
    CHECK(hamming_weight(0b1011) == 3);
    CHECK(antipode(4, 0) == 0b1111);
    CHECK(weight_vertex(3) == 0b111);
    CHECK(flip_bit(0b100, 3) == 0);
    CHECK(vertex_bit(0b100, 3));
    CHECK_FALSE(vertex_bit(0b100, 1));
    CHECK(binomial(9, 3) == 84.0);
    CHECK(binomial(10, 0) == 1.0);
    CHECK(binomial(5, 7) == 0.0);
}
