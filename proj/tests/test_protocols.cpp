#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "qwalk/protocols.hpp"

using namespace qwalk;
using Catch::Approx;

TEST_CASE("search trace") {
    const int n = 10;
    const double l = search_weight(n);
    const SearchAnalytics sa = search_schedule(n, l);
    const SearchRun run = run_search(n, l, static_cast<int>(2 * sa.T1));
    CHECK(run.trace.values[0] == 0.0);  // the superposition has no loop amplitude
    CHECK(run.peak >= 0.95);
    CHECK(std::abs(run.argmax - sa.T1) <= 3);
    for (double v : run.trace.values) {
        REQUIRE(v >= -1e-12);
        REQUIRE(v <= 1.0 + 1e-12);
    }
    CHECK_THROWS_AS(run_search(n, l, 0), std::invalid_argument);
}

TEST_CASE("search peak tracks the success-probability formula") {
    const int n = 8;
    const double lopt = search_weight(n);
    for (int i = 0; i < 8; ++i) {
        const double l = lopt * 0.25 * std::pow(16.0, i / 7.0);
        const SearchAnalytics sa = search_schedule(n, l);
        const SearchRun run = run_search(n, l, (int)std::lround(1.5 * kPi / sa.omega));
        REQUIRE(std::abs(run.peak - search_success_probability(n, l)) < 0.05);
    }
}

TEST_CASE("switch transfer reaches the receiver loop") {
    const int n = 8;
    const double l = search_weight(n);
    const SwitchRun run = transfer_with_switch(n, l, 0, antipode(n, 0));
    CHECK(run.fidelity >= 0.9);
    CHECK(run.trace.values.size() == static_cast<std::size_t>(2 * run.t1 + 1));
    CHECK(run.trace.values[0] == 0.0);
    CHECK(run.leakage >= 0.0);
    CHECK(run.leakage < 1e-4);
    CHECK(run.trace.leakage == run.leakage);

    // composition heuristic: switch fidelity ~ (search peak)^2
    const SearchRun search = run_search(n, l, static_cast<int>(2 * run.t1));
    CHECK(run.fidelity >= search.peak * search.peak - 0.02);

    CHECK_THROWS_AS(transfer_with_switch(n, l, 3, 3), std::invalid_argument);
}

TEST_CASE("switch fidelity is symmetric in sender and receiver") {
    const int n = 6;
    const double l = search_weight(n);
    const Vertex r = weight_vertex(2);
    const SwitchRun fwd = transfer_with_switch(n, l, 0, r);
    const SwitchRun bwd = transfer_with_switch(n, l, r, 0);
    CHECK(std::abs(fwd.fidelity - bwd.fidelity) < 1e-12);
}

TEST_CASE("simultaneous transfer to the antipode") {
    const int n = 8;
    const double l = transfer_weight(n);
    const TransferAnalytics ta = transfer_schedule(n, l);
    const Trace tr = transfer_simultaneous(n, l, 0, antipode(n, 0), (int)(2 * ta.T3));
    CHECK(tr.values[0] == 0.0);
    int amax = 0;
    for (std::size_t t = 0; t < tr.values.size(); ++t)
        if (tr.values[t] > tr.values[amax]) amax = (int)t;
    CHECK(tr.values[amax] >= 0.98);
    CHECK(std::abs(amax - ta.T3) <= 2);
    for (std::size_t t = 0; t < tr.values.size(); ++t)
        REQUIRE(std::abs(tr.values[t] - antipodal_fidelity_curve(n, (double)t)) < 0.03);
    CHECK_THROWS_AS(transfer_simultaneous(n, l, 2, 2, 10), std::invalid_argument);
}

TEST_CASE("neighbour peak is wider than the mid-distance peak") {
    const int n = 8;
    const double l = transfer_weight(n);
    const long t3 = transfer_schedule(n, l).T3;
    auto width = [](const std::vector<double>& v) {
        int amax = 0;
        for (std::size_t t = 0; t < v.size(); ++t)
            if (v[t] > v[amax]) amax = (int)t;
        const double half = v[amax] / 2.0;
        int lo = amax, hi = amax;
        while (lo > 0 && v[lo] >= half) --lo;
        while (hi + 1 < (int)v.size() && v[hi] >= half) ++hi;
        return hi - lo;
    };
    const Trace near = transfer_simultaneous(n, l, 0, weight_vertex(1), (int)(2 * t3));
    const Trace mid = transfer_simultaneous(n, l, 0, weight_vertex(5), (int)(2 * t3));
    CHECK(width(near.values) > width(mid.values));
}

TEST_CASE("all weight-d receivers are equivalent") {
    const int n = 8;
    const double l = transfer_weight(n);
    const int t3 = (int)transfer_schedule(n, l).T3;
    const Vertex recvs[3] = {0b00000111, 0b10100001, 0b01011000};
    const double ref = transfer_simultaneous(n, l, 0, recvs[0], t3).values.back();
    for (int i = 1; i < 3; ++i)
        CHECK(std::abs(transfer_simultaneous(n, l, 0, recvs[i], t3).values.back() - ref) <
              1e-10);
}

TEST_CASE("distance sweep at n=10") {
    const DistanceSweep sweep = distance_sweep(10);
    REQUIRE(sweep.fidelity.size() == 10);
    CHECK(sweep.fidelity[4] == Approx(0.997).margin(0.003));   // d=5
    CHECK(sweep.fidelity[1] == Approx(0.994).margin(0.003));   // d=2
    CHECK(sweep.fidelity[0] == Approx(neighbour_analytics(10).fmax).margin(0.005));  // d=1
    CHECK_THROWS_AS(distance_sweep(2), std::invalid_argument);
}

TEST_CASE("minimal fidelity improves with dimension") {
    const auto pts = min_fidelity_sweep(5, 8);
    REQUIRE(pts.size() == 4);
    for (const MinFidelityPoint& p : pts) {
        CHECK(p.min_fid >= 0.9);
        CHECK(p.d1_fid >= 0.85);
        CHECK(p.d1_pred == Approx(neighbour_analytics(p.n).fmax));
    }
    for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i].min_fid > pts[i - 1].min_fid);
}
