// Command-line driver: protocol runs, parameter sweeps, spectral analyses
// and the self-check suite, emitting figure-ready CSV or JSON tables.
//
// Exit codes: 0 success, 1 validation failure, 2 usage error, 3 resource
// guard (n outside 2..14).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qwalk/analytic.hpp"
#include "qwalk/line.hpp"
#include "qwalk/protocols.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/table.hpp"
#include "qwalk/walk.hpp"

namespace {

constexpr const char* kToolVersion = "qwalk 1.0.0";
constexpr int kMaxDimension = 14;

struct Options {
    int n = 0;
    double l = 0.0;        // 0 = use the command's optimal weight
    int d = 0;             // 0 = antipode
    int steps = 0;         // 0 = command default
    std::uint64_t seed = 1;
    std::string format = "csv";
    std::string out;
};

int guard_dimension(int n, int min_n) {
    if (n > kMaxDimension) {
        std::cerr << "error: n = " << n << " exceeds the resource guard (max "
                  << kMaxDimension << ")\n";
        return 3;
    }
    if (n < min_n) {
        std::cerr << "error: this command requires " << min_n << " <= n <= " << kMaxDimension
                  << "\n";
        return 2;
    }
    return 0;
}

int write_table(const qwalk::Table& table, const Options& opt) {
    std::string payload;
    if (opt.format == "json")
        payload = qwalk::to_json(table).dump(2) + "\n";
    else
        payload = qwalk::to_csv(table);
    if (opt.out.empty()) {
        std::cout << payload;
        return 0;
    }
    std::ofstream f(opt.out, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output file " << opt.out << "\n";
        return 2;
    }
    f << payload;
    return 0;
}

qwalk::Vertex receiver_for(int n, int d) { return qwalk::weight_vertex(d == 0 ? n : d); }

int cmd_search(const Options& opt) {
    using namespace qwalk;
    if (int rc = guard_dimension(opt.n, 4)) return rc;
    const double l = opt.l > 0.0 ? opt.l : search_weight(opt.n);
    const SearchAnalytics sa = search_schedule(opt.n, l);
    const int T = opt.steps > 0 ? opt.steps : static_cast<int>(2 * sa.T1);
    const SearchRun run = run_search(opt.n, l, T);
    Table table;
    table.meta = {{"tool", kToolVersion},     {"protocol", "search"},
                  {"n", opt.n},               {"l", l},
                  {"T", T},                   {"omega", sa.omega},
                  {"T1", sa.T1},              {"argmax", run.argmax},
                  {"peak", run.peak}};
    table.columns = {"t", "probability"};
    for (std::size_t t = 0; t < run.trace.values.size(); ++t)
        table.rows.push_back({static_cast<double>(t), run.trace.values[t]});
    return write_table(table, opt);
}

int cmd_transfer(const Options& opt) {
    using namespace qwalk;
    if (int rc = guard_dimension(opt.n, 4)) return rc;
    const int d = opt.d == 0 ? opt.n : opt.d;
    const double l = opt.l > 0.0 ? opt.l : transfer_weight(opt.n);
    const TransferAnalytics ta = transfer_schedule(opt.n, l);
    const int T = opt.steps > 0 ? opt.steps : static_cast<int>(2 * ta.T3);
    const Vertex receiver = receiver_for(opt.n, d);
    const Trace trace = transfer_simultaneous(opt.n, l, 0, receiver, T);
    Table table;
    table.meta = {{"tool", kToolVersion}, {"protocol", "transfer"}, {"n", opt.n},
                  {"l", l},               {"d", d},                 {"T", T},
                  {"sender", 0},          {"receiver", receiver},   {"omega2", ta.omega2},
                  {"T3", ta.T3}};
    table.columns = {"t", "fidelity", "analytic_fidelity"};
    for (std::size_t t = 0; t < trace.values.size(); ++t) {
        const double curve = d == 1 ? neighbour_fidelity_curve(opt.n, static_cast<double>(t))
                                    : antipodal_fidelity_curve(opt.n, static_cast<double>(t));
        table.rows.push_back({static_cast<double>(t), trace.values[t], curve});
    }
    return write_table(table, opt);
}

int cmd_switch(const Options& opt) {
    using namespace qwalk;
    if (int rc = guard_dimension(opt.n, 4)) return rc;
    const int d = opt.d == 0 ? opt.n : opt.d;
    const double l = opt.l > 0.0 ? opt.l : search_weight(opt.n);
    const Vertex receiver = receiver_for(opt.n, d);
    const SwitchRun run = transfer_with_switch(opt.n, l, 0, receiver);
    Table table;
    table.meta = {{"tool", kToolVersion}, {"protocol", "switch"},   {"n", opt.n},
                  {"l", l},               {"d", d},                 {"sender", 0},
                  {"receiver", receiver}, {"T1", run.t1},           {"T", 2 * run.t1},
                  {"fidelity", run.fidelity}, {"leakage", run.leakage}};
    table.columns = {"t", "fidelity"};
    for (std::size_t t = 0; t < run.trace.values.size(); ++t)
        table.rows.push_back({static_cast<double>(t), run.trace.values[t]});
    return write_table(table, opt);
}

int cmd_sweep_weight(const Options& opt) {
    using namespace qwalk;
    if (int rc = guard_dimension(opt.n, 4)) return rc;
    const int points = 30;
    const double lopt = search_weight(opt.n);
    std::vector<std::vector<double>> rows(points);
    detail::parallel_for(points, [&](std::size_t i) {
        const double l = lopt * 0.1 * std::pow(100.0, static_cast<double>(i) / (points - 1));
        const SearchAnalytics sa = search_schedule(opt.n, l);
        const int T = static_cast<int>(std::lround(1.5 * kPi / sa.omega));
        const SearchRun run = run_search(opt.n, l, T);
        rows[i] = {l, run.peak, search_success_probability(opt.n, l)};
    });
    Table table;
    table.meta = {{"tool", kToolVersion}, {"protocol", "sweep-weight"}, {"n", opt.n},
                  {"points", points},     {"l_optimal", lopt}};
    table.columns = {"l", "simulated_peak", "formula_P"};
    table.rows = std::move(rows);
    return write_table(table, opt);
}

int cmd_sweep_distance(const Options& opt) {
    using namespace qwalk;
    if (int rc = guard_dimension(opt.n, 4)) return rc;
    const DistanceSweep sweep = distance_sweep(opt.n);
    Table table;
    table.meta = {{"tool", kToolVersion},
                  {"protocol", "sweep-distance"},
                  {"n", opt.n},
                  {"l", sweep.l},
                  {"T3", sweep.t3},
                  {"d1_prediction", neighbour_analytics(opt.n).fmax}};
    table.columns = {"d", "fidelity"};
    for (int d = 1; d <= opt.n; ++d)
        table.rows.push_back({static_cast<double>(d), sweep.fidelity[d - 1]});
    return write_table(table, opt);
}

int cmd_eigen(const Options& opt) {
    using namespace qwalk;
    if (int rc = guard_dimension(opt.n, 4)) return rc;
    const int d = opt.d == 0 ? opt.n : opt.d;
    const int T = opt.steps > 0 ? opt.steps : extraction_default_T(opt.n);
    Table table;
    table.meta = {{"tool", kToolVersion}, {"protocol", "eigen"}, {"n", opt.n},
                  {"d", d},               {"T", T},              {"l", transfer_weight(opt.n)}};
    if (d == 1) {
        const ResonanceReport r = resonance_frequencies(opt.n, d, T);
        table.columns = {"omega2", "weight2", "harmonic_weight_loop", "harmonic_weight_psi0"};
        table.rows.push_back(
            {r.omega2, r.weight2, r.harmonic_weight_loop, r.harmonic_weight_psi0});
    } else {
        const OverlapReport rep = eigenvector_overlaps(opt.n, d, T);
        table.columns = {"omega1",  "omega2",  "ratio",   "ov_g2_plus",
                         "ov_g2_minus", "ov_g4_plus", "ov_g4_minus"};
        table.rows.push_back({rep.resonance.omega1, rep.resonance.omega2, rep.resonance.ratio,
                              rep.g2_plus, rep.g2_minus, rep.g4_plus, rep.g4_minus});
    }
    return write_table(table, opt);
}

qwalk::FullState random_state(int n, std::mt19937_64& rng) {
    qwalk::FullState s = qwalk::zero_state(n);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (auto& a : s.amp) a = qwalk::cplx(gauss(rng), gauss(rng));
    qwalk::normalize(s);
    return s;
}

qwalk::LineState random_line_state(int n, qwalk::LineMode mode, std::mt19937_64& rng) {
    qwalk::LineState s = qwalk::line_zero_state(n, mode);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (auto& a : s.amp) a = qwalk::cplx(gauss(rng), gauss(rng));
    const double nr = qwalk::line_norm(s);
    for (auto& a : s.amp) a /= nr;
    return s;
}

int cmd_validate(const Options& opt) {
    using namespace qwalk;
    std::vector<int> dims;
    if (opt.n > 0) {
        if (int rc = guard_dimension(opt.n, 2)) return rc;
        dims = {opt.n};
    } else {
        dims = {4, 6, 8};
    }
    std::mt19937_64 rng(opt.seed);
    Table table;
    table.label_column = "check";
    table.columns = {"n", "value", "threshold", "pass"};
    std::vector<std::string> failures;
    auto record = [&](const std::string& name, int n, double value, double threshold) {
        const bool ok = value <= threshold;
        table.labels.push_back(name);
        table.rows.push_back({static_cast<double>(n), value, threshold, ok ? 1.0 : 0.0});
        if (!ok) failures.push_back(name);
    };

    for (int n : dims) {
        const double ls = search_weight(n), lt = transfer_weight(n);
        const StepOperator search_op{make_config(n, {{0, ls}})};
        const StepOperator anti_op{make_config(n, {{0, lt}, {antipode(n, 0), lt}})};

        {
            FullState s = random_state(n, rng);
            double worst = 0.0;
            for (int t = 0; t < 100; ++t) {
                apply_step_inplace(search_op, s);
                worst = std::max(worst, std::abs(norm(s) - 1.0));
            }
            record("unitarity", n, worst, 1e-12);
        }
        {
            FullState s = random_state(n, rng);
            FullState twice = apply_shift(search_op.config, apply_shift(search_op.config, s));
            record("shift_involution", n, distance(twice, s), 1e-14);
            twice = apply_coin(anti_op.config, apply_coin(anti_op.config, s));
            record("coin_involution", n, distance(twice, s), 1e-14);
        }
        {
            auto residual = [](const StepOperator& op, const FullState& v) {
                FullState uv = apply_step(op, v);
                add_scaled(uv, -1.0, v);
                return norm(uv);
            };
            record("alpha1_residual", n, residual(search_op, search_alpha_vectors(n, ls).alpha1),
                   1e-12);
            record("beta1_residual", n, residual(anti_op, transfer_beta_vectors(n, lt).beta1),
                   1e-12);
            const Vertex r = weight_vertex(std::max(1, n / 2));
            const StepOperator mid_op{make_config(n, {{0, lt}, {r, lt}})};
            record("gamma1_residual", n, residual(mid_op, gamma_vectors(n, lt, r).gamma1), 1e-12);
            if (n >= 4) {
                const StepOperator nn_op{make_config(n, {{0, lt}, {1, lt}})};
                record("gamma0_residual", n, residual(nn_op, gamma0_vector(n)), 1e-10);
            }
        }
        record("crosscheck_search", n, crosscheck_evolutions(n, ls, LineMode::Search, 100),
               1e-10);
        record("crosscheck_antipodal", n,
               crosscheck_evolutions(n, lt, LineMode::AntipodalTransfer, 200), 1e-10);
        for (LineMode mode : {LineMode::Search, LineMode::AntipodalTransfer}) {
            const LineState line = random_line_state(n, mode, rng);
            const FullState emb = embed_line_state(line);
            const char* tag = mode == LineMode::Search ? "embed_isometry_search"
                                                       : "embed_isometry_antipodal";
            record(tag, n, std::abs(norm(emb) - 1.0), 1e-13);
            const auto [back, res] = reduce_full_state(emb, mode);
            record(mode == LineMode::Search ? "reduce_embed_search" : "reduce_embed_antipodal",
                   n, line_distance(back, line) + res, 1e-12);
            const LineOperator lop = build_line_operator(n, lt, mode);
            double defect = 0.0;
            for (int i = 0; i < lop.dim; ++i)
                for (int j = 0; j < lop.dim; ++j) {
                    double dot = 0.0;
                    for (int k = 0; k < lop.dim; ++k) dot += lop.at(k, i) * lop.at(k, j);
                    defect = std::max(defect, std::abs(dot - (i == j ? 1.0 : 0.0)));
                }
            record(mode == LineMode::Search ? "line_unitarity_search"
                                            : "line_unitarity_antipodal",
                   n, defect, 1e-13);
        }
    }

    table.meta = {{"tool", kToolVersion}, {"protocol", "validate"},
                  {"seed", opt.seed},     {"checks", table.rows.size()},
                  {"failures", failures}};
    const int rc = write_table(table, opt);
    if (rc != 0) return rc;
    if (!failures.empty()) {
        for (const auto& f : failures) std::cerr << "FAILED: " << f << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coined-walk search and state transfer on the hypercube with weighted loops"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub, bool needs_n) {
        auto* n_opt = sub->add_option("--n", opt.n, "hypercube dimension");
        if (needs_n) n_opt->required();
        sub->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        sub->add_option("--out", opt.out, "output path (default: stdout)");
        return sub;
    };

    auto* search = add_common(app.add_subcommand("search", "loop probability trace at the marked vertex"), true);
    search->add_option("--l", opt.l, "loop weight (default n/2^n)");
    search->add_option("--steps", opt.steps, "trace length (default 2*T1)");

    auto* transfer = add_common(app.add_subcommand("transfer", "simultaneous-marking state transfer trace"), true);
    transfer->add_option("--l", opt.l, "loop weight (default (2/3)n/2^n)");
    transfer->add_option("--d", opt.d, "receiver distance (default n)");
    transfer->add_option("--steps", opt.steps, "trace length (default 2*T3)");

    auto* swtch = add_common(app.add_subcommand("switch", "search-based transfer with a mark switch"), true);
    swtch->add_option("--l", opt.l, "loop weight (default n/2^n)");
    swtch->add_option("--d", opt.d, "receiver distance (default n)");

    add_common(app.add_subcommand("sweep-weight", "peak search probability over a loop-weight grid"), true);

    add_common(app.add_subcommand("sweep-distance", "transfer fidelity at T3 for every distance"), true);

    auto* eigen = add_common(app.add_subcommand("eigen", "dominant eigenphases and eigenvector overlaps"), true);
    eigen->add_option("--d", opt.d, "receiver distance (default n)");
    eigen->add_option("--steps", opt.steps, "filter length (default 64*T3 rounded to a power of two)");

    auto* validate = add_common(app.add_subcommand("validate", "run the operator invariant suite"), false);
    validate->add_option("--seed", opt.seed, "seed for randomized states")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand("search")) return cmd_search(opt);
        if (app.got_subcommand("transfer")) return cmd_transfer(opt);
        if (app.got_subcommand("switch")) return cmd_switch(opt);
        if (app.got_subcommand("sweep-weight")) return cmd_sweep_weight(opt);
        if (app.got_subcommand("sweep-distance")) return cmd_sweep_distance(opt);
        if (app.got_subcommand("eigen")) return cmd_eigen(opt);
        if (app.got_subcommand("validate")) return cmd_validate(opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
