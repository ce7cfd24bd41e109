#pragma once
// Eigenphase and eigenvector extraction for the full two-mark walk.
//
// The relevant spectrum sits in a handful of phases near zero, so instead of
// a dense full-space eigensolve we record the overlap series
// a_t = <phi|U^t|psi>, locate spectral peaks of its Hann-windowed transform,
// refine each peak by direct maximization, and reconstruct eigenvectors with
// a time-averaged phase filter v ~ sum_t w_t e^{-i w t} U^t psi. The dense
// eigendecomposition of the reduced line operator provides an independent
// oracle in the antipodal case.

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwalk/analytic.hpp"
#include "qwalk/core.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

struct OverlapSeries {
    std::vector<cplx> values;  // a_t for t = 0..T-1
};

inline OverlapSeries overlap_series(const StepOperator& op, const FullState& bra,
                                    const FullState& ket, int T) {
    if (T < 2) throw std::invalid_argument("series length must be at least 2");
    check_conforms(op.config, bra);
    check_conforms(op.config, ket);
    OverlapSeries series;
    series.values.reserve(T);
    FullState cur = ket;
    for (int t = 0; t < T; ++t) {
        series.values.push_back(inner_product(bra, cur));
        if (t + 1 < T) apply_step_inplace(op, cur);
    }
    return series;
}

struct PhasePeak {
    double omega = 0.0;   // eigenphase in (-pi, pi]
    double weight = 0.0;  // squared seed overlap of the eigenspace
};

struct PhaseSpectrum {
    std::vector<PhasePeak> peaks;  // nonzero phases, ascending omega
    double zero_weight = 0.0;      // weight attributed to the 1-eigenspace
};

namespace detail {

inline double hann(int t, int T) {
    return 0.5 * (1.0 - std::cos(2.0 * kPi * t / (T - 1)));
}

inline void fft_inplace(std::vector<cplx>& a) {
    const std::size_t N = a.size();
    for (std::size_t i = 1, j = 0; i < N; ++i) {
        std::size_t bit = N >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= N; len <<= 1) {
        const double ang = -2.0 * kPi / static_cast<double>(len);
        const cplx step(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < N; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= step;
            }
        }
    }
}

// |sum_t a_t w_t e^{-i w t}| of the pre-windowed samples.
inline double window_response(const std::vector<cplx>& windowed, double omega) {
    cplx acc = 0.0;
    const cplx step(std::cos(-omega), std::sin(-omega));
    cplx phase(1.0, 0.0);
    for (const cplx& b : windowed) {
        acc += b * phase;
        phase *= step;
    }
    return std::abs(acc);
}

inline double refine_peak(const std::vector<cplx>& windowed, double lo, double hi) {
    for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (window_response(windowed, m1) < window_response(windowed, m2))
            lo = m1;
        else
            hi = m2;
    }
    return 0.5 * (lo + hi);
}

inline std::vector<cplx> apply_window(const std::vector<cplx>& values) {
    const int T = static_cast<int>(values.size());
    std::vector<cplx> windowed(values.size());
    for (int t = 0; t < T; ++t) windowed[t] = values[t] * hann(t, T);
    return windowed;
}

inline double window_mass(int T) {
    double w0 = 0.0;
    for (int t = 0; t < T; ++t) w0 += hann(t, T);
    return w0;
}

}  // namespace detail

//! Windowed spectral weight of the series at a given phase.
inline double spectral_weight_at(const OverlapSeries& series, double omega) {
    const std::vector<cplx> windowed = detail::apply_window(series.values);
    return detail::window_response(windowed, omega) /
           detail::window_mass(static_cast<int>(series.values.size()));
}

//! All refined spectral peaks with |omega| >= 16/T, signed, strongest first.
inline std::vector<PhasePeak> signed_phase_peaks(const OverlapSeries& series,
                                                 std::size_t max_peaks = 32) {
    const int T = static_cast<int>(series.values.size());
    if (T < 64)
        throw std::invalid_argument(
            "series too short to resolve phases; use T >= 64 and T >= 16/omega_min");
    const std::vector<cplx> windowed = detail::apply_window(series.values);
    const double w0 = detail::window_mass(T);

    std::vector<cplx> padded = windowed;
    padded.resize(4 * std::bit_ceil(static_cast<std::size_t>(T)), cplx{0.0});
    detail::fft_inplace(padded);
    const std::size_t P = padded.size();

    const double min_sep = 16.0 / T;  // matches the stated resolution floor
    struct Candidate {
        double omega;
        double weight;
    };
    std::vector<Candidate> raw;
    for (std::size_t k = 0; k < P; ++k) {
        const double mag = std::abs(padded[k]);
        if (mag <= std::abs(padded[(k + P - 1) % P]) || mag < std::abs(padded[(k + 1) % P]))
            continue;
        double omega = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(P);
        if (omega > kPi) omega -= 2.0 * kPi;
        if (std::abs(omega) < min_sep) continue;
        raw.push_back({omega, mag});
    }
    // only the strongest bins are worth the O(T) refinement; sidelobe bumps
    // of accepted peaks are culled by the min_sep rule below
    std::sort(raw.begin(), raw.end(),
              [](const Candidate& a, const Candidate& b) { return a.weight > b.weight; });
    if (raw.size() > 4 * max_peaks) raw.resize(4 * max_peaks);
    std::vector<Candidate> cands;
    const double half = 2.0 * kPi / static_cast<double>(P) * 2.0;
    for (const Candidate& r : raw) {
        const double refined = detail::refine_peak(windowed, r.omega - half, r.omega + half);
        if (std::abs(refined) < min_sep) continue;
        cands.push_back({refined, detail::window_response(windowed, refined) / w0});
    }
    std::sort(cands.begin(), cands.end(),
              [](const Candidate& a, const Candidate& b) { return a.weight > b.weight; });
    std::vector<PhasePeak> peaks;
    for (const Candidate& c : cands) {
        bool shadowed = false;
        for (const PhasePeak& p : peaks)
            if (std::abs(p.omega - c.omega) < min_sep) shadowed = true;
        if (shadowed) continue;
        peaks.push_back({c.omega, c.weight});
        if (peaks.size() >= max_peaks) break;
    }
    return peaks;
}

//! The k spectrally dominant positive phases, ascending; conjugate pairs are
//! merged and phases inside the zero window count toward the 1-eigenspace.
inline PhaseSpectrum dominant_eigenphases(const OverlapSeries& series, int k) {
    if (k < 1) throw std::invalid_argument("peak count must be at least 1");
    const int T = static_cast<int>(series.values.size());
    PhaseSpectrum out;
    out.zero_weight = spectral_weight_at(series, 0.0);
    const double min_sep = 16.0 / T;
    std::vector<PhasePeak> merged;
    for (const PhasePeak& p : signed_phase_peaks(series)) {
        const double mag = std::abs(p.omega);
        bool seen = false;
        for (const PhasePeak& q : merged)
            if (std::abs(q.omega - mag) < min_sep) seen = true;
        if (!seen) merged.push_back({mag, p.weight});
    }
    std::sort(merged.begin(), merged.end(),
              [](const PhasePeak& a, const PhasePeak& b) { return a.weight > b.weight; });
    if (merged.size() > static_cast<std::size_t>(k)) merged.resize(k);
    std::sort(merged.begin(), merged.end(),
              [](const PhasePeak& a, const PhasePeak& b) { return a.omega < b.omega; });
    out.peaks = std::move(merged);
    return out;
}

struct ExtractionError : std::runtime_error {
    double residual;
    explicit ExtractionError(double r)
        : std::runtime_error("eigenvector filter did not converge; residual " +
                             std::to_string(r)),
          residual(r) {}
};

struct EigenPair {
    double omega = 0.0;
    FullState vector;
    double residual = 0.0;   // ||U v - e^{i omega} v||
    double amplitude = 0.0;  // |<seed|v>|^2
};

//! Filter length used by default: 64 * T3 rounded up to a power of two.
inline int extraction_default_T(int n) {
    const long t3 = transfer_schedule(n, transfer_weight(n)).T3;
    return static_cast<int>(std::bit_ceil(static_cast<std::uint64_t>(64 * t3)));
}

//! Time-averaged phase filter around omega; iterates until the residual is
//! small, throws ExtractionError above 1e-4.
inline EigenPair filtered_eigenvector(const StepOperator& op, const FullState& seed,
                                      double omega, int T) {
    if (T < 2) throw std::invalid_argument("filter length must be at least 2");
    check_conforms(op.config, seed);
    FullState seed_unit = seed;
    normalize(seed_unit);

    FullState v = seed_unit;
    double residual = 1.0;
    double phase = omega;
    for (int pass = 0; pass < 4; ++pass) {
        FullState acc = zero_state(v.n);
        FullState cur = v;
        const cplx rot(std::cos(-phase), std::sin(-phase));
        cplx coeff(1.0, 0.0);
        for (int t = 0; t < T; ++t) {
            add_scaled(acc, coeff * detail::hann(t, T), cur);
            if (t + 1 < T) {
                apply_step_inplace(op, cur);
                coeff *= rot;
            }
        }
        const double nrm = norm(acc);
        if (nrm < 1e-12) throw ExtractionError(1.0);
        scale(acc, 1.0 / nrm);
        v = std::move(acc);
        FullState uv = apply_step(op, v);
        phase = std::arg(inner_product(v, uv));
        add_scaled(uv, -cplx(std::cos(phase), std::sin(phase)), v);
        residual = norm(uv);
        if (residual <= 1e-8) break;
    }
    if (residual > 1e-4) throw ExtractionError(residual);
    EigenPair pair;
    pair.omega = phase;
    pair.vector = std::move(v);
    pair.residual = residual;
    pair.amplitude = std::norm(inner_product(seed_unit, pair.vector));
    return pair;
}

struct ResonanceReport {
    int n = 0;
    int d = 0;
    double omega1 = 0.0;  // fast phase, seeded by the equal superposition
    double omega2 = 0.0;  // slow phase, seeded by the sender loop
    double weight1 = 0.0;
    double weight2 = 0.0;
    double ratio = 0.0;   // omega1/omega2
    // largest windowed weight near 2*omega2, per seed; ~0 when the fast pair
    // is absent from the spectrum
    double harmonic_weight_loop = 0.0;
    double harmonic_weight_psi0 = 0.0;
};

namespace detail {

inline double max_weight_near(const OverlapSeries& series, double lo, double hi) {
    const int T = static_cast<int>(series.values.size());
    const std::vector<cplx> windowed = apply_window(series.values);
    const double w0 = window_mass(T);
    const double step = kPi / T;  // half the main-lobe width
    double best = 0.0;
    for (double w = lo; w <= hi; w += step)
        best = std::max(best, window_response(windowed, w) / w0);
    return best;
}

}  // namespace detail

//! Extracts the two protocol frequencies for marks at distance d with the
//! harmonic weight, plus the residual spectral weight near the 2:1 harmonic.
inline ResonanceReport resonance_frequencies(int n, int d, int T = 0) {
    if (d < 1 || d > n) throw std::invalid_argument("distance d must be in 1..n");
    if (T == 0) T = extraction_default_T(n);
    const double l = transfer_weight(n);
    const StepOperator op{make_config(n, {{0, l}, {weight_vertex(d), l}})};
    const FullState loop0 = loop_state(n, 0);
    const FullState psi0 = equal_superposition(n);
    const OverlapSeries loop_series = overlap_series(op, loop0, loop0, T);
    const OverlapSeries psi0_series = overlap_series(op, psi0, psi0, T);

    ResonanceReport rep;
    rep.n = n;
    rep.d = d;
    const PhaseSpectrum loop_spec = dominant_eigenphases(loop_series, 2);
    if (loop_spec.peaks.empty()) throw std::runtime_error("no spectral peak in loop series");
    const auto strongest = [](const std::vector<PhasePeak>& ps) {
        return *std::max_element(ps.begin(), ps.end(),
                                 [](const PhasePeak& a, const PhasePeak& b) {
                                     return a.weight < b.weight;
                                 });
    };
    const PhasePeak slow = strongest(loop_spec.peaks);
    rep.omega2 = slow.omega;
    rep.weight2 = slow.weight;

    // fast pair from the superposition seed, away from the slow phase
    const PhaseSpectrum psi0_spec = dominant_eigenphases(psi0_series, 3);
    double best_w = 0.0;
    for (const PhasePeak& p : psi0_spec.peaks) {
        if (std::abs(p.omega - rep.omega2) < 0.5 * rep.omega2) continue;
        if (p.weight > best_w) {
            best_w = p.weight;
            rep.omega1 = p.omega;
            rep.weight1 = p.weight;
        }
    }
    rep.ratio = rep.omega2 != 0.0 ? rep.omega1 / rep.omega2 : 0.0;
    rep.harmonic_weight_loop =
        detail::max_weight_near(loop_series, 1.9 * rep.omega2, 2.1 * rep.omega2);
    rep.harmonic_weight_psi0 =
        detail::max_weight_near(psi0_series, 1.9 * rep.omega2, 2.1 * rep.omega2);
    return rep;
}

struct OverlapReport {
    ResonanceReport resonance;
    // |<eigenvector at +-omega_j | gamma>| for the matching subspace vector
    double g2_plus = 0.0;
    double g2_minus = 0.0;
    double g4_plus = 0.0;
    double g4_minus = 0.0;
};

//! Overlap of the extracted eigenvectors with the analytic two-mark vectors;
//! requires d >= 2 so that both conjugate pairs are present.
inline OverlapReport eigenvector_overlaps(int n, int d, int T = 0) {
    if (d < 2 || d > n) throw std::invalid_argument("overlap report requires 2 <= d <= n");
    if (T == 0) T = extraction_default_T(n);
    OverlapReport rep;
    rep.resonance = resonance_frequencies(n, d, T);
    const double l = transfer_weight(n);
    const StepOperator op{make_config(n, {{0, l}, {weight_vertex(d), l}})};
    const GammaSet gam = gamma_vectors(n, l, weight_vertex(d));
    const FullState psi0 = equal_superposition(n);
    const FullState loop0 = loop_state(n, 0);

    const EigenPair f_plus = filtered_eigenvector(op, psi0, rep.resonance.omega1, T);
    const EigenPair f_minus = filtered_eigenvector(op, psi0, -rep.resonance.omega1, T);
    const EigenPair s_plus = filtered_eigenvector(op, loop0, rep.resonance.omega2, T);
    const EigenPair s_minus = filtered_eigenvector(op, loop0, -rep.resonance.omega2, T);
    rep.g2_plus = std::abs(inner_product(f_plus.vector, gam.gamma2));
    rep.g2_minus = std::abs(inner_product(f_minus.vector, gam.gamma2));
    rep.g4_plus = std::abs(inner_product(s_plus.vector, gam.gamma4));
    rep.g4_minus = std::abs(inner_product(s_minus.vector, gam.gamma4));
    return rep;
}

}  // namespace qwalk
