#pragma once

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "streamwave/gain.hpp"
#include "streamwave/params.hpp"

namespace streamwave {

enum class ToneId { A, B };

struct ToneInterval {
    double start = 0.0;
    double end = 0.0;
    ToneId tone = ToneId::A;
};

using ToneSchedule = std::vector<ToneInterval>;

// All active tone intervals whose start lies in [0, t_end], in start order.
// A tones occupy [2k*TR, 2k*TR + TD], B tones [(2k+1)*TR, (2k+1)*TR + TD].
inline ToneSchedule tone_schedule(const Stimulus& stim, double t_end) {
    stim.validate();
    if (!(t_end > 0.0)) throw ValidationError("t_end must be > 0");
    ToneSchedule out;
    for (long k = 0;; ++k) {
        const double start = static_cast<double>(k) * stim.TR;
        if (start > t_end) break;
        out.push_back({start, start + stim.TD, (k % 2 == 0) ? ToneId::A : ToneId::B});
    }
    return out;
}

// d = c * (1 - df^(1/m)): the input a unit receives during the other tone.
// df=0 collapses the tones (d=c); df=1 fully separates them (d=0).
inline double df_to_d(double c, double df, int m) {
    if (!(df >= 0.0 && df <= 1.0)) throw ValidationError("df must be in [0,1]");
    if (!(c >= 0.0)) throw ValidationError("c must be >= 0");
    if (m < 1) throw ValidationError("m must be >= 1");
    return c * (1.0 - std::pow(df, 1.0 / static_cast<double>(m)));
}

struct InputPair {
    double i_A = 0.0;
    double i_B = 0.0;
};

// Square-wave inputs. Tone intervals are closed: membership uses <= at both ends.
inline InputPair square_input(const Stimulus& stim, double d, double t) {
    const double period = 2.0 * stim.TR;
    double r = std::fmod(t, period);
    if (r < 0.0) r += period;
    if (r <= stim.TD) return {stim.c, d};                            // A tone
    if (r >= stim.TR && r <= stim.TR + stim.TD) return {d, stim.c};  // B tone
    return {0.0, 0.0};
}

// Smooth inputs: i_A = c*p(t)p(TD-t) + d*q(t)q(TD-t) with p(t)=S(sin(pi*PR*t)),
// q(t)=S(-sin(pi*PR*t)); i_B swaps c and d. Evaluated at t mod 2TR for stability
// at large t.
inline InputPair smooth_input(const Stimulus& stim, double d, double lambda, double t) {
    const double period = 2.0 * stim.TR;
    double r = std::fmod(t, period);
    if (r < 0.0) r += period;
    const double w = std::numbers::pi / stim.TR;  // pi * PR
    const double s1 = std::sin(w * r);
    const double s2 = std::sin(w * (stim.TD - r));
    const double p1 = sigmoid_gain(s1, lambda);
    const double p2 = sigmoid_gain(s2, lambda);
    const double q1 = sigmoid_gain(-s1, lambda);
    const double q2 = sigmoid_gain(-s2, lambda);
    const double on_a = p1 * p2;
    const double on_b = q1 * q2;
    return {stim.c * on_a + d * on_b, d * on_a + stim.c * on_b};
}

}  // namespace streamwave
