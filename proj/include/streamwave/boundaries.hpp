#pragma once

#include <cmath>
#include <vector>

#include "streamwave/params.hpp"

namespace streamwave {

// Percept-boundary curves in the (PR, df) plane. Each curve is the root of a
// threshold margin in the desynchronised solution family: the re-excitation
// margin a - b*decay + d crosses theta at a critical d, which maps back to df
// through d = c (1 - df^{1/m}).

// Which inhibition-decay gap the fission curve uses: the press-referenced gap
// 2 TR - TD, or the delay-referenced gap 2 TR - D that matches the condition
// tables exactly. They differ by TD - D, visually negligible at small delays.
enum class FissionVariant { tone_gap, delay_gap };

struct BoundaryValue {
    double df = 0.0;       // clamped to [0, 1]
    double raw = 0.0;      // signed m-th power of the base, before clamping
    bool clamped = false;  // true when raw fell outside [0, 1]
};

namespace detail {

// df solving a - b e^{-gap/tau_i} + d(df) = theta, clamped into [0, 1].
// The decay factor is capped at unity when the gap is negative, matching the
// synaptic-constant convention.
inline BoundaryValue boundary_from_gap(const ModelParams& p, const Stimulus& stim,
                                       double gap) {
    const double decay = gap < 0.0 ? 1.0 : std::exp(-gap / p.tau_i);
    const double base = (p.a - p.b * decay + stim.c - p.theta) / stim.c;
    BoundaryValue v;
    v.raw = base >= 0.0 ? std::pow(base, stim.m) : -std::pow(-base, stim.m);
    if (v.raw < 0.0) {
        v.df = 0.0;
        v.clamped = true;
    } else if (v.raw > 1.0) {
        v.df = 1.0;
        v.clamped = true;
    } else {
        v.df = v.raw;
    }
    return v;
}

}  // namespace detail

// Integration/bistability boundary: root of a - b N+ + d = theta with
// N+ = e^{-(TR - D)/tau_i}.
inline BoundaryValue coherence_boundary(const ModelParams& p, const Stimulus& stim) {
    return detail::boundary_from_gap(p, stim, stim.TR - p.D);
}

// Bistability/segregation boundary: root of a - b M+ + d = theta. The
// press-referenced variant uses M+ = e^{-(2 TR - TD)/tau_i}; the
// delay-referenced variant uses M+ = e^{-(2 TR - D)/tau_i}.
inline BoundaryValue fission_boundary(const ModelParams& p, const Stimulus& stim,
                                      FissionVariant variant = FissionVariant::tone_gap) {
    const double gap = variant == FissionVariant::tone_gap ? 2.0 * stim.TR - stim.TD
                                                           : 2.0 * stim.TR - p.D;
    return detail::boundary_from_gap(p, stim, gap);
}

// Re-entry boundary inside the short-delay regime: root of
// a - b R- + d = theta with R- = e^{-(TR - 2 D)/tau_i}. Below it the
// suppressed unit rejoins within the same press pair.
inline BoundaryValue reentry_boundary(const ModelParams& p, const Stimulus& stim) {
    return detail::boundary_from_gap(p, stim, stim.TR - 2.0 * p.D);
}

struct BoundaryPoint {
    double pr = 0.0;  // presentation rate in Hz
    BoundaryValue coherence;
    BoundaryValue fission;
    BoundaryValue reentry;
};

struct BoundaryCurve {
    FissionVariant variant = FissionVariant::tone_gap;
    std::vector<BoundaryPoint> points;
};

// Samples all three curves on a uniform PR grid; stim supplies TD, c, m and
// its TR is overridden per sample.
inline BoundaryCurve sample_boundaries(const ModelParams& p, Stimulus stim, double pr_min,
                                       double pr_max, int n,
                                       FissionVariant variant = FissionVariant::tone_gap) {
    if (!(pr_min > 0.0)) throw ValidationError("pr_min must be positive");
    if (!(pr_max > pr_min)) throw ValidationError("pr_max must exceed pr_min");
    if (n < 2) throw ValidationError("boundary sampling needs at least 2 points");
    BoundaryCurve curve;
    curve.variant = variant;
    curve.points.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double pr = pr_min + (pr_max - pr_min) * i / (n - 1);
        stim.TR = 1.0 / pr;
        stim.validate();
        BoundaryPoint pt;
        pt.pr = pr;
        pt.coherence = coherence_boundary(p, stim);
        pt.fission = fission_boundary(p, stim, variant);
        pt.reentry = reentry_boundary(p, stim);
        curve.points.push_back(pt);
    }
    return curve;
}

}  // namespace streamwave
