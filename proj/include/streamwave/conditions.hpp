#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "streamwave/params.hpp"
#include "streamwave/stimulus.hpp"

namespace streamwave {

// Residual synaptic-gate levels at the instants that decide whether a unit
// re-excites: each is the fraction of a gate left after free decay over a
// recovery gap, capped at 1 when the gap is negative (overlapping presses).
struct SynapticConstants {
    // gap measured from the end of one press to the start (-) or end (+)
    // of the candidate response window, one (N/R) or two (M) intervals on
    double N_m = 0.0, N_p = 0.0;    // one-interval gaps: TR-TD-D, TR-D
    double M_m = 0.0, M_p = 0.0;    // two-interval gaps: 2TR-TD-D, 2TR-D
    double NL_m = 0.0, NL_p = 0.0;  // long-press variants: TR-2D, TR+TD-2D
    double ML_m = 0.0, ML_p = 0.0;  // long-press variants: 2TR-2D, 2TR+TD-2D
    double R_m = 0.0, R_p = 0.0;    // same-interval re-entry: TR-2D, TR-D

    // set bits mark constants whose gap was negative and were clamped to 1
    enum Bit { bN_m, bN_p, bM_m, bM_p, bNL_m, bNL_p, bML_m, bML_p, bR_m, bR_p };
    unsigned capped = 0;
    bool was_capped(Bit b) const { return (capped >> b) & 1u; }
};

inline SynapticConstants synaptic_constants(const Stimulus& stim, double D, double tau_i) {
    if (!(stim.TR > 0.0) || !(tau_i > 0.0)) throw ValidationError("TR and tau_i must be > 0");
    if (!(D >= 0.0)) throw ValidationError("D must be >= 0");
    SynapticConstants s;
    auto decay = [&](double gap, SynapticConstants::Bit b) {
        if (gap < 0.0) {
            s.capped |= 1u << b;
            return 1.0;
        }
        return std::exp(-gap / tau_i);
    };
    const double TR = stim.TR, TD = stim.TD;
    s.N_m = decay(TR - TD - D, SynapticConstants::bN_m);
    s.N_p = decay(TR - D, SynapticConstants::bN_p);
    s.M_m = decay(2 * TR - TD - D, SynapticConstants::bM_m);
    s.M_p = decay(2 * TR - D, SynapticConstants::bM_p);
    s.NL_m = decay(TR - 2 * D, SynapticConstants::bNL_m);
    s.NL_p = decay(TR + TD - 2 * D, SynapticConstants::bNL_p);
    s.ML_m = decay(2 * TR - 2 * D, SynapticConstants::bML_m);
    s.ML_p = decay(2 * TR + TD - 2 * D, SynapticConstants::bML_p);
    s.R_m = decay(TR - 2 * D, SynapticConstants::bR_m);
    s.R_p = decay(TR - D, SynapticConstants::bR_p);
    return s;
}

// One tabulated inequality: lhs compared against rhs (>= or <, per table row).
struct ThresholdEntry {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual() const { return lhs - rhs; }
};

// Every scalar the analytic state tables compare against theta (or a derived
// threshold). C-values use the short-press constants, D-values the long-press
// ones; the suffix m/p picks the gap to the start/end of the window.
struct ConditionReport {
    // inputs echoed for traceability
    double a = 0, b = 0, c = 0, d = 0, theta = 0, tau_i = 0, D = 0, TD = 0, TR = 0;
    SynapticConstants syn;

    double C1 = 0;
    double C2m = 0, C2p = 0, C3m = 0, C3p = 0, C4m = 0, C4p = 0, C5m = 0, C5p = 0;
    double C6m = 0, C6p = 0, C7m = 0, C7p = 0, C8m = 0, C8p = 0;
    double C9 = 0, C10 = 0;
    double D2m = 0, D2p = 0, D3m = 0, D3p = 0, D4m = 0, D4p = 0, D5m = 0, D5p = 0;
    double D6m = 0, D6p = 0, D7m = 0, D7p = 0, D8m = 0, D8p = 0;
    double D9 = 0, D10 = 0;
    double P = 0, R6m = 0, R7m = 0;
    double K = 0;       // branch switch of the Z-connect alternation state
    double L = 0;       // e^{(D-2TD-TR)/tau_i}
    double K_long = 0;  // e^{(D-2TD)/tau_i}
    double E2 = 0;      // e^{2(D-TR)/tau_i}

    bool ge(double v) const { return v >= theta; }
    bool lt(double v) const { return v < theta; }

    // All comparisons feeding the state tables, for near-tie diagnostics.
    std::vector<ThresholdEntry> threshold_entries() const {
        std::vector<ThresholdEntry> e;
        auto add = [&](const char* n, double v) { e.push_back({n, v, theta}); };
        add("C1", C1);
        add("C2-", C2m), add("C2+", C2p), add("C3-", C3m), add("C3+", C3p);
        add("C4-", C4m), add("C4+", C4p), add("C5-", C5m), add("C5+", C5p);
        add("C6-", C6m), add("C6+", C6p), add("C7-", C7m), add("C7+", C7p);
        add("C8-", C8m), add("C8+", C8p);
        add("C9", C9), add("C10", C10);
        add("D2-", D2m), add("D2+", D2p), add("D3-", D3m), add("D3+", D3p);
        add("D4-", D4m), add("D4+", D4p), add("D5-", D5m), add("D5+", D5p);
        add("D6-", D6m), add("D6+", D6p), add("D7-", D7m), add("D7+", D7p);
        add("D8-", D8m), add("D8+", D8p);
        add("D9", D9), add("D10", D10);
        add("P", P), add("R6-", R6m), add("R7-", R7m);
        add("K", K);
        add("E2-gate", d + b * E2);
        e.push_back({"L-gate", a - L * c + d, (1.0 - L) * theta});
        e.push_back({"Klong-gate+d", a - K_long * c + d, (1.0 - K_long) * theta});
        e.push_back({"Klong-gate", a - K_long * c, (1.0 - K_long) * theta});
        e.push_back({"delay-span", D, 2.0 * TD});
        return e;
    }

    std::vector<std::string> near_ties(double eps) const {
        std::vector<std::string> out;
        for (const auto& t : threshold_entries())
            if (std::fabs(t.residual()) < eps) out.push_back(t.name);
        return out;
    }
};

// Evaluates every tabulated scalar at one parameter point. Requires the weak
// coupling and suprathreshold-input regime; violations raise a regime error
// naming the failed flag.
inline ConditionReport condition_report(const ModelParams& p, const Stimulus& stim, double d) {
    p.validate();
    stim.validate();
    if (!(d >= 0.0) || d > stim.c + 1e-12)
        throw ValidationError("d must lie in [0, c]");
    const RegimeFlags fl = validate_params(p, stim);
    if (!fl.u1) throw RegimeError("regime violation U1: requires a - b < theta");
    if (!fl.u2) throw RegimeError("regime violation U2: requires c >= theta");

    ConditionReport r;
    r.a = p.a;
    r.b = p.b;
    r.c = stim.c;
    r.d = d;
    r.theta = p.theta;
    r.tau_i = p.tau_i;
    r.D = p.D;
    r.TD = stim.TD;
    r.TR = stim.TR;
    r.syn = synaptic_constants(stim, p.D, p.tau_i);
    const SynapticConstants& s = r.syn;
    const double a = p.a, b = p.b, c = stim.c;

    r.C1 = d;
    r.C2m = a - b * s.M_m + d;
    r.C2p = a - b * s.M_p + d;
    r.C3m = c - b * s.N_m;
    r.C3p = c - b * s.N_p;
    r.C4m = c - b * s.M_m;
    r.C4p = c - b * s.M_p;
    r.C5m = a - b * s.N_m + d;
    r.C5p = a - b * s.N_p + d;
    r.C6m = a - b * s.N_m + c;
    r.C6p = a - b * s.N_p + c;
    r.C7m = d - b * s.N_m;
    r.C7p = d - b * s.N_p;
    r.C8m = d - b * s.M_m;
    r.C8p = d - b * s.M_p;
    r.C9 = a - b * s.M_p;
    r.C10 = a - b * s.N_p;

    r.D2m = a - b * s.ML_m + d;
    r.D2p = a - b * s.ML_p + d;
    r.D3m = c - b * s.NL_m;
    r.D3p = c - b * s.NL_p;
    r.D4m = c - b * s.ML_m;
    r.D4p = c - b * s.ML_p;
    r.D5m = a - b * s.NL_m + d;
    r.D5p = a - b * s.NL_p + d;
    r.D6m = a - b * s.NL_m + c;
    r.D6p = a - b * s.NL_p + c;
    r.D7m = d - b * s.NL_m;
    r.D7p = d - b * s.NL_p;
    r.D8m = d - b * s.ML_m;
    r.D8p = d - b * s.ML_p;
    r.D9 = a - b * s.ML_p;
    r.D10 = a - b * s.NL_p;

    r.P = a - b + d;
    r.R6m = a - b * s.R_m + d;
    r.R7m = d - b * s.R_m;
    r.K = c - (d - p.theta) * std::exp(stim.TR / p.tau_i);
    r.L = std::exp((p.D - 2.0 * stim.TD - stim.TR) / p.tau_i);
    r.K_long = std::exp((p.D - 2.0 * stim.TD) / p.tau_i);
    r.E2 = std::exp(2.0 * (p.D - stim.TR) / p.tau_i);
    return r;
}

}  // namespace streamwave
