#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "streamwave/conditions.hpp"
#include "streamwave/labels.hpp"

namespace streamwave {

// ---- short-delay regime (D <= TD) ----------------------------------------
// The nine condition sets partition the valid parameter region; they are
// evaluated independently so audits can count how many hold.

namespace detail {

// Turn-on time of the leading unit when its re-excitation margin crosses
// threshold inside the tone: solves a - b e^{-(TR-D-t)/tau_i} + d = theta.
inline bool late_onset_fits_before_period_end(const ConditionReport& r) {
    if (r.b <= 0.0) return true;
    const double lift = r.a + r.d - r.theta;
    if (lift <= 0.0) return false;
    const double t_star = r.TR - r.D - r.tau_i * std::log(r.b / lift);
    return t_star + r.D < r.TR;
}

}  // namespace detail

// All short-delay condition sets that hold at this report. `guarded` enables
// the overlapping-press adjustment used when TD + D >= TR; the synaptic
// constants are already unity-capped, this additionally bounds the late
// turn-on of the integrated state.
inline std::vector<StateName> satisfied_short_sets(const ConditionReport& r,
                                                   bool overlapping_presses) {
    std::vector<StateName> out;
    auto hold = [&](StateName n, bool ok) {
        if (ok) out.push_back(n);
    };
    hold(StateName::I, r.ge(r.C7m) && r.ge(r.P));
    hold(StateName::ID, r.lt(r.C7m) && r.ge(r.P));
    hold(StateName::IS, r.ge(r.R7m) && r.lt(r.P));
    hold(StateName::IDS, r.lt(r.R7m) && r.ge(r.R6m) && r.lt(r.P));
    hold(StateName::AScI,
         r.lt(r.R6m) && r.ge(r.C5p) &&
             (!overlapping_presses || detail::late_onset_fits_before_period_end(r)));
    hold(StateName::AS, r.lt(r.C5p) && r.ge(r.C8m));
    hold(StateName::ASD, r.lt(r.C5p) && r.lt(r.C8m) && r.ge(r.C2m));
    hold(StateName::APcAS, r.lt(r.C2m) && r.ge(r.C2p));
    hold(StateName::AP, r.lt(r.C2p));
    return out;
}

// ---- long-delay regime (D > TD) ------------------------------------------

namespace detail {

struct LongRule {
    StateName name;
    bool (*fn)(const ConditionReport&);
};

inline const std::vector<LongRule>& long_rules() {
    using R = const ConditionReport&;
    static const std::vector<LongRule> rules = {
        // alternation family, short presses
        {StateName::S, [](R r) { return r.lt(r.C1) && r.lt(r.C2p) && r.lt(r.C3p); }},
        {StateName::SB, [](R r) { return r.lt(r.C3p) && r.ge(r.C8m) && r.lt(r.C9); }},
        {StateName::SD,
         [](R r) {
             return r.ge(r.C4m) && r.ge(r.C2m) && r.lt(r.C3p) && r.lt(r.C8m) && r.lt(r.C9);
         }},
        {StateName::AP, [](R r) { return r.lt(r.C2p) && r.ge(r.C3m); }},
        {StateName::AS,
         [](R r) { return r.ge(r.C3m) && r.lt(r.C5p) && r.ge(r.C8m) && r.lt(r.C10); }},
        {StateName::ASD,
         [](R r) {
             return r.ge(r.C2m) && r.ge(r.C3m) && r.lt(r.C5p) && r.lt(r.C8m) && r.lt(r.C10);
         }},
        {StateName::I, [](R r) { return r.ge(r.C1) && r.lt(r.C6p); }},
        {StateName::ID,
         [](R r) { return r.ge(r.C3m) && r.ge(r.C5m) && r.lt(r.C7m) && r.lt(r.C10); }},
        {StateName::IB, [](R r) { return r.ge(r.C7m) && r.lt(r.C10); }},
        // connect family, short presses
        {StateName::ZcS,
         [](R r) { return r.lt(r.C4m) && r.ge(r.C4p) && r.ge(r.C2p) && r.lt(r.C9); }},
        {StateName::ZcAP, [](R r) { return r.lt(r.C2p) && r.lt(r.C3m) && r.ge(r.C3p); }},
        {StateName::ZcAS,
         [](R r) {
             const bool branch = r.K > r.theta
                                     ? (r.lt(r.C3m) && r.ge(r.C3p) && r.ge(r.C2p))
                                     : (r.lt(r.C8m) && r.ge(r.C8p) && r.ge(r.C3p));
             return branch && r.lt(r.C5p) && r.lt(r.C10);
         }},
        {StateName::ZcI,
         [](R r) { return r.lt(r.C3m) && r.ge(r.C3p) && r.ge(r.C5p) && r.lt(r.C10); }},
        {StateName::ScAS,
         [](R r) {
             return r.ge(r.C3p) && r.lt(r.C5p) && r.ge(r.C8m) && r.lt(r.C6m) && r.lt(r.C10);
         }},
        {StateName::SDcAS,
         [](R r) {
             return r.lt(r.C3m) && r.ge(r.C3p) && r.lt(r.C5p) && r.ge(r.C8m) &&
                    r.ge(r.C6m) && r.lt(r.C10);
         }},
        {StateName::ScSD,
         [](R r) {
             return r.ge(r.C4m) && r.lt(r.C2m) && r.ge(r.C2p) && r.lt(r.C3p) && r.lt(r.C9);
         }},
        {StateName::APcAS,
         [](R r) {
             return r.ge(r.C3m) && r.lt(r.C5p) && r.lt(r.C2m) && r.ge(r.C2p) && r.lt(r.C10);
         }},
        {StateName::APcI,
         [](R r) { return r.ge(r.C3m) && r.lt(r.C5m) && r.ge(r.C5p) && r.lt(r.C10); }},
        // long-press family
        {StateName::IL1, [](R r) { return r.ge(r.D7m) && r.ge(r.D10); }},
        {StateName::IL2, [](R r) { return r.ge(r.D7m) && r.lt(r.D10) && r.ge(r.C10); }},
        {StateName::ASDL1,
         [](R r) {
             return r.ge(r.C7m) && r.lt(r.D7m) && r.ge(r.D5m) && r.ge(r.D3m) &&
                    r.lt(r.D10) && r.ge(r.C10);
         }},
        {StateName::ASL,
         [](R r) { return r.ge(r.D3m) && r.lt(r.D5p) && r.ge(r.D8m) && r.ge(r.C10); }},
        {StateName::SL, [](R r) { return r.lt(r.D3p) && r.ge(r.D8m) && r.ge(r.D9); }},
        {StateName::IDL1,
         [](R r) { return r.ge(r.D3m) && r.lt(r.D7m) && r.ge(r.D5m) && r.ge(r.D10); }},
        {StateName::IDL2,
         [](R r) {
             return r.ge(r.D3m) && r.lt(r.C7m) && r.ge(r.D5m) && r.lt(r.D10) && r.ge(r.C10);
         }},
        {StateName::ASDL2,
         [](R r) {
             return r.ge(r.D3m) && r.ge(r.D5m) && r.lt(r.D8m) && r.ge(r.D2m) && r.ge(r.C10);
         }},
        {StateName::SDL,
         [](R r) {
             return r.ge(r.D4m) && r.lt(r.D8m) && r.ge(r.D2m) && r.lt(r.D3p) && r.ge(r.D9);
         }},
        // mixed long/short families
        {StateName::AScIL,
         [](R r) {
             return r.ge(r.D3m) && r.ge(r.C7m) && r.lt(r.D5m) && r.ge(r.D2p) &&
                    r.lt(r.D10) && r.ge(r.C10);
         }},
        {StateName::ScASL,
         [](R r) {
             return r.ge(r.C3m) && r.lt(r.D5p) && r.lt(r.D3m) && r.ge(r.D3p) &&
                    r.ge(r.D8m) && r.ge(r.C10);
         }},
        {StateName::ScIL,
         [](R r) {
             return r.ge(r.C3m) && r.ge(r.D5p) && r.lt(r.D3m) && r.ge(r.D3p) &&
                    r.ge(r.D7m) && r.lt(r.D10) && r.ge(r.C10);
         }},
        {StateName::AScIDL,
         [](R r) {
             return r.ge(r.D3m) && r.lt(r.D5m) && r.ge(r.D5p) && r.ge(r.C5m) &&
                    r.lt(r.D7m) && r.lt(r.D10) && r.ge(r.C10);
         }},
        {StateName::ScASDL,
         [](R r) {
             return r.ge(r.C3m) && r.lt(r.D5p) && r.lt(r.D3m) && r.ge(r.D3p) &&
                    r.lt(r.D8m) && r.ge(r.D2m) && r.ge(r.C10);
         }},
        {StateName::ScIDL,
         [](R r) {
             return r.ge(r.C3m) && r.ge(r.D5p) && r.lt(r.D3m) && r.ge(r.D3p) &&
                    r.lt(r.D7m) && r.ge(r.C5m) && r.lt(r.D10) && r.ge(r.C10);
         }},
        {StateName::ScASDL2,
         [](R r) {
             return r.lt(r.C3m) && r.ge(r.C6m) && r.ge(r.D3p) && r.lt(r.D5p) &&
                    r.ge(r.D8m) && r.ge(r.C10);
         }},
        {StateName::ScASDL3,
         [](R r) {
             return r.ge(r.C3m) && r.lt(r.D3m) && r.ge(r.D3p) && r.lt(r.D5m) &&
                    r.ge(r.D5p) && r.lt(r.D10) && r.ge(r.C10);
         }},
        {StateName::APcIDL,
         [](R r) {
             return r.ge(r.D3m) && r.lt(r.C5m) && r.ge(r.D5p) && r.lt(r.D10) && r.ge(r.C10);
         }},
        {StateName::ScSDL,
         [](R r) {
             return r.lt(r.D3p) && r.ge(r.D4m) && r.lt(r.D2m) && r.ge(r.D2p) && r.ge(r.D9);
         }},
        {StateName::APcIL,
         [](R r) { return r.ge(r.D3m) && r.lt(r.D5m) && r.ge(r.D5p) && r.ge(r.D10); }},
        {StateName::ScASDL4,
         [](R r) {
             return r.lt(r.C6m) && r.ge(r.D6p) && r.lt(r.D5p) && r.ge(r.D8m) && r.ge(r.C10);
         }},
        // states with simultaneous late onsets in one interval: conditions
        // derived from the explicit synaptic solutions, not the generic tables
        {StateName::ScASL2,
         [](R r) {
             return r.lt(r.C3m) && r.ge(r.C3p) && r.ge(r.C10) && r.D <= 2.0 * r.TD &&
                    r.d + r.b * r.E2 < r.theta &&
                    r.a - r.L * r.c + r.d >= (1.0 - r.L) * r.theta &&
                    r.a - r.K_long * r.c + r.d < (1.0 - r.K_long) * r.theta;
         }},
        {StateName::ZcIL,
         [](R r) {
             return r.lt(r.C3m) && r.ge(r.C3p) && r.ge(r.C10) && r.D <= 2.0 * r.TD &&
                    r.a - r.K_long * r.c + r.d >= (1.0 - r.K_long) * r.theta &&
                    r.a - r.K_long * r.c < (1.0 - r.K_long) * r.theta;
         }},
    };
    return rules;
}

}  // namespace detail

inline std::vector<StateName> satisfied_long_sets(const ConditionReport& r) {
    std::vector<StateName> out;
    for (const auto& rule : detail::long_rules())
        if (rule.fn(r)) out.push_back(rule.name);
    return out;
}

// Only the alternation-family (short-press, two-landmark) sets; used by the
// coexistence audit.
inline std::vector<StateName> satisfied_sm_sets(const ConditionReport& r) {
    std::vector<StateName> out;
    for (const auto& rule : detail::long_rules()) {
        if (matrix_form(rule.name).kind != MatrixKind::sm) continue;
        if (rule.fn(r)) out.push_back(rule.name);
    }
    return out;
}

// ---- public classification -----------------------------------------------

inline std::vector<StateName> classify_short_delay(const ModelParams& p, const Stimulus& stim,
                                                   double d) {
    const RegimeFlags fl = validate_params(p, stim);
    if (!fl.short_delay)
        throw RegimeError("regime violation (short_delay): requires D <= TD");
    if (!fl.u3) throw RegimeError("regime violation (u3): requires c - b >= theta");
    const ConditionReport r = condition_report(p, stim, d);  // enforces U1, U2
    const bool overlapping = !fl.sep_ok;  // TD + D >= TR
    std::vector<StateName> out = satisfied_short_sets(r, overlapping);
    if (out.empty())
        throw std::logic_error(
            "internal consistency failure: no short-delay condition set satisfied");
    if (out.size() > 1)
        throw std::logic_error(
            "internal consistency failure: multiple short-delay condition sets satisfied");
    return out;
}

inline std::vector<StateName> classify_long_delay(const ModelParams& p, const Stimulus& stim,
                                                  double d) {
    const RegimeFlags fl = validate_params(p, stim);
    if (fl.short_delay)
        throw RegimeError("regime violation (short_delay): long-delay rules need D > TD");
    if (!fl.sep_ok) throw RegimeError("regime violation (sep_ok): requires TD + D < TR");
    const ConditionReport r = condition_report(p, stim, d);  // enforces U1, U2
    return satisfied_long_sets(r);
}

struct Classification {
    bool short_delay = false;
    std::vector<StateName> labels;
    ConditionReport report;
};

// Dispatches on the delay regime and returns labels plus the full report.
inline Classification classify(const ModelParams& p, const Stimulus& stim, double d) {
    Classification c;
    c.short_delay = validate_params(p, stim).short_delay;
    c.labels = c.short_delay ? classify_short_delay(p, stim, d)
                             : classify_long_delay(p, stim, d);
    c.report = condition_report(p, stim, d);
    return c;
}

// Coexisting alternation-family pairs at one parameter point. The theory
// allows only {I, SB} and {I, SD}; anything else is surfaced for the audit
// tests to flag.
inline std::vector<std::pair<StateName, StateName>> multistability_pairs(
    const ModelParams& p, const Stimulus& stim, double d) {
    const RegimeFlags fl = validate_params(p, stim);
    if (fl.short_delay)
        throw RegimeError("regime violation (short_delay): long-delay rules need D > TD");
    if (!fl.sep_ok) throw RegimeError("regime violation (sep_ok): requires TD + D < TR");
    const ConditionReport r = condition_report(p, stim, d);
    const std::vector<StateName> sm = satisfied_sm_sets(r);
    std::vector<std::pair<StateName, StateName>> out;
    for (std::size_t i = 0; i < sm.size(); ++i)
        for (std::size_t j = i + 1; j < sm.size(); ++j) out.emplace_back(sm[i], sm[j]);
    return out;
}

}  // namespace streamwave
