// Acceptance runner: each criterion prints exactly one PASS/FAIL line and the
// process exits nonzero when any selected criterion fails. With no arguments
// all nine run in order; numeric arguments select a subset, e.g. `acceptance 2 3`.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "streamwave/boundaries.hpp"
#include "streamwave/classifier.hpp"
#include "streamwave/enumerate.hpp"
#include "streamwave/fast_subsystem.hpp"
#include "streamwave/integrator.hpp"
#include "streamwave/labels.hpp"
#include "streamwave/sweep.hpp"

namespace sw = streamwave;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double now_s() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::string fmt1(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

// Reference grid parameters shared by the sweep-based criteria: the standard
// two-tone configuration on the 98x98 (PR, df) grid.
sw::SweepSpec reference_spec() {
    sw::SweepSpec spec;
    spec.params = sw::ModelParams{};  // a=2 b=2.8 theta=0.5 tau=0.025 tau_i=0.25 D=0.015
    spec.stim = sw::Stimulus{};       // TD=0.022 c=5.5 m=6
    spec.points = 98;
    spec.pr_min = 1.0;
    spec.pr_max = 40.0;
    spec.df_min = 0.0;
    spec.df_max = 1.0;
    spec.history = sw::NetState{1.0, 0.0, 1.0, 0.0};
    return spec;
}

// ---- criterion 1: sharp-gain sweep transitions track the analytic curves ----

Outcome criterion1() {
    const double t0 = now_s();
    sw::SweepSpec spec = reference_spec();
    spec.params.tau = 0.001 * (spec.params.tau_i / 0.25);
    spec.params.gain = {sw::GainKind::sigmoid, 1000.0};
    // Smooth model at matching slope: square edges leave an O(dt) periodicity
    // floor that never converges, smoothed edges settle to machine level.
    spec.run.sim.input = sw::InputKind::smoothed;
    spec.run.sim.input_lambda = 1000.0;

    const sw::SweepGrid grid = sw::run_sweep(spec);

    const int l = spec.points;
    const double cell = (spec.df_max - spec.df_min) / (l - 1);

    // Column transition located as the midpoint of the first bracketing cell
    // pair; a clamped curve means the corresponding region must be absent (or
    // enter within one cell of the grid edge).
    auto trans_ok = [&](int first, const sw::BoundaryValue& bv) {
        double cv = bv.df;
        if (bv.clamped && bv.raw > 1.0) {
            if (first < 0) return true;
            cv = spec.df_max;
        } else if (bv.clamped && bv.raw < 0.0) {
            if (first == 0) return true;
            cv = spec.df_min;
        }
        if (first < 0) return cv >= spec.df_max - cell;
        if (first == 0) return cv <= spec.df_min + cell;
        const double mid = 0.5 * (spec.df_at(first - 1) + spec.df_at(first));
        return std::fabs(mid - cv) <= cell;
    };

    int cols = 0, good = 0;
    for (int ipr = 0; ipr < l; ++ipr) {
        const double pr = spec.pr_at(ipr);
        if (pr < 5.0 || pr > 25.0) continue;
        ++cols;
        bool labels_ok = true;
        int first_bis = -1, first_seg = -1;
        for (int idf = 0; idf < l; ++idf) {
            const sw::PerceptLabel lb = grid.at(ipr, idf).label;
            int v;
            switch (lb) {
                case sw::PerceptLabel::integration: v = 0; break;
                case sw::PerceptLabel::bistability: v = 1; break;
                case sw::PerceptLabel::segregation: v = 2; break;
                default: v = -1; break;
            }
            if (v < 0) labels_ok = false;
            if (v >= 1 && first_bis < 0) first_bis = idf;
            if (v == 2 && first_seg < 0) first_seg = idf;
        }
        sw::Stimulus st = spec.stim;
        st.TR = 1.0 / pr;
        const sw::BoundaryValue coh = sw::coherence_boundary(spec.params, st);
        const sw::BoundaryValue fis =
            sw::fission_boundary(spec.params, st, sw::FissionVariant::tone_gap);
        if (labels_ok && trans_ok(first_bis, coh) && trans_ok(first_seg, fis)) ++good;
    }
    const double elapsed = now_s() - t0;
    const double frac = cols > 0 ? double(good) / cols : 0.0;
    // Wall-clock budget is 600 s on eight workers; scale for fewer.
    const unsigned workers = std::max(1u, sw::resolve_thread_count());
    const double budget = 600.0 * (workers >= 8 ? 1.0 : 8.0 / workers);
    Outcome o;
    o.pass = frac >= 0.90 && elapsed <= budget;
    o.detail = std::to_string(good) + "/" + std::to_string(cols) +
               " columns within one grid cell of both analytic curves, " + fmt1(elapsed) +
               " s (budget " + fmt1(budget) + " s on " + std::to_string(workers) + " worker(s))";
    return o;
}

// ---- criteria 2 and 3 share the reference-parameter sweep -------------------

const sw::SweepGrid& reference_grid() {
    static const sw::SweepGrid grid = [] {
        sw::SweepSpec spec = reference_spec();
        spec.run.sim.input = sw::InputKind::smoothed;
        spec.run.sim.input_lambda = 30.0;
        return sw::run_sweep(spec);
    }();
    return grid;
}

Outcome criterion2() {
    const double t0 = now_s();
    const sw::SweepGrid& grid = reference_grid();
    const sw::SweepSpec& spec = grid.spec;
    const int l = spec.points;

    int n_int = 0, n_bis = 0, n_seg = 0, n_fail = 0, misplaced = 0;
    for (int idf = 0; idf < l; ++idf) {
        for (int ipr = 0; ipr < l; ++ipr) {
            const sw::SweepCell& c = grid.at(ipr, idf);
            switch (c.label) {
                case sw::PerceptLabel::integration: ++n_int; break;
                case sw::PerceptLabel::bistability: ++n_bis; break;
                case sw::PerceptLabel::segregation: ++n_seg; break;
                case sw::PerceptLabel::failed: ++n_fail; break;
                default:
                    if (c.pr <= 27.0) ++misplaced;
                    break;
            }
        }
    }

    int bad_cols = 0, cols = 0;
    for (int ipr = 0; ipr < l; ++ipr) {
        const double pr = spec.pr_at(ipr);
        if (pr < 5.0 || pr > 20.0) continue;
        ++cols;
        int viol = 0;
        for (int idf = 0; idf + 1 < l; ++idf)
            if (grid.at(ipr, idf + 1).n() > grid.at(ipr, idf).n()) ++viol;
        if (viol > 1) ++bad_cols;
    }

    Outcome o;
    o.pass = n_int > 0 && n_bis > 0 && n_seg > 0 && n_fail == 0 && misplaced == 0 &&
             bad_cols == 0;
    o.detail = "INT/BIS/SEG cells " + std::to_string(n_int) + "/" + std::to_string(n_bis) +
               "/" + std::to_string(n_seg) + ", failed " + std::to_string(n_fail) +
               ", high-rate labels below 27 Hz " + std::to_string(misplaced) +
               ", non-monotone columns " + std::to_string(bad_cols) + "/" +
               std::to_string(cols) + ", " + fmt1(now_s() - t0) + " s";
    return o;
}

Outcome criterion3() {
    const double t0 = now_s();
    const sw::SweepGrid& grid = reference_grid();
    const sw::SweepSpec& spec = grid.spec;
    int total = 0, sat = 0;
    for (int idf = 0; idf < spec.points; ++idf) {
        if (spec.df_at(idf) > 0.05 + 1e-12) continue;
        for (int ipr = 0; ipr < spec.points; ++ipr) {
            if (spec.pr_at(ipr) < 32.0 - 1e-9) continue;
            ++total;
            if (grid.at(ipr, idf).label == sw::PerceptLabel::saturated) ++sat;
        }
    }
    Outcome o;
    o.pass = total > 0 && double(sat) / total >= 0.95;
    o.detail = std::to_string(sat) + "/" + std::to_string(total) +
               " fast-rate small-df cells saturated, " + fmt1(now_s() - t0) + " s";
    return o;
}

// ---- criterion 4: classifier exclusivity audit ------------------------------

Outcome criterion4() {
    const double t0 = now_s();
    std::mt19937_64 rng(0xACCE9701u);
    auto u01 = [&] { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); };

    int short_bad = 0;
    for (int k = 0; k < 100000; ++k) {
        sw::ModelParams p;
        sw::Stimulus st;
        p.theta = 0.2 + 0.6 * u01();
        p.b = 0.2 + 3.8 * u01();
        p.a = (p.b + p.theta) * 0.98 * u01();
        p.tau_i = 0.05 + 0.45 * u01();
        st.TR = 0.02 + 0.48 * u01();
        st.TD = st.TR * (0.1 + 0.85 * u01());
        p.D = st.TD * u01();
        st.c = p.b + p.theta + 5.0 * u01();
        const double d = st.c * u01();
        const sw::ConditionReport r = sw::condition_report(p, st, d);
        const bool overlapping = !(st.TD + p.D < st.TR);
        if (sw::satisfied_short_sets(r, overlapping).size() != 1) ++short_bad;
    }

    int long_bad = 0;
    for (int k = 0; k < 100000; ++k) {
        sw::ModelParams p;
        sw::Stimulus st;
        p.theta = 0.2 + 0.6 * u01();
        p.b = 0.2 + 3.8 * u01();
        p.a = (p.b + p.theta) * 0.98 * u01();
        p.tau_i = 0.05 + 0.45 * u01();
        st.TR = 0.02 + 0.48 * u01();
        st.TD = st.TR * (0.05 + 0.4 * u01());
        p.D = st.TD + (st.TR - 2.0 * st.TD) * (0.999 * u01() + 0.0005);
        st.c = p.b + p.theta + 5.0 * u01();
        const double d = st.c * u01();
        const sw::ConditionReport r = sw::condition_report(p, st, d);
        const std::vector<sw::StateName> sm = sw::satisfied_sm_sets(r);
        if (sm.size() <= 1) continue;
        bool allowed = sm.size() == 2;
        if (allowed) {
            std::set<sw::StateName> got(sm.begin(), sm.end());
            allowed = got == std::set<sw::StateName>{sw::StateName::I, sw::StateName::SB} ||
                      got == std::set<sw::StateName>{sw::StateName::I, sw::StateName::SD};
        }
        if (!allowed) ++long_bad;
    }

    const double elapsed = now_s() - t0;
    Outcome o;
    o.pass = short_bad == 0 && long_bad == 0 && elapsed < 60.0;
    o.detail = "short-regime violations " + std::to_string(short_bad) +
               "/100000, alternation-family coexistence violations " +
               std::to_string(long_bad) + "/100000, " + fmt1(elapsed) + " s";
    return o;
}

// ---- criterion 5: enumeration counts ---------------------------------------

Outcome criterion5() {
    const double t0 = now_s();
    const auto sm = sw::enumerate_valid_matrices(sw::MatrixKind::sm);
    const auto sc = sw::enumerate_valid_matrices(sw::MatrixKind::sc);
    const auto lm = sw::enumerate_valid_matrices(sw::MatrixKind::lm);
    const auto csm = sw::conjugacy_classes(sm);
    const auto csc = sw::conjugacy_classes(sc);
    const auto clm = sw::conjugacy_classes(lm);
    Outcome o;
    o.pass = sm.size() == 15 && csm.size() == 9 && sc.size() == 15 && csc.size() == 9 &&
             lm.size() == 16 && clm.size() == 9;
    o.detail = "two-landmark " + std::to_string(sm.size()) + " matrices/" +
               std::to_string(csm.size()) + " classes, three-landmark " +
               std::to_string(sc.size()) + "/" + std::to_string(csc.size()) +
               ", long-press " + std::to_string(lm.size()) + "/" + std::to_string(clm.size()) +
               ", " + fmt1(now_s() - t0) + " s";
    return o;
}

// ---- criterion 6: simulated response patterns match the classification ------

Outcome criterion6() {
    const double t0 = now_s();
    std::mt19937_64 rng(0xACCE9706u);
    auto u01 = [&] { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); };

    const int points = 200;
    int matched = 0, unexcused = 0;
    for (int k = 0; k < points; ++k) {
        sw::ModelParams p;
        sw::Stimulus st;
        p.theta = 0.35 + 0.3 * u01();
        p.b = 0.6 + 2.4 * u01();
        p.a = (p.b + p.theta) * 0.95 * u01();
        p.tau_i = 0.12 + 0.28 * u01();
        p.tau = p.tau_i / 200.0;
        p.gain = {sw::GainKind::sigmoid, 1000.0};
        st.TR = 0.06 + 0.14 * u01();
        st.TD = st.TR * (0.15 + 0.3 * u01());
        p.D = st.TD * (0.25 + 0.75 * u01());
        st.c = p.b + p.theta + 0.5 + 3.0 * u01();
        const double d = st.c * u01();

        const sw::StateName state = sw::classify_short_delay(p, st, d).front();
        const sw::StateMatrix form = sw::short_matrix_form(state);

        // The ON/OFF pattern locks in long before the trailing antisymmetric
        // transient fully decays, so the comparison does not gate on the
        // max-norm periodicity residual.
        sw::RunOptions ro;
        ro.sim.input = sw::InputKind::smoothed;
        ro.sim.input_lambda = 1000.0;
        ro.transient_periods = 60;
        const sw::PeriodicRun run =
            sw::run_to_periodic(p, st, d, sw::NetState{1.0, 0.0, 1.0, 0.0}, ro);

        const double t1 = run.tail.t_end();
        bool on[2][2] = {{false, false}, {false, false}};
        for (std::size_t i = 0; i < run.tail.t.size(); ++i) {
            const double ti = run.tail.t[i];
            if (ti < t1 - 2.0 * st.TR || ti >= t1) continue;
            const int interval = ti < t1 - st.TR ? 0 : 1;
            if (run.tail.y[i].u_A >= p.theta) on[0][interval] = true;
            if (run.tail.y[i].u_B >= p.theta) on[1][interval] = true;
        }
        const sw::StateMatrix conj = sw::conjugate(form);
        bool direct = true, swapped = true;
        for (int r = 0; r < 2; ++r)
            for (int i = 0; i < 2; ++i) {
                direct &= on[r][i] == form.responds(r, i);
                swapped &= on[r][i] == conj.responds(r, i);
            }
        const bool ok = direct || swapped;
        if (ok) {
            ++matched;
        } else if (sw::condition_report(p, st, d).near_ties(0.02).empty()) {
            ++unexcused;
        }
    }

    Outcome o;
    o.pass = matched >= 190 && unexcused == 0;
    o.detail = std::to_string(matched) + "/" + std::to_string(points) +
               " response patterns match, mismatches without a near-threshold condition " +
               std::to_string(unexcused) + ", " + fmt1(now_s() - t0) + " s";
    return o;
}

// ---- criterion 7: frozen numeric identities ---------------------------------

Outcome criterion7() {
    const double t0 = now_s();

    // Independent extended-precision evaluation of the coherence boundary at
    // a 10 Hz presentation rate.
    sw::ModelParams p;
    p.a = 1.0;
    p.b = 2.0;
    p.theta = 0.5;
    p.tau_i = 0.2;
    p.D = 0.01;
    sw::Stimulus st;
    st.c = 5.0;
    st.TD = 0.03;
    st.TR = 0.1;
    st.m = 6;
    const long double np = std::exp(-(0.1L - 0.01L) / 0.2L);
    const long double base = (1.0L - 2.0L * np + 5.0L - 0.5L) / 5.0L;
    long double ref = 1.0L;
    for (int i = 0; i < 6; ++i) ref *= base;
    const sw::BoundaryValue bv = sw::coherence_boundary(p, st);
    const bool coh_ok = !bv.clamped && std::fabs(double(ref) - bv.df) < 1e-6;

    const bool sep_ok = sw::separatrix(0.7, 0.4, 0.7) == 0.4;

    std::mt19937_64 rng(0xACCE9707u);
    auto u01 = [&] { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); };
    int order_bad = 0;
    for (int k = 0; k < 10000; ++k) {
        sw::Stimulus s;
        s.TR = 0.02 + 0.48 * u01();
        s.TD = s.TR * u01();
        const double D = 2.0 * s.TR * u01();
        const double tau_i = 0.05 + 0.45 * u01();
        const sw::SynapticConstants sc = sw::synaptic_constants(s, D, tau_i);
        if (!(sc.N_m >= sc.N_p && sc.N_p >= sc.M_m && sc.M_m >= sc.M_p)) ++order_bad;
    }

    Outcome o;
    o.pass = coh_ok && sep_ok && order_bad == 0;
    o.detail = std::string("coherence-boundary extended-precision diff ") +
               (coh_ok ? "<1e-6" : ">=1e-6") + ", separatrix saddle value " +
               (sep_ok ? "exact" : "WRONG") + ", decay-ordering violations " +
               std::to_string(order_bad) + "/10000, " + fmt1(now_s() - t0) + " s";
    return o;
}

// ---- criterion 8: trajectory invariants in the sharp-gain limit -------------

Outcome criterion8() {
    const double t0 = now_s();
    std::mt19937_64 rng(0xACCE9708u);
    auto u01 = [&] { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); };

    int decay_bad = 0, range_bad = 0, z2_bad = 0, period_bad = 0, spans = 0;
    for (int k = 0; k < 20; ++k) {
        sw::ModelParams p;  // reference parameters with a 200x faster unit timescale
        p.tau = p.tau_i / 200.0;
        p.gain = {sw::GainKind::sigmoid, 1000.0};
        sw::Stimulus st;
        const double pr = 5.0 + 15.0 * u01();
        st.TR = 1.0 / pr;
        st.df = 0.05 + 0.9 * u01();
        const double d = sw::df_to_d(st.c, st.df, st.m);

        sw::RunOptions ro;
        ro.sim.input = sw::InputKind::smoothed;
        ro.sim.input_lambda = 1000.0;
        ro.periodicity_tol = 1e-4;
        // dt dividing TR exactly keeps the full run and the half-period
        // shifted conjugate run on one common node grid, so their truncation
        // errors cancel in the comparison below.
        const int steps = int(std::ceil(st.TR / 6.25e-5));
        ro.sim.dt = st.TR / steps;

        const sw::PeriodicRun run =
            sw::run_to_periodic(p, st, d, sw::NetState{1.0, 0.0, 1.0, 0.0}, ro);
        if (!(run.residual < 1e-4)) ++period_bad;

        const sw::Trajectory& tail = run.tail;
        const double s_cap = p.tau_i / (p.tau_i + p.tau);
        for (const sw::NetState& y : tail.y) {
            if (y.u_A < -1e-6 || y.u_A > 1.0 + 1e-6 || y.u_B < -1e-6 || y.u_B > 1.0 + 1e-6 ||
                y.s_A < -1e-9 || y.s_A > s_cap + 1e-6 || y.s_B < -1e-9 ||
                y.s_B > s_cap + 1e-6)
                ++range_bad;
        }

        // Free inhibition decay over every span where a unit stays far enough
        // below threshold that its gate vanishes identically.
        for (int unit = 0; unit < 2; ++unit) {
            std::size_t i = 0;
            while (i < tail.t.size()) {
                auto off = [&](std::size_t j) {
                    const double u = unit == 0 ? tail.y[j].u_A : tail.y[j].u_B;
                    return u < p.theta - 0.05;
                };
                if (!off(i)) {
                    ++i;
                    continue;
                }
                std::size_t j = i;
                while (j + 1 < tail.t.size() && off(j + 1)) ++j;
                if (j - i >= 30) {
                    const std::size_t a = i + 5, b = j - 5;
                    const double s0 = unit == 0 ? tail.y[a].s_A : tail.y[a].s_B;
                    const double s1 = unit == 0 ? tail.y[b].s_A : tail.y[b].s_B;
                    if (s0 > 1e-8) {
                        ++spans;
                        const double expect = s0 * std::exp(-(tail.t[b] - tail.t[a]) / p.tau_i);
                        if (std::fabs(s1 / expect - 1.0) > 1e-6) ++decay_bad;
                    }
                }
                i = j + 1;
            }
        }

        // Unit-exchange equivariance: integrating the swapped half-period
        // shifted history must reproduce the swapped shifted solution.
        const double t_base = tail.t_end() - 4.0 * st.TR;
        sw::HistoryFn hist = [&tail, t_base, TR = st.TR](double s) {
            return tail.eval(t_base + TR + s).swapped();
        };
        sw::IntegrateOptions io = ro.sim;
        io.record_from = 0.0;
        io.input_phase = t_base;
        const sw::Trajectory conj = sw::integrate(p, st, d, hist, 2.0 * st.TR, io);
        double worst = 0.0;
        for (std::size_t i2 = 0; i2 < conj.t.size(); ++i2) {
            const sw::NetState target = tail.eval(t_base + st.TR + conj.t[i2]).swapped();
            worst = std::max(worst, (conj.y[i2] - target).max_abs());
        }
        if (!(worst < 1e-4)) ++z2_bad;
    }

    Outcome o;
    o.pass = decay_bad == 0 && range_bad == 0 && z2_bad == 0 && period_bad == 0 && spans >= 20;
    o.detail = "decay-law violations " + std::to_string(decay_bad) + " (over " +
               std::to_string(spans) + " silent spans), range violations " +
               std::to_string(range_bad) + ", exchange-symmetry failures " +
               std::to_string(z2_bad) + "/20, periodicity failures " +
               std::to_string(period_bad) + "/20, " + fmt1(now_s() - t0) + " s";
    return o;
}

// ---- criterion 9: analytic basin boundary vs forward integration ------------

Outcome criterion9() {
    const double t0 = now_s();
    std::mt19937_64 rng(0xACCE9709u);
    auto u01 = [&] { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); };
    const double s1 = 0.7, s2 = 0.4;
    int checked = 0, bad = 0;
    for (int k = 0; k < 10000; ++k) {
        const double uA = u01(), uB = u01();
        if (std::fabs(uB - sw::separatrix(s1, s2, uA)) < 1e-3) continue;
        ++checked;
        if (sw::basin_label(s1, s2, uA, uB) != sw::planar_basin_oracle(s1, s2, uA, uB)) ++bad;
    }
    Outcome o;
    o.pass = bad == 0 && checked > 9000;
    o.detail = std::to_string(bad) + " disagreements over " + std::to_string(checked) +
               " points off the boundary band, " + fmt1(now_s() - t0) + " s";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
    if (which.empty()) which = {1, 2, 3, 4, 5, 6, 7, 8, 9};

    Outcome (*const table[9])() = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                   criterion6, criterion7, criterion8, criterion9};
    bool all = true;
    for (int k : which) {
        if (k < 1 || k > 9) {
            std::fprintf(stderr, "no such criterion: %d\n", k);
            return 2;
        }
        Outcome o;
        try {
            o = table[k - 1]();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::printf("criterion %d: %s (%s)\n", k, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
