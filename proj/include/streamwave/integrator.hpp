#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "streamwave/model.hpp"
#include "streamwave/numerics.hpp"
#include "streamwave/stimulus.hpp"

namespace streamwave {

struct IntegrationError : std::runtime_error {
    double t_fail = 0.0;
    IntegrationError(const std::string& msg, double t) : std::runtime_error(msg), t_fail(t) {}
};

enum class UnitId { A, B };
enum class CrossDir { up, down };

struct CrossingEvent {
    double t = 0.0;
    UnitId unit = UnitId::A;
    CrossDir direction = CrossDir::up;
    bool refined = false;
};

enum class InputKind { square, smoothed };

struct IntegrateOptions {
    double dt = 0.0;              // 0 -> min(tau, D, TD)/20
    InputKind input = InputKind::square;
    double input_lambda = 30.0;   // slope of the smoothing, InputKind::smoothed only
    double record_from = 0.0;     // keep samples with t >= record_from
    double input_phase = 0.0;     // inputs read at t + input_phase
};

// Uniformly sampled solution with stored derivatives; evaluation between
// samples is cubic Hermite.
struct Trajectory {
    std::vector<double> t;
    std::vector<NetState> y;
    std::vector<NetState> f;
    double dt = 0.0;

    bool empty() const { return t.empty(); }
    double t_begin() const { return t.front(); }
    double t_end() const { return t.back(); }

    NetState eval(double time) const {
        if (empty()) throw std::domain_error("empty trajectory");
        if (time <= t.front()) return y.front();
        if (time >= t.back()) return y.back();
        auto idx = static_cast<std::size_t>((time - t.front()) / dt);
        if (idx >= t.size() - 1) idx = t.size() - 2;
        while (t[idx] > time && idx > 0) --idx;
        while (idx + 2 < t.size() && t[idx + 1] < time) ++idx;
        return hermite(idx, time);
    }

    NetState hermite(std::size_t i, double time) const {
        const double h = t[i + 1] - t[i];
        const double x = (time - t[i]) / h;
        const double x2 = x * x;
        const double x3 = x2 * x;
        const double h00 = 2 * x3 - 3 * x2 + 1;
        const double h10 = x3 - 2 * x2 + x;
        const double h01 = -2 * x3 + 3 * x2;
        const double h11 = x3 - x2;
        return h00 * y[i] + (h10 * h) * f[i] + h01 * y[i + 1] + (h11 * h) * f[i + 1];
    }

    double eval_u(UnitId unit, double time) const {
        const NetState s = eval(time);
        return unit == UnitId::A ? s.u_A : s.u_B;
    }
};

using HistoryFn = std::function<NetState(double)>;  // defined on [-D, 0]

inline HistoryFn constant_history(const NetState& s) {
    return [s](double) { return s; };
}

inline double default_dt(const ModelParams& p, const Stimulus& stim) {
    double m = p.tau;
    if (p.D > 0.0) m = std::min(m, p.D);
    if (stim.TD > 0.0) m = std::min(m, stim.TD);
    return m / 20.0;
}

inline double max_allowed_dt(const ModelParams& p, const Stimulus& stim) {
    double m = p.tau / 10.0;
    if (p.D > 0.0) m = std::min(m, p.D / 4.0);
    if (stim.TD > 0.0) m = std::min(m, stim.TD / 4.0);
    return m;
}

namespace detail {

template <class InputFn>
Trajectory integrate_impl(const ModelParams& p, const Stimulus& stim, double t_end,
                          const HistoryFn& history, const IntegrateOptions& opts,
                          InputFn&& input_at) {
    double dt_req = opts.dt > 0.0 ? opts.dt : default_dt(p, stim);
    const double dt_cap = max_allowed_dt(p, stim);
    if (dt_req > dt_cap * (1.0 + 1e-12))
        throw ValidationError("dt too large: must be <= min(tau/10, D/4, TD/4)");

    const auto n_steps = static_cast<std::size_t>(std::ceil(t_end / dt_req - 1e-9));
    if (n_steps == 0) throw ValidationError("t_end too small for one step");
    const double dt = t_end / static_cast<double>(n_steps);

    // Ring buffer of completed knots for delayed reads.
    const std::size_t ring = (p.D > 0.0 ? static_cast<std::size_t>(std::ceil(p.D / dt)) : 0) + 8;
    std::vector<double> rt(ring);
    std::vector<NetState> ry(ring), rf(ring);

    Trajectory out;
    out.dt = dt;
    if (opts.record_from <= t_end) {
        const auto cap = static_cast<std::size_t>((t_end - std::max(0.0, opts.record_from)) / dt) + 4;
        out.t.reserve(cap);
        out.y.reserve(cap);
        out.f.reserve(cap);
    }

    NetState y = history(0.0);
    std::size_t completed = 0;  // knots stored: indices 0..completed-1 at times i*dt

    auto delayed_s = [&](double q, double& sA, double& sB) {
        if (p.D <= 0.0) return;  // caller substitutes current-stage values
        if (q <= 0.0) {
            const NetState h = history(std::max(q, -p.D));
            sA = h.s_A;
            sB = h.s_B;
            return;
        }
        auto i = static_cast<std::size_t>(q / dt);
        if (i + 1 >= completed) i = completed - 2;
        const double h = dt;
        const double x = (q - static_cast<double>(i) * dt) / h;
        const double x2 = x * x;
        const double x3 = x2 * x;
        const double h00 = 2 * x3 - 3 * x2 + 1;
        const double h10 = x3 - 2 * x2 + x;
        const double h01 = -2 * x3 + 3 * x2;
        const double h11 = x3 - x2;
        const NetState &y0 = ry[i % ring], &y1 = ry[(i + 1) % ring];
        const NetState &f0 = rf[i % ring], &f1 = rf[(i + 1) % ring];
        sA = h00 * y0.s_A + h10 * h * f0.s_A + h01 * y1.s_A + h11 * h * f1.s_A;
        sB = h00 * y0.s_B + h10 * h * f0.s_B + h01 * y1.s_B + h11 * h * f1.s_B;
    };

    auto stage = [&](double ts, const NetState& ys) {
        double iA, iB;
        input_at(ts + opts.input_phase, iA, iB);
        double sA = ys.s_A, sB = ys.s_B;  // D == 0 case reads the current stage
        delayed_s(ts - p.D, sA, sB);
        return rhs(ys, sA, sB, iA, iB, p);
    };

    auto store = [&](std::size_t i, double ti, const NetState& yi, const NetState& fi) {
        rt[i % ring] = ti;
        ry[i % ring] = yi;
        rf[i % ring] = fi;
        completed = i + 1;
        if (ti >= opts.record_from - 1e-15) {
            out.t.push_back(ti);
            out.y.push_back(yi);
            out.f.push_back(fi);
        }
    };

    NetState f0 = stage(0.0, y);
    store(0, 0.0, y, f0);

    for (std::size_t i = 0; i < n_steps; ++i) {
        const double ti = static_cast<double>(i) * dt;
        const NetState k1 = rf[i % ring];
        y = rk4_step(stage, ti, y, dt, k1);
        const double tn = static_cast<double>(i + 1) * dt;
        const NetState fn = stage(tn, y);
        store(i + 1, tn, y, fn);
        if ((i & 1023u) == 1023u && !y.finite())
            throw IntegrationError("integration diverged (nonfinite state)", tn);
    }
    if (!y.finite()) throw IntegrationError("integration diverged (nonfinite state)", t_end);
    return out;
}

}  // namespace detail

// Integrates the delay system by the method of steps with fixed-step RK4 and
// cubic Hermite delayed reads. history covers [-D, 0]; inputs are square or
// smoothed per opts.
inline Trajectory integrate(const ModelParams& p, const Stimulus& stim, double d,
                            const HistoryFn& history, double t_end,
                            const IntegrateOptions& opts = {}) {
    p.validate();
    stim.validate();
    if (!(d >= 0.0)) throw ValidationError("d must be >= 0");
    if (!(t_end >= 2.0 * stim.TR)) throw ValidationError("t_end must cover a full A-B cycle (>= 2 TR)");
    if (opts.input == InputKind::square) {
        return detail::integrate_impl(p, stim, t_end, history, opts,
                                      [&](double t, double& iA, double& iB) {
                                          const InputPair in = square_input(stim, d, t);
                                          iA = in.i_A;
                                          iB = in.i_B;
                                      });
    }
    return detail::integrate_impl(p, stim, t_end, history, opts,
                                  [&](double t, double& iA, double& iB) {
                                      const InputPair in = smooth_input(stim, d, opts.input_lambda, t);
                                      iA = in.i_A;
                                      iB = in.i_B;
                                  });
}

inline Trajectory integrate(const ModelParams& p, const Stimulus& stim, double d,
                            const NetState& constant_hist, double t_end,
                            const IntegrateOptions& opts = {}) {
    return integrate(p, stim, d, constant_history(constant_hist), t_end, opts);
}

struct CrossingCount {
    int n_A = 0;
    int n_B = 0;
    std::vector<CrossingEvent> events;
    int total() const { return n_A + n_B; }
};

// Upward threshold crossings of u_A and u_B in [t0, t1), refined by bisection
// on the dense output to |u - theta| < 1e-9.
inline CrossingCount detect_crossings(const Trajectory& traj, double theta, double t0, double t1) {
    if (traj.empty()) throw std::domain_error("empty trajectory");
    if (t0 < traj.t_begin() - 1e-12 || t1 > traj.t_end() + 1e-12)
        throw std::domain_error("crossing window outside trajectory span");
    CrossingCount out;
    for (UnitId unit : {UnitId::A, UnitId::B}) {
        for (std::size_t i = 0; i + 1 < traj.t.size(); ++i) {
            double lo = std::max(traj.t[i], t0);
            double hi = std::min(traj.t[i + 1], t1);
            if (!(lo < hi)) continue;
            double ulo = traj.eval_u(unit, lo);
            double uhi = traj.eval_u(unit, hi);
            if (!(ulo < theta && uhi >= theta)) continue;
            for (int it = 0; it < 80 && std::fabs(uhi - theta) > 1e-9; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double um = traj.eval_u(unit, mid);
                if (um >= theta) {
                    hi = mid;
                    uhi = um;
                } else {
                    lo = mid;
                    ulo = um;
                }
            }
            if (hi >= t0 && hi < t1) {
                out.events.push_back({hi, unit, CrossDir::up, true});
                (unit == UnitId::A ? out.n_A : out.n_B)++;
            }
        }
    }
    std::sort(out.events.begin(), out.events.end(),
              [](const CrossingEvent& a, const CrossingEvent& b) { return a.t < b.t; });
    return out;
}

// Max-norm mismatch between the trailing period and the one before it.
inline double check_periodicity(const Trajectory& traj, double period) {
    if (traj.empty()) throw std::domain_error("empty trajectory");
    if (traj.t_end() - traj.t_begin() < 2.0 * period - 1e-12)
        throw std::domain_error("trajectory shorter than two periods");
    double res = 0.0;
    const double t_lo = traj.t_end() - period;
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
        if (traj.t[i] < t_lo) continue;
        const NetState prev = traj.eval(traj.t[i] - period);
        res = std::max(res, (traj.y[i] - prev).max_abs());
    }
    return res;
}

struct WindowStats {
    double min_u_A = 0.0;
    double min_u_B = 0.0;
    double mean_u = 0.0;  // time average of (u_A + u_B)/2
};

inline WindowStats window_stats(const Trajectory& traj, double t0, double t1) {
    if (traj.empty()) throw std::domain_error("empty trajectory");
    // Trapezoid over the exact window: dense evaluations at the clipped
    // endpoints plus the stored nodes strictly inside, so the mean carries no
    // partial-cell bias when the window does not start on a node.
    const double lo = std::max(t0, traj.t_begin());
    const double hi = std::min(t1, traj.t_end());
    if (!(hi >= lo)) throw std::domain_error("window does not intersect the trajectory");
    WindowStats w{1e300, 1e300, 0.0};
    auto take = [&w](const NetState& s) {
        w.min_u_A = std::min(w.min_u_A, s.u_A);
        w.min_u_B = std::min(w.min_u_B, s.u_B);
        return 0.5 * (s.u_A + s.u_B);
    };
    double prev_t = lo;
    double prev_v = take(traj.eval(lo));
    if (hi == lo) {
        w.mean_u = prev_v;
        return w;
    }
    double area = 0.0;
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
        const double ti = traj.t[i];
        if (ti <= lo || ti >= hi) continue;
        const double v = take(traj.y[i]);
        area += 0.5 * (v + prev_v) * (ti - prev_t);
        prev_t = ti;
        prev_v = v;
    }
    const double v_end = take(traj.eval(hi));
    area += 0.5 * (v_end + prev_v) * (hi - prev_t);
    w.mean_u = area / (hi - lo);
    return w;
}

// Integrate for `transient_periods` periods of length 2TR and analyze the tail.
// If the trailing-period residual exceeds `tol`, the run is redone once with a
// doubled transient.
struct PeriodicRun {
    Trajectory tail;
    double residual = 0.0;
    int periods = 0;
    bool extended = false;
};

struct RunOptions {
    IntegrateOptions sim{};
    int transient_periods = 30;
    bool auto_extend = true;
    double periodicity_tol = 1e-3;
};

inline PeriodicRun run_to_periodic(const ModelParams& p, const Stimulus& stim, double d,
                                   const NetState& history, const RunOptions& ro = {}) {
    const double period = 2.0 * stim.TR;
    auto attempt = [&](int periods) {
        IntegrateOptions o = ro.sim;
        const double t_end = periods * period;
        o.record_from = t_end - 2.0 * period - p.D - 4.0 * (o.dt > 0 ? o.dt : default_dt(p, stim));
        PeriodicRun r;
        r.tail = integrate(p, stim, d, history, t_end, o);
        r.residual = check_periodicity(r.tail, period);
        r.periods = periods;
        return r;
    };
    PeriodicRun r = attempt(ro.transient_periods);
    if (ro.auto_extend && r.residual > ro.periodicity_tol) {
        r = attempt(2 * ro.transient_periods);
        r.extended = true;
    }
    return r;
}

}  // namespace streamwave
