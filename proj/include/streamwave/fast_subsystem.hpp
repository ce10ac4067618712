#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "streamwave/gain.hpp"
#include "streamwave/numerics.hpp"
#include "streamwave/params.hpp"

namespace streamwave {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    friend Vec2 operator*(double a, const Vec2& v) { return {a * v.x, a * v.y}; }
    double max_abs() const { return std::max(std::fabs(x), std::fabs(y)); }
};

// Frozen snapshot the fast units see while the synapses are effectively
// constant: f drives unit A, g drives unit B, gates s~ are the delayed
// synaptic values.
struct FastContext {
    double a = 2.0;
    double b = 2.8;
    double theta = 0.5;
    double f = 0.0;          // input reaching unit A
    double g = 0.0;          // input reaching unit B
    double s_tilde_A = 0.0;  // delayed gate of unit A's synapse
    double s_tilde_B = 0.0;

    void validate() const {
        if (!(a >= 0.0) || !(b >= 0.0)) throw ValidationError("a, b must be >= 0");
        if (!(theta > 0.0 && theta < 1.0)) throw ValidationError("theta must lie in (0,1)");
        if (!(s_tilde_A >= 0.0 && s_tilde_A <= 1.0 && s_tilde_B >= 0.0 && s_tilde_B <= 1.0))
            throw ValidationError("delayed gates must lie in [0,1]");
    }
};

struct FastEquilibria {
    bool e00 = false;
    bool e10 = false;
    bool e01 = false;
    bool e11 = false;
    int count() const { return int(e00) + int(e10) + int(e01) + int(e11); }
};

// Corner equilibria of the frozen two-unit step-gain system; all inequalities
// inclusive on the >= side, matching the step definition.
inline FastEquilibria fast_equilibria(const FastContext& c) {
    c.validate();
    const double gate_A = c.b * c.s_tilde_B + c.theta;  // threshold seen by unit A
    const double gate_B = c.b * c.s_tilde_A + c.theta;  // threshold seen by unit B
    FastEquilibria e;
    e.e00 = c.f < gate_A && c.g < gate_B;
    e.e10 = c.f >= gate_A && c.a + c.g < gate_B;
    e.e01 = c.a + c.f < gate_A && c.g >= gate_B;
    e.e11 = c.a + c.f >= gate_A && c.a + c.g >= gate_B;
    return e;
}

// Saddle coordinates in the (u_A, u_B) plane. s1 is the u_A-threshold that
// switches unit B, s2 the u_B-threshold that switches unit A; the quiescent
// and co-active corners coexist exactly when both lie in (0, 1].
struct SaddleGeometry {
    double s1 = 0.0;
    double s2 = 0.0;
    bool bistable = false;
};

inline SaddleGeometry saddle_geometry(const FastContext& c) {
    c.validate();
    if (!(c.a > 0.0)) throw ValidationError("saddle geometry requires a > 0");
    SaddleGeometry s;
    s.s1 = (c.b * c.s_tilde_A + c.theta - c.g) / c.a;
    s.s2 = (c.b * c.s_tilde_B + c.theta - c.f) / c.a;
    s.bistable = s.s1 > 0.0 && s.s1 <= 1.0 && s.s2 > 0.0 && s.s2 <= 1.0;
    return s;
}

// Stable manifold of the corner saddle: two affine branches meeting at
// (s1, s2). The curve separates the quiescent basin (below) from the
// co-active basin (above).
inline double separatrix(double s1, double s2, double u_A) {
    if (!(s1 > 0.0 && s1 <= 1.0 && s2 > 0.0 && s2 <= 1.0))
        throw ValidationError("separatrix requires 0 < s1, s2 <= 1");
    if (u_A <= s1) {
        if (s1 == 1.0) {
            if (u_A == 1.0) return s2;
            throw std::domain_error("separatrix branch singular: s1 = 1 with u_A < 1");
        }
        return (u_A - 1.0) * s2 / (s1 - 1.0);
    }
    return u_A * (s2 - 1.0) / s1 + 1.0;
}

enum class BasinLabel { quiescent, coactive, boundary };  // (0,0) / (1,1) / on the curve

inline const char* to_string(BasinLabel b) {
    switch (b) {
        case BasinLabel::quiescent: return "00";
        case BasinLabel::coactive: return "11";
        default: return "boundary";
    }
}

// Classifies a point by its side of the separatrix; exact membership ties go
// to `boundary`, never to an attractor.
inline BasinLabel basin_label(double s1, double s2, double u_A, double u_B) {
    const double sep = separatrix(s1, s2, u_A);
    if (u_B > sep) return BasinLabel::coactive;
    if (u_B < sep) return BasinLabel::quiescent;
    return BasinLabel::boundary;
}

// Reduced planar step-gain flow used as the integration oracle for basins.
inline Vec2 planar_rhs(const Vec2& u, double s1, double s2) {
    return {-u.x + (u.y >= s2 ? 1.0 : 0.0), -u.y + (u.x >= s1 ? 1.0 : 0.0)};
}

// Forward integration until within `tol` (max norm) of one of the two stable
// corners; undecided runs report `boundary`.
inline BasinLabel planar_basin_oracle(double s1, double s2, double u_A0, double u_B0,
                                      double dt = 1e-3, double tol = 1e-6, double t_max = 80.0) {
    Vec2 u{u_A0, u_B0};
    auto f = [&](double, const Vec2& v) { return planar_rhs(v, s1, s2); };
    const auto n = static_cast<long>(t_max / dt);
    for (long i = 0; i < n; ++i) {
        u = rk4_step(f, i * dt, u, dt);
        if (u.max_abs() < tol) return BasinLabel::quiescent;
        if ((u - Vec2{1.0, 1.0}).max_abs() < tol) return BasinLabel::coactive;
    }
    return BasinLabel::boundary;
}

// Time for an activity rising from rest toward 1 to clear level u_star.
inline double onset_delay(double tau, double u_star) {
    if (!(tau > 0.0)) throw ValidationError("tau must be > 0");
    if (!(u_star >= 0.0)) throw ValidationError("u_star must be >= 0");
    if (u_star >= 1.0) throw std::domain_error("onset delay diverges for u_star >= 1");
    return tau * std::log(1.0 / (1.0 - u_star));
}

// ---- Smooth-gain variant -------------------------------------------------
// Same reduced plane with the logistic gain: u_A' = -u_A + S(a (u_B - s2)),
// u_B' = -u_B + S(a (u_A - s1)).

inline Vec2 sigmoid_planar_rhs(const Vec2& u, double s1, double s2, double a, double lambda) {
    return {-u.x + sigmoid_gain(a * (u.y - s2), lambda),
            -u.y + sigmoid_gain(a * (u.x - s1), lambda)};
}

struct SigmoidEquilibrium {
    Vec2 u;
    bool saddle = false;  // det J < 0
};

// At equilibrium u_B is slaved to u_A, so the system reduces to the scalar
// root problem h(x) = S(a (S(a (x - s1)) - s2)) - x on [0, 1].  A grid scan
// plus bisection finds every sign change; this stays robust at slopes where
// a planar Newton stalls on the near-singular Jacobian.
inline std::vector<SigmoidEquilibrium> sigmoid_equilibria(double s1, double s2, double a,
                                                          double lambda) {
    auto slave = [&](double x) { return sigmoid_gain(a * (x - s1), lambda); };
    auto h = [&](double x) { return sigmoid_gain(a * (slave(x) - s2), lambda) - x; };
    std::vector<double> roots;
    auto add_root = [&](double x) {
        for (double r : roots)
            if (std::fabs(r - x) < 1e-7) return;
        roots.push_back(x);
    };
    const int n = 4096;
    double x0 = 0.0;
    double h0 = h(x0);
    if (h0 == 0.0) add_root(x0);
    for (int i = 1; i <= n; ++i) {
        const double x1 = static_cast<double>(i) / n;
        const double h1 = h(x1);
        if (h1 == 0.0) {
            add_root(x1);
        } else if (h0 != 0.0 && (h0 < 0.0) != (h1 < 0.0)) {
            double lo = x0, hi = x1, flo = h0;
            for (int it = 0; it < 100; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = h(mid);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            add_root(0.5 * (lo + hi));
        }
        x0 = x1;
        h0 = h1;
    }
    std::vector<SigmoidEquilibrium> out;
    for (double x : roots) {
        const Vec2 u{x, slave(x)};
        const double SA = sigmoid_gain(a * (u.y - s2), lambda);
        const double SB = sigmoid_gain(a * (u.x - s1), lambda);
        // J = [[-1, lambda a SA'], [lambda a SB', -1]]
        const double det = 1.0 - (lambda * a) * (lambda * a) * SA * (1.0 - SA) * SB * (1.0 - SB);
        out.push_back({u, det < 0.0});
    }
    return out;
}

// Forward-flow basin membership for the smooth variant: integrate until the
// state settles, then label by the attractor's position along u_A + u_B
// relative to the saddle (diagonal midpoint when no saddle exists).
inline BasinLabel sigmoid_basin_oracle(double s1, double s2, double a, double lambda,
                                       double u_A0, double u_B0, double dt = 2e-3,
                                       double tol = 1e-9, double t_max = 200.0) {
    Vec2 u{u_A0, u_B0};
    auto f = [&](double, const Vec2& v) { return sigmoid_planar_rhs(v, s1, s2, a, lambda); };
    const auto n = static_cast<long>(t_max / dt);
    bool settled = false;
    for (long i = 0; i < n; ++i) {
        const Vec2 next = rk4_step(f, 0.0, u, dt);
        const double moved = (next - u).max_abs();
        u = next;
        if (moved < tol) {
            settled = true;
            break;
        }
    }
    if (!settled) return BasinLabel::boundary;
    double split = 1.0;
    for (const auto& e : sigmoid_equilibria(s1, s2, a, lambda))
        if (e.saddle) split = e.u.x + e.u.y;
    const double level = u.x + u.y;
    if (level > split + 1e-6) return BasinLabel::coactive;
    if (level < split - 1e-6) return BasinLabel::quiescent;
    return BasinLabel::boundary;
}

// Separatrix of the smooth system: the saddle's attracting manifold, traced by
// integrating the time-reversed flow from saddle +/- 1e-4 along the direction
// that is unstable in reversed time.
inline std::vector<Vec2> sigmoid_separatrix(double s1, double s2, double a, double lambda,
                                            double dt = 1e-3, std::size_t max_steps = 200000) {
    const auto eq = sigmoid_equilibria(s1, s2, a, lambda);
    const SigmoidEquilibrium* saddle = nullptr;
    for (const auto& e : eq)
        if (e.saddle) saddle = &e;
    if (!saddle) throw RegimeError("smooth fast subsystem has no saddle at these parameters");

    const Vec2 u0 = saddle->u;
    const double SA = sigmoid_gain(a * (u0.y - s2), lambda);
    const double SB = sigmoid_gain(a * (u0.x - s1), lambda);
    const double dA = lambda * a * SA * (1.0 - SA);
    const double dB = lambda * a * SB * (1.0 - SB);
    // Eigenvalues of [[-1, dA], [dB, -1]] are -1 +/- sqrt(dA dB); the
    // attracting direction (-1 - sqrt) has eigenvector (sqrt(dA dB), -dB)...
    const double rt = std::sqrt(std::max(dA * dB, 0.0));
    Vec2 v{rt, -dB};
    const double nrm = std::sqrt(v.x * v.x + v.y * v.y);
    if (nrm < 1e-12) throw RegimeError("degenerate saddle eigenvector");
    v = (1.0 / nrm) * v;

    auto back = [&](double, const Vec2& u) { return -1.0 * sigmoid_planar_rhs(u, s1, s2, a, lambda); };
    std::vector<Vec2> curve;
    for (int sgn : {-1, 1}) {
        std::vector<Vec2> half;
        Vec2 u = u0 + (sgn * 1e-4) * v;
        for (std::size_t i = 0; i < max_steps; ++i) {
            if ((i & 15u) == 0u) half.push_back(u);
            u = rk4_step(back, 0.0, u, dt);
            if (u.x < -0.2 || u.x > 1.2 || u.y < -0.2 || u.y > 1.2) break;
        }
        half.push_back(u);
        if (sgn < 0) {
            curve.assign(half.rbegin(), half.rend());
            curve.push_back(u0);
        } else {
            curve.insert(curve.end(), half.begin(), half.end());
        }
    }
    return curve;
}

}  // namespace streamwave
