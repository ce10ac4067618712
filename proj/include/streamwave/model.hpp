#pragma once

#include "streamwave/gain.hpp"
#include "streamwave/params.hpp"
#include "streamwave/stimulus.hpp"

namespace streamwave {

struct NetState {
    double u_A = 0.0;
    double u_B = 0.0;
    double s_A = 0.0;
    double s_B = 0.0;

    NetState& operator+=(const NetState& o) {
        u_A += o.u_A; u_B += o.u_B; s_A += o.s_A; s_B += o.s_B;
        return *this;
    }
    friend NetState operator+(NetState l, const NetState& r) { return l += r; }
    friend NetState operator*(double k, const NetState& s) {
        return {k * s.u_A, k * s.u_B, k * s.s_A, k * s.s_B};
    }
    friend NetState operator-(const NetState& l, const NetState& r) {
        return {l.u_A - r.u_A, l.u_B - r.u_B, l.s_A - r.s_A, l.s_B - r.s_B};
    }

    double max_abs() const {
        double m = std::fabs(u_A);
        m = std::max(m, std::fabs(u_B));
        m = std::max(m, std::fabs(s_A));
        m = std::max(m, std::fabs(s_B));
        return m;
    }
    bool finite() const {
        return std::isfinite(u_A) && std::isfinite(u_B) && std::isfinite(s_A) && std::isfinite(s_B);
    }
    // A <-> B exchange (the model's index symmetry).
    NetState swapped() const { return {u_B, u_A, s_B, s_A}; }
};

// Right-hand side of the delay system:
//   tau u_A' = -u_A + G(a u_B - b s_B(t-D) + i_A)
//        s_A' = G(u_A)(1 - s_A)/tau - s_A/tau_i            (B symmetric)
// delayed_s_A/delayed_s_B are s_A(t-D), s_B(t-D).
inline NetState rhs(const NetState& s, double delayed_s_A, double delayed_s_B,
                    double i_A, double i_B, const ModelParams& p) {
    const double drive_A = p.a * s.u_B - p.b * delayed_s_B + i_A;
    const double drive_B = p.a * s.u_A - p.b * delayed_s_A + i_B;
    const double gA = gain(p.gain, drive_A, p.theta);
    const double gB = gain(p.gain, drive_B, p.theta);
    const double fA = gain(p.gain, s.u_A, p.theta);
    const double fB = gain(p.gain, s.u_B, p.theta);
    NetState d;
    d.u_A = (-s.u_A + gA) / p.tau;
    d.u_B = (-s.u_B + gB) / p.tau;
    d.s_A = fA * (1.0 - s.s_A) / p.tau - s.s_A / p.tau_i;
    d.s_B = fB * (1.0 - s.s_B) / p.tau - s.s_B / p.tau_i;
    return d;
}

}  // namespace streamwave
