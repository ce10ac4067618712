#include "catch2/catch_amalgamated.hpp"

#include <random>

#include "streamwave/model.hpp"

using namespace streamwave;
using Catch::Approx;

TEST_CASE("step gain is inclusive at the threshold", "[model]") {
    CHECK(heaviside_gain(0.5, 0.5) == 1.0);
    CHECK(heaviside_gain(0.5 - 1e-15, 0.5) == 0.0);
    CHECK(heaviside_gain(1.0, 0.5) == 1.0);
    CHECK(heaviside_gain(-3.0, 0.5) == 0.0);
}

TEST_CASE("logistic gain values and saturation early-out", "[model]") {
    CHECK(sigmoid_gain(0.0, 30.0) == 0.5);
    CHECK(sigmoid_gain(0.1, 30.0) == Approx(1.0 / (1.0 + std::exp(-3.0))).margin(1e-15));
    // |lambda x| >= 40 collapses to exact 0/1.
    CHECK(sigmoid_gain(2.0, 30.0) == 1.0);
    CHECK(sigmoid_gain(-2.0, 30.0) == 0.0);
    // Monotone increasing.
    double prev = -1.0;
    for (double x = -2.0; x <= 2.0; x += 0.05) {
        const double v = sigmoid_gain(x, 30.0);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("gain dispatch centers the sigmoid at theta", "[model]") {
    Gain g;
    g.kind = GainKind::sigmoid;
    g.lambda = 30.0;
    CHECK(gain(g, 0.5, 0.5) == 0.5);
    g.kind = GainKind::heaviside;
    CHECK(gain(g, 0.5, 0.5) == 1.0);
    CHECK(gain(g, 0.499, 0.5) == 0.0);
}

TEST_CASE("rhs frozen value for a step-gain state", "[model]") {
    ModelParams p;  // a=2, b=2.8, theta=0.5, tau=0.025, tau_i=0.25
    p.gain.kind = GainKind::heaviside;
    p.validate();
    // u_A=1 driven at full input: drive_A = 0 - 0 + 5.5 -> G=1 -> u_A'=0.
    // s_A decays with no... gate open (u_A >= theta) but s_A=1 so only leak: -1/tau_i.
    const NetState s{1.0, 0.0, 1.0, 0.0};
    const NetState d = rhs(s, 1.0, 0.0, 5.5, 0.0, p);
    CHECK(d.u_A == Approx(0.0).margin(1e-15));
    CHECK(d.s_A == Approx(-4.0).margin(1e-12));  // -s_A/tau_i = -1/0.25
    // drive_B = a*1 - b*1 + 0 = -0.8 < theta -> G=0 -> u_B' = 0.
    CHECK(d.u_B == Approx(0.0).margin(1e-15));
    // u_B=0 below theta -> gate closed -> s_B' = 0.
    CHECK(d.s_B == Approx(0.0).margin(1e-15));
}

TEST_CASE("rhs gate term fills toward 1 at rate 1/tau", "[model]") {
    ModelParams p;
    p.gain.kind = GainKind::heaviside;
    const NetState s{0.6, 0.0, 0.2, 0.0};
    const NetState d = rhs(s, 0.0, 0.0, 0.0, 0.0, p);
    // u_A=0.6 >= theta: s_A' = (1-0.2)/tau - 0.2/tau_i = 32 - 0.8.
    CHECK(d.s_A == Approx(0.8 / 0.025 - 0.2 / 0.25).margin(1e-12));
    // drive_A = 0 -> G=0 -> u_A' = -0.6/0.025.
    CHECK(d.u_A == Approx(-24.0).margin(1e-12));
}

TEST_CASE("rhs commutes with the A-B exchange", "[model]") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_real_distribution<double> uin(0.0, 6.0);
    for (int pass = 0; pass < 2; ++pass) {
        ModelParams p;
        p.gain.kind = pass == 0 ? GainKind::heaviside : GainKind::sigmoid;
        for (int i = 0; i < 200; ++i) {
            const NetState s{u01(rng), u01(rng), u01(rng), u01(rng)};
            const double dA = u01(rng), dB = u01(rng);
            const double iA = uin(rng), iB = uin(rng);
            const NetState lhs = rhs(s.swapped(), dB, dA, iB, iA, p);
            const NetState rhs_sw = rhs(s, dA, dB, iA, iB, p).swapped();
            CHECK(lhs.u_A == Approx(rhs_sw.u_A).margin(1e-14));
            CHECK(lhs.u_B == Approx(rhs_sw.u_B).margin(1e-14));
            CHECK(lhs.s_A == Approx(rhs_sw.s_A).margin(1e-14));
            CHECK(lhs.s_B == Approx(rhs_sw.s_B).margin(1e-14));
        }
    }
}

TEST_CASE("synaptic flow preserves [0,1] at the faces", "[model]") {
    ModelParams p;
    p.gain.kind = GainKind::heaviside;
    // At s=0 the derivative cannot be negative; at s=1 it cannot be positive.
    for (double u : {0.0, 0.3, 0.5, 1.0}) {
        CHECK(rhs({u, u, 0.0, 0.0}, 0.0, 0.0, 0.0, 0.0, p).s_A >= 0.0);
        CHECK(rhs({u, u, 1.0, 1.0}, 1.0, 1.0, 0.0, 0.0, p).s_A <= 0.0);
    }
}

TEST_CASE("model parameter validation", "[model]") {
    ModelParams p;
    CHECK_NOTHROW(p.validate());
    ModelParams bad = p;
    bad.theta = 0.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = p;
    bad.theta = 1.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = p;
    bad.tau = 0.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = p;
    bad.tau_i = -1.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = p;
    bad.D = -0.01;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = p;
    bad.a = -0.1;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = p;
    bad.gain.lambda = 0.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("regime flags", "[model]") {
    ModelParams p;  // a=2 b=2.8 theta=0.5: u1 holds (a-b<theta)
    Stimulus s;     // TD=0.022 TR=0.1 c=5.5
    p.D = 0.015;
    const RegimeFlags f = validate_params(p, s);
    CHECK(f.u1);
    CHECK(f.u2);           // c >= theta
    CHECK(f.u3);           // c - b >= theta: 5.5-2.8=2.7
    CHECK(f.short_delay);  // D <= TD
    CHECK(f.sep_ok);       // TD + D < TR

    p.D = 0.05;
    CHECK_FALSE(validate_params(p, s).short_delay);
    p.D = 0.09;
    CHECK_FALSE(validate_params(p, s).sep_ok);
    p.D = 0.015;
    p.a = 3.4;  // a - b = 0.6 >= theta
    CHECK_FALSE(validate_params(p, s).u1);
}
