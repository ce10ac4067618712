#include "catch2/catch_amalgamated.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "streamwave/classifier.hpp"

using namespace streamwave;
using Catch::Approx;

namespace {

ModelParams ref_params() {
    ModelParams p;
    p.a = 1.0;
    p.b = 2.0;
    p.theta = 0.5;
    p.tau = 0.002;
    p.tau_i = 0.2;
    p.D = 0.01;
    return p;
}

Stimulus ref_stim(double pr, double df) {
    Stimulus s;
    s.TR = 1.0 / pr;
    s.TD = 0.03;
    s.c = 5.0;
    s.df = df;
    return s;
}

StateName short_label(double pr, double df) {
    const ModelParams p = ref_params();
    const Stimulus s = ref_stim(pr, df);
    const auto labels = classify_short_delay(p, s, df_to_d(s.c, df, s.m));
    REQUIRE(labels.size() == 1);
    return labels[0];
}

}  // namespace

TEST_CASE("short-delay frozen labels along a df slice", "[classifier]") {
    // PR = 20 Hz reference point set.
    CHECK(short_label(20.0, 0.9) == StateName::AP);
    CHECK(short_label(20.0, 0.5) == StateName::AP);
    CHECK(short_label(20.0, 0.3) == StateName::APcAS);
    CHECK(short_label(20.0, 0.25) == StateName::ASD);
    CHECK(short_label(20.0, 0.2) == StateName::AScI);
    CHECK(short_label(20.0, 0.05) == StateName::ID);
    CHECK(short_label(20.0, 0.0) == StateName::I);
}

TEST_CASE("alternation-to-connected flip at the two-period press balance", "[classifier]") {
    // The AP / APcAS boundary is where a - b M+ + d crosses theta with
    // M+ = e^{-(2TR - D)/tau_i}. At PR = 20 that root is df* below.
    const double df_star = 0.3639000992122682;
    CHECK(short_label(20.0, df_star - 1e-9) == StateName::APcAS);
    CHECK(short_label(20.0, df_star + 1e-9) == StateName::AP);
    // Threshold comparisons are inclusive: the root itself stays connected.
    CHECK(short_label(20.0, df_star) == StateName::APcAS);
}

TEST_CASE("integration-to-alternation flip at the one-period press balance", "[classifier]") {
    // The AScI boundary is where a - b N+ + d crosses theta with
    // N+ = e^{-(TR - D)/tau_i}. At PR = 20 the root is df* below; above it the
    // suppressed unit only recovers within the alternation family.
    const double df_star = 0.2125283632733979;
    CHECK(short_label(20.0, df_star - 1e-9) == StateName::AScI);
    CHECK(short_label(20.0, df_star + 1e-9) == StateName::ASD);
}

TEST_CASE("exactly one short-delay condition set holds", "[classifier]") {
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        ModelParams p;
        p.theta = 0.2 + 0.6 * u01(rng);
        p.b = 0.2 + 3.8 * u01(rng);
        p.a = (p.b + p.theta) * 0.98 * u01(rng);  // a - b < theta
        p.tau = 0.002;
        p.tau_i = 0.05 + 0.45 * u01(rng);
        Stimulus s;
        s.TR = 0.02 + 0.48 * u01(rng);
        s.TD = s.TR * (0.1 + 0.85 * u01(rng));
        p.D = s.TD * u01(rng);  // short-delay regime
        s.c = p.b + p.theta + 5.0 * u01(rng);  // strong drive
        const double d = s.c * u01(rng);
        const auto labels = classify_short_delay(p, s, d);
        REQUIRE(labels.size() == 1);
    }
}

TEST_CASE("short-delay regime gates", "[classifier]") {
    ModelParams p = ref_params();
    Stimulus s = ref_stim(20.0, 0.5);
    p.D = 0.05;  // D > TD
    CHECK_THROWS_WITH(classify_short_delay(p, s, 1.0),
                      Catch::Matchers::ContainsSubstring("short_delay"));
    p = ref_params();
    s.c = 1.0;  // c - b < theta
    CHECK_THROWS_WITH(classify_short_delay(p, s, 0.5),
                      Catch::Matchers::ContainsSubstring("u3"));
}

TEST_CASE("overlapping presses engage the late-onset guard", "[classifier]") {
    // TD + D >= TR: the re-entrant window shrinks and the AScI set needs its
    // onset to fit before the period ends.
    ConditionReport r;
    r.a = 1.0;
    r.b = 2.0;
    r.d = 1.0;
    r.theta = 0.5;
    r.tau_i = 0.2;
    r.D = 0.02;
    r.TR = 0.05;
    // t* = TR - D - tau_i ln(b / (a + d - theta)) ; b / 1.5 > 1 so ln > 0.
    const double t_star = r.TR - r.D - r.tau_i * std::log(r.b / 1.5);
    CHECK(detail::late_onset_fits_before_period_end(r) == (t_star + r.D < r.TR));
    r.b = 0.0;  // no press at all: the guard is vacuous
    CHECK(detail::late_onset_fits_before_period_end(r));
    r.b = 2.0;
    r.d = -0.6;  // lift a + d - theta <= 0: the unit cannot rise in time
    CHECK_FALSE(detail::late_onset_fits_before_period_end(r));
}

TEST_CASE("long-delay rule table shape", "[classifier]") {
    const auto& rules = detail::long_rules();
    CHECK(rules.size() == 41);
    std::set<StateName> names;
    for (const auto& r : rules) names.insert(r.name);
    CHECK(names.size() == rules.size());  // no duplicate rule names
    // Degenerate zero-tau limits are representable but never classified.
    CHECK(names.count(StateName::ScASL2_deg) == 0);
    CHECK(names.count(StateName::ZcIL2) == 0);
    CHECK(names.count(StateName::ZcSL) == 0);
    // Every rule maps to a registered matrix form.
    for (const auto& r : rules) CHECK(well_formed(matrix_form(r.name)));
}

TEST_CASE("long-delay regime gates", "[classifier]") {
    ModelParams p = ref_params();
    Stimulus s = ref_stim(10.0, 0.5);
    CHECK_THROWS_WITH(classify_long_delay(p, s, 1.0),
                      Catch::Matchers::ContainsSubstring("short_delay"));  // D <= TD
    p.D = 0.08;
    CHECK_THROWS_WITH(classify_long_delay(p, s, 1.0),
                      Catch::Matchers::ContainsSubstring("sep_ok"));  // TD + D >= TR
}

TEST_CASE("only the braided pairs may coexist among the short-press sets", "[classifier]") {
    std::mt19937 rng(211);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    int nonempty = 0;
    int multi = 0;
    for (int i = 0; i < 10000; ++i) {
        ModelParams p;
        p.theta = 0.2 + 0.6 * u01(rng);
        p.b = 0.2 + 3.8 * u01(rng);
        p.a = (p.b + p.theta) * 0.98 * u01(rng);
        p.tau = 0.002;
        p.tau_i = 0.05 + 0.45 * u01(rng);
        Stimulus s;
        s.TR = 0.06 + 0.4 * u01(rng);
        s.TD = s.TR * (0.05 + 0.4 * u01(rng));        // TD < TR/2
        p.D = s.TD + (s.TR - 2.0 * s.TD) * 0.98 * u01(rng) + 1e-9;  // TD < D < TR-TD
        s.c = p.theta + 5.0 * u01(rng);
        const double d = s.c * u01(rng);

        const auto labels = classify_long_delay(p, s, d);
        if (!labels.empty()) ++nonempty;

        std::vector<StateName> sm;
        for (StateName n : labels)
            if (matrix_form(n).kind == MatrixKind::sm) sm.push_back(n);
        if (sm.size() > 1) {
            ++multi;
            REQUIRE(sm.size() == 2);
            const bool i_sb = (sm[0] == StateName::I && sm[1] == StateName::SB) ||
                              (sm[1] == StateName::I && sm[0] == StateName::SB);
            const bool i_sd = (sm[0] == StateName::I && sm[1] == StateName::SD) ||
                              (sm[1] == StateName::I && sm[0] == StateName::SD);
            CHECK((i_sb || i_sd));
        }

        for (const auto& pr : multistability_pairs(p, s, d)) {
            CHECK(((pr.first == StateName::I && (pr.second == StateName::SB ||
                                                 pr.second == StateName::SD)) ||
                   (pr.second == StateName::I && (pr.first == StateName::SB ||
                                                  pr.first == StateName::SD))));
        }
    }
    CHECK(nonempty > 100);  // the rule table fires over a nontrivial region
}

TEST_CASE("classifier dispatcher selects the regime by delay", "[classifier]") {
    const ModelParams p = ref_params();
    const Stimulus s = ref_stim(20.0, 0.5);
    const Classification c = classify(p, s, df_to_d(s.c, 0.5, s.m));
    CHECK(c.short_delay);
    REQUIRE(c.labels.size() == 1);
    CHECK(c.labels[0] == StateName::AP);
    CHECK(c.report.C2p == Approx(0.2702501060547569).margin(1e-13));
}

TEST_CASE("long-delay frozen point: braided integration pair", "[classifier]") {
    // Constructed witness where the one-unit integration state coexists with
    // the suppressed-double state: d >= theta with a + c - b N+ < theta (I)
    // while c - b M- >= theta and a - b M- + d >= theta (SD).
    ModelParams p;
    p.a = 0.2;
    p.b = 3.9;
    p.theta = 0.5;
    p.tau = 0.002;
    p.tau_i = 0.5;
    p.D = 0.055;
    Stimulus s;
    s.TR = 0.1;
    s.TD = 0.04;
    s.c = 3.75;
    const double d = 3.5;

    const auto labels = classify_long_delay(p, s, d);
    CHECK(std::count(labels.begin(), labels.end(), StateName::I) == 1);
    CHECK(std::count(labels.begin(), labels.end(), StateName::SD) == 1);

    const auto pairs = multistability_pairs(p, s, d);
    REQUIRE(pairs.size() == 1);
    const std::set<StateName> got{pairs[0].first, pairs[0].second};
    CHECK(got == std::set<StateName>{StateName::I, StateName::SD});
}
