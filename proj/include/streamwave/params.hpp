#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace streamwave {

// Thrown when a parameter or stimulus field violates its documented range.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a classifier is invoked outside its regime of validity.
struct RegimeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class GainKind { heaviside, sigmoid };

struct Gain {
    GainKind kind = GainKind::sigmoid;
    double lambda = 30.0;  // slope of the logistic, ignored for heaviside
};

// Two-tone periodic stimulus. PR (Hz) is stored as TR = 1/PR (seconds).
struct Stimulus {
    double TD = 0.022;  // tone duration (s)
    double TR = 0.1;    // repetition time (s); A tones start at 2k*TR, B tones at (2k+1)*TR
    double c = 5.5;     // input strength on a unit's own tone
    double df = 0.0;    // normalized frequency difference in [0,1]
    int m = 6;          // exponent of the df -> d mapping

    double pr() const { return 1.0 / TR; }

    void validate() const {
        if (!(TD > 0.0)) throw ValidationError("TD must be > 0");
        if (!(TR > 0.0)) throw ValidationError("TR must be > 0");
        if (TR < TD) throw ValidationError("TR must be >= TD (tones must not overlap)");
        if (!(c >= 0.0)) throw ValidationError("c must be >= 0");
        if (!(df >= 0.0 && df <= 1.0)) throw ValidationError("df must be in [0,1]");
        if (m < 1) throw ValidationError("m must be >= 1");
    }
};

struct ModelParams {
    double a = 2.0;      // mutual excitation strength
    double b = 2.8;      // mutual inhibition strength
    double theta = 0.5;  // activation threshold, in (0,1)
    double tau = 0.025;  // fast timescale (s)
    double tau_i = 0.25; // inhibitory decay timescale (s)
    double D = 0.015;    // inhibition delay (s)
    Gain gain{};

    void validate() const {
        if (!(a >= 0.0)) throw ValidationError("a must be >= 0");
        if (!(b >= 0.0)) throw ValidationError("b must be >= 0");
        if (!(theta > 0.0 && theta < 1.0)) throw ValidationError("theta must be in (0,1)");
        if (!(tau > 0.0)) throw ValidationError("tau must be > 0");
        if (!(tau_i > 0.0)) throw ValidationError("tau_i must be > 0");
        if (!(D >= 0.0)) throw ValidationError("D must be >= 0");
        if (gain.kind == GainKind::sigmoid && !(gain.lambda > 0.0))
            throw ValidationError("lambda must be > 0");
    }
};

// Predicates restricting the analysis to the regime where the state taxonomy holds.
//   u1: quiescence is stable (a - b < theta)
//   u2: a tone can light up its own unit (c >= theta)
//   u3: a tone keeps its own unit on against full inhibition (c - b >= theta)
//   short_delay: D <= TD;  sep_ok: TD + D < TR (tone response ends before the next tone)
struct RegimeFlags {
    bool u1 = false;
    bool u2 = false;
    bool u3 = false;
    bool short_delay = false;
    bool sep_ok = false;
};

inline RegimeFlags validate_params(const ModelParams& p, const Stimulus& stim) {
    RegimeFlags f;
    f.u1 = p.a - p.b < p.theta;
    f.u2 = stim.c >= p.theta;
    f.u3 = stim.c - p.b >= p.theta;
    f.short_delay = p.D <= stim.TD;
    f.sep_ok = stim.TD + p.D < stim.TR;
    return f;
}

}  // namespace streamwave
