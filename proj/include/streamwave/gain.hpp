#pragma once

#include <algorithm>
#include <cmath>

#include "streamwave/params.hpp"

namespace streamwave {

// Heaviside step, inclusive at the threshold: H(x) = 1 iff x >= theta.
inline double heaviside_gain(double x, double theta) {
    return x >= theta ? 1.0 : 0.0;
}

// Logistic S(x) = 1 / (1 + e^(-lambda x)). Beyond |lambda x| = 40 the result
// equals 0 or 1 to double precision, so the exponential is skipped there.
inline double sigmoid_gain(double x, double lambda) {
    const double z = lambda * x;
    if (z >= 40.0) return 1.0;
    if (z <= -40.0) return 0.0;
    return 1.0 / (1.0 + std::exp(-z));
}

// Gain used in the rate equations. The sigmoid is centered at theta so that
// lambda -> infinity recovers the Heaviside model.
inline double gain(const Gain& g, double x, double theta) {
    if (g.kind == GainKind::heaviside) return heaviside_gain(x, theta);
    return sigmoid_gain(x - theta, g.lambda);
}

}  // namespace streamwave
