#pragma once

namespace streamwave {

// Classic RK4 step for dy/dt = f(t, y); Y needs +, scalar *.
// The overload taking k1 lets callers reuse a derivative they already have.
template <class F, class Y>
Y rk4_step(F&& f, double t, const Y& y, double dt, const Y& k1) {
    const Y k2 = f(t + 0.5 * dt, y + (0.5 * dt) * k1);
    const Y k3 = f(t + 0.5 * dt, y + (0.5 * dt) * k2);
    const Y k4 = f(t + dt, y + dt * k3);
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

template <class F, class Y>
Y rk4_step(F&& f, double t, const Y& y, double dt) {
    const Y k1 = f(t, y);
    return rk4_step(f, t, y, dt, k1);
}

}  // namespace streamwave
