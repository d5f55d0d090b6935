#include "ghs/fd_oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ghs::fd {

RealField central_difference(const RealField& f) {
    const int n = f.size();
    const double inv_2dx = 0.5 * n;
    RealField out(f.grid());
    for (int j = 0; j < n; ++j) {
        out[j] = (f[(j + 1) % n] - f[(j + n - 1) % n]) * inv_2dx;
    }
    return out;
}

RealField cumulative_trapezoid(const RealField& f) {
    const int n = f.size();
    const double half_dx = 0.5 / n;
    RealField out(f.grid());
    for (int j = 1; j < n; ++j) out[j] = out[j - 1] + half_dx * (f[j - 1] + f[j]);
    return out;
}

Tendency fd_rhs(const SimState& state, const SystemParams& params) {
    const RealField& u = state.u;
    const RealField& rho = state.rho;
    const RealField ux = central_difference(u);
    const RealField rhox = central_difference(rho);
    const int n = u.size();

    RealField integrand(u.grid());
    double mean = 0.0;
    for (int j = 0; j < n; ++j) {
        integrand[j] = 0.5 * params.kappa * rho[j] * rho[j] + 0.5 * (params.alpha + 2.0) * ux[j] * ux[j];
        mean += integrand[j];
    }
    const double a = -mean / n;
    for (int j = 0; j < n; ++j) integrand[j] += a;

    RealField du = cumulative_trapezoid(integrand);
    RealField drho(u.grid());
    for (int j = 0; j < n; ++j) {
        du[j] -= u[j] * ux[j];
        drho[j] = params.alpha * ux[j] * rho[j] - u[j] * rhox[j];
    }
    return {std::move(du), std::move(drho)};
}

namespace {

SimState shifted(const SimState& s, double h, const Tendency& k) {
    SimState out = s;
    for (int j = 0; j < s.u.size(); ++j) {
        out.u[j] += h * k.du_dt[j];
        out.rho[j] += h * k.drho_dt[j];
    }
    out.t += h;
    return out;
}

}  // namespace

SimState fd_run(const SimState& initial, const SystemParams& params, double dt, double horizon) {
    if (!(dt > 0.0)) throw std::invalid_argument("fd_run needs dt > 0");
    SimState s = initial;
    while (s.t < horizon) {
        const double h = std::min(dt, horizon - s.t);
        const Tendency k1 = fd_rhs(s, params);
        const Tendency k2 = fd_rhs(shifted(s, 0.5 * h, k1), params);
        const Tendency k3 = fd_rhs(shifted(s, 0.5 * h, k2), params);
        const Tendency k4 = fd_rhs(shifted(s, h, k3), params);
        for (int j = 0; j < s.u.size(); ++j) {
            s.u[j] += h / 6.0 * (k1.du_dt[j] + 2.0 * k2.du_dt[j] + 2.0 * k3.du_dt[j] + k4.du_dt[j]);
            s.rho[j] += h / 6.0 * (k1.drho_dt[j] + 2.0 * k2.drho_dt[j] + 2.0 * k3.drho_dt[j] + k4.drho_dt[j]);
        }
        s.t = (horizon - s.t <= dt) ? horizon : s.t + h;
        if (!s.is_finite()) throw NumericalBreakdown("fd oracle produced non-finite values at t=" + std::to_string(s.t));
    }
    return s;
}

}  // namespace ghs::fd
