#include "ssmdrift/odeint.hpp"

#include "ssmdrift/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ssmdrift::odeint
{

namespace
{

// Fehlberg 7(8) tableau, 13 stages.
constexpr std::array<double, 13> kC = {
    0.0, 2.0 / 27.0, 1.0 / 9.0, 1.0 / 6.0, 5.0 / 12.0, 1.0 / 2.0, 5.0 / 6.0,
    1.0 / 6.0, 2.0 / 3.0, 1.0 / 3.0, 1.0, 0.0, 1.0,
};

constexpr double kA[13][12] = {
    {},
    {2.0 / 27.0},
    {1.0 / 36.0, 1.0 / 12.0},
    {1.0 / 24.0, 0.0, 1.0 / 8.0},
    {5.0 / 12.0, 0.0, -25.0 / 16.0, 25.0 / 16.0},
    {1.0 / 20.0, 0.0, 0.0, 1.0 / 4.0, 1.0 / 5.0},
    {-25.0 / 108.0, 0.0, 0.0, 125.0 / 108.0, -65.0 / 27.0, 125.0 / 54.0},
    {31.0 / 300.0, 0.0, 0.0, 0.0, 61.0 / 225.0, -2.0 / 9.0, 13.0 / 900.0},
    {2.0, 0.0, 0.0, -53.0 / 6.0, 704.0 / 45.0, -107.0 / 9.0, 67.0 / 90.0, 3.0},
    {-91.0 / 108.0, 0.0, 0.0, 23.0 / 108.0, -976.0 / 135.0, 311.0 / 54.0, -19.0 / 60.0, 17.0 / 6.0, -1.0 / 12.0},
    {2383.0 / 4100.0, 0.0, 0.0, -341.0 / 164.0, 4496.0 / 1025.0, -301.0 / 82.0, 2133.0 / 4100.0, 45.0 / 82.0,
     45.0 / 164.0, 18.0 / 41.0},
    {3.0 / 205.0, 0.0, 0.0, 0.0, 0.0, -6.0 / 41.0, -3.0 / 205.0, -3.0 / 41.0, 3.0 / 41.0, 6.0 / 41.0, 0.0},
    {-1777.0 / 4100.0, 0.0, 0.0, -341.0 / 164.0, 4496.0 / 1025.0, -289.0 / 82.0, 2193.0 / 4100.0, 51.0 / 82.0,
     33.0 / 164.0, 12.0 / 41.0, 0.0, 1.0},
};

constexpr std::array<double, 13> kB8 = {
    0.0, 0.0, 0.0, 0.0, 0.0, 34.0 / 105.0, 9.0 / 35.0, 9.0 / 35.0, 9.0 / 280.0, 9.0 / 280.0, 0.0,
    41.0 / 840.0, 41.0 / 840.0,
};

// Difference between the seventh and eighth order weights.
constexpr double kErrWeight = 41.0 / 840.0;

constexpr double kSafety = 0.9;
constexpr double kFacMin = 0.2;
constexpr double kFacMax = 5.0;
constexpr double kAlpha = 0.7 / 8.0;
constexpr double kBeta = 0.4 / 8.0;

Rhs rtbp_rhs(rtbp::MassRatio mu)
{
    return [mu](const State &y) { return vector_field(rtbp::State6::from_array(y), mu).to_array(); };
}

/// Adaptive driver. `on_step(t0, y0, h, y1)` is called after every accepted
/// step and may return true to stop early.
template <typename OnStep>
State drive(const Rkf78 &rk, State y, double t_end, const IntegratorConfig &cfg, IntegrationStats *stats,
            OnStep &&on_step)
{
    const double dir = t_end >= 0.0 ? 1.0 : -1.0;
    double t = 0.0;
    double h = std::min(cfg.h_init, cfg.h_max);
    double err_prev = cfg.local_tol;

    while (dir * (t_end - t) > 0.0) {
        const double remaining = std::abs(t_end - t);
        bool last = false;
        if (h >= remaining) {
            h = remaining;
            last = true;
        }
        const Rkf78::Step st = rk.step(y, dir * h);
        if (!std::isfinite(st.error)) {
            throw SingularityError("non-finite state during integration");
        }
        if (st.error <= cfg.local_tol) {
            const double t0 = t;
            const State y0 = y;
            t = last ? t_end : t + dir * h;
            y = st.y;
            if (stats != nullptr) {
                ++stats->accepted;
            }
            if (on_step(t0, y0, dir * h, y)) {
                return y;
            }
            double fac = kFacMax;
            if (st.error > 0.0) {
                fac = kSafety * std::pow(cfg.local_tol / st.error, kAlpha) *
                      std::pow(err_prev / cfg.local_tol, kBeta);
            }
            err_prev = std::max(st.error, 1e-4 * cfg.local_tol);
            if (!last) {
                h = std::min(h * std::clamp(fac, kFacMin, kFacMax), cfg.h_max);
            }
        } else {
            if (stats != nullptr) {
                ++stats->rejected;
            }
            const double fac = kSafety * std::pow(cfg.local_tol / st.error, 1.0 / 8.0);
            h *= std::max(kFacMin, fac);
            if (h < cfg.h_min) {
                throw StepUnderflowError("step size fell below h_min=" + std::to_string(cfg.h_min) +
                                         " at t=" + std::to_string(t));
            }
        }
    }
    return y;
}

} // namespace

void IntegratorConfig::validate() const
{
    if (!(local_tol > 0.0)) {
        throw RangeError("local_tol must be positive");
    }
    if (!(h_min > 0.0 && h_min <= h_init && h_init <= h_max)) {
        throw RangeError("step controls must satisfy 0 < h_min <= h_init <= h_max");
    }
    if (!(t_max > 0.0)) {
        throw RangeError("t_max must be positive");
    }
}

Rkf78::Step Rkf78::step(const State &y, double h) const
{
    std::array<State, 13> k{};
    for (std::size_t s = 0; s < 13; ++s) {
        State ys = y;
        for (std::size_t j = 0; j < s; ++j) {
            const double a = kA[s][j];
            if (a == 0.0) {
                continue;
            }
            for (std::size_t i = 0; i < 6; ++i) {
                ys[i] += h * a * k[j][i];
            }
        }
        k[s] = rhs_(ys);
    }

    Step out{y, 0.0};
    for (std::size_t i = 0; i < 6; ++i) {
        double acc = 0.0;
        for (std::size_t s = 0; s < 13; ++s) {
            acc += kB8[s] * k[s][i];
        }
        out.y[i] += h * acc;
        const double e = std::abs(h * kErrWeight * (k[0][i] + k[10][i] - k[11][i] - k[12][i]));
        out.error = std::max(out.error, e);
    }
    return out;
}

rtbp::State6 integrate(const rtbp::State6 &s, rtbp::MassRatio mu, double t_final, const IntegratorConfig &cfg,
                       IntegrationStats *stats)
{
    cfg.validate();
    if (t_final == 0.0) {
        return s;
    }
    const Rkf78 rk(rtbp_rhs(mu));
    const State y = drive(rk, s.to_array(), t_final, cfg, stats, [](double, const State &, double, const State &) {
        return false;
    });
    return rtbp::State6::from_array(y);
}

SectionHit integrate_to_section(const rtbp::State6 &s, rtbp::MassRatio mu, SectionEvent ev,
                                const IntegratorConfig &cfg)
{
    cfg.validate();
    if (ev.direction != 1 && ev.direction != -1) {
        throw RangeError("section direction must be +1 or -1");
    }
    const Rkf78 rk(rtbp_rhs(mu));
    const double sgn = static_cast<double>(ev.direction);

    bool found = false;
    SectionHit hit;
    auto on_step = [&](double t0, const State &y0, double h, const State &y1) {
        const double g0 = sgn * y0[1];
        const double g1 = sgn * y1[1];
        if (!(g0 < 0.0 && g1 >= 0.0)) {
            return false;
        }
        // Newton on Y(theta) along the step from y0, derivative VY; bisection
        // whenever the Newton iterate leaves the bracket.
        double a = 0.0;
        double b = h;
        double ga = g0;
        double theta = h * g0 / (g0 - g1);
        State y = y1;
        for (int it = 0; it < 30; ++it) {
            y = rk.step(y0, theta).y;
            const double g = sgn * y[1];
            if (std::abs(y[1]) < 1e-15) {
                break;
            }
            if ((g < 0.0) == (ga < 0.0)) {
                a = theta;
                ga = g;
            } else {
                b = theta;
            }
            double next = theta - y[1] / y[4];
            const double lo = std::min(a, b);
            const double hi = std::max(a, b);
            if (!(next > lo && next < hi)) {
                next = 0.5 * (a + b);
            }
            if (next == theta) {
                break;
            }
            theta = next;
        }
        if (std::abs(y[1]) >= 1e-12) {
            throw ConvergenceError("section crossing refinement left residual |Y|=" + std::to_string(std::abs(y[1])));
        }
        hit.state = rtbp::State6::from_array(y);
        hit.time = t0 + theta;
        found = true;
        return true;
    };

    drive(rk, s.to_array(), cfg.t_max, cfg, nullptr, on_step);
    if (!found) {
        throw NoCrossingError("no XZ-plane crossing within t_max=" + std::to_string(cfg.t_max));
    }
    return hit;
}

} // namespace ssmdrift::odeint
