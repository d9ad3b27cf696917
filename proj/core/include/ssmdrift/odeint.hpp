#pragma once

#include "ssmdrift/rtbp.hpp"

#include <array>
#include <cstddef>
#include <functional>

namespace ssmdrift::odeint
{

/// Step-size and accuracy controls of the adaptive integrator.
///
/// `local_tol` bounds the embedded error estimate of every accepted step in
/// the max norm over the six state components (absolute, not relative).
struct IntegratorConfig
{
    double local_tol{1e-14};
    double h_init{1e-3};
    double h_min{1e-12};
    double h_max{0.5};
    double t_max{50.0};  ///< horizon for section searches

    void validate() const;
};

/// Crossing of the XZ plane (Y = 0) with the sign of VY fixed by `direction`.
struct SectionEvent
{
    int direction{+1};
};

struct SectionHit
{
    rtbp::State6 state;
    double time{0.0};
};

struct IntegrationStats
{
    std::size_t accepted{0};
    std::size_t rejected{0};
};

using State = std::array<double, 6>;
using Rhs = std::function<State(const State &)>;

/// Runge-Kutta-Fehlberg 7(8) pair. The eighth-order solution is propagated;
/// the seventh-order companion only drives step control.
class Rkf78
{
public:
    struct Step
    {
        State y;
        double error;  ///< max-norm local error estimate
    };

    explicit Rkf78(Rhs rhs) : rhs_(std::move(rhs)) {}

    Step step(const State &y, double h) const;

    const Rhs &rhs() const noexcept { return rhs_; }

private:
    Rhs rhs_;
};

/// Integrate the RTBP from `s` over the signed duration `t_final`.
rtbp::State6 integrate(const rtbp::State6 &s, rtbp::MassRatio mu, double t_final,
                       const IntegratorConfig &cfg = {}, IntegrationStats *stats = nullptr);

/// Integrate forward to the next crossing of the XZ plane in the requested
/// direction. A crossing at t = 0 does not count.
SectionHit integrate_to_section(const rtbp::State6 &s, rtbp::MassRatio mu, SectionEvent ev,
                                const IntegratorConfig &cfg = {});

} // namespace ssmdrift::odeint
