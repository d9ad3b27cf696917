#include "ssmdrift/rtbp.hpp"

#include "ssmdrift/errors.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace ssmdrift::rtbp
{

namespace
{

struct Distances
{
    double dx1, dx2;  // X offsets from P1 and P2
    double r1, r2;
};

Distances distances(const Vec3 &p, MassRatio mu)
{
    Distances d{};
    d.dx1 = p.x - mu.value();
    d.dx2 = p.x - mu.value() + 1.0;
    const double yz = p.y * p.y + p.z * p.z;
    d.r1 = std::sqrt(d.dx1 * d.dx1 + yz);
    d.r2 = std::sqrt(d.dx2 * d.dx2 + yz);
    if (!(d.r1 >= kSingularityRadius) || !(d.r2 >= kSingularityRadius)) {
        throw SingularityError("position within " + std::to_string(kSingularityRadius) +
                               " of a primary (r1=" + std::to_string(d.r1) + ", r2=" + std::to_string(d.r2) + ")");
    }
    return d;
}

} // namespace

MassRatio::MassRatio(double mu) : mu_(mu)
{
    if (!(mu >= 0.0 && mu <= 0.5)) {
        throw RangeError("mass ratio must lie in [0, 0.5], got " + std::to_string(mu));
    }
}

Momenta6 to_momenta(const State6 &s) noexcept
{
    return {s.x, s.y, s.z, s.vx - s.y, s.vy + s.x, s.vz};
}

State6 to_state(const Momenta6 &m) noexcept
{
    return {m.x, m.y, m.z, m.px + m.y, m.py - m.x, m.pz};
}

double effective_potential(const Vec3 &pos, MassRatio mu)
{
    const Distances d = distances(pos, mu);
    return 0.5 * (pos.x * pos.x + pos.y * pos.y) + mu.large() / d.r1 + mu.small() / d.r2;
}

Vec3 potential_gradient(const Vec3 &pos, MassRatio mu)
{
    const Distances d = distances(pos, mu);
    const double k1 = mu.large() / (d.r1 * d.r1 * d.r1);
    const double k2 = mu.small() / (d.r2 * d.r2 * d.r2);
    return {
        pos.x - k1 * d.dx1 - k2 * d.dx2,
        pos.y - (k1 + k2) * pos.y,
        -(k1 + k2) * pos.z,
    };
}

PotentialHessian potential_hessian(const Vec3 &pos, MassRatio mu)
{
    const Distances d = distances(pos, mu);
    const double r1_3 = d.r1 * d.r1 * d.r1;
    const double r2_3 = d.r2 * d.r2 * d.r2;
    const double k1 = mu.large() / r1_3;
    const double k2 = mu.small() / r2_3;
    const double q1 = 3.0 * mu.large() / (r1_3 * d.r1 * d.r1);
    const double q2 = 3.0 * mu.small() / (r2_3 * d.r2 * d.r2);

    PotentialHessian h;
    h.xx = 1.0 - k1 - k2 + q1 * d.dx1 * d.dx1 + q2 * d.dx2 * d.dx2;
    h.yy = 1.0 - k1 - k2 + (q1 + q2) * pos.y * pos.y;
    h.zz = -k1 - k2 + (q1 + q2) * pos.z * pos.z;
    h.xy = (q1 * d.dx1 + q2 * d.dx2) * pos.y;
    h.xz = (q1 * d.dx1 + q2 * d.dx2) * pos.z;
    h.yz = (q1 + q2) * pos.y * pos.z;
    return h;
}

State6 vector_field(const State6 &s, MassRatio mu)
{
    const Vec3 g = potential_gradient(s.position(), mu);
    return {s.vx, s.vy, s.vz, g.x + 2.0 * s.vy, g.y - 2.0 * s.vx, g.z};
}

double jacobi_constant(const State6 &s, MassRatio mu)
{
    return 2.0 * effective_potential(s.position(), mu) - (s.vx * s.vx + s.vy * s.vy + s.vz * s.vz);
}

double hamiltonian(const Momenta6 &m, MassRatio mu)
{
    const Distances d = distances({m.x, m.y, m.z}, mu);
    return 0.5 * (m.px * m.px + m.py * m.py + m.pz * m.pz) + m.y * m.px - m.x * m.py - mu.large() / d.r1 -
           mu.small() / d.r2;
}

double locate_l1(MassRatio mu)
{
    if (!(mu.value() > 0.0)) {
        throw RangeError("L1 requires a positive mass ratio");
    }
    // dOmega/dX on the axis is strictly increasing between the primaries and
    // runs from -inf (next to P2) to +inf (next to P1).
    const auto slope = [&](double x) { return potential_gradient({x, 0.0, 0.0}, mu).x; };

    double lo = mu.value() - 1.0 + 1e-9;
    double hi = mu.value() - 1e-9;
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (slope(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 5; ++i) {
        const double f = slope(x);
        if (f == 0.0) {
            break;
        }
        const double step = f / potential_hessian({x, 0.0, 0.0}, mu).xx;
        x -= step;
        if (std::abs(step) < 1e-16) {
            break;
        }
    }
    return x;
}

State6 l1_state(MassRatio mu)
{
    return {locate_l1(mu), 0.0, 0.0, 0.0, 0.0, 0.0};
}

Frequencies linear_frequencies(MassRatio mu)
{
    const double x = locate_l1(mu);
    const PotentialHessian h = potential_hessian({x, 0.0, 0.0}, mu);

    // Planar block: s^2 + (4 - Oxx - Oyy) s + (Oxx Oyy - Oxy^2) = 0 with s = lambda^2.
    const double b = 4.0 - h.xx - h.yy;
    const double c = h.xx * h.yy - h.xy * h.xy;
    const double disc = b * b - 4.0 * c;
    if (!(c < 0.0) || !(disc > 0.0) || !(h.zz < 0.0)) {
        throw EigenstructureError("linearization at L1 is not saddle x center x center");
    }
    // Stable root pair: q carries the sign of -b so no cancellation occurs.
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    double s1 = q;
    double s2 = c / q;
    if (s1 < s2) {
        std::swap(s1, s2);
    }
    return {std::sqrt(s1), std::sqrt(-s2), std::sqrt(-h.zz)};
}

} // namespace ssmdrift::rtbp
