#pragma once

#include <array>

namespace ssmdrift::rtbp
{

/// Sun-Earth mass parameter.
inline constexpr double kSunEarthMu = 3.040423398444176e-6;

/// Distance to a primary below which evaluations are rejected.
inline constexpr double kSingularityRadius = 1e-12;

/// Mass of the smaller primary in units of the total mass.
///
/// Primary positions follow the convention P1 = (mu, 0, 0) for the large
/// primary of mass 1 - mu and P2 = (mu - 1, 0, 0) for the small one, so the
/// Earth sits on the negative X axis. Many references use the mirrored
/// convention; states from them need X -> -X, Y -> -Y.
///
/// The degenerate values 0 (Kepler limit) and 1/2 (equal masses) are accepted
/// for evaluation of the field and integrals; `locate_l1` needs mu > 0.
class MassRatio
{
public:
    explicit MassRatio(double mu);

    double value() const noexcept { return mu_; }
    double large() const noexcept { return 1.0 - mu_; }
    double small() const noexcept { return mu_; }

private:
    double mu_;
};

struct Vec3
{
    double x{0.0};
    double y{0.0};
    double z{0.0};
};

/// Rotating-frame position and velocity.
struct State6
{
    double x{0.0};
    double y{0.0};
    double z{0.0};
    double vx{0.0};
    double vy{0.0};
    double vz{0.0};

    Vec3 position() const noexcept { return {x, y, z}; }
    std::array<double, 6> to_array() const noexcept { return {x, y, z, vx, vy, vz}; }
    static State6 from_array(const std::array<double, 6> &a) noexcept
    {
        return {a[0], a[1], a[2], a[3], a[4], a[5]};
    }
};

/// Position and canonical momenta: px = vx - y, py = vy + x, pz = vz.
struct Momenta6
{
    double x{0.0};
    double y{0.0};
    double z{0.0};
    double px{0.0};
    double py{0.0};
    double pz{0.0};
};

/// Linear frequencies at L1: eigenvalues are +-nu_h, +-i nu_p, +-i nu_v.
struct Frequencies
{
    double nu_h{0.0};
    double nu_p{0.0};
    double nu_v{0.0};
};

/// Second derivatives of the effective potential.
struct PotentialHessian
{
    double xx{0.0};
    double yy{0.0};
    double zz{0.0};
    double xy{0.0};
    double xz{0.0};
    double yz{0.0};
};

Momenta6 to_momenta(const State6 &s) noexcept;
State6 to_state(const Momenta6 &m) noexcept;

/// Omega = (X^2 + Y^2)/2 + (1 - mu)/r1 + mu/r2.
double effective_potential(const Vec3 &pos, MassRatio mu);
Vec3 potential_gradient(const Vec3 &pos, MassRatio mu);
PotentialHessian potential_hessian(const Vec3 &pos, MassRatio mu);

/// Time derivative of the state: (v, grad Omega + Coriolis).
State6 vector_field(const State6 &s, MassRatio mu);

/// C = 2 Omega - |v|^2.
double jacobi_constant(const State6 &s, MassRatio mu);

/// H = |p|^2/2 + Y px - X py - (1 - mu)/r1 - mu/r2; equals -C/2.
double hamiltonian(const Momenta6 &m, MassRatio mu);

/// X coordinate of the collinear equilibrium between the primaries.
double locate_l1(MassRatio mu);

/// Zero-velocity state at L1.
State6 l1_state(MassRatio mu);

/// Real rate and the two center frequencies of the linearization at L1.
Frequencies linear_frequencies(MassRatio mu);

} // namespace ssmdrift::rtbp
