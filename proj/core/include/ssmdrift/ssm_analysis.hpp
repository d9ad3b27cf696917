#pragma once

#include "ssmdrift/scattering_grid.hpp"
#include "ssmdrift/ssm_model.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace ssmdrift
{

struct TorusError
{
    double level{0.0};
    double eps_I{0.0};
    double eps_phi{0.0};
};

struct ErrorReport
{
    double eps_I{0.0};
    double eps_phi{0.0};
    std::vector<TorusError> per_torus;
};

/// Largest |I'_model - I'_grid| and |phi'_model - phi'_grid| (angles compared
/// mod 2 pi) over every grid sample.
ErrorReport approximation_error(const SSMModel &m, const ScatteringGrid &grid, double tol = 1e-9);

struct PhaseShiftBounds
{
    double lo{0.0};
    double hi{0.0};
};

/// -omega(I) -/+ max |dL~/dI(I, .)| with the max over `n_samples`
/// equispaced angles (n_samples >= 64).
PhaseShiftBounds phase_shift_bounds(const SSMModel &m, double I, int n_samples = 256);

/// d phi'/d I of the scattering map at fixed phi:
///     -(omega'(I) + d2L~/dI2) / (1 + d2L~/dphi'dI).
/// Throws SingularityError when the denominator is within 1e-8 of zero.
double twist(const SSMModel &m, double I, double phi_prime);

/// First-order invariant curve I = I0 + sum_{n != 0} h_n exp(i n phi).
struct KamCurve
{
    double I0{0.0};
    double omega0{0.0};
    std::vector<int> n;                       ///< positive harmonics
    std::vector<std::complex<double>> h;      ///< h_n; h_{-n} is the conjugate

    double operator()(double phi) const;
};

/// h_n = -C_n / (exp(i n omega0) - 1), C_n = (A_n - i B_n) / 2 at I0.
/// Throws ResonanceError naming n when |exp(i n omega0) - 1| <= 1e-6.
KamCurve kam_first_order(const SSMModel &m, double I0);

/// Action where omega(I) = pi p / q, by sign-change scan over
/// (0, domain_max] and bisection. Throws RangeError when p/q is not
/// attained.
double locate_resonance(const SSMModel &m, int p, int q);

struct PortraitPoint
{
    int orbit{0};
    int iterate{0};
    double I{0.0};
    double phi{0.0};
};

struct Portrait
{
    std::vector<PortraitPoint> points;
    std::vector<bool> truncated;  ///< per orbit: left (0, domain_max] early
};

/// Orbits of the scattering map started at phi = phi0 and actions
/// equidistributed over (0, domain_max) (cell midpoints). Each orbit
/// contributes its initial point as iterate 0 and at most n_iters rows.
Portrait phase_portrait(const SSMModel &m, int n_orbits = 100, int n_iters = 1000, double phi0 = 0.0,
                        double tol = 1e-5);

} // namespace ssmdrift
