#pragma once

#include "ssmdrift/scattering_grid.hpp"
#include "ssmdrift/ssm_model.hpp"

#include <span>
#include <vector>

namespace ssmdrift
{

/// Real Fourier coefficients of samples v_k taken at angles x_k:
///     v(x) ~ a[0] + sum_{n>=1} a[n] cos(n x) + b[n] sin(n x),  n <= M/2.
/// Index 0 of `b` is unused.
struct FourierCoefficients
{
    std::vector<double> a;
    std::vector<double> b;

    std::size_t max_harmonic() const noexcept { return a.empty() ? 0 : a.size() - 1; }
};

/// DFT of samples at equispaced angles. Sums run over the given angles, so
/// a constant offset of the abscissae is handled exactly.
FourierCoefficients fit_fourier(std::span<const double> angles, std::span<const double> values);

/// Coefficients of I' - I over phi' on one torus.
FourierCoefficients fit_fourier_torus(const Torus &torus);

struct FitDiagnostics
{
    double odd_harmonic_max{0.0};  ///< largest |A_n|, |B_n| with n odd before zeroing
    double mean_offset_max{0.0};   ///< largest |mean(I' - I)| over tori
    double omega_spread_max{0.0};  ///< largest |per-sample omega - torus mean|
    std::vector<double> omega_levels;
    std::vector<double> omega_values;
};

/// Fit an SSM with even harmonics 2..N and Newton degree L.
///
/// A_n, B_n interpolate the per-torus DFT over the nodes {0, I_1, ..., I_L}
/// (value 0 at I = 0). omega interpolates the per-torus averages of
/// phi - phi' - dL~/dI over the levels I_1..I_{L+1}.
///
/// Throws FitError when fewer than L+1 tori are present, N exceeds the
/// Nyquist limit of some torus, or the degrees are negative.
SSMModel fit_ssm(const ScatteringGrid &grid, int N, int L, FitDiagnostics *diag = nullptr);

} // namespace ssmdrift
