#pragma once

#include "ssmdrift/scattering_grid.hpp"
#include "ssmdrift/ssm_model.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace ssmdrift
{

/// Exact model plus the sampling used to tabulate it.
struct GroundTruthSpec
{
    SSMModel model;
    std::vector<double> tori{1, 2, 3, 4, 5, 6, 7};
    std::size_t samples{128};
};

/// Validated copy of the ground-truth model.
SSMModel make_model(const GroundTruthSpec &spec);

/// Model with no oscillatory part and the given frequency.
SSMModel make_phase_shift_model(NewtonPoly omega, double domain_max = 7.0);

/// Single n = 2 harmonic, A_2(I) = 0.178180 I, B_2(I) = -0.097275 I.
SSMModel make_two_harmonic_model();

/// Deterministic N = 4, L = 5 model with a dominant n = 2 harmonic of the
/// size of the two-harmonic model, a small n = 4 term and an increasing
/// affine omega. Channel 1 and 2 differ in phase and frequency.
SSMModel make_reference_model(std::uint64_t seed = 2024, int channel = 1);

/// Copy with every A_n, B_n multiplied by `factor`.
SSMModel scale_oscillation(const SSMModel &m, double factor);

/// Copy keeping only harmonics n <= N.
SSMModel truncate_harmonics(const SSMModel &m, int N);

/// Forward tabulation: for equispaced phi' (starting at phase_offset in
/// [0, 2 pi / samples)) phi = phi' + omega(I) + dL~/dI and
/// I' = I + dL~/dphi', both explicit.
ScatteringGrid generate_grid(const SSMModel &m, std::span<const double> tori, std::size_t samples,
                             double phase_offset = 0.0);
ScatteringGrid generate_grid(const GroundTruthSpec &spec);

} // namespace ssmdrift
