#pragma once

#include "ssmdrift/newton_poly.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace ssmdrift
{

/// Coefficient pair of harmonic n as polynomials in I.
struct Harmonic
{
    int n{2};
    NewtonPoly a;  ///< A_n(I), multiplies cos(n phi')
    NewtonPoly b;  ///< B_n(I), multiplies sin(n phi')

    friend bool operator==(const Harmonic &, const Harmonic &) = default;
};

/// Scattering map given by the generating function
///
///     L(I, phi') = I phi' + Omega(I) + sum_n [ -B_n(I)/n cos(n phi') + A_n(I)/n sin(n phi') ]
///
/// with omega = Omega'. Only even harmonics 2, 4, ..., N are stored and
/// every A_n, B_n vanishes at I = 0.
struct SSMModel
{
    int N{0};
    int L{0};
    std::vector<Harmonic> harmonics;  ///< n = 2, 4, ..., N in order
    NewtonPoly omega;
    double domain_max{7.0};
    std::string meta;

    /// Throws InvariantError on odd or missing harmonics, degree above L,
    /// nonzero value at I = 0, or a non-positive domain.
    void validate() const;

    friend bool operator==(const SSMModel &, const SSMModel &) = default;
};

/// Oscillatory part of the generating function and its derivatives.
struct GeneratingTerms
{
    double value{0.0};
    double d_dphi{0.0};
    double d_dI{0.0};
    double d2_dI2{0.0};
    double d2_dphi_dI{0.0};
};

GeneratingTerms eval_derivs(const SSMModel &m, double I, double phi_prime);

/// Smallest action accepted by `apply_sm`.
inline constexpr double kMinAction = 1e-9;

struct SMImage
{
    double i_prime{0.0};
    double phi_prime{0.0};  ///< in [0, 2 pi)
    int iterations{0};
};

/// Solve phi = phi' + omega(I) + dL~/dI(I, phi') by fixed point iteration from
/// phi' = phi - omega(I), stopping once successive iterates differ by less
/// than `tol`; then I' = I + dL~/dphi'(I, phi').
///
/// Throws RangeError for I outside (kMinAction, domain_max] and
/// ConvergenceError after `max_iter` iterations.
SMImage apply_sm(const SSMModel &m, double I, double phi, double tol = 1e-5, int max_iter = 50);

/// Text serialization, exact round trip (17 significant digits).
void write_model(std::ostream &out, const SSMModel &m);
SSMModel parse_model(std::istream &in);
SSMModel load_model(const std::filesystem::path &path);
void save_model(const std::filesystem::path &path, const SSMModel &m);

} // namespace ssmdrift
