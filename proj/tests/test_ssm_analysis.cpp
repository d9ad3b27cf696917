#include "ssmdrift/angles.hpp"
#include "ssmdrift/errors.hpp"
#include "ssmdrift/ssm_analysis.hpp"
#include "ssmdrift/ssm_fit.hpp"
#include "ssmdrift/synth.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

using namespace ssmdrift;

namespace
{

const std::vector<double> kTori{1, 2, 3, 4, 5, 6, 7};

SSMModel flat_model(double w0 = 2.0, double slope = 0.05)
{
    return make_phase_shift_model(NewtonPoly({0.0, 1.0}, {w0, slope}));
}

// Largest |C_n(I)| = |A_n - i B_n| / 2 over a fine action grid.
double coefficient_size(const SSMModel &m)
{
    double c = 0.0;
    for (int k = 1; k <= 700; ++k) {
        const double I = m.domain_max * k / 700.0;
        for (const Harmonic &h : m.harmonics) {
            c = std::max(c, std::hypot(h.a(I), h.b(I)) / 2.0);
        }
    }
    return c;
}

double kam_residual(const SSMModel &m, double I0, int iterates)
{
    const KamCurve curve = kam_first_order(m, I0);
    double phi = 0.4;
    double I = curve(phi);
    double worst = 0.0;
    for (int k = 0; k < iterates; ++k) {
        const SMImage r = apply_sm(m, I, phi, 1e-14, 500);
        I = r.i_prime;
        phi = r.phi_prime;
        worst = std::max(worst, std::abs(I - curve(phi)));
    }
    return worst;
}

} // namespace

TEST(ApproximationError, FullDegreeFitIsExact)
{
    const ScatteringGrid grid = generate_grid(make_reference_model(), kTori, 128);
    const ErrorReport r = approximation_error(fit_ssm(grid, 4, 5), grid);
    EXPECT_LT(r.eps_I, 1e-8);
    EXPECT_LT(r.eps_phi, 1e-8);
    ASSERT_EQ(r.per_torus.size(), 7u);
    for (const TorusError &t : r.per_torus) {
        EXPECT_GE(t.eps_I, 0.0);
        EXPECT_LE(t.eps_I, r.eps_I);
    }
}

TEST(ApproximationError, TruncationIncreasesError)
{
    const SSMModel truth = make_reference_model();
    const ScatteringGrid grid = generate_grid(truth, kTori, 128);
    const double full = approximation_error(truth, grid).eps_I;
    const double cut = approximation_error(truncate_harmonics(truth, 2), grid).eps_I;
    const double none = approximation_error(truncate_harmonics(truth, 0), grid).eps_I;
    EXPECT_LT(full, cut);
    EXPECT_LT(cut, none);
}

TEST(PhaseShiftBounds, ZeroModelIsPointInterval)
{
    const SSMModel m = flat_model();
    const PhaseShiftBounds b = phase_shift_bounds(m, 3.0);
    EXPECT_EQ(b.lo, -m.omega(3.0));
    EXPECT_EQ(b.hi, -m.omega(3.0));
    EXPECT_THROW(phase_shift_bounds(m, 3.0, 32), RangeError);
}

TEST(PhaseShiftBounds, ContainActualShift)
{
    const SSMModel m = make_reference_model();
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> ui(0.1, 7.0), up(0.0, kTwoPi);
    for (int k = 0; k < 200; ++k) {
        const double I = ui(rng), phi = up(rng);
        // Dense sampling; the remaining slack covers the sampled maximum.
        const PhaseShiftBounds b = phase_shift_bounds(m, I, 1 << 16);
        const SMImage r = apply_sm(m, I, phi, 1e-13, 200);
        const double w = -m.omega(I);
        const double shift = w + angle_diff(r.phi_prime - phi, w);
        EXPECT_LE(b.lo, b.hi);
        EXPECT_GE(shift, b.lo - 1e-9);
        EXPECT_LE(shift, b.hi + 1e-9);
    }
}

TEST(PhaseShiftBounds, WideningNeverShrinks)
{
    const SSMModel m = make_reference_model();
    for (double I : {0.5, 2.0, 5.5}) {
        const PhaseShiftBounds a = phase_shift_bounds(m, I, 256);
        const PhaseShiftBounds b = phase_shift_bounds(m, I, 512);
        EXPECT_LE(b.lo, a.lo);
        EXPECT_GE(b.hi, a.hi);
    }
}

TEST(Twist, ZeroModelIsMinusOmegaSlope)
{
    EXPECT_DOUBLE_EQ(twist(flat_model(2.0, 0.05), 3.0, 1.0), -0.05);
}

TEST(Twist, MatchesFiniteDifferences)
{
    const SSMModel m = make_reference_model();
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> ui(0.3, 6.7), up(0.0, kTwoPi);
    const double h = 1e-5;
    for (int k = 0; k < 100; ++k) {
        const double I = ui(rng), phi = up(rng);
        const SMImage c = apply_sm(m, I, phi, 1e-13, 200);
        const SMImage a = apply_sm(m, I + h, phi, 1e-13, 200);
        const SMImage b = apply_sm(m, I - h, phi, 1e-13, 200);
        EXPECT_NEAR(twist(m, I, c.phi_prime), angle_diff(a.phi_prime, b.phi_prime) / (2 * h), 1e-4);
    }
}

TEST(Twist, SignConstantForReferenceModel)
{
    const SSMModel m = make_reference_model();
    int positive = 0, negative = 0;
    for (int i = 1; i <= 70; ++i) {
        for (int k = 0; k < 64; ++k) {
            (twist(m, 0.1 * i, kTwoPi * k / 64) > 0 ? positive : negative)++;
        }
    }
    EXPECT_TRUE(positive == 0 || negative == 0) << positive << " vs " << negative;
}

TEST(Twist, SingularDenominator)
{
    SSMModel m = flat_model();
    m.N = 2;
    m.L = 1;
    m.harmonics.push_back({2, NewtonPoly({0.0, 1.0}, {0.0, 1.0}), NewtonPoly({0.0, 1.0}, {0.0, 0.0})});
    m.validate();
    EXPECT_THROW(twist(m, 1.0, std::numbers::pi / 2), SingularityError);
}

TEST(Kam, ZeroCoefficients)
{
    const KamCurve c = kam_first_order(flat_model(), 2.0);
    EXPECT_TRUE(c.h.empty());
    EXPECT_EQ(c(1.3), 2.0);
    const KamCurve z = kam_first_order(scale_oscillation(make_reference_model(), 0.0), 2.0);
    for (const auto &h : z.h) {
        EXPECT_EQ(std::abs(h), 0.0);
    }
}

TEST(Kam, ResonanceNamesHarmonic)
{
    SSMModel m = scale_oscillation(make_reference_model(), 0.01);
    m.omega = NewtonPoly({0.0}, {std::numbers::pi});
    try {
        kam_first_order(m, 2.0);
        FAIL() << "expected ResonanceError";
    } catch (const ResonanceError &e) {
        EXPECT_EQ(e.harmonic(), 2);
    }
}

TEST(Kam, ResidualIsQuadraticInAmplitude)
{
    const SSMModel base = make_reference_model();
    const double r1 = kam_residual(scale_oscillation(base, 0.02), 1.3, 100);
    const double r2 = kam_residual(scale_oscillation(base, 0.01), 1.3, 100);
    const double r3 = kam_residual(scale_oscillation(base, 0.005), 1.3, 100);
    EXPECT_GE(r1 / r2, 3.0);
    EXPECT_LE(r1 / r2, 5.0);
    EXPECT_GE(r2 / r3, 3.0);
    EXPECT_LE(r2 / r3, 5.0);
}

TEST(LocateResonance, RoundTripInRange)
{
    const SSMModel m = make_reference_model();
    for (auto [p, q] : {std::pair{2, 3}, {5, 7}, {7, 10}, {9, 13}}) {
        const double I = locate_resonance(m, p, q);
        EXPECT_NEAR(m.omega(I) * q / (std::numbers::pi * p), 1.0, 1e-10) << p << "/" << q;
        EXPECT_GT(I, 0.0);
        EXPECT_LE(I, 7.0);
    }
    EXPECT_NEAR(locate_resonance(m, 2, 3), 2.4175, 1e-9);
}

TEST(LocateResonance, OutOfRange)
{
    const SSMModel m = make_reference_model();
    EXPECT_THROW(locate_resonance(m, 3, 4), RangeError);
    EXPECT_THROW(locate_resonance(m, 1, 2), RangeError);
    EXPECT_THROW(locate_resonance(m, 1, 0), RangeError);
}

TEST(PhasePortrait, ZeroModelKeepsActions)
{
    const Portrait p = phase_portrait(flat_model(), 10, 50);
    EXPECT_EQ(p.points.size(), 500u);
    std::map<int, double> level;
    for (const PortraitPoint &pt : p.points) {
        auto [it, fresh] = level.emplace(pt.orbit, pt.I);
        EXPECT_EQ(pt.I, it->second);
    }
    for (bool t : p.truncated) {
        EXPECT_FALSE(t);
    }
}

TEST(PhasePortrait, DefaultShapeAndDeterminism)
{
    const SSMModel m = make_reference_model();
    const Portrait a = phase_portrait(m);
    EXPECT_LE(a.points.size(), 100u * 1000u);
    EXPECT_EQ(a.truncated.size(), 100u);
    const Portrait b = phase_portrait(m);
    ASSERT_EQ(a.points.size(), b.points.size());
    for (std::size_t i = 0; i < a.points.size(); i += 997) {
        EXPECT_EQ(a.points[i].I, b.points[i].I);
        EXPECT_EQ(a.points[i].phi, b.points[i].phi);
    }
}

TEST(PhasePortrait, SmallOscillationOrbitsStayConfined)
{
    const SSMModel m = scale_oscillation(make_reference_model(), 0.01);
    const double c = coefficient_size(m);
    const Portrait p = phase_portrait(m, 30, 300);
    std::map<int, std::pair<double, double>> range;
    for (const PortraitPoint &pt : p.points) {
        auto [it, fresh] = range.emplace(pt.orbit, std::pair{pt.I, pt.I});
        it->second.first = std::min(it->second.first, pt.I);
        it->second.second = std::max(it->second.second, pt.I);
    }
    for (const auto &[orbit, r] : range) {
        if (p.truncated[static_cast<std::size_t>(orbit)]) {
            continue;
        }
        EXPECT_LT(r.second - r.first, 10.0 * c) << "orbit " << orbit;
    }
}
