#include "ssmdrift/angles.hpp"
#include "ssmdrift/errors.hpp"
#include "ssmdrift/ssm_model.hpp"
#include "ssmdrift/synth.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace ssmdrift;

namespace
{

SSMModel flat_model()
{
    return make_phase_shift_model(NewtonPoly({0.0, 1.0}, {2.0, 0.05}));
}

// Area factor of the map (I, phi) -> (I', phi') by central differences.
double jacobian_det(const SSMModel &m, double I, double phi, double h)
{
    const double tol = 1e-12;
    const SMImage ip = apply_sm(m, I + h, phi, tol, 200);
    const SMImage im = apply_sm(m, I - h, phi, tol, 200);
    const SMImage pp = apply_sm(m, I, phi + h, tol, 200);
    const SMImage pm = apply_sm(m, I, phi - h, tol, 200);
    const double dI_dI = (ip.i_prime - im.i_prime) / (2 * h);
    const double dI_dphi = (pp.i_prime - pm.i_prime) / (2 * h);
    const double dphi_dI = angle_diff(ip.phi_prime, im.phi_prime) / (2 * h);
    const double dphi_dphi = angle_diff(pp.phi_prime, pm.phi_prime) / (2 * h);
    return dI_dI * dphi_dphi - dI_dphi * dphi_dI;
}

} // namespace

TEST(SSMModel, ValidateCatchesBrokenInvariants)
{
    SSMModel m = make_reference_model();
    EXPECT_NO_THROW(m.validate());

    SSMModel odd = m;
    odd.harmonics[0].n = 1;
    EXPECT_THROW(odd.validate(), InvariantError);

    SSMModel origin = m;
    origin.harmonics[1].a = NewtonPoly({0.0, 1.0}, {1e-3, 0.0});
    EXPECT_THROW(origin.validate(), InvariantError);

    SSMModel degree = m;
    degree.L = 2;
    EXPECT_THROW(degree.validate(), InvariantError);

    SSMModel missing = m;
    missing.harmonics.pop_back();
    EXPECT_THROW(missing.validate(), InvariantError);
}

TEST(EvalDerivs, ZeroModel)
{
    const SSMModel m = flat_model();
    const GeneratingTerms g = eval_derivs(m, 2.0, 1.0);
    EXPECT_EQ(g.value, 0.0);
    EXPECT_EQ(g.d_dphi, 0.0);
    EXPECT_EQ(g.d_dI, 0.0);
    EXPECT_EQ(g.d2_dI2, 0.0);
    EXPECT_EQ(g.d2_dphi_dI, 0.0);
}

TEST(EvalDerivs, TwoHarmonicValueAtOrigin)
{
    EXPECT_NEAR(eval_derivs(make_two_harmonic_model(), 1.0, 0.0).d_dphi, 0.178180, 1e-15);
}

TEST(EvalDerivs, MatchFiniteDifferences)
{
    const SSMModel m = make_reference_model();
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> ui(0.3, 6.7), up(0.0, kTwoPi);
    const double h = 1e-6;
    for (int k = 0; k < 200; ++k) {
        const double I = ui(rng), p = up(rng);
        const GeneratingTerms g = eval_derivs(m, I, p);
        EXPECT_NEAR(g.d_dI, (eval_derivs(m, I + h, p).value - eval_derivs(m, I - h, p).value) / (2 * h), 1e-8);
        EXPECT_NEAR(g.d_dphi, (eval_derivs(m, I, p + h).value - eval_derivs(m, I, p - h).value) / (2 * h), 1e-8);
        EXPECT_NEAR(g.d2_dI2, (eval_derivs(m, I + h, p).d_dI - eval_derivs(m, I - h, p).d_dI) / (2 * h), 1e-8);
        EXPECT_NEAR(g.d2_dphi_dI, (eval_derivs(m, I + h, p).d_dphi - eval_derivs(m, I - h, p).d_dphi) / (2 * h),
                    1e-8);
    }
}

TEST(EvalDerivs, OscillatoryPartHasZeroMeanSlope)
{
    const SSMModel m = make_reference_model();
    for (double I : {0.5, 2.0, 6.5}) {
        double sum = 0.0;
        const int n = 256;
        for (int k = 0; k < n; ++k) {
            sum += eval_derivs(m, I, kTwoPi * k / n).d_dphi;
        }
        EXPECT_NEAR(sum / n, 0.0, 1e-15);
    }
}

TEST(ApplySm, PurePhaseShiftConvergesInOneIteration)
{
    const SSMModel m = flat_model();
    const SMImage r = apply_sm(m, 3.0, 1.0);
    EXPECT_EQ(r.iterations, 1);
    EXPECT_EQ(r.i_prime, 3.0);
    EXPECT_NEAR(r.phi_prime, wrap_two_pi(1.0 - m.omega(3.0)), 1e-15);
}

TEST(ApplySm, TwoHarmonicOscillationAtUnitAction)
{
    const SSMModel m = make_two_harmonic_model();
    double lo = 1e9, hi = -1e9;
    for (int k = 0; k < 4096; ++k) {
        const double ip = apply_sm(m, 1.0, kTwoPi * k / 4096, 1e-12, 200).i_prime;
        lo = std::min(lo, ip);
        hi = std::max(hi, ip);
    }
    EXPECT_NEAR((hi - lo) / 2.0, 0.203003, 1e-6);
}

TEST(ApplySm, InvertsExplicitForwardMap)
{
    const SSMModel m = make_reference_model();
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> ui(0.2, 7.0), up(0.0, kTwoPi);
    for (int k = 0; k < 500; ++k) {
        const double I = ui(rng), pp = up(rng);
        const GeneratingTerms g = eval_derivs(m, I, pp);
        const double phi = pp + m.omega(I) + g.d_dI;
        const SMImage r = apply_sm(m, I, phi);
        EXPECT_LE(std::abs(angle_diff(r.phi_prime, pp)), 1e-5);
        EXPECT_LE(std::abs(r.i_prime - (I + g.d_dphi)), 1e-4);
    }
}

TEST(ApplySm, PiPeriodicity)
{
    const SSMModel m = make_reference_model();
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> ui(0.2, 7.0), up(0.0, kTwoPi);
    for (int k = 0; k < 100; ++k) {
        const double I = ui(rng), phi = up(rng);
        const SMImage a = apply_sm(m, I, phi, 1e-13, 200);
        const SMImage b = apply_sm(m, I, phi + std::numbers::pi, 1e-13, 200);
        EXPECT_NEAR(b.i_prime, a.i_prime, 1e-12);
        EXPECT_NEAR(angle_diff(b.phi_prime, a.phi_prime + std::numbers::pi), 0.0, 1e-12);
    }
}

TEST(ApplySm, AreaPreserving)
{
    const SSMModel m = make_reference_model();
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> ui(0.2, 6.8), up(0.0, kTwoPi);
    for (int k = 0; k < 100; ++k) {
        EXPECT_NEAR(jacobian_det(m, ui(rng), up(rng), 1e-6), 1.0, 1e-5);
    }
}

TEST(ApplySm, DomainAndConvergenceErrors)
{
    const SSMModel m = make_reference_model();
    EXPECT_THROW(apply_sm(m, 0.0, 1.0), RangeError);
    EXPECT_THROW(apply_sm(m, 1e-10, 1.0), RangeError);
    EXPECT_THROW(apply_sm(m, 7.5, 1.0), RangeError);
    EXPECT_THROW(apply_sm(m, 3.0, 1.0, 1e-5, 1), ConvergenceError);
    // A strongly sheared model has no contraction.
    const SSMModel wild = scale_oscillation(m, 40.0);
    EXPECT_THROW(apply_sm(wild, 6.0, 0.3), ConvergenceError);
}

TEST(ModelIo, ExactRoundTrip)
{
    const SSMModel m = make_reference_model(99, 2);
    std::ostringstream os;
    write_model(os, m);
    std::istringstream is(os.str());
    const SSMModel back = parse_model(is);
    EXPECT_EQ(back, m);
    std::ostringstream again;
    write_model(again, back);
    EXPECT_EQ(again.str(), os.str());
}

TEST(ModelIo, Rejections)
{
    std::istringstream junk("hello\n");
    EXPECT_THROW(parse_model(junk), ParseError);
    std::istringstream incomplete("ssmdrift-model,1\nN,2\nL,1\nomega,1,0,2\nA,2,2,0,1,0,0.1\n");
    EXPECT_THROW(parse_model(incomplete), ParseError);
    std::istringstream odd("ssmdrift-model,1\nN,2\nL,1\nomega,1,0,2\nA,3,2,0,1,0,0.1\n");
    EXPECT_THROW(parse_model(odd), ParseError);
    EXPECT_THROW(load_model("/nonexistent/model.txt"), ParseError);
}
