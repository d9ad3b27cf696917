#include "ssmdrift/ssm_analysis.hpp"

#include "ssmdrift/angles.hpp"
#include "ssmdrift/csv.hpp"
#include "ssmdrift/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ssmdrift
{

namespace
{

constexpr int kDiagnosticMaxIter = 200;
constexpr int kResonanceScan = 2048;

} // namespace

ErrorReport approximation_error(const SSMModel &m, const ScatteringGrid &grid, double tol)
{
    if (grid.tori.empty()) {
        throw RangeError("approximation error needs a non-empty grid");
    }
    ErrorReport r;
    for (const Torus &t : grid.tori) {
        TorusError te{t.level, 0.0, 0.0};
        for (const ScatteringSample &s : t.samples) {
            const SMImage img = apply_sm(m, t.level, s.phi, tol, kDiagnosticMaxIter);
            te.eps_I = std::max(te.eps_I, std::abs(img.i_prime - s.i_prime));
            te.eps_phi = std::max(te.eps_phi, std::abs(angle_diff(img.phi_prime, s.phi_prime)));
        }
        r.eps_I = std::max(r.eps_I, te.eps_I);
        r.eps_phi = std::max(r.eps_phi, te.eps_phi);
        r.per_torus.push_back(te);
    }
    return r;
}

PhaseShiftBounds phase_shift_bounds(const SSMModel &m, double I, int n_samples)
{
    if (n_samples < 64) {
        throw RangeError("phase shift bounds need at least 64 samples");
    }
    double peak = 0.0;
    for (int k = 0; k < n_samples; ++k) {
        const double x = kTwoPi * k / n_samples;
        peak = std::max(peak, std::abs(eval_derivs(m, I, x).d_dI));
    }
    const double w = m.omega(I);
    return {-w - peak, -w + peak};
}

double twist(const SSMModel &m, double I, double phi_prime)
{
    const GeneratingTerms g = eval_derivs(m, I, phi_prime);
    const double den = 1.0 + g.d2_dphi_dI;
    if (std::abs(den) <= 1e-8) {
        throw SingularityError("twist denominator vanishes at I=" + csv::format(I));
    }
    return -(m.omega.jet(I).d1 + g.d2_dI2) / den;
}

double KamCurve::operator()(double phi) const
{
    double v = I0;
    for (std::size_t k = 0; k < n.size(); ++k) {
        v += 2.0 * (h[k] * std::polar(1.0, n[k] * phi)).real();
    }
    return v;
}

KamCurve kam_first_order(const SSMModel &m, double I0)
{
    KamCurve c;
    c.I0 = I0;
    c.omega0 = m.omega(I0);
    for (const Harmonic &hh : m.harmonics) {
        const std::complex<double> den = std::polar(1.0, hh.n * c.omega0) - 1.0;
        if (std::abs(den) <= 1e-6) {
            throw ResonanceError("resonant harmonic n=" + std::to_string(hh.n) + " at omega0=" +
                                     csv::format(c.omega0),
                                 hh.n);
        }
        const std::complex<double> cn(hh.a(I0) / 2.0, -hh.b(I0) / 2.0);
        c.n.push_back(hh.n);
        c.h.push_back(-cn / den);
    }
    return c;
}

double locate_resonance(const SSMModel &m, int p, int q)
{
    if (q <= 0) {
        throw RangeError("resonance denominator must be positive");
    }
    const double target = std::numbers::pi * p / q;
    const auto f = [&](double I) { return m.omega(I) - target; };
    const double lo = kMinAction;
    const double step = (m.domain_max - lo) / kResonanceScan;

    double a = lo, fa = f(a);
    for (int k = 1; k <= kResonanceScan; ++k) {
        const double b = k == kResonanceScan ? m.domain_max : lo + step * k;
        const double fb = f(b);
        if (fa == 0.0) {
            return a;
        }
        if ((fa < 0.0) != (fb < 0.0) || fb == 0.0) {
            if (fb == 0.0) {
                return b;
            }
            double x0 = a, x1 = b, f0 = fa;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (x0 + x1);
                if (mid <= x0 || mid >= x1) {
                    break;
                }
                const double fm = f(mid);
                if (fm == 0.0) {
                    return mid;
                }
                if ((fm < 0.0) == (f0 < 0.0)) {
                    x0 = mid;
                    f0 = fm;
                } else {
                    x1 = mid;
                }
            }
            return std::abs(f(x0)) <= std::abs(f(x1)) ? x0 : x1;
        }
        a = b;
        fa = fb;
    }
    throw RangeError("omega/pi = " + std::to_string(p) + "/" + std::to_string(q) +
                     " is not attained on (0, " + csv::format(m.domain_max) + "]");
}

Portrait phase_portrait(const SSMModel &m, int n_orbits, int n_iters, double phi0, double tol)
{
    if (n_orbits < 1 || n_iters < 1) {
        throw RangeError("portrait needs at least one orbit and one iterate");
    }
    Portrait p;
    p.truncated.assign(static_cast<std::size_t>(n_orbits), false);
    p.points.reserve(static_cast<std::size_t>(n_orbits) * static_cast<std::size_t>(n_iters));
    for (int o = 0; o < n_orbits; ++o) {
        double I = m.domain_max * (o + 0.5) / n_orbits;
        double phi = wrap_two_pi(phi0);
        p.points.push_back({o, 0, I, phi});
        for (int k = 1; k < n_iters; ++k) {
            const SMImage img = apply_sm(m, I, phi, tol);
            I = img.i_prime;
            phi = img.phi_prime;
            if (!(I > kMinAction) || !(I <= m.domain_max)) {
                p.truncated[static_cast<std::size_t>(o)] = true;
                break;
            }
            p.points.push_back({o, k, I, phi});
        }
    }
    return p;
}

} // namespace ssmdrift
