#include "ssmdrift/synth.hpp"

#include "ssmdrift/angles.hpp"
#include "ssmdrift/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace ssmdrift
{

namespace
{

// Portable uniform draw in [-1, 1): the 53 high bits of a 64-bit Mersenne
// twister output, so every platform produces the same model.
double symmetric_draw(std::mt19937_64 &rng)
{
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return 2.0 * u - 1.0;
}

NewtonPoly affine_omega(double at_zero, double slope, const std::vector<double> &nodes)
{
    std::vector<double> dd(nodes.size(), 0.0);
    dd[0] = at_zero + slope * nodes[0];
    if (dd.size() > 1) {
        dd[1] = slope;
    }
    return NewtonPoly(nodes, std::move(dd));
}

NewtonPoly scaled(const NewtonPoly &p, double factor)
{
    std::vector<double> dd = p.coefficients();
    for (double &c : dd) {
        c *= factor;
    }
    return NewtonPoly(p.nodes(), std::move(dd));
}

} // namespace

SSMModel make_model(const GroundTruthSpec &spec)
{
    SSMModel m = spec.model;
    m.validate();
    return m;
}

SSMModel make_phase_shift_model(NewtonPoly omega, double domain_max)
{
    SSMModel m;
    m.N = 0;
    m.L = static_cast<int>(omega.degree());
    m.omega = std::move(omega);
    m.domain_max = domain_max;
    m.meta = "phase shift";
    m.validate();
    return m;
}

SSMModel make_two_harmonic_model()
{
    SSMModel m;
    m.N = 2;
    m.L = 1;
    m.harmonics.push_back({2, NewtonPoly({0.0, 1.0}, {0.0, 0.178180}), NewtonPoly({0.0, 1.0}, {0.0, -0.097275})});
    const double slope = (2.0 / 3.0 - 0.630128) * std::numbers::pi / 2.4175;
    m.omega = affine_omega(0.630128 * std::numbers::pi, slope, {0.0, 1.0});
    m.meta = "two-harmonic";
    m.validate();
    return m;
}

SSMModel make_reference_model(std::uint64_t seed, int channel)
{
    if (channel != 1 && channel != 2) {
        throw RangeError("synthetic channel must be 1 or 2");
    }
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(channel));
    const std::vector<double> nodes{0, 1, 2, 3, 4, 5};
    const std::vector<double> levels{1, 2, 3, 4, 5, 6};

    // Leading divided differences of the n = 2 harmonic.
    double a1 = 0.178180, b1 = -0.097275, a2 = -0.008, b2 = 0.004;
    if (channel == 2) {
        a1 = 0.17 * std::cos(1.2);
        b1 = 0.17 * std::sin(1.2);
        a2 = 0.006;
        b2 = -0.006;
    }
    auto tail = [&](double c1, double c2, double scale) {
        std::vector<double> dd{0.0, c1, c2};
        for (int l = 3; l <= 5; ++l) {
            scale *= 0.1;
            dd.push_back(scale * symmetric_draw(rng));
        }
        return NewtonPoly(nodes, std::move(dd));
    };

    SSMModel m;
    m.N = 4;
    m.L = 5;
    m.harmonics.push_back({2, tail(a1, a2, 2e-3), tail(b1, b2, 2e-3)});
    const double a4 = 1e-3 * symmetric_draw(rng);
    const double b4 = 1e-3 * symmetric_draw(rng);
    m.harmonics.push_back({4, tail(a4, 1e-4 * symmetric_draw(rng), 1e-4), tail(b4, 1e-4 * symmetric_draw(rng), 1e-4)});
    if (channel == 1) {
        const double at_zero = 0.630128 * std::numbers::pi;
        m.omega = affine_omega(at_zero, (2.0 * std::numbers::pi / 3.0 - at_zero) / 2.4175, levels);
    } else {
        m.omega = affine_omega(2.4, 0.06, levels);
    }
    m.meta = "synthetic channel " + std::to_string(channel) + " seed " + std::to_string(seed);
    m.validate();
    return m;
}

SSMModel scale_oscillation(const SSMModel &m, double factor)
{
    SSMModel r = m;
    for (Harmonic &h : r.harmonics) {
        h.a = scaled(h.a, factor);
        h.b = scaled(h.b, factor);
    }
    return r;
}

SSMModel truncate_harmonics(const SSMModel &m, int N)
{
    SSMModel r = m;
    r.N = std::min(m.N, std::max(N, 0));
    r.harmonics.resize(static_cast<std::size_t>(r.N / 2));
    r.N = 2 * static_cast<int>(r.harmonics.size());
    r.validate();
    return r;
}

ScatteringGrid generate_grid(const SSMModel &m, std::span<const double> tori, std::size_t samples,
                             double phase_offset)
{
    const double step = kTwoPi / static_cast<double>(samples);
    ScatteringGrid g;
    for (double level : tori) {
        if (!(level > kMinAction) || level > m.domain_max) {
            throw RangeError("torus level outside the model domain");
        }
        Torus t{level, {}};
        t.samples.reserve(samples);
        const double w = m.omega(level);
        for (std::size_t k = 0; k < samples; ++k) {
            const double pp = phase_offset + step * static_cast<double>(k);
            const GeneratingTerms d = eval_derivs(m, level, pp);
            t.samples.push_back({wrap_two_pi(pp + w + d.d_dI), pp, level + d.d_dphi});
        }
        g.tori.push_back(std::move(t));
    }
    g.validate();
    return g;
}

ScatteringGrid generate_grid(const GroundTruthSpec &spec)
{
    return generate_grid(make_model(spec), spec.tori, spec.samples);
}

} // namespace ssmdrift
