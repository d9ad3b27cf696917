#include "ssmdrift/ssm_fit.hpp"

#include "ssmdrift/angles.hpp"
#include "ssmdrift/csv.hpp"
#include "ssmdrift/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ssmdrift
{

FourierCoefficients fit_fourier(std::span<const double> angles, std::span<const double> values)
{
    const std::size_t m = angles.size();
    if (m == 0 || values.size() != m) {
        throw FitError("fourier fit needs matching, non-empty sample arrays");
    }
    const std::size_t nmax = m / 2;
    FourierCoefficients f;
    f.a.assign(nmax + 1, 0.0);
    f.b.assign(nmax + 1, 0.0);

    for (std::size_t n = 0; n <= nmax; ++n) {
        double sa = 0.0, sb = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            const double x = static_cast<double>(n) * angles[k];
            sa += values[k] * std::cos(x);
            sb += values[k] * std::sin(x);
        }
        const bool edge = n == 0 || (m % 2 == 0 && n == nmax);
        const double scale = (edge ? 1.0 : 2.0) / static_cast<double>(m);
        f.a[n] = sa * scale;
        f.b[n] = n == 0 ? 0.0 : sb * scale;
    }
    return f;
}

FourierCoefficients fit_fourier_torus(const Torus &torus)
{
    std::vector<double> x, v;
    x.reserve(torus.samples.size());
    v.reserve(torus.samples.size());
    for (const ScatteringSample &s : torus.samples) {
        x.push_back(s.phi_prime);
        v.push_back(s.i_prime - torus.level);
    }
    return fit_fourier(x, v);
}

SSMModel fit_ssm(const ScatteringGrid &grid, int N, int L, FitDiagnostics *diag)
{
    grid.validate();
    if (N < 0 || L < 0) {
        throw FitError("fit degrees must be non-negative");
    }
    const auto needed = static_cast<std::size_t>(L) + 1;
    if (grid.tori.size() < needed) {
        throw FitError("degree L=" + std::to_string(L) + " needs at least " + std::to_string(needed) +
                       " tori, grid has " + std::to_string(grid.tori.size()));
    }
    for (const Torus &t : grid.tori) {
        if (static_cast<std::size_t>(N) > t.samples.size() / 2) {
            throw FitError("degree N=" + std::to_string(N) + " above Nyquist limit of torus I=" +
                           csv::format(t.level));
        }
    }

    FitDiagnostics d;
    const std::size_t harmonics = static_cast<std::size_t>(N / 2);

    // Per-torus DFT on the first L tori; the node I = 0 carries the value 0.
    std::vector<double> nodes{0.0};
    std::vector<std::vector<double>> a_vals(harmonics, std::vector<double>{0.0});
    std::vector<std::vector<double>> b_vals(harmonics, std::vector<double>{0.0});
    for (const Torus &t : grid.tori) {
        const FourierCoefficients f = fit_fourier_torus(t);
        d.mean_offset_max = std::max(d.mean_offset_max, std::abs(f.a[0]));
        for (std::size_t n = 1; n <= f.max_harmonic(); n += 2) {
            d.odd_harmonic_max = std::max({d.odd_harmonic_max, std::abs(f.a[n]), std::abs(f.b[n])});
        }
        if (nodes.size() < needed) {
            nodes.push_back(t.level);
            for (std::size_t h = 0; h < harmonics; ++h) {
                a_vals[h].push_back(f.a[2 * (h + 1)]);
                b_vals[h].push_back(f.b[2 * (h + 1)]);
            }
        }
    }

    SSMModel m;
    m.N = N;
    m.L = L;
    m.domain_max = grid.tori.back().level;
    for (std::size_t h = 0; h < harmonics; ++h) {
        Harmonic hh;
        hh.n = 2 * static_cast<int>(h + 1);
        hh.a = newton_interpolate(nodes, a_vals[h]);
        hh.b = newton_interpolate(nodes, b_vals[h]);
        m.harmonics.push_back(std::move(hh));
    }

    // omega per torus, using the completed oscillatory series.
    double previous = 0.0;
    for (std::size_t t = 0; t < needed; ++t) {
        const Torus &torus = grid.tori[t];
        std::vector<double> est;
        est.reserve(torus.samples.size());
        for (const ScatteringSample &s : torus.samples) {
            est.push_back(s.phi - s.phi_prime - eval_derivs(m, torus.level, s.phi_prime).d_dI);
        }
        const double ref = est.front();
        double sum = 0.0;
        for (double &e : est) {
            e = ref + angle_diff(e, ref);
            sum += e;
        }
        double mean = sum / static_cast<double>(est.size());
        for (double e : est) {
            d.omega_spread_max = std::max(d.omega_spread_max, std::abs(e - mean));
        }
        if (t == 0) {
            mean = wrap_two_pi(mean);
        } else {
            mean += kTwoPi * std::round((previous - mean) / kTwoPi);
        }
        previous = mean;
        d.omega_levels.push_back(torus.level);
        d.omega_values.push_back(mean);
    }
    m.omega = newton_interpolate(d.omega_levels, d.omega_values);
    m.meta = "fit N=" + std::to_string(N) + " L=" + std::to_string(L) + " tori=" +
             std::to_string(grid.tori.size()) + " samples=" + std::to_string(grid.sample_count());
    m.validate();

    if (diag) {
        *diag = std::move(d);
    }
    return m;
}

} // namespace ssmdrift
