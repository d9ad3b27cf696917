#include "ssmdrift/scattering_grid.hpp"

#include "ssmdrift/angles.hpp"
#include "ssmdrift/csv.hpp"
#include "ssmdrift/errors.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace ssmdrift
{

namespace
{

constexpr std::string_view kHeader = "I,phi,I_prime,phi_prime";
constexpr double kSpacingTol = 1e-9;

std::string torus_name(std::size_t index, double level)
{
    return "torus #" + std::to_string(index) + " (I=" + csv::format(level) + ")";
}

} // namespace

void ScatteringGrid::validate() const
{
    if (tori.empty()) {
        throw InvariantError("scattering grid has no tori");
    }
    for (std::size_t t = 0; t < tori.size(); ++t) {
        const Torus &torus = tori[t];
        const std::string name = torus_name(t, torus.level);
        if (!(torus.level > 0.0) || !std::isfinite(torus.level)) {
            throw InvariantError(name + ": action level must be positive");
        }
        if (t > 0 && !(torus.level > tori[t - 1].level)) {
            throw InvariantError(name + ": tori must be sorted by strictly increasing I");
        }
        const std::size_t m = torus.samples.size();
        if (m < 2 || !std::has_single_bit(m)) {
            throw InvariantError(name + ": sample count " + std::to_string(m) + " is not a power of two >= 2");
        }
        const double step = kTwoPi / static_cast<double>(m);
        const double first = torus.samples.front().phi_prime;
        if (!(first >= -kSpacingTol && first < step + kSpacingTol)) {
            throw InvariantError(name + ": first phi_prime must lie in [0, 2pi/M)");
        }
        for (std::size_t k = 0; k < m; ++k) {
            const ScatteringSample &s = torus.samples[k];
            if (!std::isfinite(s.phi) || !std::isfinite(s.phi_prime) || !std::isfinite(s.i_prime)) {
                throw InvariantError(name + ": non-finite sample");
            }
            if (k > 0 && std::abs(s.phi_prime - torus.samples[k - 1].phi_prime - step) > kSpacingTol) {
                throw InvariantError(name + ": phi_prime not equispaced at sample " + std::to_string(k));
            }
        }
    }
}

std::size_t ScatteringGrid::sample_count() const
{
    std::size_t n = 0;
    for (const Torus &t : tori) {
        n += t.samples.size();
    }
    return n;
}

ScatteringGrid parse_grid(std::istream &in)
{
    ScatteringGrid grid;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;

    while (std::getline(in, line)) {
        ++line_no;
        if (csv::is_skippable(line)) {
            continue;
        }
        const auto fields = csv::split(line);
        if (!have_header) {
            std::string joined;
            for (std::size_t i = 0; i < fields.size(); ++i) {
                joined += (i ? "," : "");
                joined += fields[i];
            }
            if (joined != kHeader) {
                throw ParseError("expected header '" + std::string(kHeader) + "'", line_no);
            }
            have_header = true;
            continue;
        }
        if (fields.size() != 4) {
            throw ParseError("expected 4 fields, got " + std::to_string(fields.size()), line_no);
        }
        const double level = csv::parse_double(fields[0], line_no);
        ScatteringSample s;
        s.phi = csv::parse_double(fields[1], line_no);
        s.i_prime = csv::parse_double(fields[2], line_no);
        s.phi_prime = csv::parse_double(fields[3], line_no);

        if (grid.tori.empty() || grid.tori.back().level != level) {
            if (!grid.tori.empty() && level < grid.tori.back().level) {
                throw InvariantError("line " + std::to_string(line_no) + ": tori must be grouped and sorted by I");
            }
            grid.tori.push_back(Torus{level, {}});
        }
        grid.tori.back().samples.push_back(s);
    }
    if (!have_header) {
        throw ParseError("missing header '" + std::string(kHeader) + "'", line_no);
    }
    grid.validate();
    return grid;
}

ScatteringGrid load_grid(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open grid file '" + path.string() + "'", 0);
    }
    return parse_grid(in);
}

void write_grid(std::ostream &out, const ScatteringGrid &grid)
{
    out << kHeader << '\n';
    for (const Torus &t : grid.tori) {
        const std::string level = csv::format(t.level);
        for (const ScatteringSample &s : t.samples) {
            out << level << ',' << csv::format(s.phi) << ',' << csv::format(s.i_prime) << ','
                << csv::format(s.phi_prime) << '\n';
        }
    }
}

void save_grid(const std::filesystem::path &path, const ScatteringGrid &grid)
{
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write grid file '" + path.string() + "'");
    }
    write_grid(out, grid);
}

} // namespace ssmdrift
