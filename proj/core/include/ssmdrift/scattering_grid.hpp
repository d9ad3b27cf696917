#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace ssmdrift
{

/// One tabulated image (I, phi) -> (I', phi') on a torus of fixed I.
struct ScatteringSample
{
    double phi{0.0};
    double phi_prime{0.0};
    double i_prime{0.0};
};

/// Samples of one torus; phi' runs equispaced over one period.
struct Torus
{
    double level{0.0};  ///< scaled action I = 1000 J
    std::vector<ScatteringSample> samples;
};

/// Tabulated scattering map, one torus per action level, sorted by level.
///
/// Invariants (checked by `validate`): at least one torus; levels positive
/// and strictly increasing; per torus a power-of-two sample count with
/// phi' strictly increasing in steps of 2 pi / M (to 1e-9) starting in
/// [0, 2 pi / M).
struct ScatteringGrid
{
    std::vector<Torus> tori;

    void validate() const;
    std::size_t sample_count() const;
};

/// Parse the CSV format `I,phi,I_prime,phi_prime` (header required, tori
/// grouped by I). Throws ParseError (with line number) or InvariantError.
ScatteringGrid parse_grid(std::istream &in);
ScatteringGrid load_grid(const std::filesystem::path &path);

/// Write with 17 significant digits; `load_grid` of the output reproduces
/// the grid exactly.
void write_grid(std::ostream &out, const ScatteringGrid &grid);
void save_grid(const std::filesystem::path &path, const ScatteringGrid &grid);

} // namespace ssmdrift
