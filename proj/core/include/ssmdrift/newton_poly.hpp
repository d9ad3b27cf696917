#pragma once

#include <span>
#include <vector>

namespace ssmdrift
{

/// Polynomial in Newton form
///
///     p(x) = sum_l c_l N_l(x),   N_0 = 1,   N_l(x) = prod_{i<l} (x - x_i),
///
/// where c_l are the divided differences over the nodes x_0..x_L. Evaluation
/// and differentiation run directly on the nested form; the polynomial is
/// never converted to monomial coefficients.
class NewtonPoly
{
public:
    /// Value and first two derivatives at a point.
    struct Jet
    {
        double value{0.0};
        double d1{0.0};
        double d2{0.0};
    };

    /// The zero polynomial (single node at 0).
    NewtonPoly();

    /// Takes nodes and divided differences of equal length (>= 1).
    NewtonPoly(std::vector<double> nodes, std::vector<double> divided_differences);

    double operator()(double x) const noexcept;
    Jet jet(double x) const noexcept;

    std::size_t degree() const noexcept { return coeffs_.size() - 1; }
    const std::vector<double> &nodes() const noexcept { return nodes_; }
    const std::vector<double> &coefficients() const noexcept { return coeffs_; }

    friend bool operator==(const NewtonPoly &, const NewtonPoly &) = default;

private:
    std::vector<double> nodes_;
    std::vector<double> coeffs_;
};

/// Divided-difference table for interpolation through (nodes[i], values[i]).
/// Throws FitError on duplicate or non-finite nodes.
NewtonPoly newton_interpolate(std::span<const double> nodes, std::span<const double> values);

} // namespace ssmdrift
