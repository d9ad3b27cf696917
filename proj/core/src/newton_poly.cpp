#include "ssmdrift/newton_poly.hpp"

#include "ssmdrift/errors.hpp"

#include <cmath>
#include <string>

namespace ssmdrift
{

NewtonPoly::NewtonPoly() : nodes_{0.0}, coeffs_{0.0} {}

NewtonPoly::NewtonPoly(std::vector<double> nodes, std::vector<double> divided_differences)
    : nodes_(std::move(nodes)), coeffs_(std::move(divided_differences))
{
    if (nodes_.empty() || nodes_.size() != coeffs_.size()) {
        throw FitError("Newton polynomial needs matching, non-empty node and coefficient lists");
    }
}

double NewtonPoly::operator()(double x) const noexcept
{
    double p = coeffs_.back();
    for (std::size_t l = coeffs_.size() - 1; l-- > 0;) {
        p = p * (x - nodes_[l]) + coeffs_[l];
    }
    return p;
}

NewtonPoly::Jet NewtonPoly::jet(double x) const noexcept
{
    // Nested evaluation with the product rule carried along:
    // p <- p (x - x_l) + c_l, p' <- p' (x - x_l) + p, p'' <- p'' (x - x_l) + 2 p'.
    double p = coeffs_.back();
    double d1 = 0.0;
    double d2 = 0.0;
    for (std::size_t l = coeffs_.size() - 1; l-- > 0;) {
        const double u = x - nodes_[l];
        d2 = d2 * u + 2.0 * d1;
        d1 = d1 * u + p;
        p = p * u + coeffs_[l];
    }
    return {p, d1, d2};
}

NewtonPoly newton_interpolate(std::span<const double> nodes, std::span<const double> values)
{
    if (nodes.empty() || nodes.size() != values.size()) {
        throw FitError("interpolation needs matching, non-empty node and value lists");
    }
    const std::size_t n = nodes.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(nodes[i]) || !std::isfinite(values[i])) {
            throw FitError("non-finite interpolation data at index " + std::to_string(i));
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (nodes[i] == nodes[j]) {
                throw FitError("duplicate interpolation node " + std::to_string(nodes[i]));
            }
        }
    }

    std::vector<double> table(values.begin(), values.end());
    for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t i = n - 1; i >= k; --i) {
            table[i] = (table[i] - table[i - 1]) / (nodes[i] - nodes[i - k]);
        }
    }
    return NewtonPoly(std::vector<double>(nodes.begin(), nodes.end()), std::move(table));
}

} // namespace ssmdrift
