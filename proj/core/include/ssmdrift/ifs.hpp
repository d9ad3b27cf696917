#pragma once

#include "ssmdrift/ssm_model.hpp"

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace ssmdrift
{

struct ActionAngle
{
    double action{0.0};
    double angle{0.0};

    friend bool operator==(const ActionAngle &, const ActionAngle &) = default;
};

/// Tabulated inner shift nu(I) and planar frequency nu_p(I), interpolated
/// piecewise linearly. Rows are sorted by I; nu strictly decreases and nu_p
/// stays inside (2.0, 2.2).
class InnerModel
{
public:
    struct Row
    {
        double I{0.0};
        double nu{0.0};
        double nu_p{0.0};
    };

    explicit InnerModel(std::vector<Row> rows);

    /// Approximate table: nu linear from 6.1054 to 6.0944 over I = 0..7 and
    /// nu_p = 2.0772.
    static InnerModel default_table();

    double nu(double I) const;
    double nu_p(double I) const;
    /// Linear continuation of nu past the table ends.
    double nu_extrapolated(double I) const noexcept;

    double min_action() const noexcept { return rows_.front().I; }
    double max_action() const noexcept { return rows_.back().I; }
    const std::vector<Row> &rows() const noexcept { return rows_; }

private:
    double interp(double I, double Row::*field, bool extrapolate) const;

    std::vector<Row> rows_;
};

/// Header `I,nu,nu_p`.
InnerModel parse_inner_model(std::istream &in);
InnerModel load_inner_model(const std::filesystem::path &path);
void write_inner_model(std::ostream &out, const InnerModel &im);

inline constexpr double kDefaultOuterTime = 6.000688;

/// 2 pi / nu_p. Throws RangeError when nu_p <= 0.
double inner_time(double nu_p);
double inner_time(const InnerModel &im, double I);

struct TimeModel
{
    InnerModel inner;
    double t_out{kDefaultOuterTime};

    explicit TimeModel(InnerModel im, double outer = kDefaultOuterTime);

    double t_in(double I) const { return inner_time(inner, I); }
};

/// (I, phi + nu(I) mod 2 pi) with I returned unchanged. RangeError outside
/// the table.
ActionAngle apply_inner(const InnerModel &im, ActionAngle p);

struct TransitionImage
{
    ActionAngle point;
    bool clipped{false};  ///< scattering image left through the top; final shift extrapolated
};

/// F after sigma after F. An input outside the inner table, a scattering
/// input outside (0, domain_max], or an image with I' <= 0 or below the
/// table raises DomainExitError tagged with the stage. Images above the
/// table are returned clipped.
TransitionImage apply_transition(const SSMModel &sigma, const InnerModel &im, ActionAngle p,
                                 double tol = 1e-5);

} // namespace ssmdrift
