#include "ssmdrift/ifs.hpp"

#include "ssmdrift/angles.hpp"
#include "ssmdrift/csv.hpp"
#include "ssmdrift/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace ssmdrift
{

InnerModel::InnerModel(std::vector<Row> rows) : rows_(std::move(rows))
{
    if (rows_.size() < 2) {
        throw InvariantError("inner model needs at least two rows");
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Row &r = rows_[i];
        const std::string tag = "inner model row " + std::to_string(i + 1);
        if (!std::isfinite(r.I) || !std::isfinite(r.nu) || !std::isfinite(r.nu_p)) {
            throw InvariantError(tag + ": non-finite value");
        }
        if (!(r.nu_p > 2.0 && r.nu_p < 2.2)) {
            throw InvariantError(tag + ": nu_p outside (2.0, 2.2)");
        }
        if (i > 0) {
            if (!(r.I > rows_[i - 1].I)) {
                throw InvariantError(tag + ": I not strictly increasing");
            }
            if (!(r.nu < rows_[i - 1].nu)) {
                throw InvariantError(tag + ": nu not strictly decreasing");
            }
        }
    }
}

InnerModel InnerModel::default_table()
{
    std::vector<Row> rows;
    for (int k = 0; k <= 7; ++k) {
        rows.push_back({static_cast<double>(k), 6.1054 + (6.0944 - 6.1054) * k / 7.0, 2.0772});
    }
    return InnerModel(std::move(rows));
}

double InnerModel::interp(double I, double Row::*field, bool extrapolate) const
{
    if (!extrapolate && (!(I >= min_action()) || !(I <= max_action()))) {
        throw RangeError("action " + csv::format(I) + " outside inner model range [" + csv::format(min_action()) +
                         ", " + csv::format(max_action()) + "]");
    }
    auto it = std::upper_bound(rows_.begin(), rows_.end(), I, [](double x, const Row &r) { return x < r.I; });
    std::size_t hi = static_cast<std::size_t>(it - rows_.begin());
    hi = std::clamp<std::size_t>(hi, 1, rows_.size() - 1);
    const Row &a = rows_[hi - 1];
    const Row &b = rows_[hi];
    const double t = (I - a.I) / (b.I - a.I);
    return a.*field + t * (b.*field - a.*field);
}

double InnerModel::nu(double I) const
{
    return interp(I, &Row::nu, false);
}

double InnerModel::nu_p(double I) const
{
    return interp(I, &Row::nu_p, false);
}

double InnerModel::nu_extrapolated(double I) const noexcept
{
    return interp(I, &Row::nu, true);
}

InnerModel parse_inner_model(std::istream &in)
{
    std::vector<InnerModel::Row> rows;
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (csv::is_skippable(line)) {
            continue;
        }
        const auto f = csv::split(line);
        if (!header) {
            if (f.size() != 3 || f[0] != "I" || f[1] != "nu" || f[2] != "nu_p") {
                throw ParseError("expected header 'I,nu,nu_p'", line_no);
            }
            header = true;
            continue;
        }
        if (f.size() != 3) {
            throw ParseError("expected 3 fields, got " + std::to_string(f.size()), line_no);
        }
        rows.push_back({csv::parse_double(f[0], line_no), csv::parse_double(f[1], line_no),
                        csv::parse_double(f[2], line_no)});
    }
    if (!header) {
        throw ParseError("missing header 'I,nu,nu_p'", line_no);
    }
    return InnerModel(std::move(rows));
}

InnerModel load_inner_model(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open inner model file '" + path.string() + "'", 0);
    }
    return parse_inner_model(in);
}

void write_inner_model(std::ostream &out, const InnerModel &im)
{
    out << "I,nu,nu_p\n";
    for (const auto &r : im.rows()) {
        out << csv::format(r.I) << ',' << csv::format(r.nu) << ',' << csv::format(r.nu_p) << '\n';
    }
}

double inner_time(double nu_p)
{
    if (!(nu_p > 0.0)) {
        throw RangeError("planar frequency must be positive");
    }
    return kTwoPi / nu_p;
}

double inner_time(const InnerModel &im, double I)
{
    return inner_time(im.nu_p(I));
}

TimeModel::TimeModel(InnerModel im, double outer) : inner(std::move(im)), t_out(outer)
{
    if (!(t_out > 0.0) || !std::isfinite(t_out)) {
        throw RangeError("outer time must be positive");
    }
}

ActionAngle apply_inner(const InnerModel &im, ActionAngle p)
{
    return {p.action, wrap_two_pi(p.angle + im.nu(p.action))};
}

TransitionImage apply_transition(const SSMModel &sigma, const InnerModel &im, ActionAngle p, double tol)
{
    if (!(p.action >= im.min_action()) || !(p.action <= im.max_action())) {
        throw DomainExitError("transition input I=" + csv::format(p.action) + " outside the inner table",
                              TransitionStage::FirstInner);
    }
    const ActionAngle a = apply_inner(im, p);
    if (!(a.action > kMinAction) || !(a.action <= sigma.domain_max)) {
        throw DomainExitError("scattering input I=" + csv::format(a.action) + " outside its domain",
                              TransitionStage::Scattering);
    }
    const SMImage s = apply_sm(sigma, a.action, a.angle, tol);
    if (!(s.i_prime > kMinAction)) {
        throw DomainExitError("scattering image I'=" + csv::format(s.i_prime) + " below the domain",
                              TransitionStage::Scattering);
    }
    TransitionImage r;
    if (s.i_prime > im.max_action()) {
        r.clipped = true;
        r.point = {s.i_prime, wrap_two_pi(s.phi_prime + im.nu_extrapolated(s.i_prime))};
        return r;
    }
    if (s.i_prime < im.min_action()) {
        throw DomainExitError("scattering image I'=" + csv::format(s.i_prime) + " below the inner table",
                              TransitionStage::SecondInner);
    }
    r.point = apply_inner(im, {s.i_prime, s.phi_prime});
    return r;
}

} // namespace ssmdrift
