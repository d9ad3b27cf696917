#include "ssmdrift/ssm_model.hpp"

#include "ssmdrift/angles.hpp"
#include "ssmdrift/csv.hpp"
#include "ssmdrift/errors.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace ssmdrift
{

namespace
{

constexpr std::string_view kMagic = "ssmdrift-model";
constexpr double kZeroAtOrigin = 1e-12;

bool finite_poly(const NewtonPoly &p)
{
    for (double v : p.nodes()) {
        if (!std::isfinite(v)) {
            return false;
        }
    }
    for (double v : p.coefficients()) {
        if (!std::isfinite(v)) {
            return false;
        }
    }
    return true;
}

void write_poly(std::ostream &out, const NewtonPoly &p)
{
    out << p.nodes().size();
    for (double v : p.nodes()) {
        out << ',' << csv::format(v);
    }
    for (double v : p.coefficients()) {
        out << ',' << csv::format(v);
    }
}

NewtonPoly read_poly(const std::vector<std::string_view> &f, std::size_t first, std::size_t line_no)
{
    if (f.size() <= first) {
        throw ParseError("missing node count", line_no);
    }
    const long k = csv::parse_int(f[first], line_no);
    if (k < 1 || f.size() != first + 1 + 2 * static_cast<std::size_t>(k)) {
        throw ParseError("polynomial record has wrong length", line_no);
    }
    std::vector<double> nodes, dd;
    for (long i = 0; i < k; ++i) {
        nodes.push_back(csv::parse_double(f[first + 1 + i], line_no));
    }
    for (long i = 0; i < k; ++i) {
        dd.push_back(csv::parse_double(f[first + 1 + k + i], line_no));
    }
    return NewtonPoly(std::move(nodes), std::move(dd));
}

} // namespace

void SSMModel::validate() const
{
    if (N < 0 || L < 0) {
        throw InvariantError("model degrees must be non-negative");
    }
    if (!(domain_max > kMinAction) || !std::isfinite(domain_max)) {
        throw InvariantError("model domain must be a positive interval");
    }
    if (harmonics.size() != static_cast<std::size_t>(N / 2)) {
        throw InvariantError("model must hold exactly the even harmonics up to N=" + std::to_string(N));
    }
    for (std::size_t i = 0; i < harmonics.size(); ++i) {
        const Harmonic &h = harmonics[i];
        const std::string tag = "harmonic n=" + std::to_string(h.n);
        if (h.n != 2 * static_cast<int>(i + 1)) {
            throw InvariantError(tag + " out of order or odd");
        }
        if (h.a.degree() > static_cast<std::size_t>(L) || h.b.degree() > static_cast<std::size_t>(L)) {
            throw InvariantError(tag + " exceeds degree L=" + std::to_string(L));
        }
        if (!finite_poly(h.a) || !finite_poly(h.b)) {
            throw InvariantError(tag + " has non-finite coefficients");
        }
        if (std::abs(h.a(0.0)) > kZeroAtOrigin || std::abs(h.b(0.0)) > kZeroAtOrigin) {
            throw InvariantError(tag + " does not vanish at I=0");
        }
    }
    if (omega.degree() > static_cast<std::size_t>(L) || !finite_poly(omega)) {
        throw InvariantError("omega polynomial invalid or above degree L");
    }
}

GeneratingTerms eval_derivs(const SSMModel &m, double I, double phi_prime)
{
    GeneratingTerms g;
    for (const Harmonic &h : m.harmonics) {
        const double n = h.n;
        const double c = std::cos(n * phi_prime);
        const double s = std::sin(n * phi_prime);
        const NewtonPoly::Jet a = h.a.jet(I);
        const NewtonPoly::Jet b = h.b.jet(I);
        g.value += (-b.value * c + a.value * s) / n;
        g.d_dphi += a.value * c + b.value * s;
        g.d_dI += (-b.d1 * c + a.d1 * s) / n;
        g.d2_dI2 += (-b.d2 * c + a.d2 * s) / n;
        g.d2_dphi_dI += a.d1 * c + b.d1 * s;
    }
    return g;
}

SMImage apply_sm(const SSMModel &m, double I, double phi, double tol, int max_iter)
{
    if (!(I > kMinAction) || !(I <= m.domain_max)) {
        throw RangeError("action " + csv::format(I) + " outside scattering domain (0, " +
                         csv::format(m.domain_max) + "]");
    }
    if (!(tol > 0.0) || max_iter < 1) {
        throw RangeError("fixed point needs tol > 0 and max_iter >= 1");
    }
    const double base = phi - m.omega(I);
    double pp = base;
    for (int k = 1; k <= max_iter; ++k) {
        const double next = base - eval_derivs(m, I, pp).d_dI;
        const double delta = std::abs(next - pp);
        pp = next;
        if (delta < tol) {
            SMImage r;
            r.i_prime = I + eval_derivs(m, I, pp).d_dphi;
            r.phi_prime = wrap_two_pi(pp);
            r.iterations = k;
            return r;
        }
    }
    throw ConvergenceError("scattering fixed point did not converge in " + std::to_string(max_iter) +
                           " iterations at I=" + csv::format(I) + ", phi=" + csv::format(phi));
}

void write_model(std::ostream &out, const SSMModel &m)
{
    out << kMagic << ",1\n";
    out << "N," << m.N << '\n';
    out << "L," << m.L << '\n';
    out << "domain_max," << csv::format(m.domain_max) << '\n';
    if (!m.meta.empty()) {
        out << "meta," << m.meta << '\n';
    }
    out << "omega,";
    write_poly(out, m.omega);
    out << '\n';
    for (const Harmonic &h : m.harmonics) {
        out << "A," << h.n << ',';
        write_poly(out, h.a);
        out << "\nB," << h.n << ',';
        write_poly(out, h.b);
        out << '\n';
    }
}

SSMModel parse_model(std::istream &in)
{
    SSMModel m;
    std::string line;
    std::size_t line_no = 0;
    bool magic = false, have_n = false, have_l = false, have_omega = false;
    std::vector<std::pair<bool, bool>> seen;

    while (std::getline(in, line)) {
        ++line_no;
        if (csv::is_skippable(line)) {
            continue;
        }
        const auto f = csv::split(line);
        const std::string_view key = f[0];
        if (!magic) {
            if (key != kMagic || f.size() != 2 || f[1] != "1") {
                throw ParseError("not a model file (expected '" + std::string(kMagic) + ",1')", line_no);
            }
            magic = true;
            continue;
        }
        if (key == "meta") {
            const auto comma = line.find(',');
            m.meta = line.substr(comma + 1);
            continue;
        }
        if (key == "N" || key == "L" || key == "domain_max") {
            if (f.size() != 2) {
                throw ParseError("expected '" + std::string(key) + ",<value>'", line_no);
            }
            if (key == "N") {
                m.N = static_cast<int>(csv::parse_int(f[1], line_no));
                have_n = true;
                if (m.N < 0 || m.N > 4096) {
                    throw ParseError("unreasonable N", line_no);
                }
                m.harmonics.assign(static_cast<std::size_t>(m.N / 2), Harmonic{});
                seen.assign(m.harmonics.size(), {false, false});
                for (std::size_t i = 0; i < m.harmonics.size(); ++i) {
                    m.harmonics[i].n = 2 * static_cast<int>(i + 1);
                }
            } else if (key == "L") {
                m.L = static_cast<int>(csv::parse_int(f[1], line_no));
                have_l = true;
            } else {
                m.domain_max = csv::parse_double(f[1], line_no);
            }
            continue;
        }
        if (key == "omega") {
            m.omega = read_poly(f, 1, line_no);
            have_omega = true;
            continue;
        }
        if (key == "A" || key == "B") {
            if (!have_n) {
                throw ParseError("harmonic record before N", line_no);
            }
            if (f.size() < 2) {
                throw ParseError("missing harmonic index", line_no);
            }
            const long n = csv::parse_int(f[1], line_no);
            if (n < 2 || n % 2 != 0 || n > m.N) {
                throw ParseError("harmonic index " + std::to_string(n) + " not an even number in [2, N]", line_no);
            }
            const auto idx = static_cast<std::size_t>(n / 2 - 1);
            if (key == "A") {
                m.harmonics[idx].a = read_poly(f, 2, line_no);
                seen[idx].first = true;
            } else {
                m.harmonics[idx].b = read_poly(f, 2, line_no);
                seen[idx].second = true;
            }
            continue;
        }
        throw ParseError("unknown record '" + std::string(key) + "'", line_no);
    }
    if (!magic || !have_n || !have_l || !have_omega) {
        throw ParseError("model file incomplete (need header, N, L and omega)", line_no);
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i].first || !seen[i].second) {
            throw ParseError("missing A or B record for n=" + std::to_string(2 * (i + 1)), line_no);
        }
    }
    m.validate();
    return m;
}

SSMModel load_model(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open model file '" + path.string() + "'", 0);
    }
    return parse_model(in);
}

void save_model(const std::filesystem::path &path, const SSMModel &m)
{
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write model file '" + path.string() + "'");
    }
    write_model(out, m);
}

} // namespace ssmdrift
