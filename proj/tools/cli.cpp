#include "cli.hpp"

#include "CLI11.hpp"

#include "ssmdrift/csv.hpp"
#include "ssmdrift/errors.hpp"
#include "ssmdrift/ifs.hpp"
#include "ssmdrift/planner.hpp"
#include "ssmdrift/rtbp.hpp"
#include "ssmdrift/scattering_grid.hpp"
#include "ssmdrift/ssm_analysis.hpp"
#include "ssmdrift/ssm_fit.hpp"
#include "ssmdrift/ssm_model.hpp"
#include "ssmdrift/synth.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace ssmdrift::cli
{

namespace fs = std::filesystem;
using csv::format;

void RunConfig::validate() const
{
    for (double tol : {fp_tol, error_tol, local_tol, radius, t_out}) {
        if (!(tol > 0.0)) {
            throw RangeError("tolerances, radius and t_out must be positive");
        }
    }
    if (orbits <= 0 || iters <= 0 || cells_m <= 0 || cells_n <= 0 || max_steps <= 0 || samples <= 0) {
        throw RangeError("counts must be positive");
    }
}

namespace
{

std::vector<double> parse_list(const std::string &text)
{
    std::vector<double> v;
    for (std::string_view f : csv::split(text)) {
        v.push_back(csv::parse_double(f, 0));
    }
    return v;
}

fs::path output(const RunConfig &cfg, const char *name)
{
    fs::create_directories(cfg.out_dir);
    return fs::path(cfg.out_dir) / name;
}

void write_file(const fs::path &path, const std::function<void(std::ostream &)> &body)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw ParseError("cannot write '" + path.string() + "'", 0);
    }
    body(f);
}

InnerModel inner_model(const RunConfig &cfg)
{
    return cfg.inner.empty() ? InnerModel::default_table() : load_inner_model(cfg.inner);
}

void summary(std::ostream &out, const DriftOrbit &o, const TimeModel &tm)
{
    out << "n0=" << o.n0() << ",n1=" << o.n1() << ",n2=" << o.n2() << ",t=" << format(drift_time(o, tm)) << '\n';
}

int cmd_fit(const RunConfig &cfg, std::ostream &out)
{
    const ScatteringGrid grid = load_grid(cfg.grid);
    const SSMModel m = fit_ssm(grid, cfg.N, cfg.L);
    save_model(output(cfg, "model.csv"), m);
    const ErrorReport r = approximation_error(m, grid, cfg.error_tol);
    write_file(output(cfg, "errors.csv"), [&](std::ostream &f) {
        f << "I,eps_I,eps_phi\n";
        for (const TorusError &t : r.per_torus) {
            f << format(t.level) << ',' << format(t.eps_I) << ',' << format(t.eps_phi) << '\n';
        }
    });
    out << "eps_I=" << format(r.eps_I) << ",eps_phi=" << format(r.eps_phi) << '\n';

    if (cfg.sweep) {
        const int max_l = static_cast<int>(grid.tori.size()) - 1;
        write_file(output(cfg, "sweep.csv"), [&](std::ostream &f) {
            f << "N,L,eps_I,eps_phi\n";
            for (int n = 0; n <= cfg.sweep_n_max; n += 2) {
                for (int l = 1; l <= max_l; ++l) {
                    try {
                        const ErrorReport e = approximation_error(fit_ssm(grid, n, l), grid, cfg.error_tol);
                        f << n << ',' << l << ',' << format(e.eps_I) << ',' << format(e.eps_phi) << '\n';
                    } catch (const FitError &) {
                        // N above the sampling limit; nothing to report.
                    } catch (const ConvergenceError &) {
                        f << n << ',' << l << ",nan,nan\n";
                    }
                }
            }
        });
    }
    return kOk;
}

int cmd_apply(const RunConfig &cfg, std::ostream &out)
{
    const SSMModel m = load_model(cfg.model);
    if (cfg.transition) {
        const TransitionImage r = apply_transition(m, inner_model(cfg), {cfg.I, cfg.phi}, cfg.fp_tol);
        out << "I=" << format(r.point.action) << ",phi=" << format(r.point.angle)
            << ",clipped=" << (r.clipped ? 1 : 0) << '\n';
        return kOk;
    }
    const SMImage r = apply_sm(m, cfg.I, cfg.phi, cfg.fp_tol);
    out << "I_prime=" << format(r.i_prime) << ",phi_prime=" << format(r.phi_prime)
        << ",iterations=" << r.iterations << '\n';
    return kOk;
}

int cmd_portrait(const RunConfig &cfg, std::ostream &out)
{
    const Portrait p = phase_portrait(load_model(cfg.model), cfg.orbits, cfg.iters, cfg.phi0, cfg.fp_tol);
    write_file(output(cfg, "portrait.csv"), [&](std::ostream &f) {
        f << "orbit,iterate,I,phi\n";
        for (const PortraitPoint &pt : p.points) {
            f << pt.orbit << ',' << pt.iterate << ',' << format(pt.I) << ',' << format(pt.phi) << '\n';
        }
    });
    std::size_t cut = 0;
    for (bool t : p.truncated) {
        cut += t ? 1 : 0;
    }
    out << "points=" << p.points.size() << ",truncated=" << cut << '\n';
    return kOk;
}

int cmd_greedy(const RunConfig &cfg, std::ostream &out, std::ostream &err)
{
    const SSMModel m = load_model(cfg.model);
    const TimeModel tm(inner_model(cfg), cfg.t_out);
    DriftOrbit o;
    int code = kOk;
    try {
        o = greedy_drift(m, tm.inner, {cfg.start_I, cfg.start_phi}, cfg.target_I,
                         static_cast<std::size_t>(cfg.max_steps));
    } catch (const MaxStepsError &e) {
        err << "error: " << e.what() << '\n';
        o = e.partial();
        code = kFailure;
    }
    write_file(output(cfg, "greedy.csv"), [&](std::ostream &f) { write_orbit(f, o, tm); });
    summary(out, o, tm);
    return code;
}

std::vector<MapLabel> parse_maps(const std::string &text)
{
    std::vector<MapLabel> keep;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok == "F") {
            keep.push_back(MapLabel::Inner);
        } else if (tok == "T1") {
            keep.push_back(MapLabel::Tau1);
        } else if (tok == "T2") {
            keep.push_back(MapLabel::Tau2);
        } else {
            throw ParseError("unknown map '" + tok + "' (expected F, T1, T2)", 0);
        }
    }
    return keep;
}

int cmd_plan(const RunConfig &cfg, std::ostream &out)
{
    const SSMModel m1 = load_model(cfg.model);
    const SSMModel m2 = cfg.model2.empty() ? m1 : load_model(cfg.model2);
    const TimeModel tm(inner_model(cfg), cfg.t_out);
    const CellGrid grid{cfg.cells_m, cfg.cells_n, m1.domain_max};
    grid.validate();
    const std::vector<MapLabel> keep = parse_maps(cfg.maps);

    const CellGraph full = build_cell_graph(m1, m2, tm, grid, cfg.fp_tol);
    CellGraph g(full.vertex_count());
    g.failed_cells = full.failed_cells;
    for (const auto &edges : full.out) {
        for (const Edge &e : edges) {
            if (std::find(keep.begin(), keep.end(), e.label) != keep.end()) {
                g.add_edge(e);
            }
        }
    }
    if (cfg.write_graph) {
        write_file(output(cfg, "graph.csv"), [&](std::ostream &f) { write_graph(f, g); });
    }

    PlanOptions opt;
    opt.radius = cfg.radius;
    opt.tol = cfg.fp_tol;
    const DriftOrbit o = orbit_shortest_time(m1, m2, tm, grid, g, {cfg.start_I, cfg.start_phi},
                                             {cfg.target_I, cfg.target_phi}, opt);
    write_file(output(cfg, "plan.csv"), [&](std::ostream &f) { write_orbit(f, o, tm); });
    summary(out, o, tm);
    return kOk;
}

int cmd_synth(const RunConfig &cfg, std::ostream &out)
{
    SSMModel m;
    if (cfg.kind == "reference") {
        m = make_reference_model(cfg.seed, cfg.channel);
    } else if (cfg.kind == "two-harmonic") {
        m = make_two_harmonic_model();
    } else if (cfg.kind == "zero") {
        m = scale_oscillation(make_reference_model(cfg.seed, cfg.channel), 0.0);
    } else {
        throw ParseError("unknown synthetic kind '" + cfg.kind + "'", 0);
    }
    const std::vector<double> tori = parse_list(cfg.tori);
    const ScatteringGrid g = generate_grid(m, tori, static_cast<std::size_t>(cfg.samples));
    save_model(output(cfg, "truth.csv"), m);
    save_grid(output(cfg, "grid.csv"), g);
    out << "tori=" << g.tori.size() << ",samples=" << g.sample_count() << '\n';
    return kOk;
}

int cmd_rtbp_check(const RunConfig &cfg, std::ostream &out)
{
    const rtbp::MassRatio mu(cfg.mu);
    const double x = rtbp::locate_l1(mu);
    const rtbp::Frequencies f = rtbp::linear_frequencies(mu);
    out << "mu=" << format(mu.value()) << '\n'
        << "L1_X=" << format(x) << '\n'
        << "gamma=" << format(x - (mu.value() - 1.0)) << '\n'
        << "C_L1=" << format(rtbp::jacobi_constant(rtbp::l1_state(mu), mu)) << '\n'
        << "nu_h=" << format(f.nu_h) << '\n'
        << "nu_p=" << format(f.nu_p) << '\n'
        << "nu_v=" << format(f.nu_v) << '\n';
    return kOk;
}

int report(std::ostream &err, const std::exception &e, int code)
{
    err << "error: " << e.what() << '\n';
    return code;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    RunConfig cfg;
    CLI::App app{"Scattering-map drift toolkit"};
    app.set_config("--config", "", "key=value settings file");
    app.require_subcommand(1);
    app.add_option("--out-dir", cfg.out_dir, "Directory for output files")->capture_default_str();

    auto model_opt = [&](CLI::App *c) { return c->add_option("--model", cfg.model, "Model file")->required(); };
    auto inner_opt = [&](CLI::App *c) {
        c->add_option("--inner", cfg.inner, "Inner model table (default: built-in approximate table)");
    };
    auto tol_opt = [&](CLI::App *c) {
        c->add_option("--fp-tol", cfg.fp_tol, "Fixed-point tolerance")->capture_default_str();
    };

    CLI::App *fit = app.add_subcommand("fit", "Fit a model to a scattering grid");
    fit->add_option("--grid", cfg.grid, "Scattering grid file")->required();
    fit->add_option("-N", cfg.N, "Highest harmonic")->capture_default_str();
    fit->add_option("-L", cfg.L, "Newton degree")->capture_default_str();
    fit->add_flag("--sweep", cfg.sweep, "Also write the (N, L) error table");
    fit->add_option("--sweep-n-max", cfg.sweep_n_max)->capture_default_str();
    fit->add_option("--error-tol", cfg.error_tol, "Fixed-point tolerance for the error table")
        ->capture_default_str();

    CLI::App *apply = app.add_subcommand("apply", "Apply the scattering or transition map once");
    model_opt(apply);
    inner_opt(apply);
    tol_opt(apply);
    apply->add_option("--I", cfg.I)->required();
    apply->add_option("--phi", cfg.phi)->required();
    apply->add_flag("--transition", cfg.transition, "Apply F o sigma o F");

    CLI::App *portrait = app.add_subcommand("portrait", "Iterate the scattering map on a fan of orbits");
    model_opt(portrait);
    tol_opt(portrait);
    portrait->add_option("--orbits", cfg.orbits)->capture_default_str();
    portrait->add_option("--iters", cfg.iters)->capture_default_str();
    portrait->add_option("--phi0", cfg.phi0)->capture_default_str();

    CLI::App *greedy = app.add_subcommand("greedy", "Greedy drift orbit");
    model_opt(greedy);
    inner_opt(greedy);
    greedy->add_option("--start-I", cfg.start_I)->capture_default_str();
    greedy->add_option("--start-phi", cfg.start_phi)->capture_default_str();
    greedy->add_option("--target-I", cfg.target_I)->capture_default_str();
    greedy->add_option("--max-steps", cfg.max_steps)->capture_default_str();
    greedy->add_option("--t-out", cfg.t_out)->capture_default_str();

    CLI::App *plan = app.add_subcommand("plan", "Shortest-time drift orbit over the cell graph");
    model_opt(plan);
    plan->add_option("--model2", cfg.model2, "Second channel model (default: same as --model)");
    inner_opt(plan);
    tol_opt(plan);
    plan->add_option("--start-I", cfg.start_I)->capture_default_str();
    plan->add_option("--start-phi", cfg.start_phi)->capture_default_str();
    plan->add_option("--target-I", cfg.target_I)->capture_default_str();
    plan->add_option("--target-phi", cfg.target_phi)->capture_default_str();
    plan->add_option("--radius", cfg.radius)->capture_default_str();
    plan->add_option("--cells-m", cfg.cells_m, "Action rows")->capture_default_str();
    plan->add_option("--cells-n", cfg.cells_n, "Angle columns")->capture_default_str();
    plan->add_option("--t-out", cfg.t_out)->capture_default_str();
    plan->add_option("--maps", cfg.maps, "Allowed maps")->capture_default_str();
    plan->add_flag("--write-graph", cfg.write_graph, "Also write graph.csv");

    CLI::App *synth = app.add_subcommand("synth", "Write a synthetic model and its scattering grid");
    synth->add_option("--kind", cfg.kind)->check(CLI::IsMember({"reference", "two-harmonic", "zero"}))
        ->capture_default_str();
    synth->add_option("--seed", cfg.seed)->capture_default_str();
    synth->add_option("--channel", cfg.channel)->check(CLI::Range(1, 2))->capture_default_str();
    synth->add_option("--tori", cfg.tori, "Comma-separated action levels")->capture_default_str();
    synth->add_option("--samples", cfg.samples)->capture_default_str();

    CLI::App *check = app.add_subcommand("rtbp-check", "Print the L1 anchors for a mass ratio");
    check->add_option("--mu", cfg.mu)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kInputError;
    }

    try {
        cfg.validate();
        if (fit->parsed()) {
            return cmd_fit(cfg, out);
        }
        if (apply->parsed()) {
            return cmd_apply(cfg, out);
        }
        if (portrait->parsed()) {
            return cmd_portrait(cfg, out);
        }
        if (greedy->parsed()) {
            return cmd_greedy(cfg, out, err);
        }
        if (plan->parsed()) {
            return cmd_plan(cfg, out);
        }
        if (synth->parsed()) {
            return cmd_synth(cfg, out);
        }
        return cmd_rtbp_check(cfg, out);
    } catch (const ParseError &e) {
        return report(err, e, kInputError);
    } catch (const InvariantError &e) {
        return report(err, e, kInputError);
    } catch (const RangeError &e) {
        return report(err, e, kInputError);
    } catch (const FitError &e) {
        return report(err, e, kFitError);
    } catch (const UnreachableError &e) {
        return report(err, e, kUnreachable);
    } catch (const LivelockError &e) {
        return report(err, e, kLivelock);
    } catch (const std::exception &e) {
        return report(err, e, kFailure);
    }
}

} // namespace ssmdrift::cli
