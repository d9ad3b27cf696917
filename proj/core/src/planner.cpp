#include "ssmdrift/planner.hpp"

#include "ssmdrift/angles.hpp"
#include "ssmdrift/csv.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <queue>
#include <string>
#include <tuple>
#include <utility>

namespace ssmdrift
{

namespace
{

constexpr double kNeutralBand = 1e-9;

using QueueItem = std::pair<double, std::size_t>;
using MinQueue = std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>>;

std::size_t label_slot(MapLabel l) noexcept
{
    return static_cast<std::size_t>(l);
}

} // namespace

std::string_view to_string(MapLabel l) noexcept
{
    switch (l) {
    case MapLabel::Inner:
        return "F";
    case MapLabel::Tau1:
        return "T1";
    case MapLabel::Tau2:
        return "T2";
    case MapLabel::Sigma1:
        return "S1";
    case MapLabel::Sigma2:
        return "S2";
    }
    return "?";
}

Region classify(const SSMModel &m, double I, double phi, double tol)
{
    const double gain = apply_sm(m, I, phi, tol).i_prime - I;
    if (std::abs(gain) < kNeutralBand) {
        return Region::Neutral;
    }
    return gain > 0.0 ? Region::Gain : Region::Loss;
}

std::size_t DriftOrbit::count(MapLabel l) const noexcept
{
    return static_cast<std::size_t>(
        std::count_if(steps.begin(), steps.end(), [l](const OrbitStep &s) { return s.label == l; }));
}

double drift_time(const DriftOrbit &o, const TimeModel &tm)
{
    double t = 0.0;
    for (const OrbitStep &s : o.steps) {
        t += s.label == MapLabel::Inner ? tm.t_in(s.point.action) : tm.t_out;
    }
    return t;
}

DriftOrbit greedy_drift(const SSMModel &m, const InnerModel &im, ActionAngle start, double I_target,
                        std::size_t max_steps, MapLabel sigma_label)
{
    if (sigma_label != MapLabel::Sigma1 && sigma_label != MapLabel::Sigma2) {
        throw RangeError("greedy drift applies a scattering label");
    }
    if (I_target > m.domain_max) {
        throw RangeError("greedy target above the scattering domain");
    }
    DriftOrbit o;
    o.start = {start.action, wrap_two_pi(start.angle)};
    ActionAngle p = o.start;
    while (p.action < I_target) {
        if (o.steps.size() >= max_steps) {
            throw MaxStepsError("greedy drift did not reach I=" + csv::format(I_target) + " in " +
                                    std::to_string(max_steps) + " steps",
                                std::move(o));
        }
        const SMImage img = apply_sm(m, p.action, p.angle);
        if (img.i_prime - p.action >= kNeutralBand) {
            p = {img.i_prime, img.phi_prime};
            o.steps.push_back({sigma_label, p, img.i_prime > m.domain_max});
        } else {
            p = apply_inner(im, p);
            o.steps.push_back({MapLabel::Inner, p, false});
        }
    }
    return o;
}

void CellGrid::validate() const
{
    if (m < 1 || n < 1) {
        throw RangeError("cell grid needs m, n >= 1");
    }
    if (!(I_max > 0.0) || !std::isfinite(I_max)) {
        throw RangeError("cell grid needs a positive action range");
    }
}

int CellGrid::row_of(double I) const noexcept
{
    const double r = std::floor(I / (I_max / m));
    return static_cast<int>(std::clamp(r, 0.0, static_cast<double>(m - 1)));
}

int CellGrid::col_of(double phi) const noexcept
{
    const double c = std::floor(wrap_pi(phi) / (std::numbers::pi / n));
    return static_cast<int>(std::clamp(c, 0.0, static_cast<double>(n - 1)));
}

std::size_t CellGrid::cell_of(double I, double phi) const noexcept
{
    return static_cast<std::size_t>(row_of(I)) * static_cast<std::size_t>(n) +
           static_cast<std::size_t>(col_of(phi));
}

ActionAngle CellGrid::center(std::size_t cell) const noexcept
{
    const auto r = static_cast<double>(cell / static_cast<std::size_t>(n));
    const auto c = static_cast<double>(cell % static_cast<std::size_t>(n));
    return {(r + 0.5) * I_max / m, (c + 0.5) * std::numbers::pi / n};
}

std::size_t CellGraph::edge_count() const noexcept
{
    std::size_t k = 0;
    for (const auto &v : out) {
        k += v.size();
    }
    return k;
}

void CellGraph::add_edge(const Edge &e)
{
    if (e.src >= out.size() || e.dst >= out.size()) {
        throw RangeError("edge endpoint outside the graph");
    }
    if (!(e.time > 0.0) || !std::isfinite(e.time)) {
        throw RangeError("edge time must be positive and finite");
    }
    out[e.src].push_back(e);
}

CellGraph build_cell_graph(const SSMModel &m1, const SSMModel &m2, const TimeModel &tm, const CellGrid &grid,
                           double tol)
{
    grid.validate();
    CellGraph g(grid.size());
    for (std::size_t c = 0; c < grid.size(); ++c) {
        const ActionAngle p = grid.center(c);
        const ActionAngle f = apply_inner(tm.inner, p);
        const std::size_t fc = grid.cell_of(f.action, f.angle);
        g.add_edge({c, fc, MapLabel::Inner, tm.t_in(p.action), false});

        std::optional<std::size_t> first;
        bool failed = false;
        for (const auto &[model, label] : {std::pair{&m1, MapLabel::Tau1}, std::pair{&m2, MapLabel::Tau2}}) {
            TransitionImage img;
            try {
                img = apply_transition(*model, tm.inner, p, tol);
            } catch (const ConvergenceError &) {
                failed = true;
                continue;
            } catch (const DomainExitError &) {
                continue;
            }
            const std::size_t dst =
                img.clipped ? grid.cell_of(grid.I_max, img.point.angle) : grid.cell_of(img.point.action, img.point.angle);
            if (dst == fc || (first && dst == *first)) {
                continue;
            }
            if (label == MapLabel::Tau1) {
                first = dst;
            }
            g.add_edge({c, dst, label, tm.t_out, img.clipped});
        }
        g.failed_cells += failed ? 1 : 0;
    }
    return g;
}

Path dijkstra(const CellGraph &g, std::size_t s, std::size_t t)
{
    const std::size_t nv = g.vertex_count();
    if (s >= nv || t >= nv) {
        throw RangeError("dijkstra endpoints outside the graph");
    }
    std::vector<double> dist(nv, kUnreachable);
    std::vector<const Edge *> pred(nv, nullptr);
    std::vector<bool> done(nv, false);
    MinQueue q;
    dist[s] = 0.0;
    q.push({0.0, s});
    while (!q.empty()) {
        const auto [d, u] = q.top();
        q.pop();
        if (done[u]) {
            continue;
        }
        done[u] = true;
        if (u == t) {
            break;
        }
        for (const Edge &e : g.out[u]) {
            if (done[e.dst]) {
                continue;
            }
            const double nd = d + e.time;
            const Edge *cur = pred[e.dst];
            const bool better = nd < dist[e.dst] ||
                                (nd == dist[e.dst] && cur &&
                                 std::tie(u, e.label) < std::tie(cur->src, cur->label));
            if (better) {
                dist[e.dst] = nd;
                pred[e.dst] = &e;
                q.push({nd, e.dst});
            }
        }
    }
    if (dist[t] == kUnreachable) {
        throw UnreachableError("cell " + std::to_string(t) + " unreachable from cell " + std::to_string(s));
    }
    Path p;
    p.time = dist[t];
    for (std::size_t v = t; v != s; v = pred[v]->src) {
        p.edges.push_back(*pred[v]);
    }
    std::reverse(p.edges.begin(), p.edges.end());
    return p;
}

std::vector<double> distances_to(const CellGraph &g, std::size_t t)
{
    const std::size_t nv = g.vertex_count();
    if (t >= nv) {
        throw RangeError("target outside the graph");
    }
    std::vector<std::vector<const Edge *>> in(nv);
    for (const auto &edges : g.out) {
        for (const Edge &e : edges) {
            in[e.dst].push_back(&e);
        }
    }
    std::vector<double> dist(nv, kUnreachable);
    std::vector<bool> done(nv, false);
    MinQueue q;
    dist[t] = 0.0;
    q.push({0.0, t});
    while (!q.empty()) {
        const auto [d, v] = q.top();
        q.pop();
        if (done[v]) {
            continue;
        }
        done[v] = true;
        for (const Edge *e : in[v]) {
            const double nd = d + e->time;
            if (nd < dist[e->src]) {
                dist[e->src] = nd;
                q.push({nd, e->src});
            }
        }
    }
    return dist;
}

const Edge *informed_edge(const CellGraph &g, const std::vector<double> &dist, std::size_t u)
{
    const Edge *best = nullptr;
    double best_cost = kUnreachable;
    for (const Edge &e : g.out[u]) {
        const double cost = e.time + dist[e.dst];
        if (cost == kUnreachable) {
            continue;
        }
        if (!best || cost < best_cost ||
            (cost == best_cost && std::tie(e.label, e.dst) < std::tie(best->label, best->dst))) {
            best = &e;
            best_cost = cost;
        }
    }
    return best;
}

double plane_distance(ActionAngle a, ActionAngle b) noexcept
{
    const double di = a.action - b.action;
    const double dp = std::remainder(a.angle - b.angle, std::numbers::pi);
    return std::hypot(di, dp);
}

DriftOrbit orbit_shortest_time(const SSMModel &m1, const SSMModel &m2, const TimeModel &tm,
                               const CellGrid &grid, const CellGraph &g, ActionAngle x, ActionAngle y,
                               const PlanOptions &opt)
{
    grid.validate();
    if (!(opt.radius > 0.0)) {
        throw RangeError("neighbourhood radius must be positive");
    }
    if (g.vertex_count() != grid.size()) {
        throw RangeError("cell graph does not match the cell grid");
    }
    const std::size_t target = grid.cell_of(y.action, y.angle);
    const std::vector<double> dist = distances_to(g, target);
    const std::size_t bound = opt.livelock_bound ? opt.livelock_bound : 4 * grid.size();
    std::vector<std::size_t> visits(grid.size() * 3, 0);

    DriftOrbit o;
    o.start = {x.action, wrap_two_pi(x.angle)};
    ActionAngle p = o.start;
    while (plane_distance(p, y) > opt.radius) {
        const std::size_t u = grid.cell_of(p.action, p.angle);
        const Edge *e = informed_edge(g, dist, u);
        if (!e) {
            throw UnreachableError("target cell " + std::to_string(target) + " unreachable from cell " +
                                   std::to_string(u));
        }
        if (++visits[u * 3 + label_slot(e->label)] > bound) {
            throw LivelockError("cell " + std::to_string(u) + " with map " + std::string(to_string(e->label)) +
                                " visited more than " + std::to_string(bound) + " times");
        }
        if (e->label == MapLabel::Inner) {
            p = apply_inner(tm.inner, p);
            o.steps.push_back({MapLabel::Inner, p, false});
            continue;
        }
        const SSMModel &sigma = e->label == MapLabel::Tau1 ? m1 : m2;
        const TransitionImage img = apply_transition(sigma, tm.inner, p, opt.tol);
        p = img.point;
        o.steps.push_back({e->label, p, img.clipped});
        if (img.clipped) {
            if (grid.row(target) == grid.m - 1) {
                break;
            }
            throw DomainExitError("orbit left the top of the domain before reaching the target",
                                  TransitionStage::Scattering);
        }
    }
    return o;
}

DriftOrbit orbit_shortest_time(const SSMModel &m1, const SSMModel &m2, const TimeModel &tm,
                               const CellGrid &grid, ActionAngle x, ActionAngle y, const PlanOptions &opt)
{
    const CellGraph g = build_cell_graph(m1, m2, tm, grid, opt.tol);
    return orbit_shortest_time(m1, m2, tm, grid, g, x, y, opt);
}

void write_orbit(std::ostream &out, const DriftOrbit &o, const TimeModel &tm)
{
    out << "step,map,I,phi,t_cum\n";
    out << "0,start," << csv::format(o.start.action) << ',' << csv::format(o.start.angle) << ",0\n";
    double t = 0.0;
    for (std::size_t k = 0; k < o.steps.size(); ++k) {
        const OrbitStep &s = o.steps[k];
        t += s.label == MapLabel::Inner ? tm.t_in(s.point.action) : tm.t_out;
        out << k + 1 << ',' << to_string(s.label) << ',' << csv::format(s.point.action) << ','
            << csv::format(s.point.angle) << ',' << csv::format(t) << '\n';
    }
}

void write_graph(std::ostream &out, const CellGraph &g)
{
    out << "src_cell,dst_cell,map,time\n";
    for (const auto &edges : g.out) {
        for (const Edge &e : edges) {
            out << e.src << ',' << e.dst << ',' << to_string(e.label) << ',' << csv::format(e.time) << '\n';
        }
    }
}

} // namespace ssmdrift
