#pragma once

#include "ssmdrift/errors.hpp"
#include "ssmdrift/ifs.hpp"
#include "ssmdrift/ssm_model.hpp"

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <string_view>
#include <vector>

namespace ssmdrift
{

enum class MapLabel
{
    Inner,
    Tau1,
    Tau2,
    Sigma1,
    Sigma2,
};

/// File tokens: F, T1, T2, S1, S2.
std::string_view to_string(MapLabel l) noexcept;

enum class Region
{
    Loss = -1,
    Neutral = 0,
    Gain = 1,
};

/// Sign of I' - I under the scattering map, neutral inside |.| < 1e-9.
Region classify(const SSMModel &m, double I, double phi, double tol = 1e-5);

struct OrbitStep
{
    MapLabel label{MapLabel::Inner};
    ActionAngle point;
    bool clipped{false};
};

struct DriftOrbit
{
    ActionAngle start;
    std::vector<OrbitStep> steps;

    std::size_t count(MapLabel l) const noexcept;
    /// Inner steps.
    std::size_t n0() const noexcept { return count(MapLabel::Inner); }
    /// Excursions through the first and second channel (Tau or Sigma).
    std::size_t n1() const noexcept { return count(MapLabel::Tau1) + count(MapLabel::Sigma1); }
    std::size_t n2() const noexcept { return count(MapLabel::Tau2) + count(MapLabel::Sigma2); }
};

/// n0 inner returns at t_in(I) each plus one t_out per excursion.
double drift_time(const DriftOrbit &o, const TimeModel &tm);

class MaxStepsError : public Error
{
public:
    MaxStepsError(const std::string &what, DriftOrbit partial) : Error(what), partial_(std::move(partial)) {}

    const DriftOrbit &partial() const noexcept { return partial_; }

private:
    DriftOrbit partial_;
};

/// Apply sigma whenever it gains action, otherwise the inner map, until
/// I >= I_target. Throws MaxStepsError with the orbit so far.
DriftOrbit greedy_drift(const SSMModel &m, const InnerModel &im, ActionAngle start, double I_target,
                        std::size_t max_steps, MapLabel sigma_label = MapLabel::Sigma1);

/// Uniform m x n cells on (0, I_max] x [0, pi).
struct CellGrid
{
    int m{30};
    int n{30};
    double I_max{7.0};

    void validate() const;
    std::size_t size() const noexcept { return static_cast<std::size_t>(m) * static_cast<std::size_t>(n); }
    int row_of(double I) const noexcept;
    int col_of(double phi) const noexcept;
    /// Cell containing (I, phi); I is clamped to the grid rows, phi taken mod pi.
    std::size_t cell_of(double I, double phi) const noexcept;
    ActionAngle center(std::size_t cell) const noexcept;
    int row(std::size_t cell) const noexcept { return static_cast<int>(cell / static_cast<std::size_t>(n)); }
};

struct Edge
{
    std::size_t src{0};
    std::size_t dst{0};
    MapLabel label{MapLabel::Inner};
    double time{0.0};
    bool clipped{false};
};

struct CellGraph
{
    std::vector<std::vector<Edge>> out;
    std::size_t failed_cells{0};  ///< cells whose scattering step did not converge

    explicit CellGraph(std::size_t vertices = 0) : out(vertices) {}

    std::size_t vertex_count() const noexcept { return out.size(); }
    std::size_t edge_count() const noexcept;
    void add_edge(const Edge &e);
};

/// Edges from each cell center: F always, T1/T2 unless they land in F's cell
/// (T2 is also dropped when it lands in T1's cell). Images above the grid go
/// to the top-row cell at their angle.
CellGraph build_cell_graph(const SSMModel &m1, const SSMModel &m2, const TimeModel &tm, const CellGrid &grid,
                           double tol = 1e-5);

struct Path
{
    std::vector<Edge> edges;
    double time{0.0};
};

/// Shortest path s -> t. Ties are broken towards the smaller predecessor
/// index. Throws UnreachableError.
Path dijkstra(const CellGraph &g, std::size_t s, std::size_t t);

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

/// Shortest time from every vertex to t (reverse Dijkstra).
std::vector<double> distances_to(const CellGraph &g, std::size_t t);

/// Out-edge of u minimizing time + dist[dst]; ties go to the lower label,
/// then the lower destination. nullptr when none leads anywhere finite.
const Edge *informed_edge(const CellGraph &g, const std::vector<double> &dist, std::size_t u);

struct PlanOptions
{
    double radius{0.25};
    std::size_t livelock_bound{0};  ///< 0 selects 4 m n
    double tol{1e-5};
};

/// Distance in (I, phi) with the angle difference taken mod pi.
double plane_distance(ActionAngle a, ActionAngle b) noexcept;

/// Informed orbit from x towards the radius-neighbourhood of y, consulting
/// the shortest time to y's cell at every iterate and applying the chosen
/// map to the exact point.
DriftOrbit orbit_shortest_time(const SSMModel &m1, const SSMModel &m2, const TimeModel &tm,
                               const CellGrid &grid, const CellGraph &g, ActionAngle x, ActionAngle y,
                               const PlanOptions &opt = {});

DriftOrbit orbit_shortest_time(const SSMModel &m1, const SSMModel &m2, const TimeModel &tm,
                               const CellGrid &grid, ActionAngle x, ActionAngle y, const PlanOptions &opt = {});

/// Header `step,map,I,phi,t_cum`; row 0 is the start with map `start`.
void write_orbit(std::ostream &out, const DriftOrbit &o, const TimeModel &tm);

/// Header `src_cell,dst_cell,map,time`.
void write_graph(std::ostream &out, const CellGraph &g);

} // namespace ssmdrift
