#pragma once

#include <iosfwd>
#include <vector>

#include "mosco1d/dirichlet.hpp"

namespace mosco1d {

enum class RowType { Dirichlet, ZeroFlux };

const char* to_string(RowType row);

// Node placement: equidistributed in s (Scale), in x (Uniform), or in a
// convex mix of the two normalized coordinates (Blend).
enum class Grading { Scale, Uniform, Blend };

struct GridConfig {
    int N = 4000;     // skeleton cells before refinement
    double R = 20.0;  // truncation radius around e on unbounded sides
    Grading grading = Grading::Scale;
    double blend = 0.5;       // weight of the scale coordinate for Blend
    int prefine = 8;          // pre-grid cells per output cell
    RowType truncation_row = RowType::ZeroFlux;
    std::vector<double> refinement; // extra nodes (inside the window)
};

// End-of-grid model on one side.
struct GridBoundary {
    RowType row = RowType::ZeroFlux;
    bool fixed = false;       // end node pinned to 0
    double leak = 0.0;        // conductance to ground through the tail
    bool truncated = false;   // window stops short of the endpoint
    bool tail_folded = false; // tail mass added to the end node
};

struct Grid {
    std::vector<double> skeleton;     // x positions before merging
    std::vector<double> skeleton_dm;  // mass of each skeleton cell
    std::vector<int> node_of;         // skeleton index -> node index
    std::vector<double> x;            // node positions (first skeleton point)
    std::vector<double> ds;           // scale increments between nodes
    std::vector<double> dm;           // node masses
    GridBoundary lower, upper;
    double lo = 0.0, hi = 0.0, R = 0.0;
    int merged_cells = 0;

    size_t size() const { return x.size(); }
    std::vector<double> sample(const TestFunction& f) const;
    std::vector<double> expand(const std::vector<double>& node_values) const;
};

// Window [lo, hi] of a spec: finite approachable endpoints are kept, other
// sides are cut at e -+ R (or just inside a finite endpoint).
std::pair<double, double> grid_window(const ScaleFunction& s, double R);

std::vector<double> make_skeleton(const ScaleFunction& s, double lo, double hi, const GridConfig& cfg);

Grid build_grid(const DirichletSpaceSpec& spec, const GridConfig& cfg);
Grid build_grid_on(const DirichletSpaceSpec& spec, const std::vector<double>& skeleton, const GridConfig& cfg);

// Tridiagonal realization of (Lu)_i = [flux_i - flux_{i-1}] / (2 dm_i).
struct GeneratorMatrix {
    std::vector<double> sub, diag, sup;
    std::vector<double> conductance; // 1/ds per link
    std::vector<double> dm;
    GridBoundary lower, upper;

    size_t size() const { return diag.size(); }
    std::vector<double> apply(const std::vector<double>& u) const;
};

GeneratorMatrix assemble_generator(const Grid& grid);

// (alpha - L) u = f by elimination in resistance form.
std::vector<double> resolvent(const GeneratorMatrix& M, const Grid& grid, double alpha, const std::vector<double>& f);
// Componentwise relative residual of (alpha - L) u = f in flux form.
double resolvent_residual(const GeneratorMatrix& M, double alpha, const std::vector<double>& u,
                          const std::vector<double>& f);

// Crank-Nicolson over `steps` equal substeps.
std::vector<double> semigroup(const GeneratorMatrix& M, const Grid& grid, double t, const std::vector<double>& f,
                              int steps);

double l2m_inner(const Grid& grid, const std::vector<double>& f, const std::vector<double>& g);
double l2m_norm(const Grid& grid, const std::vector<double>& f);
// ((-L) u, u)_m
double discrete_energy(const GeneratorMatrix& M, const std::vector<double>& u);

void write_grid_csv(std::ostream& os, const Grid& grid, const std::vector<double>& values);

} // namespace mosco1d
