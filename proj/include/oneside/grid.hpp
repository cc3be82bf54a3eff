#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace oneside {

// Uniform 1-D grid with n cells and n+1 nodes on [x_min, x_max].
struct Grid1D {
    double x_min = 0.0;
    double x_max = 1.0;
    int n = 2;

    double dx() const { return (x_max - x_min) / n; }
    int num_nodes() const { return n + 1; }
    double node(int i) const { return x_min + i * dx(); }

    // Index of the nearest node to x (clamped to the grid).
    int nearest_node(double x) const;

    bool operator==(const Grid1D&) const = default;
};

Grid1D make_uniform_grid(double x_min, double x_max, int n);

// Sampled real function on a uniform grid, tagged with the time it was
// sampled at.
struct GridFunction1D {
    Grid1D grid;
    std::vector<double> values;
    double time_tag = 0.0;

    double operator[](int i) const { return values[i]; }
    double& operator[](int i) { return values[i]; }
    int size() const { return static_cast<int>(values.size()); }

    // Linear interpolation; clamps outside the domain to the edge values.
    double interp(double x) const;

    double max_value() const;
    double min_value() const;
    double max_abs() const;
};

// Validates that values are finite and match the grid length.
GridFunction1D make_grid_function(Grid1D grid, std::vector<double> values,
                                  double time_tag = 0.0);

// Sample a callable on every node.
template <class F>
GridFunction1D sample(const Grid1D& grid, F&& f, double time_tag = 0.0) {
    std::vector<double> v(grid.num_nodes());
    for (int i = 0; i < grid.num_nodes(); ++i) v[i] = f(grid.node(i));
    return make_grid_function(grid, std::move(v), time_tag);
}

// Conserved integral carried by fundamental solutions.
struct Mass {
    double value;
    explicit Mass(double m);
};

// Composite trapezoid integral over the grid.
double mass_of(const GridFunction1D& u);

// Sum of |u_{i+1}-u_i| over adjacent nodes.  For sampled data the sup over
// partitions equals this adjacent-node sum.
double total_variation(const GridFunction1D& u);

// Smallest closed interval containing all nodes with value > floor.
std::optional<std::pair<double, double>> support_of(const GridFunction1D& u,
                                                    double floor);

// Triangular bump of mass m centered at x0, renormalized after sampling so
// that mass_of equals m to machine precision.
GridFunction1D approximate_delta(Mass m, double x0, double width,
                                 const Grid1D& grid);

// L1 norm of u - v (shared grid required).
double l1_distance(const GridFunction1D& u, const GridFunction1D& v);
double l1_norm(const GridFunction1D& u);

// CSV: header "x,value,t", one node per row, >= 15 significant digits.
std::string to_csv(const GridFunction1D& u);
void write_csv(const GridFunction1D& u, const std::string& path);
GridFunction1D read_frame_csv(const std::string& path);

}  // namespace oneside
