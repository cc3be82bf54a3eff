#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "oneside/grid.hpp"

namespace oneside {

// Dense sampled function on a tensor-product grid, 1 to 3 dimensions.
// Storage is row-major with the last axis fastest.
struct GridFunctionND {
    std::vector<Grid1D> axes;
    std::vector<double> values;
    double time_tag = 0.0;

    // set by heat_convolve so that downstream fields can be evaluated
    // exactly as quadrature sums of Gaussians
    std::shared_ptr<const GridFunctionND> source;
    double source_t = 0.0;

    int n_dim() const { return static_cast<int>(axes.size()); }
    int extent(int d) const { return axes[d].num_nodes(); }
    std::size_t num_values() const;
    std::size_t flat_index(const std::vector<int>& idx) const;
    double& at(const std::vector<int>& idx);
    double at(const std::vector<int>& idx) const;
    double node(int d, int i) const { return axes[d].node(i); }

    // multilinear interpolation, clamped to the domain box
    double interp(const std::vector<double>& x) const;

    double max_value() const;
    double max_abs() const;
};

GridFunctionND make_grid_function_nd(std::vector<Grid1D> axes,
                                     std::vector<double> values,
                                     double time_tag = 0.0);

template <class F>
GridFunctionND sample_nd(std::vector<Grid1D> axes, F&& f,
                         double time_tag = 0.0) {
    const int nd = static_cast<int>(axes.size());
    std::size_t total = 1;
    for (const auto& a : axes) total *= a.num_nodes();
    std::vector<double> v(total);
    std::vector<int> idx(nd, 0);
    std::vector<double> x(nd);
    for (std::size_t k = 0; k < total; ++k) {
        for (int d = 0; d < nd; ++d) x[d] = axes[d].node(idx[d]);
        v[k] = f(x);
        for (int d = nd - 1; d >= 0; --d) {
            if (++idx[d] < axes[d].num_nodes()) break;
            idx[d] = 0;
        }
    }
    return make_grid_function_nd(std::move(axes), std::move(v), time_tag);
}

double mass_of(const GridFunctionND& u);            // tensor trapezoid
double l1_distance(const GridFunctionND& u, const GridFunctionND& v);

// Exact-kernel quadrature convolution with the heat kernel, axis by axis.
// Throws when the result has not decayed at the domain boundary (support too
// close to the edge for this t).
GridFunctionND heat_convolve(const GridFunctionND& u0, double t);

// psi(x) = u(x) / rho_m(x - x0, t) with the exact Gaussian denominator.
struct PsiField {
    GridFunctionND psi;
    double mass = 0.0;
    double t = 0.0;
    std::vector<double> x0;

    // present when u carries convolution provenance: evaluates psi anywhere
    // as a positively weighted sum of exponentials of linear functions
    std::function<double(const std::vector<double>&)> exact_eval;
};

PsiField psi_field(const GridFunctionND& u, Mass m,
                   const std::vector<double>& x0, double t);

struct NdVerdict {
    bool holds = true;
    double worst = 0.0;  // most negative relative second difference / margin
    std::vector<double> location;
    std::string detail;
};

// Second differences of psi along axis lines, box diagonals and n_lines
// seeded random segments must stay >= -tol * local scale.
NdVerdict convexity_check(const PsiField& psi, int n_lines,
                          double tol = 1e-8, std::uint64_t seed = 0);

// 2-D only: A = {nodes with rho_m(.-x0) - u > tol} must equal its discrete
// convex hull up to a one-cell boundary band (or be empty).
NdVerdict levelset_convexity(const GridFunctionND& u, Mass m,
                             const std::vector<double>& x0, double t,
                             double tol);

// CSV: header "x1,...,xn,value,t", one row per node.
std::string to_csv(const GridFunctionND& u);
void write_csv_nd(const GridFunctionND& u, const std::string& path);
GridFunctionND read_frame_csv_nd(const std::string& path);

}  // namespace oneside
