#include "oneside/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace oneside {

int Grid1D::nearest_node(double x) const {
    double i = std::round((x - x_min) / dx());
    return static_cast<int>(std::clamp(i, 0.0, static_cast<double>(n)));
}

Grid1D make_uniform_grid(double x_min, double x_max, int n) {
    if (!std::isfinite(x_min) || !std::isfinite(x_max))
        throw std::invalid_argument("grid bounds must be finite");
    if (!(x_min < x_max))
        throw std::invalid_argument("grid requires x_min < x_max");
    if (n < 2) throw std::invalid_argument("grid requires n >= 2");
    return Grid1D{x_min, x_max, n};
}

double GridFunction1D::interp(double x) const {
    if (x <= grid.x_min) return values.front();
    if (x >= grid.x_max) return values.back();
    double s = (x - grid.x_min) / grid.dx();
    int i = std::min(static_cast<int>(s), grid.n - 1);
    double w = s - i;
    return (1.0 - w) * values[i] + w * values[i + 1];
}

double GridFunction1D::max_value() const {
    return *std::max_element(values.begin(), values.end());
}

double GridFunction1D::min_value() const {
    return *std::min_element(values.begin(), values.end());
}

double GridFunction1D::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

GridFunction1D make_grid_function(Grid1D grid, std::vector<double> values,
                                  double time_tag) {
    if (static_cast<int>(values.size()) != grid.num_nodes())
        throw std::invalid_argument("value count does not match grid nodes");
    for (double v : values)
        if (!std::isfinite(v))
            throw std::invalid_argument("grid function values must be finite");
    if (time_tag < 0.0) throw std::invalid_argument("time_tag must be >= 0");
    return GridFunction1D{grid, std::move(values), time_tag};
}

Mass::Mass(double m) : value(m) {
    if (!(m > 0.0) || !std::isfinite(m))
        throw std::invalid_argument("mass must be positive and finite");
}

double mass_of(const GridFunction1D& u) {
    double s = 0.0;
    for (int i = 0; i + 1 < u.size(); ++i) s += u[i] + u[i + 1];
    return 0.5 * s * u.grid.dx();
}

double total_variation(const GridFunction1D& u) {
    double tv = 0.0;
    for (int i = 0; i + 1 < u.size(); ++i) tv += std::abs(u[i + 1] - u[i]);
    return tv;
}

std::optional<std::pair<double, double>> support_of(const GridFunction1D& u,
                                                    double floor) {
    if (floor < 0.0) throw std::invalid_argument("floor must be >= 0");
    int lo = -1, hi = -1;
    for (int i = 0; i < u.size(); ++i) {
        if (u[i] > floor) {
            if (lo < 0) lo = i;
            hi = i;
        }
    }
    if (lo < 0) return std::nullopt;
    return std::make_pair(u.grid.node(lo), u.grid.node(hi));
}

GridFunction1D approximate_delta(Mass m, double x0, double width,
                                 const Grid1D& grid) {
    double dx = grid.dx();
    if (width < 2.0 * dx)
        throw std::invalid_argument("delta bump narrower than two cells");
    if (x0 - width / 2 < grid.x_min || x0 + width / 2 > grid.x_max)
        throw std::invalid_argument("delta bump exits the domain");
    double h = 2.0 * m.value / width;  // triangle of base `width`, mass m
    auto u = sample(grid, [&](double x) {
        double r = 1.0 - std::abs(x - x0) / (width / 2);
        return r > 0.0 ? h * r : 0.0;
    });
    double got = mass_of(u);
    for (double& v : u.values) v *= m.value / got;
    return u;
}

double l1_distance(const GridFunction1D& u, const GridFunction1D& v) {
    if (!(u.grid == v.grid))
        throw std::invalid_argument("l1_distance requires a shared grid");
    double s = 0.0;
    for (int i = 0; i + 1 < u.size(); ++i) {
        double a = std::abs(u[i] - v[i]);
        double b = std::abs(u[i + 1] - v[i + 1]);
        s += a + b;
    }
    return 0.5 * s * u.grid.dx();
}

double l1_norm(const GridFunction1D& u) {
    double s = 0.0;
    for (int i = 0; i + 1 < u.size(); ++i)
        s += std::abs(u[i]) + std::abs(u[i + 1]);
    return 0.5 * s * u.grid.dx();
}

std::string to_csv(const GridFunction1D& u) {
    std::ostringstream os;
    os.precision(17);
    os << "x,value,t\n";
    for (int i = 0; i < u.size(); ++i)
        os << u.grid.node(i) << ',' << u[i] << ',' << u.time_tag << '\n';
    return os.str();
}

void write_csv(const GridFunction1D& u, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << to_csv(u);
}

GridFunction1D read_frame_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty CSV " + path);
    std::vector<double> xs, vs;
    double t = 0.0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        double row[3];
        for (int k = 0; k < 3; ++k) {
            if (!std::getline(ls, cell, ','))
                throw std::runtime_error("bad CSV row in " + path);
            row[k] = std::stod(cell);
        }
        xs.push_back(row[0]);
        vs.push_back(row[1]);
        t = row[2];
    }
    if (xs.size() < 3) throw std::runtime_error("too few CSV rows in " + path);
    Grid1D g = make_uniform_grid(xs.front(), xs.back(),
                                 static_cast<int>(xs.size()) - 1);
    return make_grid_function(g, std::move(vs), t);
}

}  // namespace oneside
