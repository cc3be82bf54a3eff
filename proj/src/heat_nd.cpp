#include "oneside/heat_nd.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace oneside {

std::size_t GridFunctionND::num_values() const {
    std::size_t total = 1;
    for (const auto& a : axes) total *= a.num_nodes();
    return total;
}

std::size_t GridFunctionND::flat_index(const std::vector<int>& idx) const {
    std::size_t k = 0;
    for (int d = 0; d < n_dim(); ++d) k = k * extent(d) + idx[d];
    return k;
}

double& GridFunctionND::at(const std::vector<int>& idx) {
    return values[flat_index(idx)];
}

double GridFunctionND::at(const std::vector<int>& idx) const {
    return values[flat_index(idx)];
}

double GridFunctionND::interp(const std::vector<double>& x) const {
    const int nd = n_dim();
    std::vector<int> base(nd);
    std::vector<double> frac(nd);
    for (int d = 0; d < nd; ++d) {
        const Grid1D& a = axes[d];
        double s = (x[d] - a.x_min) / a.dx();
        s = std::clamp(s, 0.0, static_cast<double>(a.n));
        int i = std::min(static_cast<int>(s), a.n - 1);
        base[d] = i;
        frac[d] = s - i;
    }
    double out = 0.0;
    std::vector<int> idx(nd);
    for (int corner = 0; corner < (1 << nd); ++corner) {
        double w = 1.0;
        for (int d = 0; d < nd; ++d) {
            bool hi = corner & (1 << d);
            idx[d] = base[d] + (hi ? 1 : 0);
            w *= hi ? frac[d] : 1.0 - frac[d];
        }
        if (w != 0.0) out += w * at(idx);
    }
    return out;
}

double GridFunctionND::max_value() const {
    return *std::max_element(values.begin(), values.end());
}

double GridFunctionND::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

GridFunctionND make_grid_function_nd(std::vector<Grid1D> axes,
                                     std::vector<double> values,
                                     double time_tag) {
    if (axes.empty() || axes.size() > 3)
        throw std::invalid_argument("GridFunctionND supports 1 to 3 dimensions");
    std::size_t total = 1;
    for (const auto& a : axes) {
        if (a.n < 2 || !(a.x_max > a.x_min))
            throw std::invalid_argument("GridFunctionND: bad axis");
        total *= a.num_nodes();
    }
    if (values.size() != total)
        throw std::invalid_argument("GridFunctionND: value count mismatch");
    for (double v : values)
        if (!std::isfinite(v))
            throw std::invalid_argument("GridFunctionND: non-finite value");
    GridFunctionND u;
    u.axes = std::move(axes);
    u.values = std::move(values);
    u.time_tag = time_tag;
    return u;
}

namespace {

double trapezoid_weight(const Grid1D& a, int i) {
    return (i == 0 || i == a.n) ? 0.5 * a.dx() : a.dx();
}

}  // namespace

double mass_of(const GridFunctionND& u) {
    const int nd = u.n_dim();
    std::vector<int> idx(nd, 0);
    double s = 0.0;
    for (std::size_t k = 0; k < u.values.size(); ++k) {
        double w = 1.0;
        for (int d = 0; d < nd; ++d) w *= trapezoid_weight(u.axes[d], idx[d]);
        s += w * u.values[k];
        for (int d = nd - 1; d >= 0; --d) {
            if (++idx[d] < u.extent(d)) break;
            idx[d] = 0;
        }
    }
    return s;
}

double l1_distance(const GridFunctionND& u, const GridFunctionND& v) {
    if (u.axes != v.axes)
        throw std::invalid_argument("l1_distance: axis mismatch");
    const int nd = u.n_dim();
    std::vector<int> idx(nd, 0);
    double s = 0.0;
    for (std::size_t k = 0; k < u.values.size(); ++k) {
        double w = 1.0;
        for (int d = 0; d < nd; ++d) w *= trapezoid_weight(u.axes[d], idx[d]);
        s += w * std::abs(u.values[k] - v.values[k]);
        for (int d = nd - 1; d >= 0; --d) {
            if (++idx[d] < u.extent(d)) break;
            idx[d] = 0;
        }
    }
    return s;
}

GridFunctionND heat_convolve(const GridFunctionND& u0, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("heat_convolve needs t > 0");
    double scale = u0.max_abs();
    for (double v : u0.values)
        if (v < -1e-12 * (1.0 + scale))
            throw std::invalid_argument("heat_convolve needs u0 >= 0");

    GridFunctionND u = u0;
    u.source.reset();
    const int nd = u.n_dim();
    const double norm = 1.0 / std::sqrt(4.0 * std::numbers::pi * t);

    for (int d = 0; d < nd; ++d) {
        const Grid1D& a = u.axes[d];
        const int n = a.num_nodes();
        // kernel matrix K[i*n+j] = w_j * phi(x_i - y_j, t)
        std::vector<double> kmat(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double dxy = a.node(i) - a.node(j);
                kmat[static_cast<std::size_t>(i) * n + j] =
                    trapezoid_weight(a, j) * norm *
                    std::exp(-dxy * dxy / (4.0 * t));
            }
        // apply along axis d: stride of that axis in row-major storage
        std::size_t stride = 1;
        for (int e = d + 1; e < nd; ++e) stride *= u.extent(e);
        std::size_t outer = u.values.size() / n;
        std::vector<double> out(u.values.size());
        std::vector<double> line(n);
        for (std::size_t o = 0; o < outer; ++o) {
            // flatten: o enumerates all index tuples with axis d removed
            std::size_t block = o / stride, rem = o % stride;
            std::size_t base = block * stride * n + rem;
            for (int j = 0; j < n; ++j) line[j] = u.values[base + j * stride];
            for (int i = 0; i < n; ++i) {
                const double* row = &kmat[static_cast<std::size_t>(i) * n];
                double s = 0.0;
                for (int j = 0; j < n; ++j) s += row[j] * line[j];
                out[base + i * stride] = s;
            }
        }
        u.values.swap(out);
    }

    // the quadrature is exact for data supported on the grid, but the result
    // is only trustworthy if it has decayed before reaching the boundary
    double mx = u.max_abs();
    if (mx > 0.0) {
        double boundary = 0.0;
        std::vector<int> idx(nd, 0);
        for (std::size_t k = 0; k < u.values.size(); ++k) {
            bool on_boundary = false;
            for (int d = 0; d < nd; ++d)
                if (idx[d] == 0 || idx[d] == u.extent(d) - 1) on_boundary = true;
            if (on_boundary) boundary = std::max(boundary, std::abs(u.values[k]));
            for (int d = nd - 1; d >= 0; --d) {
                if (++idx[d] < u.extent(d)) break;
                idx[d] = 0;
            }
        }
        if (boundary > 1e-6 * mx)
            throw std::invalid_argument(
                "heat_convolve: support too close to the boundary for this t");
    }

    u.time_tag = u0.time_tag + t;
    u.source = std::make_shared<GridFunctionND>(u0);
    u.source_t = t;
    return u;
}

PsiField psi_field(const GridFunctionND& u, Mass m,
                   const std::vector<double>& x0, double t) {
    const int nd = u.n_dim();
    if (static_cast<int>(x0.size()) != nd)
        throw std::invalid_argument("psi_field: x0 dimension mismatch");
    if (!(t > 0.0)) throw std::invalid_argument("psi_field needs t > 0");

    // largest exponent of 1/rho over the domain corners
    double worst = 0.0;
    for (int corner = 0; corner < (1 << nd); ++corner) {
        double r2 = 0.0;
        for (int d = 0; d < nd; ++d) {
            double x = (corner & (1 << d)) ? u.axes[d].x_max : u.axes[d].x_min;
            r2 += (x - x0[d]) * (x - x0[d]);
        }
        worst = std::max(worst, r2 / (4.0 * t));
    }
    if (worst > 600.0)
        throw std::invalid_argument(
            "psi_field: 1/rho_m exceeds floating-point range (shrink domain)");

    const double inv_norm = std::pow(4.0 * std::numbers::pi * t, 0.5 * nd);
    PsiField field;
    field.mass = m.value;
    field.t = t;
    field.x0 = x0;
    field.psi = u;
    field.psi.source.reset();
    std::vector<int> idx(nd, 0);
    for (std::size_t k = 0; k < field.psi.values.size(); ++k) {
        double r2 = 0.0;
        for (int d = 0; d < nd; ++d) {
            double x = u.axes[d].node(idx[d]) - x0[d];
            r2 += x * x;
        }
        field.psi.values[k] =
            u.values[k] * inv_norm * std::exp(r2 / (4.0 * t)) / m.value;
        for (int d = nd - 1; d >= 0; --d) {
            if (++idx[d] < u.extent(d)) break;
            idx[d] = 0;
        }
    }

    // exact evaluator: psi(x) = sum_y (w_y u0(y)/m) exp((2 x.(y-x0) +
    // |x0|^2 - |y|^2) / 4t), a positive combination of exponentials of
    // linear functions; requires the provenance time to match t
    if (u.source && std::abs(u.source_t - t) <= 1e-12 * t) {
        auto src = u.source;
        struct Term {
            double coef;
            std::vector<double> y;
        };
        auto terms = std::make_shared<std::vector<Term>>();
        std::vector<int> sidx(nd, 0);
        for (std::size_t k = 0; k < src->values.size(); ++k) {
            double w = 1.0;
            for (int d = 0; d < nd; ++d)
                w *= trapezoid_weight(src->axes[d], sidx[d]);
            double coef = w * src->values[k] / m.value;
            if (coef > 0.0) {
                Term tm;
                tm.coef = coef;
                tm.y.resize(nd);
                for (int d = 0; d < nd; ++d) tm.y[d] = src->axes[d].node(sidx[d]);
                terms->push_back(std::move(tm));
            }
            for (int d = nd - 1; d >= 0; --d) {
                if (++sidx[d] < src->axes[d].num_nodes()) break;
                sidx[d] = 0;
            }
        }
        double x0sq = 0.0;
        for (double v : x0) x0sq += v * v;
        field.exact_eval = [terms, x0 = x0, x0sq, t,
                            nd](const std::vector<double>& x) {
            double s = 0.0;
            for (const auto& tm : *terms) {
                double e = x0sq;
                for (int d = 0; d < nd; ++d) {
                    e += 2.0 * x[d] * (tm.y[d] - x0[d]) - tm.y[d] * tm.y[d];
                }
                s += tm.coef * std::exp(e / (4.0 * t));
            }
            return s;
        };
    }
    return field;
}

namespace {

struct Line {
    std::vector<double> point, dir;
    std::string label;
};

// parameter range of the segment box ∩ {point + s dir}
bool clip_to_box(const std::vector<Grid1D>& axes, const Line& ln, double& s0,
                 double& s1) {
    s0 = -std::numeric_limits<double>::infinity();
    s1 = std::numeric_limits<double>::infinity();
    for (std::size_t d = 0; d < axes.size(); ++d) {
        double lo = axes[d].x_min, hi = axes[d].x_max;
        if (std::abs(ln.dir[d]) < 1e-14) {
            if (ln.point[d] < lo || ln.point[d] > hi) return false;
            continue;
        }
        double a = (lo - ln.point[d]) / ln.dir[d];
        double b = (hi - ln.point[d]) / ln.dir[d];
        s0 = std::max(s0, std::min(a, b));
        s1 = std::min(s1, std::max(a, b));
    }
    return s1 > s0;
}

}  // namespace

NdVerdict convexity_check(const PsiField& psi, int n_lines, double tol,
                          std::uint64_t seed) {
    const auto& axes = psi.psi.axes;
    const int nd = static_cast<int>(axes.size());
    double max_cell = 0.0;
    std::vector<double> center(nd);
    for (int d = 0; d < nd; ++d) {
        max_cell = std::max(max_cell, axes[d].dx());
        center[d] = 0.5 * (axes[d].x_min + axes[d].x_max);
    }

    std::vector<Line> lines;
    for (int d = 0; d < nd; ++d) {
        Line ln{center, std::vector<double>(nd, 0.0), "axis"};
        ln.dir[d] = 1.0;
        lines.push_back(ln);
    }
    for (int corner = 1; corner < (1 << nd); ++corner) {
        Line ln{center, std::vector<double>(nd, 1.0), "diagonal"};
        for (int d = 0; d < nd; ++d)
            if (corner & (1 << d)) ln.dir[d] = -1.0;
        lines.push_back(ln);
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.2, 0.8);
    for (int k = 0; k < n_lines; ++k) {
        Line ln;
        ln.label = "random";
        ln.point.resize(nd);
        ln.dir.resize(nd);
        double norm = 0.0;
        for (int d = 0; d < nd; ++d) {
            ln.point[d] =
                axes[d].x_min + (axes[d].x_max - axes[d].x_min) * unif(rng);
            ln.dir[d] = gauss(rng);
            norm += ln.dir[d] * ln.dir[d];
        }
        if (norm < 1e-12) {
            --k;
            continue;
        }
        norm = std::sqrt(norm);
        for (int d = 0; d < nd; ++d) ln.dir[d] /= norm;
        lines.push_back(std::move(ln));
    }

    NdVerdict v;
    v.worst = std::numeric_limits<double>::infinity();
    const int ns = 33;
    std::vector<double> vals(ns);
    std::vector<double> x(nd);
    for (const auto& ln : lines) {
        double s0, s1;
        if (!clip_to_box(axes, ln, s0, s1)) continue;
        // keep samples a cell away from the boundary: clamped interpolation
        // flattens the field there and would fake concave kinks
        s0 += max_cell;
        s1 -= max_cell;
        if (s1 <= s0) continue;
        for (int i = 0; i < ns; ++i) {
            double s = s0 + (s1 - s0) * i / (ns - 1);
            for (int d = 0; d < nd; ++d) x[d] = ln.point[d] + s * ln.dir[d];
            vals[i] = psi.exact_eval ? psi.exact_eval(x) : psi.psi.interp(x);
        }
        for (int i = 1; i + 1 < ns; ++i) {
            double d2 = vals[i - 1] - 2.0 * vals[i] + vals[i + 1];
            double scale = std::max(
                {std::abs(vals[i - 1]), std::abs(vals[i]),
                 std::abs(vals[i + 1]), 1e-300});
            double rel = d2 / scale;
            if (rel < v.worst) {
                v.worst = rel;
                double s = s0 + (s1 - s0) * i / (ns - 1);
                v.location.assign(nd, 0.0);
                for (int d = 0; d < nd; ++d)
                    v.location[d] = ln.point[d] + s * ln.dir[d];
                v.detail = ln.label;
            }
        }
    }
    if (!std::isfinite(v.worst)) v.worst = 0.0;
    v.holds = v.worst >= -tol;
    return v;
}

namespace {

using Pt = std::pair<double, double>;

double cross(const Pt& o, const Pt& a, const Pt& b) {
    return (a.first - o.first) * (b.second - o.second) -
           (a.second - o.second) * (b.first - o.first);
}

// monotone chain; returns hull in counter-clockwise order
std::vector<Pt> convex_hull(std::vector<Pt> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Pt> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    std::size_t lower = k + 1;
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= 0) --k;
        hull[k++] = *it;
    }
    hull.resize(k - 1);
    return hull;
}

// x-interval of the hull polygon at height y (hull closed, any orientation)
bool hull_slice(const std::vector<Pt>& hull, double y, double& xlo,
                double& xhi) {
    xlo = std::numeric_limits<double>::infinity();
    xhi = -xlo;
    bool found = false;
    const std::size_t n = hull.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Pt& a = hull[i];
        const Pt& b = hull[(i + 1) % n];
        double y1 = a.second, y2 = b.second;
        if ((y1 <= y && y <= y2) || (y2 <= y && y <= y1)) {
            double x;
            if (std::abs(y2 - y1) < 1e-300) {
                xlo = std::min({xlo, a.first, b.first});
                xhi = std::max({xhi, a.first, b.first});
                found = true;
                continue;
            }
            x = a.first + (b.first - a.first) * (y - y1) / (y2 - y1);
            xlo = std::min(xlo, x);
            xhi = std::max(xhi, x);
            found = true;
        }
    }
    return found;
}

}  // namespace

NdVerdict levelset_convexity(const GridFunctionND& u, Mass m,
                             const std::vector<double>& x0, double t,
                             double tol) {
    if (u.n_dim() != 2)
        throw std::invalid_argument("levelset_convexity is implemented in 2-D");
    if (x0.size() != 2)
        throw std::invalid_argument("levelset_convexity: x0 must be 2-D");
    if (!(t > 0.0))
        throw std::invalid_argument("levelset_convexity needs t > 0");

    const Grid1D& ax = u.axes[0];
    const Grid1D& ay = u.axes[1];
    const double norm = m.value / (4.0 * std::numbers::pi * t);
    std::vector<char> in_a(u.values.size(), 0);
    std::vector<Pt> pts;
    for (int i = 0; i < ax.num_nodes(); ++i)
        for (int j = 0; j < ay.num_nodes(); ++j) {
            double X = ax.node(i) - x0[0], Y = ay.node(j) - x0[1];
            double rho = norm * std::exp(-(X * X + Y * Y) / (4.0 * t));
            std::size_t k = static_cast<std::size_t>(i) * ay.num_nodes() + j;
            if (rho - u.values[k] > tol) {
                in_a[k] = 1;
                pts.emplace_back(ax.node(i), ay.node(j));
            }
        }

    NdVerdict v;
    if (pts.size() < 3) {  // empty or degenerate: convex by convention
        v.detail = "level set empty or degenerate";
        return v;
    }
    auto hull = convex_hull(pts);
    if (hull.size() < 3) {
        v.detail = "collinear level set";
        return v;
    }

    const double band = 1.5 * std::max(ax.dx(), ay.dx());
    double ymin = hull[0].second, ymax = hull[0].second;
    for (const auto& p : hull) {
        ymin = std::min(ymin, p.second);
        ymax = std::max(ymax, p.second);
    }
    int missing = 0;
    for (int j = 0; j < ay.num_nodes(); ++j) {
        double y = ay.node(j);
        if (y < ymin + band || y > ymax - band) continue;
        double xlo, xhi;
        if (!hull_slice(hull, y, xlo, xhi)) continue;
        for (int i = 0; i < ax.num_nodes(); ++i) {
            double x = ax.node(i);
            if (x < xlo + band || x > xhi - band) continue;
            std::size_t k = static_cast<std::size_t>(i) * ay.num_nodes() + j;
            if (!in_a[k]) {
                ++missing;
                double margin = std::min({x - xlo, xhi - x, y - ymin,
                                          ymax - y});
                if (margin > v.worst) {
                    v.worst = margin;
                    v.location = {x, y};
                }
            }
        }
    }
    v.holds = missing == 0;
    v.detail = "missing interior nodes: " + std::to_string(missing);
    return v;
}

std::string to_csv(const GridFunctionND& u) {
    std::ostringstream os;
    os.precision(17);
    const int nd = u.n_dim();
    for (int d = 0; d < nd; ++d) os << "x" << d + 1 << ",";
    os << "value,t\n";
    std::vector<int> idx(nd, 0);
    for (std::size_t k = 0; k < u.values.size(); ++k) {
        for (int d = 0; d < nd; ++d) os << u.axes[d].node(idx[d]) << ",";
        os << u.values[k] << "," << u.time_tag << "\n";
        for (int d = nd - 1; d >= 0; --d) {
            if (++idx[d] < u.extent(d)) break;
            idx[d] = 0;
        }
    }
    return os.str();
}

void write_csv_nd(const GridFunctionND& u, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << to_csv(u);
    if (!f) throw std::runtime_error("write failed: " + path);
}

GridFunctionND read_frame_csv_nd(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open: " + path);
    std::string header;
    if (!std::getline(f, header))
        throw std::runtime_error("empty CSV: " + path);
    int nd = 0;
    {
        std::istringstream hs(header);
        std::string col;
        while (std::getline(hs, col, ','))
            if (!col.empty() && col[0] == 'x') ++nd;
    }
    if (nd < 1 || nd > 3)
        throw std::runtime_error("unsupported CSV dimensionality: " + path);

    std::vector<std::vector<double>> coords;
    std::vector<double> vals;
    double t = 0.0;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        if (static_cast<int>(row.size()) != nd + 2)
            throw std::runtime_error("malformed CSV row: " + path);
        coords.emplace_back(row.begin(), row.begin() + nd);
        vals.push_back(row[nd]);
        t = row[nd + 1];
    }
    if (coords.empty()) throw std::runtime_error("no data rows: " + path);

    std::vector<Grid1D> axes(nd);
    std::vector<std::vector<double>> uniq(nd);
    for (int d = 0; d < nd; ++d) {
        std::vector<double> c;
        c.reserve(coords.size());
        for (const auto& r : coords) c.push_back(r[d]);
        std::sort(c.begin(), c.end());
        for (double x : c)
            if (uniq[d].empty() || x - uniq[d].back() > 1e-12 * (1 + std::abs(x)))
                uniq[d].push_back(x);
        if (uniq[d].size() < 2)
            throw std::runtime_error("degenerate axis in CSV: " + path);
        axes[d] = Grid1D{uniq[d].front(), uniq[d].back(),
                         static_cast<int>(uniq[d].size()) - 1};
    }
    std::size_t total = 1;
    for (const auto& a : axes) total *= a.num_nodes();
    if (coords.size() != total)
        throw std::runtime_error("CSV is not a full tensor grid: " + path);

    std::vector<double> values(total, 0.0);
    GridFunctionND shape;
    shape.axes = axes;
    std::vector<int> idx(nd);
    for (std::size_t r = 0; r < coords.size(); ++r) {
        for (int d = 0; d < nd; ++d) idx[d] = axes[d].nearest_node(coords[r][d]);
        values[shape.flat_index(idx)] = vals[r];
    }
    return make_grid_function_nd(std::move(axes), std::move(values), t);
}

}  // namespace oneside
