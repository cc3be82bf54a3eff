#include "oneside/flux.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace oneside {

Flux make_flux(std::function<double(double)> eval,
               std::function<double(double)> deriv, std::string label,
               Flux::Hint hint, double u_max) {
    if (!eval || !deriv) throw std::invalid_argument("flux needs eval and deriv");
    if (!(u_max > 0.0)) throw std::invalid_argument("flux needs u_max > 0");
    double f0 = eval(0.0);
    double fp0 = deriv(0.0);
    Flux f;
    f.eval = [eval, f0, fp0](double u) { return eval(u) - f0 - fp0 * u; };
    f.deriv = [deriv, fp0](double u) { return deriv(u) - fp0; };
    f.label = std::move(label);
    f.hint = hint;
    f.u_max = u_max;

    // deriv must match eval under central differences on the working range.
    double span = std::min(u_max, 8.0);
    double h = 1e-5 * std::max(1.0, span);
    double scale = 1.0;
    for (int i = 1; i <= 13; ++i) {
        double u = span * i / 14.0;
        scale = std::max(scale, std::abs(f.eval(u)));
    }
    for (int i = 1; i <= 13; ++i) {
        double u = span * i / 14.0;
        double fd = (f.eval(u + h) - f.eval(u - h)) / (2.0 * h);
        if (std::abs(fd - f.deriv(u)) > 1e-6 * std::max(1.0, scale))
            throw std::invalid_argument("flux deriv inconsistent with eval near u=" +
                                        std::to_string(u));
    }
    return f;
}

Flux burgers_flux() {
    return make_flux([](double u) { return 0.5 * u * u; },
                     [](double u) { return u; }, "burgers", Flux::Hint::convex,
                     64.0);
}

Flux cubic_flux() {
    return make_flux([](double u) { return u * u * u / 3.0; },
                     [](double u) { return u * u; }, "cubic",
                     Flux::Hint::convex, 16.0);
}

Flux buckley_leverett_flux() {
    auto f = [](double u) {
        double a = u * u, b = (1.0 - u) * (1.0 - u);
        return a / (a + b);
    };
    auto fp = [](double u) {
        double a = u * u, b = (1.0 - u) * (1.0 - u);
        double d = a + b;
        return 2.0 * u * (1.0 - u) / (d * d);
    };
    return make_flux(f, fp, "buckley_leverett", Flux::Hint::single_inflection,
                     1.0);
}

Flux quartic_flux() {
    return make_flux(
        [](double u) { return u * u * u * u / 4.0 - u * u * u + u * u; },
        [](double u) { return u * u * u - 3.0 * u * u + 2.0 * u; }, "quartic",
        Flux::Hint::general, 4.0);
}

Flux flux_from_table(const std::vector<double>& u,
                     const std::vector<double>& f, std::string label) {
    if (u.size() != f.size() || u.size() < 2)
        throw std::invalid_argument("flux table needs >= 2 matched samples");
    for (size_t i = 0; i + 1 < u.size(); ++i)
        if (!(u[i] < u[i + 1]))
            throw std::invalid_argument("flux table u column must be strictly increasing");
    auto eval = [u, f](double x) {
        if (x <= u.front())
            return f.front() + (x - u.front()) * (f[1] - f[0]) / (u[1] - u[0]);
        auto it = std::upper_bound(u.begin(), u.end(), x);
        size_t i = std::min(u.size() - 1,
                            static_cast<size_t>(it - u.begin()));
        if (i == 0) i = 1;
        double w = (x - u[i - 1]) / (u[i] - u[i - 1]);
        return (1.0 - w) * f[i - 1] + w * f[i];
    };
    auto deriv = [u, f](double x) {
        size_t i = 1;
        while (i + 1 < u.size() && x > u[i]) ++i;
        return (f[i] - f[i - 1]) / (u[i] - u[i - 1]);
    };
    // Central-difference verification would straddle kinks; build the Flux by
    // hand with the same normalization contract instead.
    double f0 = eval(0.0), fp0 = deriv(0.0);
    Flux out;
    out.eval = [eval, f0, fp0](double x) { return eval(x) - f0 - fp0 * x; };
    out.deriv = [deriv, fp0](double x) { return deriv(x) - fp0; };
    out.label = std::move(label);
    out.hint = Flux::Hint::general;
    out.u_max = u.back();
    return out;
}

Flux flux_from_table_csv(const std::string& path, std::string label) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    std::getline(in, line);  // header "u,f"
    std::vector<double> us, fs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string a, b;
        if (!std::getline(ls, a, ',') || !std::getline(ls, b, ','))
            throw std::runtime_error("bad flux table row in " + path);
        us.push_back(std::stod(a));
        fs.push_back(std::stod(b));
    }
    return flux_from_table(us, fs, std::move(label));
}

Flux flux_by_label(const std::string& label) {
    if (label == "burgers") return burgers_flux();
    if (label == "cubic") return cubic_flux();
    if (label == "buckley_leverett") return buckley_leverett_flux();
    if (label == "quartic") return quartic_flux();
    throw std::invalid_argument(
        "unknown flux label '" + label +
        "' (known: burgers, cubic, buckley_leverett, quartic)");
}

double rarefaction_profile(const Flux& f, double y) {
    double lo = 0.0, hi = f.u_max;
    double flo = f.deriv(lo), fhi = f.deriv(hi);
    if (fhi < flo) throw std::invalid_argument("nonmonotone f' on working range");
    if (y < flo - 1e-12 || y > fhi + 1e-12)
        throw std::invalid_argument("y outside the range of f'");
    // monotone f' on [0, u_max]: plain bisection on f'(g) = y
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
        double mid = 0.5 * (lo + hi);
        if (f.deriv(mid) < y)
            lo = mid;
        else
            hi = mid;
    }
    double g = 0.5 * (lo + hi);
    if (std::abs(f.deriv(g) - y) > 1e-8 * (1.0 + std::abs(y)))
        throw std::invalid_argument("nonmonotone f' detected in bisection");
    return g;
}

bool chord_admissible(const Flux& f, double u_left, double u_right,
                      double tol) {
    if (u_left == u_right)
        throw std::invalid_argument("chord_admissible needs distinct states");
    double a = std::min(u_left, u_right), b = std::max(u_left, u_right);
    double fa = f(a), fb = f(b);
    double slope = (fb - fa) / (b - a);
    bool decreasing = u_left > u_right;
    const int samples = 1024;
    for (int i = 1; i < samples; ++i) {
        double u = a + (b - a) * i / samples;
        double chord = fa + slope * (u - a);
        double d = f(u) - chord;
        // decreasing jump: graph stays weakly below the chord; increasing:
        // weakly above.
        if (decreasing ? d > tol : d < -tol) return false;
    }
    return true;
}

bool chord_admissible(const Flux& f, double u_left, double u_right) {
    double a = std::min(u_left, u_right), b = std::max(u_left, u_right);
    double m = 0.0;
    for (int i = 0; i <= 16; ++i)
        m = std::max(m, std::abs(f(a + (b - a) * i / 16.0)));
    return chord_admissible(f, u_left, u_right, 1e-9 * (1.0 + m));
}

}  // namespace oneside
