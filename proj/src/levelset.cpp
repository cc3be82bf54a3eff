#include "oneside/levelset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oneside {

SignPattern sign_pattern(const GridFunction1D& e, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("sign_pattern needs tol > 0");
    SignPattern s;
    s.tol = tol;
    s.signs.resize(e.size());
    s.nodes.resize(e.size());
    for (int i = 0; i < e.size(); ++i) {
        s.signs[i] = e[i] > tol ? 1 : (e[i] < -tol ? -1 : 0);
        s.nodes[i] = e.grid.node(i);
    }
    return s;
}

SignPattern sign_pattern_of(const std::vector<int>& signs) {
    SignPattern s;
    s.signs = signs;
    s.tol = 0.0;
    s.nodes.resize(signs.size());
    for (size_t i = 0; i < signs.size(); ++i) s.nodes[i] = static_cast<double>(i);
    return s;
}

ConnectabilityReport is_connectable(const SignPattern& s) {
    ConnectabilityReport r;
    int last_plus = -1, minus_after_plus = -1;
    int prev = 0;
    for (size_t i = 0; i < s.signs.size(); ++i) {
        int sg = s.signs[i];
        if (sg == 0) continue;
        if (sg == 1 && prev != 1) ++r.plus_components;
        if (sg == 1) {
            if (minus_after_plus >= 0 && !r.witness) {
                r.connectable = false;
                r.witness = {s.nodes[last_plus], s.nodes[minus_after_plus],
                             s.nodes[i]};
            }
            last_plus = static_cast<int>(i);
            minus_after_plus = -1;
        } else if (last_plus >= 0 && minus_after_plus < 0) {
            minus_after_plus = static_cast<int>(i);
        }
        prev = sg;
    }
    return r;
}

int sign_change_count(const SignPattern& s) {
    int count = 0, prev = 0;
    for (int sg : s.signs) {
        if (sg == 0) continue;
        if (prev != 0 && sg != prev) ++count;
        prev = sg;
    }
    return count;
}

int monotonicity_changes(const GridFunction1D& u, double tol) {
    int count = 0, prev = 0;
    for (int i = 0; i + 1 < u.size(); ++i) {
        double d = u[i + 1] - u[i];
        int sg = d > tol ? 1 : (d < -tol ? -1 : 0);
        if (sg == 0) continue;
        if (prev != 0 && sg != prev) ++count;
        prev = sg;
    }
    return count;
}

namespace {

// Dominant sign of d on the node range [lo, hi]; 0 when nothing clears tol.
int window_sign(const std::vector<double>& d, int lo, int hi, double tol) {
    double best = 0.0;
    for (int i = std::max(lo, 0); i <= hi && i < static_cast<int>(d.size());
         ++i)
        if (std::abs(d[i]) > std::abs(best) && std::abs(d[i]) > tol) best = d[i];
    return best > 0.0 ? 1 : (best < 0.0 ? -1 : 0);
}

}  // namespace

SteepnessReport steepness_classify(const GridFunction1D& u,
                                   const GridFunction1D& rho, double t,
                                   double tol, double delta) {
    if (!(u.grid == rho.grid))
        throw std::invalid_argument("steepness_classify requires one grid");
    (void)t;
    const int n = u.size();
    const double dx = u.grid.dx();
    if (delta <= 0.0) delta = 5.0 * dx;
    const int look = std::max(1, static_cast<int>(std::round(delta / dx)));

    std::vector<double> d(n);
    for (int i = 0; i < n; ++i) d[i] = rho[i] - u[i];

    // a node belongs to an intersection interval when the adjacent-node value
    // ranges of u and rho overlap within tol (this covers both |d| <= tol and
    // sign changes across a cell)
    std::vector<char> meet(n, 0);
    for (int i = 0; i < n; ++i) {
        int lo = std::max(0, i - 1), hi = std::min(n - 1, i + 1);
        double ulo = u[lo], uhi = u[lo], rlo = rho[lo], rhi = rho[lo];
        for (int j = lo; j <= hi; ++j) {
            ulo = std::min(ulo, u[j]);
            uhi = std::max(uhi, u[j]);
            rlo = std::min(rlo, rho[j]);
            rhi = std::max(rhi, rho[j]);
        }
        meet[i] = (ulo <= rhi + tol && rlo <= uhi + tol) ? 1 : 0;
    }

    int crest = 0;
    for (int i = 0; i < n; ++i)
        if (rho[i] > rho[crest]) crest = i;
    bool large_m = rho.max_value() >= u.max_value();

    SteepnessReport rep;
    int i = 0;
    while (i < n) {
        if (!meet[i]) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 < n && meet[j + 1]) ++j;

        SteepnessInterval iv;
        iv.a = u.grid.node(i);
        iv.b = u.grid.node(j);
        int left = window_sign(d, i - look, i - 1, tol);
        int right = window_sign(d, j + 1, j + look, tol);
        bool left_missing = (i == 0 || left == 0);
        bool right_missing = (j == n - 1 || right == 0);

        bool increasing_side = j < crest;
        bool decreasing_side = i > crest;
        if (left_missing || right_missing ||
            (!increasing_side && !decreasing_side)) {
            // flank(s) unavailable: degenerate; call it (a) when whatever
            // flank is visible matches the allowed crossing, else unknown
            int a_left = increasing_side ? -1 : 1;
            int a_right = increasing_side ? 1 : -1;
            bool ok_left = left_missing || left == a_left;
            bool ok_right = right_missing || right == a_right;
            if (!increasing_side && !decreasing_side)
                iv.scenario = 'a';
            else
                iv.scenario = (ok_left && ok_right) ? 'a' : '-';
        } else if (increasing_side) {
            if (left < 0 && right > 0) iv.scenario = 'a';
            else if (left < 0 && right < 0) iv.scenario = 'b';
            else if (left > 0 && right > 0) iv.scenario = 'c';
            else iv.scenario = 'd';
        } else {
            // mirrored labels on the decreasing side
            if (left > 0 && right < 0) iv.scenario = 'a';
            else if (left < 0 && right < 0) iv.scenario = 'b';
            else if (left > 0 && right > 0) iv.scenario = 'c';
            else iv.scenario = 'd';
        }

        bool check = false;
        if (iv.scenario == 'd') check = true;
        if ((iv.scenario == 'b' || iv.scenario == 'c') && large_m) check = true;
        if (check) {
            if (increasing_side) {
                for (int k = j + 1; k < n; ++k)
                    if (d[k] > tol) {
                        iv.violation = true;
                        iv.violation_x = u.grid.node(k);
                        break;
                    }
            } else {
                for (int k = i - 1; k >= 0; --k)
                    if (d[k] > tol) {
                        iv.violation = true;
                        iv.violation_x = u.grid.node(k);
                        break;
                    }
            }
        }
        rep.intervals.push_back(iv);
        rep.any_violation = rep.any_violation || iv.violation;
        i = j + 1;
    }
    return rep;
}

}  // namespace oneside
