#include "oneside/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace oneside {

namespace {

struct HullPoint {
    double u, f;
    int idx;
};

double cross(const HullPoint& a, const HullPoint& b, const HullPoint& c) {
    return (b.u - a.u) * (c.f - a.f) - (b.f - a.f) * (c.u - a.u);
}

// Lower hull of the sampled graph; consecutive slopes increase.
std::vector<HullPoint> lower_hull(const std::vector<HullPoint>& pts) {
    std::vector<HullPoint> h;
    for (const auto& p : pts) {
        while (h.size() >= 2 && cross(h[h.size() - 2], h.back(), p) <= 0.0)
            h.pop_back();
        h.push_back(p);
    }
    return h;
}

std::vector<Envelope::Segment> build_segments(
    const std::vector<HullPoint>& hull,
    const std::function<double(double)>& f, double scale) {
    std::vector<Envelope::Segment> segs;
    for (size_t k = 0; k + 1 < hull.size(); ++k) {
        const auto& a = hull[k];
        const auto& b = hull[k + 1];
        auto shape = (b.idx == a.idx + 1) ? Envelope::Segment::Shape::follows_flux
                                          : Envelope::Segment::Shape::linear;
        if (shape == Envelope::Segment::Shape::linear) {
            // a chord indistinguishable from f over its whole span is not a
            // shock
            double slope = (b.f - a.f) / (b.u - a.u);
            bool on_flux = true;
            for (int j = 0; j <= 16; ++j) {
                double u = a.u + (b.u - a.u) * j / 16.0;
                if (std::abs(f(u) - (a.f + slope * (u - a.u))) >
                    1e-12 * std::max(1.0, scale)) {
                    on_flux = false;
                    break;
                }
            }
            if (on_flux) shape = Envelope::Segment::Shape::follows_flux;
        }
        if (!segs.empty() &&
            segs.back().shape == Envelope::Segment::Shape::follows_flux &&
            shape == Envelope::Segment::Shape::follows_flux) {
            segs.back().u_hi = b.u;
            segs.back().value_hi = b.f;
        } else {
            segs.push_back({a.u, b.u, shape, a.f, b.f});
        }
    }
    return segs;
}

std::vector<double> breakpoints(const std::vector<Envelope::Segment>& segs) {
    std::vector<double> b;
    for (const auto& s : segs) b.push_back(s.u_lo);
    b.push_back(segs.back().u_hi);
    return b;
}

Envelope envelope_impl(const Flux& f, double base, double u_bar, int n_samples,
                       bool concave) {
    if (!(base < u_bar))
        throw std::invalid_argument("envelope needs base < u_bar");
    if (n_samples < 64) throw std::invalid_argument("envelope needs n_samples >= 64");

    double sign = concave ? -1.0 : 1.0;
    double scale = 0.0;
    for (int i = 0; i <= 64; ++i)
        scale = std::max(scale, std::abs(f(base + (u_bar - base) * i / 64.0)));

    std::vector<Envelope::Segment> segs;
    std::vector<double> prev_bp;
    int n = n_samples;
    for (int pass = 0; pass < 7; ++pass, n *= 2) {
        std::vector<HullPoint> pts(n + 1);
        for (int i = 0; i <= n; ++i) {
            double u = base + (u_bar - base) * i / n;
            pts[i] = {u, sign * f(u), i};
        }
        auto hull = lower_hull(pts);
        auto fs = [&](double u) { return sign * f(u); };
        segs = build_segments(hull, fs, scale);
        auto bp = breakpoints(segs);
        if (!prev_bp.empty() && bp.size() == prev_bp.size()) {
            double move = 0.0;
            for (size_t i = 0; i < bp.size(); ++i)
                move = std::max(move, std::abs(bp[i] - prev_bp[i]));
            if (move < 1e-6) break;
        }
        prev_bp = bp;
    }
    if (concave)
        for (auto& s : segs) {
            s.value_lo = -s.value_lo;
            s.value_hi = -s.value_hi;
        }

    Envelope e;
    e.base = base;
    e.u_bar = u_bar;
    e.kind = concave ? Envelope::Kind::upper_concave : Envelope::Kind::lower_convex;
    e.segments = std::move(segs);
    e.flux = f;
    return e;
}

}  // namespace

double Envelope::value(double u) const {
    u = std::clamp(u, base, u_bar);
    for (const auto& s : segments) {
        if (u <= s.u_hi || &s == &segments.back()) {
            if (s.shape == Segment::Shape::follows_flux) return flux(u);
            double w = (u - s.u_lo) / (s.u_hi - s.u_lo);
            return (1.0 - w) * s.value_lo + w * s.value_hi;
        }
    }
    return flux(u);
}

Envelope convex_envelope(const Flux& f, double base, double u_bar,
                         int n_samples) {
    return envelope_impl(f, base, u_bar, n_samples, false);
}

Envelope concave_envelope(const Flux& f, double base, double u_bar,
                          int n_samples) {
    return envelope_impl(f, base, u_bar, n_samples, true);
}

std::vector<ShockCandidate> shocks_of_envelope(const Envelope& e) {
    std::vector<ShockCandidate> out;
    for (const auto& s : e.segments) {
        if (s.shape != Envelope::Segment::Shape::linear) continue;
        double speed = (s.value_hi - s.value_lo) / (s.u_hi - s.u_lo);
        if (e.kind == Envelope::Kind::lower_convex)
            out.push_back({s.u_lo, s.u_hi, speed});  // increasing jump
        else
            out.push_back({s.u_hi, s.u_lo, speed});  // decreasing jump
    }
    return out;
}

std::string to_csv(const Envelope& e) {
    std::ostringstream os;
    os.precision(17);
    os << "u_lo,u_hi,shape,value_lo,value_hi\n";
    for (const auto& s : e.segments)
        os << s.u_lo << ',' << s.u_hi << ','
           << (s.shape == Envelope::Segment::Shape::linear ? "linear"
                                                           : "follows_flux")
           << ',' << s.value_lo << ',' << s.value_hi << '\n';
    return os.str();
}

}  // namespace oneside
