#include "currentkit/boundary.hpp"

#include <cmath>

namespace currentkit {

BoundaryPoint boundary_point(double phi) {
    double p = std::fmod(phi, kTwoPi);
    if (p < 0.0) p += kTwoPi;
    if (p >= kTwoPi) p = 0.0;
    return BoundaryPoint{p};
}

BoundaryPoint boundary_from_vec(double x, double y) {
    return boundary_point(2.0 * std::atan2(y, x));
}

std::array<double, 2> vec_of(BoundaryPoint p) {
    return {std::cos(p.phi / 2.0), std::sin(p.phi / 2.0)};
}

double angular_gap(BoundaryPoint p, BoundaryPoint q) {
    double d = std::fabs(p.phi - q.phi);
    return d <= kTwoPi - d ? d : kTwoPi - d;
}

bool same_point(BoundaryPoint p, BoundaryPoint q, double tol) {
    return angular_gap(p, q) < tol;
}

namespace {

inline double ccw_from(double base, double phi) {
    double d = phi - base;
    if (d < 0.0) d += kTwoPi;
    return d;
}

} // namespace

bool orient(BoundaryPoint a, BoundaryPoint b, BoundaryPoint c, double tol) {
    if (same_point(a, b, tol) || same_point(b, c, tol) || same_point(a, c, tol))
        throw DegeneratePoints("orient: coincident boundary points");
    return ccw_from(a.phi, b.phi) < ccw_from(a.phi, c.phi);
}

Geodesic make_geodesic(BoundaryPoint p, BoundaryPoint q, double tol) {
    if (same_point(p, q, tol))
        throw DegeneratePoints("geodesic endpoints coincide");
    return Geodesic{p, q};
}

Crossing crossing(const Geodesic& g1, const Geodesic& g2, double tol) {
    const BoundaryPoint& p = g1.p;
    const BoundaryPoint& q = g1.q;
    const BoundaryPoint& r = g2.p;
    const BoundaryPoint& s = g2.q;
    if (same_point(p, r, tol) || same_point(p, s, tol) ||
        same_point(q, r, tol) || same_point(q, s, tol))
        return Crossing::shared_endpoint;
    const bool r_in = ccw_from(p.phi, r.phi) < ccw_from(p.phi, q.phi);
    const bool s_in = ccw_from(p.phi, s.phi) < ccw_from(p.phi, q.phi);
    return (r_in != s_in) ? Crossing::yes : Crossing::no;
}

bool cross(const Geodesic& g1, const Geodesic& g2, double tol) {
    switch (crossing(g1, g2, tol)) {
        case Crossing::yes: return true;
        case Crossing::no: return false;
        default: throw SharedEndpoint("cross: geodesics share an endpoint");
    }
}

bool Interval::contains(BoundaryPoint x, double tol) const {
    if (same_point(x, a, tol)) return closed_a;
    if (same_point(x, b, tol)) return closed_b;
    return ccw_from(a.phi, x.phi) < ccw_from(a.phi, b.phi);
}

double liouville_box(BoundaryPoint a, BoundaryPoint b, BoundaryPoint c,
                     BoundaryPoint d, double tol) {
    const BoundaryPoint pts[4] = {a, b, c, d};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (same_point(pts[i], pts[j], tol))
                throw OverlappingIntervals("liouville_box: coincident interval endpoints");
    // ]a,b[ and ]c,d[ must not link or nest across each other: both c and d
    // on the same side of {a,b}.
    const bool c_in = ccw_from(a.phi, c.phi) < ccw_from(a.phi, b.phi);
    const bool d_in = ccw_from(a.phi, d.phi) < ccw_from(a.phi, b.phi);
    if (c_in || d_in)
        throw OverlappingIntervals("liouville_box: interval closures are not disjoint");

    // Cross-ratio in the projective chart.  For points given as directions
    // v_i the chart differences collapse to sin((phi_j - phi_i)/2), so the
    // point at infinity needs no special case.
    const auto halfsin = [](BoundaryPoint u, BoundaryPoint v) {
        return std::sin((v.phi - u.phi) / 2.0);
    };
    const double cr = (halfsin(a, c) * halfsin(b, d)) / (halfsin(a, d) * halfsin(b, c));
    return std::fabs(std::log(std::fabs(cr)));
}

} // namespace currentkit
