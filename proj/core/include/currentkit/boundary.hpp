#pragma once

#include <array>
#include <utility>

#include "currentkit/errors.hpp"

namespace currentkit {

struct Tolerances {
    double point = 1e-9;          // angular coincidence on the boundary circle
    double classification = 1e-9; // |trace| - 2 band for parabolic elements
};

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Point of the boundary circle of H^2.  The projective line (x:y) is
// parametrized by the doubled angle phi = 2*atan2(y,x), canonical in [0,2pi).
struct BoundaryPoint {
    double phi = 0.0;
};

BoundaryPoint boundary_point(double phi);
BoundaryPoint boundary_from_vec(double x, double y);
std::array<double, 2> vec_of(BoundaryPoint p);

// Smallest angular distance between two boundary points.
double angular_gap(BoundaryPoint p, BoundaryPoint q);
bool same_point(BoundaryPoint p, BoundaryPoint q, double tol = 1e-9);

// True iff walking counterclockwise from a meets b strictly before c.
// Total cyclic order on pairwise-distinct triples.
bool orient(BoundaryPoint a, BoundaryPoint b, BoundaryPoint c, double tol = 1e-9);

// Unoriented geodesic, stored as an unordered endpoint pair.
struct Geodesic {
    BoundaryPoint p, q;
};

Geodesic make_geodesic(BoundaryPoint p, BoundaryPoint q, double tol = 1e-9);

enum class Crossing { yes, no, shared_endpoint };

// Linking test on endpoint pairs.  Shared endpoints are reported, not decided.
Crossing crossing(const Geodesic& g1, const Geodesic& g2, double tol = 1e-9);
bool cross(const Geodesic& g1, const Geodesic& g2, double tol = 1e-9); // throws SharedEndpoint

// Interval of the circle from a counterclockwise to b, with closure flags.
struct Interval {
    BoundaryPoint a, b;
    bool closed_a = false;
    bool closed_b = false;

    bool contains(BoundaryPoint x, double tol = 1e-9) const;
};

// Liouville measure of the box ]a,b[ x ]c,d[, normalized so that
// i(L, delta_gamma) equals the translation length of gamma.
// Requires the two intervals to have disjoint closures.
double liouville_box(BoundaryPoint a, BoundaryPoint b, BoundaryPoint c, BoundaryPoint d,
                     double tol = 1e-9);

} // namespace currentkit
