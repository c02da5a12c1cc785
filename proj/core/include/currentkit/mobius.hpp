#pragma once

#include <array>
#include <utility>

#include "currentkit/boundary.hpp"
#include "currentkit/errors.hpp"

namespace currentkit {

enum class ElementType { identity, elliptic, parabolic, hyperbolic };

// Determinant-one 2x2 real matrix acting projectively on the boundary
// circle.  +M and -M represent the same map.
class MobiusMap {
public:
    MobiusMap() : m_{1.0, 0.0, 0.0, 1.0} {}
    MobiusMap(double a, double b, double c, double d); // renormalizes det to 1

    static MobiusMap identity() { return MobiusMap(); }

    double a() const { return m_[0]; }
    double b() const { return m_[1]; }
    double c() const { return m_[2]; }
    double d() const { return m_[3]; }
    const std::array<double, 4>& entries() const { return m_; }

    double trace() const { return m_[0] + m_[3]; }
    double det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }

    MobiusMap operator*(const MobiusMap& o) const;
    MobiusMap inverse() const { return raw(m_[3], -m_[1], -m_[2], m_[0]); }

    ElementType classify(double tol_class = 1e-9) const;

    BoundaryPoint apply(BoundaryPoint p) const;
    std::array<double, 2> apply_vec(const std::array<double, 2>& v) const {
        return {m_[0] * v[0] + m_[1] * v[1], m_[2] * v[0] + m_[3] * v[1]};
    }
    // Extended precision: deep translates amplify roundoff by the squared
    // matrix norm, which double width cannot absorb at the radii in use.
    std::array<long double, 2> apply_vec_ld(const std::array<long double, 2>& v) const {
        return {static_cast<long double>(m_[0]) * v[0] + static_cast<long double>(m_[1]) * v[1],
                static_cast<long double>(m_[2]) * v[0] + static_cast<long double>(m_[3]) * v[1]};
    }

    // (attracting, repelling) fixed points of a hyperbolic map.
    std::pair<BoundaryPoint, BoundaryPoint> axis(double tol_class = 1e-9) const;

    // 2*arccosh(|tr|/2) for hyperbolic, 0 for parabolic; elliptic input throws.
    double translation_length(double tol_class = 1e-9) const;

    bool equal_up_to_sign(const MobiusMap& o, double tol) const;

private:
    static MobiusMap raw(double a, double b, double c, double d) {
        MobiusMap m;
        m.m_ = {a, b, c, d};
        return m;
    }
    std::array<double, 4> m_;
};

} // namespace currentkit
