#include "currentkit/mobius.hpp"

#include <cmath>

namespace currentkit {

MobiusMap::MobiusMap(double a, double b, double c, double d) {
    const double det = a * d - b * c;
    if (!(det > 0.0))
        throw ValidationError("MobiusMap: determinant must be positive");
    const double s = 1.0 / std::sqrt(det);
    m_ = {a * s, b * s, c * s, d * s};
}

MobiusMap MobiusMap::operator*(const MobiusMap& o) const {
    return raw(m_[0] * o.m_[0] + m_[1] * o.m_[2], m_[0] * o.m_[1] + m_[1] * o.m_[3],
               m_[2] * o.m_[0] + m_[3] * o.m_[2], m_[2] * o.m_[1] + m_[3] * o.m_[3]);
}

ElementType MobiusMap::classify(double tol_class) const {
    const double id_gap = std::max(
        std::max(std::fabs(std::fabs(m_[0]) - 1.0), std::fabs(std::fabs(m_[3]) - 1.0)),
        std::max(std::fabs(m_[1]), std::fabs(m_[2])));
    if (id_gap < tol_class && std::fabs(std::fabs(trace()) - 2.0) < tol_class &&
        m_[0] * m_[3] > 0.0)
        return ElementType::identity;
    const double t = std::fabs(trace());
    if (std::fabs(t - 2.0) < tol_class) return ElementType::parabolic;
    return t > 2.0 ? ElementType::hyperbolic : ElementType::elliptic;
}

BoundaryPoint MobiusMap::apply(BoundaryPoint p) const {
    const auto v = vec_of(p);
    const auto w = apply_vec(v);
    return boundary_from_vec(w[0], w[1]);
}

std::pair<BoundaryPoint, BoundaryPoint> MobiusMap::axis(double tol_class) const {
    if (classify(tol_class) != ElementType::hyperbolic)
        throw NotHyperbolic("axis: element is not hyperbolic");
    double a = m_[0], b = m_[1], c = m_[2], d = m_[3];
    if (a + d < 0.0) { a = -a; b = -b; c = -c; d = -d; }
    const double tr = a + d;
    const double disc = std::sqrt(tr * tr - 4.0);
    const auto eigendir = [&](double lam) {
        // (M - lam) v = 0; take the better-conditioned row.
        const double x1 = b, y1 = lam - a;
        const double x2 = lam - d, y2 = c;
        if (x1 * x1 + y1 * y1 >= x2 * x2 + y2 * y2)
            return boundary_from_vec(x1, y1);
        return boundary_from_vec(x2, y2);
    };
    const double lam_plus = (tr + disc) / 2.0;
    const double lam_minus = (tr - disc) / 2.0;
    return {eigendir(lam_plus), eigendir(lam_minus)};
}

double MobiusMap::translation_length(double tol_class) const {
    switch (classify(tol_class)) {
        case ElementType::hyperbolic:
            return 2.0 * std::acosh(std::fabs(trace()) / 2.0);
        case ElementType::parabolic:
            return 0.0;
        case ElementType::identity:
            throw EllipticElement("translation_length: identity element");
        default:
            throw EllipticElement("translation_length: elliptic element");
    }
}

bool MobiusMap::equal_up_to_sign(const MobiusMap& o, double tol) const {
    double dplus = 0.0, dminus = 0.0;
    for (int i = 0; i < 4; ++i) {
        dplus = std::max(dplus, std::fabs(m_[i] - o.m_[i]));
        dminus = std::max(dminus, std::fabs(m_[i] + o.m_[i]));
    }
    return std::min(dplus, dminus) < tol;
}

} // namespace currentkit
