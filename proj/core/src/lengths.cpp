#include "currentkit/lengths.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "currentkit/errors.hpp"
#include "currentkit/parallel.hpp"

namespace currentkit {

namespace {

Eigen::MatrixXd symplectic_form(int dim) {
    const int n = dim / 2;
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(dim, dim);
    j.block(0, n, n, n) = Eigen::MatrixXd::Identity(n, n);
    j.block(n, 0, n, n) = -Eigen::MatrixXd::Identity(n, n);
    return j;
}

} // namespace

MatrixRep make_matrix_rep(const Surface& s, GroupType type, std::vector<Eigen::MatrixXd> images) {
    if (images.size() != s.rank())
        throw ValidationError("matrix rep: one matrix per generator required");
    MatrixRep rep;
    rep.type = type;
    rep.dim = static_cast<int>(images.front().rows());
    for (const auto& m : images) {
        if (m.rows() != rep.dim || m.cols() != rep.dim)
            throw ValidationError("matrix rep: inconsistent dimensions");
        if (std::fabs(m.determinant() - 1.0) > 1e-8)
            throw ValidationError("matrix rep: determinant must be 1");
    }
    if (type == GroupType::symplectic) {
        if (rep.dim % 2 != 0)
            throw ValidationError("matrix rep: symplectic dimension must be even");
        const Eigen::MatrixXd j = symplectic_form(rep.dim);
        for (const auto& m : images)
            if ((m.transpose() * j * m - j).cwiseAbs().maxCoeff() > 1e-8)
                throw ValidationError("matrix rep: generator does not preserve the symplectic form");
    }
    rep.generator_images = std::move(images);
    for (const Word& r : s.presentation().relators) {
        const Eigen::MatrixXd m = evaluate_rep(rep, r);
        const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(rep.dim, rep.dim);
        const double dplus = (m - id).cwiseAbs().maxCoeff();
        const double dminus = (m + id).cwiseAbs().maxCoeff();
        if (std::min(dplus, dminus) > 1e-6)
            throw ValidationError("matrix rep: relator does not map to +-identity");
    }
    return rep;
}

Eigen::MatrixXd evaluate_rep(const MatrixRep& rep, const Word& w) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(rep.dim, rep.dim);
    for (Letter l : w.letters) {
        const std::size_t idx = static_cast<std::size_t>(std::abs(static_cast<int>(l)) - 1);
        if (idx >= rep.generator_images.size())
            throw UnknownGenerator("evaluate_rep: letter out of range");
        const Eigen::MatrixXd& g = rep.generator_images[idx];
        if (l > 0)
            m *= g;
        else
            m *= g.inverse();
    }
    return m;
}

ChamberVector chamber_vector(const Eigen::MatrixXd& m, GroupType type) {
    if (std::fabs(m.determinant()) < 1e-14)
        throw NonInvertible("chamber_vector: singular matrix");
    const Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::MatrixXd>(m, false).eigenvalues();
    std::vector<double> logs(static_cast<std::size_t>(ev.size()));
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        logs[static_cast<std::size_t>(i)] = std::log(std::abs(ev[i]));
    std::sort(logs.begin(), logs.end(), std::greater<>());

    ChamberVector out;
    if (type == GroupType::special_linear) {
        // |det| = 1 forces the sum to vanish; project exactly.
        const double mean = std::accumulate(logs.begin(), logs.end(), 0.0) /
                            static_cast<double>(logs.size());
        for (double& v : logs) v -= mean;
        std::sort(logs.begin(), logs.end(), std::greater<>());
        out.x = std::move(logs);
    } else {
        const std::size_t n2 = logs.size();
        const std::size_t n = n2 / 2;
        for (std::size_t i = 0; i < n; ++i)
            if (std::fabs(logs[i] + logs[n2 - 1 - i]) > 1e-6)
                throw SpectrumPairingFailed("chamber_vector: eigenvalues fail lambda <-> 1/lambda pairing");
        out.x.assign(logs.begin(), logs.begin() + static_cast<std::ptrdiff_t>(n));
        for (double& v : out.x) v = std::max(v, 0.0);
        std::sort(out.x.begin(), out.x.end(), std::greater<>());
    }
    return out;
}

double length_L(const Eigen::MatrixXd& m, GroupType type) {
    const ChamberVector v = chamber_vector(m, type);
    if (type == GroupType::symplectic)
        return std::accumulate(v.x.begin(), v.x.end(), 0.0);
    return v.x.front() - v.x.back();
}

Eigen::MatrixXd sym_power_matrix(const MobiusMap& m, int n) {
    if (n < 2) throw ValidationError("sym_power_matrix: n must be >= 2");
    const int d = n - 1;
    // Substitution action on the monomial basis x^(d-k) y^k, built from the
    // transpose so that the map is a homomorphism.
    const double a = m.a(), c = m.b(); // transposed entries
    const double b = m.c(), dd = m.d();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    // image of basis vector k: (a x + b y)^(d-k) (c x + d y)^k
    for (int k = 0; k <= d; ++k) {
        std::vector<double> poly(static_cast<std::size_t>(d) + 1, 0.0); // coeffs of x^(d-i) y^i
        for (int i = 0; i <= d - k; ++i) {
            for (int j = 0; j <= k; ++j) {
                const double binom1 = std::tgamma(d - k + 1.0) /
                                      (std::tgamma(i + 1.0) * std::tgamma(d - k - i + 1.0));
                const double binom2 =
                    std::tgamma(k + 1.0) / (std::tgamma(j + 1.0) * std::tgamma(k - j + 1.0));
                const double coeff = binom1 * binom2 * std::pow(a, d - k - i) * std::pow(b, i) *
                                     std::pow(c, k - j) * std::pow(dd, j);
                poly[static_cast<std::size_t>(i + j)] += coeff;
            }
        }
        for (int i = 0; i <= d; ++i) out(i, k) = poly[static_cast<std::size_t>(i)];
    }
    // Binomial normalization orthogonalizes the rotation subgroup.
    Eigen::VectorXd scale(n);
    for (int k = 0; k <= d; ++k)
        scale(k) = std::sqrt(std::tgamma(d + 1.0) /
                             (std::tgamma(k + 1.0) * std::tgamma(d - k + 1.0)));
    for (int r = 0; r < n; ++r)
        for (int col = 0; col < n; ++col) out(r, col) *= scale(r) / scale(col);
    // Fix the determinant sign so the image lies in SL(n,R).
    const double det = out.determinant();
    if (det < 0.0) out *= -1.0; // only possible for even n, where -M = M in the source
    return out;
}

MatrixRep sym_power_rep(const Surface& s, int n) {
    std::vector<Eigen::MatrixXd> images;
    images.reserve(s.rank());
    for (const MobiusMap& g : s.presentation().generator_maps)
        images.push_back(sym_power_matrix(g, n));
    return make_matrix_rep(s, GroupType::special_linear, std::move(images));
}

double LengthTable::value_of(const ConjClass& c) const {
    for (const auto& [cls, v] : entries)
        if (cls == c) return v;
    throw ValidationError("length table: class not present");
}

bool LengthTable::has(const ConjClass& c) const {
    for (const auto& [cls, v] : entries)
        if (cls == c) return true;
    return false;
}

std::vector<ConjClass> default_filling_family(const Surface& s) {
    std::vector<const char*> words;
    if (s.name() == "punctured_torus")
        words = {"a", "b", "ab"};
    else if (s.name() == "sphere3")
        words = {"aB", "bab", "BAA"};
    else if (s.name() == "genus2_octagon")
        words = {"a1", "b1", "a2", "b2", "a1.b1", "a2.b2"};
    else
        throw UnknownSurface("no default filling family for surface '" + s.name() + "'");
    std::vector<ConjClass> out;
    for (const char* w : words) out.push_back(s.canonical_conj(s.parse(w)));
    return out;
}

LengthTable raw_length_table(const Surface& /*s*/, const MatrixRep& rep,
                             const std::vector<ConjClass>& classes) {
    LengthTable t;
    t.entries.resize(classes.size());
    parallel_for(classes.size(), [&](std::size_t i) {
        t.entries[i] = {classes[i], length_L(evaluate_rep(rep, classes[i].rep), rep.type)};
    });
    return t;
}

LengthTable length_table(const Surface& s, const MatrixRep& rep,
                         const std::vector<ConjClass>& classes,
                         const std::vector<ConjClass>& filling_family) {
    if (filling_family.empty()) throw ValidationError("length_table: empty filling family");
    LengthTable t = raw_length_table(s, rep, classes);
    double family_sum = 0.0;
    for (const ConjClass& c : filling_family) {
        if (t.has(c))
            family_sum += t.value_of(c);
        else
            family_sum += length_L(evaluate_rep(rep, c.rep), rep.type);
    }
    if (family_sum <= 1e-12)
        throw DegenerateFamily("length_table: filling family has vanishing total length");
    for (auto& [cls, v] : t.entries) v /= family_sum;
    t.normalization = family_sum;
    return t;
}

TrichotomyReport trichotomy_classify(const Surface& s, const LengthTable& table, int radius) {
    TrichotomyReport report;
    report.candidate_radius = radius;
    if (table.entries.empty()) throw ValidationError("trichotomy: empty length table");
    bool any_positive = false;
    for (const auto& [cls, v] : table.entries) any_positive = any_positive || v > 1e-12;
    if (!any_positive)
        throw ValidationError("trichotomy: identically zero table is not a projective class");

    const double eps = 1e-9;
    const auto is_zero = [&](double v) { return v <= eps; };

    // Specials: simple candidates of zero length whose every crossing
    // candidate has positive length.
    std::vector<ConjClass> members;
    std::vector<double> value;
    for (const auto& [cls, v] : table.entries) {
        members.push_back(cls);
        value.push_back(v);
    }
    const int count_radius = radius;
    std::vector<std::shared_ptr<const LiftOrbit>> orbits(members.size());
    parallel_for(members.size(),
                 [&](std::size_t i) { orbits[i] = lift_orbit(s, members[i], count_radius); });
    const auto cross_ij = [&](std::size_t i, std::size_t j) {
        const MobiusMap m = s.evaluate(members[j]);
        const auto ax = m.axis(s.tolerances().classification);
        AxisBox box;
        box.gp = ax.first.phi;
        box.gm = ax.second.phi;
        box.tol = s.tolerances().point;
        for (const Lift& l : orbits[i]->lifts())
            if (box.crosses_axis(l)) return true;
        return false;
    };

    std::vector<char> special(members.size(), 0);
    parallel_for(members.size(), [&](std::size_t i) {
        if (!is_zero(value[i])) return;
        if (!is_simple(s, members[i], count_radius)) return;
        for (std::size_t j = 0; j < members.size(); ++j) {
            if (j == i) continue;
            if (cross_ij(i, j) && is_zero(value[j])) return;
        }
        special[i] = 1;
    });
    for (std::size_t i = 0; i < members.size(); ++i)
        if (special[i]) report.specials.push_back(members[i]);

    // Side partition of the remaining candidates: same piece when joined by
    // a candidate chain avoiding every special.
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < members.size(); ++i)
        if (!special[i]) rest.push_back(i);
    std::vector<std::size_t> parent(rest.size());
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<char> avoids_specials(rest.size(), 1);
    parallel_for(rest.size(), [&](std::size_t r) {
        for (std::size_t j = 0; j < members.size(); ++j)
            if (special[j] && cross_ij(rest[r], j)) {
                avoids_specials[r] = 0;
                return;
            }
    });
    for (std::size_t r1 = 0; r1 < rest.size(); ++r1) {
        if (!avoids_specials[r1]) continue;
        for (std::size_t r2 = r1 + 1; r2 < rest.size(); ++r2) {
            if (!avoids_specials[r2]) continue;
            if (cross_ij(rest[r1], rest[r2])) {
                const std::size_t a = find(r1), b = find(r2);
                if (a != b) parent[a] = b;
            }
        }
    }
    std::map<std::size_t, std::size_t> group_index;
    std::vector<TrichotomyPiece> pieces;
    for (std::size_t r = 0; r < rest.size(); ++r) {
        if (!avoids_specials[r]) continue; // special-crossing candidates span pieces; skip
        const std::size_t root = find(r);
        auto [it, fresh] = group_index.try_emplace(root, pieces.size());
        if (fresh) pieces.emplace_back();
        pieces[it->second].members.push_back(members[rest[r]]);
    }
    for (TrichotomyPiece& piece : pieces) {
        bool all_zero = true, all_positive = true;
        double minp = 0.0;
        bool have = false;
        for (const ConjClass& c : piece.members) {
            const double v = table.value_of(c);
            all_zero = all_zero && is_zero(v);
            all_positive = all_positive && !is_zero(v);
            if (!is_zero(v) && (!have || v < minp)) {
                minp = v;
                have = true;
            }
        }
        if (all_zero)
            piece.label = LengthPieceLabel::zero;
        else if (all_positive) {
            piece.label = LengthPieceLabel::positive_systole;
            piece.min_positive = minp;
        } else {
            piece.label = LengthPieceLabel::lamination_like;
            piece.min_positive = minp;
        }
    }
    report.pieces = std::move(pieces);
    return report;
}

} // namespace currentkit
