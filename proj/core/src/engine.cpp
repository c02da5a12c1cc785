#include "currentkit/engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <unordered_map>

#include "currentkit/errors.hpp"
#include "currentkit/parallel.hpp"

namespace currentkit {

namespace {

constexpr double kCut = 0.7390851332151607; // fixed origin shift for sort keys

struct OrbitKey {
    Word rep;
    bool operator==(const OrbitKey& o) const = default;
};
struct OrbitKeyHash {
    std::size_t operator()(const OrbitKey& k) const {
        return ConjClassHash{}(ConjClass{k.rep});
    }
};

struct EngineCache {
    std::mutex mu;
    std::unordered_map<OrbitKey, std::shared_ptr<const LiftOrbit>, OrbitKeyHash> orbits;
    std::unordered_map<OrbitKey, std::pair<int, SelfIntersectionResult>, OrbitKeyHash> selfint;
    std::map<int, std::shared_ptr<const std::vector<ConjClass>>> classes;
};

std::shared_ptr<EngineCache> cache_of(const Surface& s) { return s.memo<EngineCache>(); }

double wrapped(double phi) {
    double p = std::fmod(phi, kTwoPi);
    if (p < 0.0) p += kTwoPi;
    return p;
}

double phi_from_vec_ld(const std::array<long double, 2>& v) {
    return wrapped(static_cast<double>(2.0L * atan2l(v[1], v[0])));
}

// Eigen-directions of a hyperbolic map in extended precision.
void axis_dirs_ld(const std::array<long double, 4>& mm, std::array<long double, 2>& vp,
                  std::array<long double, 2>& vm) {
    long double a = mm[0], b = mm[1], c = mm[2], d = mm[3];
    if (a + d < 0.0L) {
        a = -a;
        b = -b;
        c = -c;
        d = -d;
    }
    const long double tr = a + d;
    const long double disc = sqrtl(tr * tr - 4.0L);
    const auto eigendir = [&](long double lam, std::array<long double, 2>& out) {
        const long double x1 = b, y1 = lam - a;
        const long double x2 = lam - d, y2 = c;
        if (x1 * x1 + y1 * y1 >= x2 * x2 + y2 * y2)
            out = {x1, y1};
        else
            out = {x2, y2};
    };
    eigendir((tr + disc) / 2.0L, vp);
    eigendir((tr - disc) / 2.0L, vm);
}

} // namespace

std::shared_ptr<const LiftOrbit> lift_orbit(const Surface& s, const ConjClass& cls, int radius) {
    if (cls.trivial()) throw ValidationError("lift_orbit: trivial class");
    auto cache = cache_of(s);
    {
        std::lock_guard<std::mutex> lock(cache->mu);
        auto it = cache->orbits.find(OrbitKey{cls.rep});
        if (it != cache->orbits.end() && it->second->radius() >= radius) return it->second;
    }

    auto orbit = std::make_shared<LiftOrbit>();
    orbit->cls_ = cls;
    auto [root, k] = s.primitive_root(cls);
    orbit->root_ = root;
    orbit->power_ = k;

    if (s.evaluate(root).classify(s.tolerances().classification) != ElementType::hyperbolic)
        throw NotHyperbolic("lift_orbit: class '" + s.format(cls) + "' is not hyperbolic");
    std::array<long double, 2> vp, vm;
    axis_dirs_ld(s.evaluate_ld(root), vp, vm);

    auto ball = s.ball(radius);
    orbit->ball_ = ball;
    orbit->radius_ = ball->radius; // snapshots may run deeper than requested
    const std::size_t n = ball->size();

    struct Endpoints {
        double phi1, phi2; // sorted on the rotated circle
    };
    std::vector<Endpoints> pts(n);
    const std::size_t chunk = 4096;
    const std::size_t nchunks = (n + chunk - 1) / chunk;
    parallel_for(nchunks, [&](std::size_t ci) {
        const std::size_t lo = ci * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        for (std::size_t i = lo; i < hi; ++i) {
            const auto& e = ball->entries[i];
            double p1 = phi_from_vec_ld(e.apply_ld(vp));
            double p2 = phi_from_vec_ld(e.apply_ld(vm));
            if (wrapped(p1 + kCut) > wrapped(p2 + kCut)) std::swap(p1, p2);
            pts[i] = {p1, p2};
        }
    });

    // Spellings of the same coset land within ~1e-10 of each other after the
    // extended-precision application; distinct cosets usually stay several
    // orders farther apart, but can crowd below a nanoradian at depth.  Pairs
    // in the ambiguous band are settled exactly: same coset iff w1^-1 w2 is
    // a power of the root.
    constexpr double kCell = 1e-8;
    constexpr double kTight = 5e-11;
    struct CellHash {
        std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& k) const {
            return std::hash<std::int64_t>{}(k.first * 1000003 + k.second);
        }
    };
    const auto same_coset_exact = [&](const Word& w1, const Word& w2) {
        const Word diff = concat(inverse(w1), w2);
        const int maxj =
            static_cast<int>((w1.size() + w2.size()) / root.size()) + 1;
        for (int j = -maxj; j <= maxj; ++j)
            if (s.elements_equal(diff, power(root, j))) return true;
        return false;
    };
    std::unordered_map<std::pair<std::int64_t, std::int64_t>, std::int32_t, CellHash> grid;
    grid.reserve(n);
    std::vector<std::int32_t> next_in_cell;
    auto& lifts = orbit->lifts_;
    for (std::size_t i = 0; i < n; ++i) {
        const double r1 = wrapped(pts[i].phi1 + kCut);
        const double r2 = wrapped(pts[i].phi2 + kCut);
        const std::int64_t c1 = static_cast<std::int64_t>(std::floor(r1 / kCell));
        const std::int64_t c2 = static_cast<std::int64_t>(std::floor(r2 / kCell));
        bool duplicate = false;
        for (int d1 = -1; d1 <= 1 && !duplicate; ++d1)
            for (int d2 = -1; d2 <= 1 && !duplicate; ++d2) {
                auto it = grid.find({c1 + d1, c2 + d2});
                if (it == grid.end()) continue;
                for (std::int32_t li = it->second; li >= 0 && !duplicate;
                     li = next_in_cell[static_cast<std::size_t>(li)]) {
                    const Lift& l = lifts[static_cast<std::size_t>(li)];
                    const double g1 = std::fabs(wrapped(l.phi1 + kCut) - r1);
                    const double g2 = std::fabs(wrapped(l.phi2 + kCut) - r2);
                    if (g1 > 2.0 * kCell || g2 > 2.0 * kCell) continue;
                    if (g1 <= kTight && g2 <= kTight)
                        duplicate = true;
                    else
                        duplicate = same_coset_exact(ball->word_of(l.ball_index),
                                                     ball->word_of(i));
                }
            }
        if (duplicate) continue;
        const auto key = std::make_pair(c1, c2);
        const std::int32_t idx = static_cast<std::int32_t>(lifts.size());
        lifts.push_back(Lift{pts[i].phi1, pts[i].phi2, ball->entries[i].length,
                             static_cast<std::uint32_t>(i)});
        auto [it, fresh] = grid.try_emplace(key, idx);
        next_in_cell.push_back(fresh ? -1 : it->second);
        if (!fresh) it->second = idx;
    }

    std::lock_guard<std::mutex> lock(cache->mu);
    auto& slot = cache->orbits[OrbitKey{cls.rep}];
    if (!slot || slot->radius() < radius) slot = orbit;
    return slot;
}

bool AxisBox::in_arc(double phi) const {
    const double len = wrapped(gm - gp);
    const double d = wrapped(phi - gp);
    return d > tol && d < len - tol;
}

bool AxisBox::in_window(double phi) const {
    const double len = wrapped(gz - z);
    const double d = wrapped(phi - z);
    return d < len - tol || d < tol;
}

bool AxisBox::crosses_axis(const Lift& l) const {
    const double arc = wrapped(gm - gp);
    const double d1 = wrapped(l.phi1 - gp);
    const double d2 = wrapped(l.phi2 - gp);
    const auto near_end = [&](double d) {
        return d < tol || d > kTwoPi - tol || std::fabs(d - arc) < tol;
    };
    if (near_end(d1) || near_end(d2)) return false; // shared endpoint: not transverse
    return (d1 < arc) != (d2 < arc);
}

namespace {

// Window centered on the axis point nearest the ball's base point, so both
// crossing lifts of a double point have comparable word lengths:
// z = gamma^(-1/2) y0 with y0 the perpendicular-bisector endpoint inside
// ]gm, gp[ and gamma^(1/2) = (M + I)/sqrt(tr + 2) projectively.
AxisBox box_attempt(const Surface& s, const ConjClass& c, int attempt) {
    const auto m = s.evaluate_ld(c.rep);
    std::array<long double, 2> vp, vm;
    axis_dirs_ld(m, vp, vm);
    AxisBox box;
    box.tol = s.tolerances().point;
    box.gp = phi_from_vec_ld(vp);
    box.gm = phi_from_vec_ld(vm);
    const double arc = wrapped(box.gp - box.gm); // ]gm, gp[ counterclockwise
    double y0 = wrapped((box.gp + box.gm) / 2.0);
    if (!(wrapped(y0 - box.gm) < arc)) y0 = wrapped(y0 + kTwoPi / 2.0);
    std::array<long double, 4> half = m;
    if (half[0] + half[3] < 0.0L)
        for (auto& e : half) e = -e;
    half[0] += 1.0L;
    half[3] += 1.0L;
    const double y = wrapped(y0 + static_cast<double>(attempt) * 1e-6);
    const std::array<long double, 2> vy = {cosl(static_cast<long double>(y) / 2.0L),
                                           sinl(static_cast<long double>(y) / 2.0L)};
    const std::array<long double, 2> vz = {half[3] * vy[0] - half[1] * vy[1],
                                           -half[2] * vy[0] + half[0] * vy[1]};
    box.z = phi_from_vec_ld(vz);
    const std::array<long double, 2> uz = {cosl(static_cast<long double>(box.z) / 2.0L),
                                           sinl(static_cast<long double>(box.z) / 2.0L)};
    box.gz = phi_from_vec_ld({m[0] * uz[0] + m[1] * uz[1], m[2] * uz[0] + m[3] * uz[1]});
    return box;
}

bool box_edges_clear(const AxisBox& box) {
    return angular_gap(BoundaryPoint{box.z}, BoundaryPoint{box.gp}) > box.tol &&
           angular_gap(BoundaryPoint{box.z}, BoundaryPoint{box.gm}) > box.tol &&
           angular_gap(BoundaryPoint{box.gz}, BoundaryPoint{box.gp}) > box.tol &&
           angular_gap(BoundaryPoint{box.gz}, BoundaryPoint{box.gm}) > box.tol;
}

} // namespace

AxisBox make_axis_box(const Surface& s, const ConjClass& c,
                      std::span<const std::shared_ptr<const LiftOrbit>> avoid) {
    if (s.evaluate(c).classify(s.tolerances().classification) != ElementType::hyperbolic)
        throw NotHyperbolic("make_axis_box: class '" + s.format(c) + "' is not hyperbolic");
    for (int attempt = 0; attempt < 20; ++attempt) {
        const AxisBox box = box_attempt(s, c, attempt);
        bool ok = box_edges_clear(box);
        for (const auto& orbit : avoid) {
            if (!ok) break;
            for (const Lift& l : orbit->lifts()) {
                if (angular_gap(BoundaryPoint{l.phi1}, BoundaryPoint{box.z}) <= box.tol ||
                    angular_gap(BoundaryPoint{l.phi2}, BoundaryPoint{box.z}) <= box.tol ||
                    angular_gap(BoundaryPoint{l.phi1}, BoundaryPoint{box.gz}) <= box.tol ||
                    angular_gap(BoundaryPoint{l.phi2}, BoundaryPoint{box.gz}) <= box.tol) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) return box;
    }
    throw PostconditionError("make_axis_box: no generic base point after 20 jitters");
}

// Streaming box count against a class's own translates; witnesses carry
// ball indices.  Retries the base point until generic.
StreamingBoxCount streaming_box_count(const Surface& s, const ConjClass& c, int radius) {
    if (s.evaluate(c).classify(s.tolerances().classification) != ElementType::hyperbolic)
        throw NotHyperbolic("streaming_box_count: class '" + s.format(c) + "' is not hyperbolic");
    const auto [root, k] = s.primitive_root(c);
    const auto ball = s.ball(radius);
    for (int attempt = 0; attempt < 20; ++attempt) {
        const AxisBox box = box_attempt(s, c, attempt);
        if (!box_edges_clear(box)) continue;
        StreamCount sc = stream_count(s, root, *ball, box, radius);
        if (!sc.generic) continue;
        StreamingBoxCount out;
        out.crossings_at_radius = sc.at_r * k;
        out.crossings_at_radius_minus_1 = sc.at_rm1 * k;
        out.radius = radius;
        for (const StreamHit& h : sc.hits) out.witness_indices.push_back(h.index);
        out.ball = ball;
        return out;
    }
    throw PostconditionError("streaming_box_count: no generic base point after 20 jitters");
}

namespace {

std::pair<long, long> count_box(const LiftOrbit& orbit, const AxisBox& box, int radius) {
    long at_r = 0, at_rm1 = 0;
    for (const Lift& l : orbit.lifts()) {
        if (l.first_radius > radius) continue;
        if (!box.counts(l)) continue;
        ++at_r;
        if (l.first_radius <= radius - 1) ++at_rm1;
    }
    const long k = orbit.power();
    return {at_r * k, at_rm1 * k};
}

struct StreamHit {
    double phi1, phi2;
    std::uint32_t index;
};

struct StreamCount {
    long at_r = 0, at_rm1 = 0;
    bool generic = true;
    std::vector<StreamHit> hits;
};

// Single pass over the ball: box membership decided inline, duplicates
// resolved only among the counted hits (tight agreement is a duplicate,
// ambiguous proximity settled by the word problem).
StreamCount stream_count(const Surface& s, const Word& root, const GroupBall& ball,
                         const AxisBox& box, int radius) {
    std::array<long double, 2> vp, vm;
    axis_dirs_ld(s.evaluate_ld(root), vp, vm);

    const std::size_t n = ball.size_at(radius);
    const std::size_t chunk = 8192;
    const std::size_t nchunks = (n + chunk - 1) / chunk;
    std::vector<std::vector<StreamHit>> chunk_hits(nchunks);
    std::vector<char> chunk_generic(nchunks, 1);
    parallel_for(nchunks, [&](std::size_t ci) {
        const std::size_t lo = ci * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        for (std::size_t i = lo; i < hi; ++i) {
            const auto& e = ball.entries[i];
            const auto w1 = e.apply_ld(vp);
            const auto w2 = e.apply_ld(vm);
            const double p1 = wrapped(2.0 * std::atan2(static_cast<double>(w1[1]),
                                                       static_cast<double>(w1[0])));
            const double p2 = wrapped(2.0 * std::atan2(static_cast<double>(w2[1]),
                                                       static_cast<double>(w2[0])));
            for (double p : {p1, p2}) {
                const double dz = std::fabs(p - box.z);
                const double dgz = std::fabs(p - box.gz);
                if (std::min(dz, kTwoPi - dz) <= box.tol ||
                    std::min(dgz, kTwoPi - dgz) <= box.tol)
                    chunk_generic[ci] = 0;
            }
            const Lift probe{p1, p2, e.length, static_cast<std::uint32_t>(i)};
            if (box.counts(probe)) chunk_hits[ci].push_back(StreamHit{p1, p2, probe.ball_index});
        }
    });

    StreamCount out;
    for (std::size_t ci = 0; ci < nchunks; ++ci) {
        out.generic = out.generic && chunk_generic[ci];
        for (const StreamHit& h : chunk_hits[ci]) out.hits.push_back(h);
    }
    if (!out.generic) return out;

    // Dedup the hits (ball order keeps minimal representatives first).
    constexpr double kTight = 5e-11;
    const auto same_coset_exact = [&](const Word& w1, const Word& w2) {
        const Word diff = concat(inverse(w1), w2);
        const int maxj = static_cast<int>((w1.size() + w2.size()) / root.size()) + 1;
        for (int j = -maxj; j <= maxj; ++j)
            if (s.elements_equal(diff, power(root, j))) return true;
        return false;
    };
    // Same-coset spellings map the two fixed directions component-wise, so
    // endpoints compare in matching order.
    std::vector<StreamHit> kept;
    for (const StreamHit& h : out.hits) {
        bool duplicate = false;
        for (const StreamHit& k : kept) {
            const double g1 = angular_gap(BoundaryPoint{h.phi1}, BoundaryPoint{k.phi1});
            const double g2 = angular_gap(BoundaryPoint{h.phi2}, BoundaryPoint{k.phi2});
            if (g1 > 1e-8 || g2 > 1e-8) continue;
            if (g1 <= kTight && g2 <= kTight)
                duplicate = true;
            else
                duplicate = same_coset_exact(ball.word_of(k.index), ball.word_of(h.index));
            if (duplicate) break;
        }
        if (!duplicate) kept.push_back(h);
    }
    out.hits = std::move(kept);
    out.at_r = 0;
    out.at_rm1 = 0;
    for (const StreamHit& h : out.hits) {
        ++out.at_r;
        if (ball.entries[h.index].length <= radius - 1) ++out.at_rm1;
    }
    return out;
}

} // namespace

IntersectionResult intersection_number(const Surface& s, const DiscreteCurrent& mu,
                                       const ConjClass& c, int radius) {
    if (radius < 1) throw ValidationError("intersection_number: radius must be >= 1");
    if (s.evaluate(c).classify(s.tolerances().classification) != ElementType::hyperbolic)
        throw NotHyperbolic("intersection_number: class '" + s.format(c) + "' is not hyperbolic");
    std::vector<std::shared_ptr<const LiftOrbit>> orbits;
    orbits.reserve(mu.size());
    for (const auto& atom : mu.atoms()) orbits.push_back(lift_orbit(s, atom.cls, radius));
    const AxisBox box = make_axis_box(s, c, orbits);

    IntersectionResult out;
    out.radius = radius;
    out.stabilized = true;
    for (std::size_t j = 0; j < orbits.size(); ++j) {
        const auto [at_r, at_rm1] = count_box(*orbits[j], box, radius);
        out.per_atom.emplace_back(mu.atoms()[j].cls, at_r);
        out.value += mu.atoms()[j].weight * static_cast<double>(at_r);
        if (at_r != at_rm1) out.stabilized = false;
    }
    return out;
}

PairingResult pairing(const Surface& s, const DiscreteCurrent& mu, const DiscreteCurrent& nu,
                      int radius) {
    PairingResult out;
    out.stabilized = true;
    for (const auto& atom : nu.atoms()) {
        const IntersectionResult r = intersection_number(s, mu, atom.cls, radius);
        out.value += atom.weight * r.value;
        out.stabilized = out.stabilized && r.stabilized;
    }
    return out;
}

SelfIntersectionResult self_intersection(const Surface& s, const ConjClass& c, int radius) {
    auto cache = cache_of(s);
    {
        std::lock_guard<std::mutex> lock(cache->mu);
        auto it = cache->selfint.find(OrbitKey{c.rep});
        if (it != cache->selfint.end() && it->second.first == radius) return it->second.second;
    }
    const StreamingBoxCount r = streaming_box_count(s, c, radius);
    const long crossings = r.crossings_at_radius;
    const bool stabilized = crossings == r.crossings_at_radius_minus_1;
    // Each double point contributes two window crossings; an odd total is an
    // incomplete enumeration.  With a stable radius it would indicate a
    // counting defect, so stay loud in that case.
    if (crossings % 2 != 0 && stabilized)
        throw PostconditionError("self_intersection: odd lift-crossing count for '" +
                                 s.format(c) + "' at a stabilized radius");
    SelfIntersectionResult out{crossings / 2, stabilized && crossings % 2 == 0};
    std::lock_guard<std::mutex> lock(cache->mu);
    cache->selfint[OrbitKey{c.rep}] = {radius, out};
    return out;
}

bool is_simple(const Surface& s, const ConjClass& c, int radius) {
    return self_intersection(s, c, radius).value == 0;
}

SSCertificate somewhat_short(const Surface& s, const DiscreteCurrent& mu, const Geodesic& g,
                             int radius) {
    SSCertificate cert;
    cert.radius = radius;
    for (const auto& atom : mu.atoms()) {
        const auto orbit = lift_orbit(s, atom.cls, radius);
        for (const Lift& l : orbit->lifts()) {
            if (l.first_radius > radius) continue;
            const Geodesic lg{BoundaryPoint{l.phi1}, BoundaryPoint{l.phi2}};
            if (crossing(lg, g, s.tolerances().point) == Crossing::yes) {
                cert.verdict = SSCertificate::Verdict::crossing_found;
                cert.witness = {atom.cls, orbit->word_of(l)};
                return cert;
            }
        }
    }
    cert.verdict = SSCertificate::Verdict::clear_up_to_radius;
    return cert;
}

double liouville_length(const Surface& s, const ConjClass& c, double z_arc_position) {
    if (s.evaluate(c).classify(s.tolerances().classification) != ElementType::hyperbolic)
        throw NotHyperbolic("liouville_length: class is not hyperbolic");

    // Extended precision throughout: the window endpoint crowds the
    // attracting fixed point at rate exp(-length), which double width
    // cannot resolve for long classes.
    const auto m = s.evaluate_ld(c.rep);
    std::array<long double, 2> vp, vm;
    axis_dirs_ld(m, vp, vm);

    const double gp = phi_from_vec_ld(vp);
    const double gm = phi_from_vec_ld(vm);
    const double arc = wrapped(gp - gm);
    const double zphi = wrapped(gm + arc * z_arc_position);
    const std::array<long double, 2> vz = {cosl(static_cast<long double>(zphi) / 2.0L),
                                           sinl(static_cast<long double>(zphi) / 2.0L)};
    const std::array<long double, 2> vgz = {m[0] * vz[0] + m[1] * vz[1],
                                            m[2] * vz[0] + m[3] * vz[1]};

    // |log| of the cross-ratio of (g+, g-; z, gz); vector norms cancel.
    const auto det2 = [](const std::array<long double, 2>& u, const std::array<long double, 2>& v) {
        return u[0] * v[1] - u[1] * v[0];
    };
    const long double cr = (det2(vp, vz) * det2(vm, vgz)) / (det2(vp, vgz) * det2(vm, vz));
    return static_cast<double>(fabsl(logl(fabsl(cr))));
}

std::vector<ConjClass> enumerate_classes(const Surface& s, int radius, ClassFilters filters,
                                         int count_radius) {
    if (radius < 0) throw ValidationError("enumerate_classes: negative radius");
    auto cache = cache_of(s);
    std::shared_ptr<const std::vector<ConjClass>> base;
    {
        std::lock_guard<std::mutex> lock(cache->mu);
        auto it = cache->classes.find(radius);
        if (it != cache->classes.end()) base = it->second;
    }
    if (!base) {
        auto ball = s.ball(radius);
        const std::size_t n = ball->size();
        std::vector<ConjClass> canon(n);
        parallel_for(n, [&](std::size_t i) { canon[i] = s.canonical_conj(ball->word_of(i)); });
        std::set<ConjClass> set;
        for (auto& c : canon)
            if (!c.trivial() && static_cast<int>(c.rep.size()) <= radius) set.insert(std::move(c));
        auto list = std::make_shared<std::vector<ConjClass>>(set.begin(), set.end());
        std::sort(list->begin(), list->end());
        std::lock_guard<std::mutex> lock(cache->mu);
        cache->classes[radius] = list;
        base = list;
    }

    std::vector<ConjClass> out;
    const int cr = count_radius > 0 ? count_radius : radius;
    for (const ConjClass& c : *base) {
        if (filters.non_peripheral || filters.simple) {
            if (s.evaluate(c).classify(s.tolerances().classification) != ElementType::hyperbolic)
                continue;
        }
        if (filters.non_peripheral && s.is_peripheral(c)) continue;
        if (filters.primitive && !s.is_primitive(c)) continue;
        out.push_back(c);
    }
    if (filters.simple) {
        std::vector<char> keep(out.size(), 0);
        parallel_for(out.size(),
                     [&](std::size_t i) { keep[i] = is_simple(s, out[i], cr) ? 1 : 0; });
        std::vector<ConjClass> filtered;
        for (std::size_t i = 0; i < out.size(); ++i)
            if (keep[i]) filtered.push_back(out[i]);
        out = std::move(filtered);
    }
    return out;
}

SystoleScanResult systole_scan(const Surface& s, const DiscreteCurrent& mu, int r_words,
                               int r_count, bool simple_only) {
    if (r_words < 1) throw ValidationError("systole_scan: r_words must be >= 1");
    if (mu.empty()) throw ValidationError("systole_scan: empty current");
    ClassFilters filters;
    filters.non_peripheral = true;
    filters.primitive = true;
    filters.simple = simple_only;
    const auto classes = enumerate_classes(s, r_words, filters, r_count);

    SystoleScanResult out;
    out.r_words = r_words;
    out.r_count = r_count;
    out.rows.resize(classes.size());
    for (const auto& atom : mu.atoms()) lift_orbit(s, atom.cls, r_count); // warm the cache
    parallel_for(classes.size(), [&](std::size_t i) {
        const IntersectionResult r = intersection_number(s, mu, classes[i], r_count);
        const double len = s.evaluate(classes[i]).translation_length(s.tolerances().classification);
        out.rows[i] = ScanRow{classes[i], r.value, len, r.value / len, r.stabilized};
    });
    out.all_stabilized = true;
    bool first = true;
    for (const ScanRow& row : out.rows) {
        out.all_stabilized = out.all_stabilized && row.stabilized;
        if (first) {
            out.syst_estimate = row.intersection;
            out.c1 = out.c2 = row.ratio;
            first = false;
        } else {
            out.syst_estimate = std::min(out.syst_estimate, row.intersection);
            out.c1 = std::min(out.c1, row.ratio);
            out.c2 = std::max(out.c2, row.ratio);
        }
    }
    return out;
}

SystoleScanResult systole_scan_liouville(const Surface& s, int r_words) {
    ClassFilters filters;
    filters.non_peripheral = true;
    filters.primitive = true;
    const auto classes = enumerate_classes(s, r_words, filters);
    SystoleScanResult out;
    out.liouville = true;
    out.r_words = r_words;
    out.rows.resize(classes.size());
    parallel_for(classes.size(), [&](std::size_t i) {
        const double len = s.evaluate(classes[i]).translation_length(s.tolerances().classification);
        out.rows[i] = ScanRow{classes[i], len, len, 1.0, true};
    });
    out.all_stabilized = true;
    out.c1 = out.c2 = 1.0;
    out.syst_estimate = out.rows.empty() ? 0.0 : out.rows.front().length;
    for (const ScanRow& row : out.rows)
        out.syst_estimate = std::min(out.syst_estimate, row.intersection);
    return out;
}

std::vector<double> intersection_by_radius(const Surface& s, const DiscreteCurrent& mu,
                                           const ConjClass& c, int radius) {
    std::vector<std::shared_ptr<const LiftOrbit>> orbits;
    for (const auto& atom : mu.atoms()) orbits.push_back(lift_orbit(s, atom.cls, radius));
    const AxisBox box = make_axis_box(s, c, orbits);
    std::vector<double> by_radius(static_cast<std::size_t>(radius) + 1, 0.0);
    for (std::size_t j = 0; j < orbits.size(); ++j) {
        const double w = mu.atoms()[j].weight * orbits[j]->power();
        for (const Lift& l : orbits[j]->lifts())
            if (box.counts(l))
                by_radius[static_cast<std::size_t>(l.first_radius)] += w;
    }
    for (std::size_t r = 1; r < by_radius.size(); ++r) by_radius[r] += by_radius[r - 1];
    return by_radius;
}

} // namespace currentkit
