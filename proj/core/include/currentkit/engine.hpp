#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "currentkit/current.hpp"
#include "currentkit/surface.hpp"

namespace currentkit {

// One translate of an axis: unordered endpoint angles, the word length at
// which the coset first appears, and its minimal ball representative.
struct Lift {
    double phi1 = 0.0, phi2 = 0.0;
    std::int32_t first_radius = 0;
    std::uint32_t ball_index = 0;
};

// All distinct translates eta * axis(root) with a coset representative of
// word length <= radius; one entry per coset of <root>.
class LiftOrbit {
public:
    const ConjClass& cls() const { return cls_; }
    const Word& root() const { return root_; }
    int power() const { return power_; }
    int radius() const { return radius_; }
    const std::vector<Lift>& lifts() const { return lifts_; }
    const GroupBall& ball() const { return *ball_; }
    Word word_of(const Lift& l) const { return ball_->word_of(l.ball_index); }

private:
    friend std::shared_ptr<const LiftOrbit> lift_orbit(const Surface&, const ConjClass&, int);
    ConjClass cls_;
    Word root_;
    int power_ = 1;
    int radius_ = 0;
    std::vector<Lift> lifts_;
    std::shared_ptr<const GroupBall> ball_;
};

// Cached per surface; requires a hyperbolic class.
std::shared_ptr<const LiftOrbit> lift_orbit(const Surface& s, const ConjClass& cls, int radius);

// The counting box of a hyperbolic class: lifts crossing the closed geodesic
// are those with one endpoint in the open arc ]g+, g-[ and, counted once per
// deck period, the other in the half-open window [z, gz[.
struct AxisBox {
    double gp = 0.0, gm = 0.0; // attracting, repelling
    double z = 0.0, gz = 0.0;
    double tol = 1e-9;

    bool in_arc(double phi) const;    // ]gp, gm[, endpoints excluded
    bool in_window(double phi) const; // [z, gz[
    bool counts(const Lift& l) const {
        return (in_arc(l.phi1) && in_window(l.phi2)) || (in_arc(l.phi2) && in_window(l.phi1));
    }
    bool crosses_axis(const Lift& l) const; // endpoint linking with {gp, gm}
};

// Base point z is taken generically: retried with small jitter until no lift
// endpoint of the given orbits falls within tolerance of z or gz.
AxisBox make_axis_box(const Surface& s, const ConjClass& c,
                      std::span<const std::shared_ptr<const LiftOrbit>> avoid = {});

// Crossing count of a class's own translates against its box, computed in a
// single pass over the ball without materializing the orbit.
struct StreamingBoxCount {
    long crossings_at_radius = 0;
    long crossings_at_radius_minus_1 = 0;
    int radius = 0;
    std::vector<std::uint32_t> witness_indices; // minimal representatives, ball order
    std::shared_ptr<const GroupBall> ball;
};

StreamingBoxCount streaming_box_count(const Surface& s, const ConjClass& c, int radius);

struct IntersectionResult {
    double value = 0.0;
    int radius = 0;
    bool stabilized = false;
    std::vector<std::pair<ConjClass, long>> per_atom; // lift-crossing counts
};

IntersectionResult intersection_number(const Surface& s, const DiscreteCurrent& mu,
                                       const ConjClass& c, int radius);

struct PairingResult {
    double value = 0.0;
    bool stabilized = false;
};

PairingResult pairing(const Surface& s, const DiscreteCurrent& mu, const DiscreteCurrent& nu,
                      int radius);

struct SelfIntersectionResult {
    long value = 0;
    bool stabilized = false;
};

SelfIntersectionResult self_intersection(const Surface& s, const ConjClass& c, int radius);
bool is_simple(const Surface& s, const ConjClass& c, int radius);

struct SSCertificate {
    enum class Verdict { crossing_found, clear_up_to_radius };
    Verdict verdict = Verdict::clear_up_to_radius;
    std::optional<std::pair<ConjClass, Word>> witness; // atom class, coset word
    int radius = 0;

    bool clear() const { return verdict == Verdict::clear_up_to_radius; }
};

SSCertificate somewhat_short(const Surface& s, const DiscreteCurrent& mu, const Geodesic& g,
                             int radius);

// Box evaluation of the Liouville pairing with delta_c; agrees with the
// translation length by the calibration identity.
double liouville_length(const Surface& s, const ConjClass& c, double z_arc_position = 0.5);

struct ClassFilters {
    bool non_peripheral = false;
    bool primitive = false;
    bool simple = false;
};

// Canonical classes of cyclic word length <= radius, deterministic
// (length, lex) order.  The simple filter tests self-intersection at
// count_radius.
std::vector<ConjClass> enumerate_classes(const Surface& s, int radius, ClassFilters filters,
                                         int count_radius = 0);

struct ScanRow {
    ConjClass cls;
    double intersection = 0.0;
    double length = 0.0;
    double ratio = 0.0;
    bool stabilized = false;
};

struct SystoleScanResult {
    std::vector<ScanRow> rows;
    double syst_estimate = 0.0;
    double c1 = 0.0, c2 = 0.0; // min and max of intersection/length
    int r_words = 0, r_count = 0;
    bool all_stabilized = false;
    bool liouville = false;
};

SystoleScanResult systole_scan(const Surface& s, const DiscreteCurrent& mu, int r_words,
                               int r_count, bool simple_only);
// Analytic row table for the Liouville current: i(L, c) = length(c).
SystoleScanResult systole_scan_liouville(const Surface& s, int r_words);

// Weighted crossing counts at every radius 1..radius (cumulative).
std::vector<double> intersection_by_radius(const Surface& s, const DiscreteCurrent& mu,
                                           const ConjClass& c, int radius);

} // namespace currentkit
