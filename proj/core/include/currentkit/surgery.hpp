#pragma once

#include <optional>
#include <vector>

#include "currentkit/engine.hpp"

namespace currentkit {

// Deck element whose translated axis crosses the axis of c over a double
// point in the fundamental window; minimal (length, lex) choice.
Word find_self_crossing(const Surface& s, const ConjClass& c, int radius);

// The three curves of the crossing resolution: g2 = h^-1, g3 = h*c,
// g1 = g2^-1 g3, with both orientations of h tried and the result validated
// (product law, strict self-intersection decrease on hyperbolic branches).
struct Resolution {
    ConjClass g1, g2, g3;
    Word witness; // the validated orientation of h
};

Resolution resolve(const Surface& s, const ConjClass& c, const Word& h, int radius);

struct SurgeryBranch {
    ConjClass cls;
    bool hyperbolic = false;
    bool peripheral = false;
    long self_intersection = -1;      // hyperbolic branches only
    double mu_intersection = -1.0;    // hyperbolic branches only
    bool inequality_holds = false;    // i(mu, branch) <= i(mu, c)
};

struct SurgeryReport {
    Resolution resolution;
    std::vector<SurgeryBranch> branches;
    double mu_intersection_of_c = 0.0;
    long self_intersection_of_c = 0;
    bool some_branch_hyperbolic = false;
    bool all_inequalities_hold = false;
};

SurgeryReport surgery_report(const Surface& s, const DiscreteCurrent& mu, const ConjClass& c,
                             int radius);

struct SimplifyResult {
    ConjClass simple_class;
    std::vector<ConjClass> steps; // intermediate classes, ending at simple_class
};

// Iterates the resolution, at each step taking the hyperbolic branch with
// minimal i(mu, .); terminates within self_intersection(c) steps.
SimplifyResult simplify_to_simple(const Surface& s, const DiscreteCurrent& mu, const ConjClass& c,
                                  int radius, int max_steps);

} // namespace currentkit
