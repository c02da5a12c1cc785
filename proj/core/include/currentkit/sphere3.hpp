#pragma once

#include <vector>

#include "currentkit/engine.hpp"

namespace currentkit {

// Word combinatorics special to the thrice-punctured sphere
// <a, b, c : abc = e>, with c eliminated as (ab)^-1.

enum class CuspTag { a_cusp, b_cusp, c_cusp, none };

struct PeripheralTag {
    CuspTag tag = CuspTag::none;
    int exponent = 0; // nonzero when peripheral
};

PeripheralTag peripheral_class(const Surface& s, const ConjClass& c);

enum class LemmaAVerdict { hypothesis_not_met, conclusion_holds, counterexample };

// Checks the peripheral-product statement: if g1*g2 is non-peripheral while
// g1, g2 and g1*g2^-1 are peripheral, the three represent distinct primitive
// cusps and g1*g2 falls among the six short non-peripheral classes.
LemmaAVerdict lemma_a_check(const Surface& s, const Word& g1, const Word& g2);

// The six target classes collapse to three unoriented canonical classes:
// ab^-1, bab (= bc^-1) and b^-1 a^-2 (= ca^-1).
std::vector<ConjClass> single_selfint_classes(const Surface& s);

struct SelfIntTableRow {
    ConjClass cls;
    long selfint = 0;
    bool listed = false; // member of the six-class list
};

struct SingleSelfIntReport {
    std::vector<SelfIntTableRow> table;
    bool all_single_listed = true; // selfint == 1 implies listed
};

SingleSelfIntReport classify_single_selfint(const Surface& s, int radius, int count_radius);

struct PositivityReport {
    std::vector<double> min_by_radius; // running min over classes of length <= r, r = 2..
    double final_min = 0.0;
    ConjClass attaining_class;
    bool min_positive = false;
    bool stable_tail = false; // min constant over the last radii
};

PositivityReport positivity_harness(const Surface& s, const DiscreteCurrent& mu, int radius,
                                    int count_radius);

} // namespace currentkit
