#pragma once

#include <string>
#include <utility>
#include <vector>

#include "currentkit/surface.hpp"

namespace currentkit {

// Finite weighted sum of hyperbolic conjugacy classes.  Weights are
// positive, classes canonical, pairwise distinct and non-peripheral.
class DiscreteCurrent {
public:
    struct Atom {
        ConjClass cls;
        double weight = 0.0;
    };

    DiscreteCurrent() = default;
    // Canonicalizes words, merges equal classes, rejects invalid atoms.
    DiscreteCurrent(const Surface& s, const std::vector<std::pair<Word, double>>& atoms);

    static DiscreteCurrent single(const Surface& s, const Word& w, double weight = 1.0);

    const std::vector<Atom>& atoms() const { return atoms_; }
    bool empty() const { return atoms_.empty(); }
    std::size_t size() const { return atoms_.size(); }
    double total_weight() const;

    DiscreteCurrent scaled(double t) const;
    DiscreteCurrent plus(const DiscreteCurrent& o) const;
    // Atoms of this current except those on the given class.
    DiscreteCurrent without_class(const ConjClass& c) const;
    bool contains_class(const ConjClass& c) const;

private:
    std::vector<Atom> atoms_; // sorted by class
};

} // namespace currentkit
