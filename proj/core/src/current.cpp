#include "currentkit/current.hpp"

#include <algorithm>

#include "currentkit/errors.hpp"

namespace currentkit {

DiscreteCurrent::DiscreteCurrent(const Surface& s,
                                 const std::vector<std::pair<Word, double>>& atoms) {
    for (const auto& [w, weight] : atoms) {
        if (!(weight > 0.0))
            throw ValidationError("current atom '" + s.format(w) + "': weight must be positive");
        const ConjClass c = s.canonical_conj(w);
        if (c.trivial())
            throw ValidationError("current atom '" + s.format(w) + "': trivial class");
        if (s.is_peripheral(c))
            throw ValidationError("current atom '" + s.format(w) +
                                  "': peripheral class carries no geodesic");
        const ElementType t = s.evaluate(c).classify(s.tolerances().classification);
        if (t != ElementType::hyperbolic)
            throw ValidationError("current atom '" + s.format(w) + "': class is not hyperbolic");
        bool merged = false;
        for (Atom& a : atoms_)
            if (a.cls == c) {
                a.weight += weight;
                merged = true;
                break;
            }
        if (!merged) atoms_.push_back(Atom{c, weight});
    }
    std::sort(atoms_.begin(), atoms_.end(),
              [](const Atom& a, const Atom& b) { return a.cls < b.cls; });
}

DiscreteCurrent DiscreteCurrent::single(const Surface& s, const Word& w, double weight) {
    return DiscreteCurrent(s, {{w, weight}});
}

double DiscreteCurrent::total_weight() const {
    double t = 0.0;
    for (const Atom& a : atoms_) t += a.weight;
    return t;
}

DiscreteCurrent DiscreteCurrent::scaled(double t) const {
    if (!(t > 0.0)) throw ValidationError("current scale must be positive");
    DiscreteCurrent out = *this;
    for (Atom& a : out.atoms_) a.weight *= t;
    return out;
}

DiscreteCurrent DiscreteCurrent::plus(const DiscreteCurrent& o) const {
    DiscreteCurrent out = *this;
    for (const Atom& a : o.atoms_) {
        bool merged = false;
        for (Atom& b : out.atoms_)
            if (b.cls == a.cls) {
                b.weight += a.weight;
                merged = true;
                break;
            }
        if (!merged) out.atoms_.push_back(a);
    }
    std::sort(out.atoms_.begin(), out.atoms_.end(),
              [](const Atom& a, const Atom& b) { return a.cls < b.cls; });
    return out;
}

DiscreteCurrent DiscreteCurrent::without_class(const ConjClass& c) const {
    DiscreteCurrent out;
    for (const Atom& a : atoms_)
        if (!(a.cls == c)) out.atoms_.push_back(a);
    return out;
}

bool DiscreteCurrent::contains_class(const ConjClass& c) const {
    for (const Atom& a : atoms_)
        if (a.cls == c) return true;
    return false;
}

} // namespace currentkit
