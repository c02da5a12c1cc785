#include "currentkit/decompose.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "currentkit/errors.hpp"
#include "currentkit/parallel.hpp"

namespace currentkit {

namespace {

// i(c1, c2) > 0 iff some lift of c1 links the axis of c2.
bool classes_cross(const Surface& s, const LiftOrbit& orbit_c1, const ConjClass& c2, int radius) {
    const MobiusMap m = s.evaluate(c2);
    const auto ax = m.axis(s.tolerances().classification);
    AxisBox box;
    box.gp = ax.first.phi;
    box.gm = ax.second.phi;
    box.tol = s.tolerances().point;
    for (const Lift& l : orbit_c1.lifts()) {
        if (l.first_radius > radius) continue;
        if (box.crosses_axis(l)) return true;
    }
    return false;
}

ClassFilters candidate_filters() {
    ClassFilters f;
    f.non_peripheral = true;
    f.primitive = true;
    return f;
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

} // namespace

SupportGraph support_graph(const Surface& s, const DiscreteCurrent& mu, int radius) {
    if (mu.empty()) throw ValidationError("support_graph: empty current");
    SupportGraph g;
    for (const auto& atom : mu.atoms()) g.vertices.push_back(atom.cls);
    const std::size_t n = g.vertices.size();
    g.self_loop.assign(n, false);
    for (std::size_t i = 0; i < n; ++i)
        g.self_loop[i] = self_intersection(s, g.vertices[i], radius).value > 0;
    UnionFind uf(n);
    for (std::size_t i = 0; i < n; ++i) {
        const DiscreteCurrent single = DiscreteCurrent::single(s, g.vertices[i].rep);
        for (std::size_t j = i + 1; j < n; ++j) {
            const IntersectionResult r = intersection_number(s, single, g.vertices[j], radius);
            if (r.value > 0.0) {
                g.edges.emplace_back(i, j);
                uf.unite(i, j);
            }
        }
    }
    std::map<std::size_t, int> roots;
    g.component.assign(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = uf.find(i);
        auto [it, fresh] = roots.try_emplace(r, static_cast<int>(roots.size()));
        g.component[i] = it->second;
    }
    g.component_count = static_cast<int>(roots.size());
    return g;
}

std::vector<ConjClass> special_curves(const Surface& s, const DiscreteCurrent& mu, int radius) {
    if (radius < 1) throw ValidationError("special_curves: radius must be >= 1");
    const auto candidates = enumerate_classes(s, radius, candidate_filters());

    std::vector<double> mu_value(candidates.size(), 0.0);
    parallel_for(candidates.size(), [&](std::size_t i) {
        mu_value[i] = intersection_number(s, mu, candidates[i], radius).value;
    });

    std::vector<ConjClass> specials;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (mu_value[i] != 0.0) continue;
        const ConjClass& c = candidates[i];
        if (!is_simple(s, c, radius)) continue;
        const DiscreteCurrent rest = mu.without_class(c);
        if (rest.empty()) continue; // no independent mass can certify the cut
        const bool rest_is_mu = rest.size() == mu.size();
        const auto orb = lift_orbit(s, c, radius);
        bool ok = true;
        for (std::size_t j = 0; j < candidates.size() && ok; ++j) {
            if (j == i) continue;
            if (!classes_cross(s, *orb, candidates[j], radius)) continue;
            const double rest_value =
                rest_is_mu ? mu_value[j]
                           : intersection_number(s, rest, candidates[j], radius).value;
            if (rest_value == 0.0) ok = false;
        }
        if (ok) specials.push_back(c);
    }
    return specials;
}

DecompositionReport decompose(const Surface& s, const DiscreteCurrent& mu, int radius) {
    if (mu.empty()) throw ValidationError("decompose: empty current");
    DecompositionReport report;
    report.candidate_radius = radius;
    report.special_curves = special_curves(s, mu, radius);

    std::vector<std::size_t> rest_atoms;
    for (std::size_t i = 0; i < mu.atoms().size(); ++i) {
        const auto& atom = mu.atoms()[i];
        const bool on_special =
            std::find(report.special_curves.begin(), report.special_curves.end(), atom.cls) !=
            report.special_curves.end();
        if (on_special)
            report.atoms_on_special.emplace_back(atom.cls, atom.weight);
        else
            rest_atoms.push_back(i);
    }

    std::vector<std::shared_ptr<const LiftOrbit>> special_orbits;
    for (const ConjClass& sp : report.special_curves)
        special_orbits.push_back(lift_orbit(s, sp, radius));
    for (std::size_t ai : rest_atoms) {
        for (const auto& orb : special_orbits) {
            if (orb->cls() == mu.atoms()[ai].cls) continue;
            if (classes_cross(s, *orb, mu.atoms()[ai].cls, radius)) {
                report.ambiguous_assignment = true;
                report.caveats.push_back("support atom '" + s.format(mu.atoms()[ai].cls) +
                                         "' crosses a computed special curve; radius too small");
            }
        }
    }

    if (rest_atoms.empty()) return report;

    // Components of the support graph restricted to the remaining atoms.
    std::vector<std::pair<Word, double>> rest_spec;
    for (std::size_t ai : rest_atoms)
        rest_spec.emplace_back(mu.atoms()[ai].cls.rep, mu.atoms()[ai].weight);
    const DiscreteCurrent rest_mu(s, rest_spec);
    const SupportGraph graph = support_graph(s, rest_mu, radius);

    // Atom orbits for side tests.
    std::vector<std::shared_ptr<const LiftOrbit>> atom_orbits;
    for (std::size_t ai : rest_atoms) atom_orbits.push_back(lift_orbit(s, mu.atoms()[ai].cls, radius));

    const auto candidates = enumerate_classes(s, radius, candidate_filters());
    std::vector<double> mu_value(candidates.size(), 0.0);
    parallel_for(candidates.size(), [&](std::size_t i) {
        mu_value[i] = intersection_number(s, mu, candidates[i], radius).value;
    });
    // crossing matrices candidate x (atom | special)
    std::vector<std::vector<char>> hits_atom(candidates.size(),
                                             std::vector<char>(rest_atoms.size(), 0));
    std::vector<std::vector<char>> hits_special(candidates.size(),
                                                std::vector<char>(report.special_curves.size(), 0));
    parallel_for(candidates.size(), [&](std::size_t i) {
        for (std::size_t a = 0; a < atom_orbits.size(); ++a)
            hits_atom[i][a] = classes_cross(s, *atom_orbits[a], candidates[i], radius) ? 1 : 0;
        for (std::size_t sp = 0; sp < special_orbits.size(); ++sp)
            hits_special[i][sp] =
                classes_cross(s, *special_orbits[sp], candidates[i], radius) ? 1 : 0;
    });

    // Merge components joined by a candidate avoiding every special curve.
    UnionFind uf(static_cast<std::size_t>(graph.component_count));
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        bool crosses_special = false;
        for (char h : hits_special[i]) crosses_special = crosses_special || h;
        if (crosses_special) continue;
        int first_comp = -1;
        for (std::size_t a = 0; a < rest_atoms.size(); ++a) {
            if (!hits_atom[i][a]) continue;
            const int comp = graph.component[a];
            if (first_comp < 0)
                first_comp = comp;
            else if (comp != first_comp)
                uf.unite(static_cast<std::size_t>(first_comp), static_cast<std::size_t>(comp));
        }
    }

    std::map<std::size_t, std::size_t> group_of_root;
    std::vector<Piece> pieces;
    std::vector<std::size_t> atom_group(rest_atoms.size());
    for (std::size_t a = 0; a < rest_atoms.size(); ++a) {
        const std::size_t root = uf.find(static_cast<std::size_t>(graph.component[a]));
        auto [it, fresh] = group_of_root.try_emplace(root, pieces.size());
        if (fresh) pieces.emplace_back();
        atom_group[a] = it->second;
        pieces[it->second].atom_indices.push_back(rest_atoms[a]);
        pieces[it->second].generators.push_back(mu.atoms()[rest_atoms[a]].cls);
    }

    for (std::size_t p = 0; p < pieces.size(); ++p) {
        Piece& piece = pieces[p];
        bool has_loop = false;
        for (std::size_t a = 0; a < rest_atoms.size(); ++a)
            if (atom_group[a] == p && graph.self_loop[a]) has_loop = true;
        bool has_edge = false;
        for (const auto& [u, v] : graph.edges)
            if (atom_group[u] == p && atom_group[v] == p) has_edge = true;

        if (!has_loop && !has_edge) {
            piece.label = PieceLabel::lamination;
        } else {
            piece.label = PieceLabel::positive_systole;
            bool found = false;
            double bound = 0.0;
            for (std::size_t i = 0; i < candidates.size(); ++i) {
                bool crosses_special = false;
                for (char h : hits_special[i]) crosses_special = crosses_special || h;
                if (crosses_special) continue;
                bool touches = false;
                for (std::size_t a = 0; a < rest_atoms.size() && !touches; ++a)
                    touches = atom_group[a] == p && hits_atom[i][a];
                if (!touches) continue;
                if (!found || mu_value[i] < bound) {
                    bound = mu_value[i];
                    found = true;
                }
            }
            piece.systole_lower_bound = found ? bound : 0.0;
        }
        for (std::size_t sp = 0; sp < report.special_curves.size(); ++sp) {
            bool adjacent = false;
            for (std::size_t i = 0; i < candidates.size() && !adjacent; ++i) {
                if (!hits_special[i][sp]) continue;
                for (std::size_t a = 0; a < rest_atoms.size() && !adjacent; ++a)
                    adjacent = atom_group[a] == p && hits_atom[i][a];
            }
            if (adjacent) piece.boundary_specials.push_back(report.special_curves[sp]);
        }
    }
    report.pieces = std::move(pieces);
    return report;
}

bool is_basic(const Surface& s, const DiscreteCurrent& mu, int radius) {
    const DecompositionReport report = decompose(s, mu, radius);
    if (report.pieces.size() != 1) return false;
    if (!report.atoms_on_special.empty()) return false;

    // Interior candidates: classes crossing the piece, plus the atom classes
    // themselves; all must meet mu positively.
    const auto candidates = enumerate_classes(s, radius, candidate_filters());
    std::vector<std::shared_ptr<const LiftOrbit>> atom_orbits;
    for (const auto& atom : mu.atoms()) atom_orbits.push_back(lift_orbit(s, atom.cls, radius));
    for (const auto& atom : mu.atoms())
        if (intersection_number(s, mu, atom.cls, radius).value == 0.0) return false;
    std::vector<char> bad(candidates.size(), 0);
    parallel_for(candidates.size(), [&](std::size_t i) {
        bool touches = false;
        for (const auto& orb : atom_orbits)
            if (classes_cross(s, *orb, candidates[i], radius)) {
                touches = true;
                break;
            }
        if (!touches) return;
        if (intersection_number(s, mu, candidates[i], radius).value == 0.0) bad[i] = 1;
    });
    for (char b : bad)
        if (b) return false;
    return true;
}

ZeroDetection zero_detector(const Surface& s, const DiscreteCurrent& mu, int radius) {
    ZeroDetection out;
    out.radius = radius;
    ClassFilters filters = candidate_filters();
    const auto candidates = enumerate_classes(s, radius, filters);
    std::vector<char> zero(candidates.size(), 0);
    parallel_for(candidates.size(), [&](std::size_t i) {
        if (intersection_number(s, mu, candidates[i], radius).value == 0.0 &&
            is_simple(s, candidates[i], radius))
            zero[i] = 1;
    });
    std::vector<ConjClass> chosen;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (!zero[i]) continue;
        bool disjoint = true;
        const auto orb = lift_orbit(s, candidates[i], radius);
        for (const ConjClass& c : chosen)
            if (classes_cross(s, *orb, c, radius)) {
                disjoint = false;
                break;
            }
        if (disjoint) chosen.push_back(candidates[i]);
    }
    if (chosen.empty()) return out;
    out.zero_found = true;
    std::vector<std::pair<Word, double>> spec;
    for (const ConjClass& c : chosen) spec.emplace_back(c.rep, 1.0);
    out.witness = DiscreteCurrent(s, spec);
    return out;
}

} // namespace currentkit
