#pragma once

#include <optional>
#include <string>
#include <vector>

#include "currentkit/engine.hpp"

namespace currentkit {

enum class PieceLabel { zero, lamination, positive_systole };

struct Piece {
    std::vector<std::size_t> atom_indices; // into the current's atom list
    std::vector<ConjClass> generators;     // the assigned atom classes
    PieceLabel label = PieceLabel::zero;
    double systole_lower_bound = 0.0; // meaningful for positive_systole
    std::vector<ConjClass> boundary_specials;
};

struct DecompositionReport {
    std::vector<ConjClass> special_curves;
    std::vector<std::pair<ConjClass, double>> atoms_on_special;
    std::vector<Piece> pieces;
    int candidate_radius = 0;
    bool ambiguous_assignment = false;
    std::vector<std::string> caveats;
};

struct SupportGraph {
    std::vector<ConjClass> vertices;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<bool> self_loop;
    std::vector<int> component;
    int component_count = 0;
};

SupportGraph support_graph(const Surface& s, const DiscreteCurrent& mu, int radius);

// Candidate-set-relative rendering of the special set: simple classes with
// i(mu,c) = 0 whose every crossing candidate meets the rest of mu positively.
// "Rest" excludes any atoms carried on c itself, so an isolated support atom
// does not certify its own cut curve.
std::vector<ConjClass> special_curves(const Surface& s, const DiscreteCurrent& mu, int radius);

DecompositionReport decompose(const Surface& s, const DiscreteCurrent& mu, int radius);

bool is_basic(const Surface& s, const DiscreteCurrent& mu, int radius);

struct ZeroDetection {
    bool zero_found = false;
    std::optional<DiscreteCurrent> witness; // disjoint simple multicurve
    int radius = 0;
};

ZeroDetection zero_detector(const Surface& s, const DiscreteCurrent& mu, int radius);

} // namespace currentkit
