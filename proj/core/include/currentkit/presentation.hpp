#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "currentkit/mobius.hpp"
#include "currentkit/word.hpp"

namespace currentkit {

// Finite-area hyperbolic surface group: generator matrices, relators
// (empty for free groups), and the peripheral class list.
struct SurfacePresentation {
    std::string name;
    std::vector<std::string> generator_names;
    std::vector<MobiusMap> generator_maps;
    std::vector<Word> relators;
    std::vector<Word> peripheral_words;
    int genus = 0;
    int punctures = 0;

    std::size_t rank() const { return generator_names.size(); }
    bool is_free() const { return relators.empty(); }

    int generator_index(std::string_view name) const; // -1 when absent

    // Throws ValidationError unless relators evaluate to +-identity,
    // peripheral words are parabolic (or flagged boundary-hyperbolic)
    // and 2g - 2 + p > 0.
    void validate(double tol = 1e-8) const;
};

// Built-in surfaces: punctured_torus, sphere3, genus2_octagon.
SurfacePresentation builtin_presentation(std::string_view name);

// Word parsing against a presentation.  Single-character generator alphabets
// accept compact form with uppercase inverses ("abAB"); any alphabet accepts
// tokens separated by '.', '*' or spaces, with ^k and trailing ' for inverses.
Word parse_word(const SurfacePresentation& p, std::string_view text);
std::string format_word(const SurfacePresentation& p, const Word& w);

} // namespace currentkit
