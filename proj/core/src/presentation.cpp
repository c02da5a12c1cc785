#include "currentkit/presentation.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "currentkit/errors.hpp"

namespace currentkit {

int SurfacePresentation::generator_index(std::string_view name) const {
    for (std::size_t i = 0; i < generator_names.size(); ++i)
        if (generator_names[i] == name) return static_cast<int>(i);
    return -1;
}

namespace {

MobiusMap evaluate_raw(const SurfacePresentation& p, const Word& w) {
    MobiusMap m;
    for (Letter l : w.letters) {
        const int idx = std::abs(static_cast<int>(l)) - 1;
        const MobiusMap& g = p.generator_maps[static_cast<std::size_t>(idx)];
        m = m * (l > 0 ? g : g.inverse());
    }
    return m;
}

} // namespace

void SurfacePresentation::validate(double tol) const {
    if (generator_names.size() != generator_maps.size())
        throw ValidationError("presentation: generator table size mismatch");
    if (2 * genus - 2 + punctures <= 0)
        throw ValidationError("presentation: 2g-2+p must be positive (finite-area hyperbolic)");
    for (const Word& r : relators) {
        const MobiusMap m = evaluate_raw(*this, r);
        if (!m.equal_up_to_sign(MobiusMap::identity(), tol))
            throw ValidationError("presentation: relator does not evaluate to +-identity");
    }
    for (const Word& w : peripheral_words) {
        const MobiusMap m = evaluate_raw(*this, w);
        const ElementType t = m.classify(1e-6);
        if (t != ElementType::parabolic && t != ElementType::hyperbolic)
            throw ValidationError("presentation: peripheral word is neither parabolic nor boundary-hyperbolic");
    }
}

namespace {

Word word_from_string(std::string_view s, const SurfacePresentation& p);

SurfacePresentation make_punctured_torus() {
    SurfacePresentation p;
    p.name = "punctured_torus";
    p.generator_names = {"a", "b"};
    p.generator_maps = {MobiusMap(1, 1, 1, 2), MobiusMap(1, -1, -1, 2)};
    p.genus = 1;
    p.punctures = 1;
    // The cusp class is the commutator.
    p.peripheral_words = {word_from_string("abAB", p)};
    return p;
}

SurfacePresentation make_sphere3() {
    SurfacePresentation p;
    p.name = "sphere3";
    p.generator_names = {"a", "b"};
    p.generator_maps = {MobiusMap(1, 2, 0, 1), MobiusMap(1, 0, -2, 1)};
    p.genus = 0;
    p.punctures = 3;
    p.peripheral_words = {word_from_string("a", p), word_from_string("b", p),
                          word_from_string("ab", p)};
    return p;
}

MobiusMap octagon_translation(int k) {
    // Side-pairing translation of the regular hyperbolic octagon whose axis
    // passes through the center at angle k*pi/4; trace 2(1+sqrt(2)).
    const double s2 = std::sqrt(2.0);
    const double diag = 1.0 + s2;
    const double off = std::sqrt(2.0 + 2.0 * s2);
    const MobiusMap t(diag, off, off, diag);
    const double th = static_cast<double>(k) * (kTwoPi / 16.0); // k*pi/8
    const MobiusMap r(std::cos(th), std::sin(th), -std::sin(th), std::cos(th));
    return r * t * r.inverse();
}

SurfacePresentation make_genus2_octagon() {
    SurfacePresentation p;
    p.name = "genus2_octagon";
    p.generator_names = {"a1", "b1", "a2", "b2"};
    const MobiusMap g0 = octagon_translation(0);
    const MobiusMap g1 = octagon_translation(1);
    const MobiusMap g2 = octagon_translation(2);
    const MobiusMap g3 = octagon_translation(3);
    // Standard basis assembled from the octagon pairings; satisfies
    // [a1,b1][a2,b2] = identity.
    const MobiusMap a1 = g0;
    const MobiusMap b1 = g1.inverse() * g2 * g3.inverse();
    const MobiusMap a2 = g1.inverse() * g2;
    const MobiusMap b2 = g3.inverse() * g2;
    p.generator_maps = {a1, b1, a2, b2};
    p.genus = 2;
    p.punctures = 0;
    Word r;
    for (int l : {1, 2, -1, -2, 3, 4, -3, -4}) r.letters.push_back(static_cast<Letter>(l));
    p.relators = {r};
    return p;
}

bool single_char_alphabet(const SurfacePresentation& p) {
    for (const auto& n : p.generator_names)
        if (n.size() != 1) return false;
    return true;
}

Word word_from_string(std::string_view s, const SurfacePresentation& p) {
    Word w;
    const bool compact = single_char_alphabet(p);
    std::size_t i = 0;
    while (i < s.size()) {
        const char ch = s[i];
        if (ch == ' ' || ch == '.' || ch == '*' || ch == ',') { ++i; continue; }
        // token: generator name, then optional ' (inverse) or ^k
        std::size_t j = i;
        int idx = -1;
        bool upper_inverse = false;
        if (compact) {
            std::string low(1, static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
            idx = p.generator_index(low);
            upper_inverse = std::isupper(static_cast<unsigned char>(ch)) != 0;
            j = i + 1;
        } else {
            // longest generator-name match
            for (std::size_t len = s.size() - i; len >= 1; --len) {
                if (p.generator_index(s.substr(i, len)) >= 0 &&
                    (i + len >= s.size() || !std::isalnum(static_cast<unsigned char>(s[i + len])) ||
                     p.generator_index(s.substr(i, len + 1)) < 0)) {
                    idx = p.generator_index(s.substr(i, len));
                    j = i + len;
                    break;
                }
            }
        }
        if (idx < 0)
            throw UnknownGenerator("unknown generator in word: '" + std::string(s.substr(i, 1)) + "'");
        int exponent = upper_inverse ? -1 : 1;
        if (j < s.size() && s[j] == '\'') { exponent = -exponent; ++j; }
        else if (j < s.size() && s[j] == '^') {
            ++j;
            std::size_t k = j;
            if (k < s.size() && (s[k] == '-' || s[k] == '+')) ++k;
            while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
            if (k == j) throw ValidationError("word parse: missing exponent after '^'");
            exponent *= std::stoi(std::string(s.substr(j, k - j)));
            j = k;
        }
        const Letter base = static_cast<Letter>(idx + 1);
        for (int n = 0; n < std::abs(exponent); ++n)
            w.letters.push_back(exponent > 0 ? base : inverse_letter(base));
        i = j;
    }
    return free_reduce(w);
}

} // namespace

SurfacePresentation builtin_presentation(std::string_view name) {
    SurfacePresentation p;
    if (name == "punctured_torus") p = make_punctured_torus();
    else if (name == "sphere3") p = make_sphere3();
    else if (name == "genus2_octagon") p = make_genus2_octagon();
    else throw UnknownSurface("unknown built-in surface: " + std::string(name));
    p.validate();
    return p;
}

Word parse_word(const SurfacePresentation& p, std::string_view text) {
    return word_from_string(text, p);
}

std::string format_word(const SurfacePresentation& p, const Word& w) {
    if (w.empty()) return "e";
    const bool compact = single_char_alphabet(p);
    std::ostringstream out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const Letter l = w.letters[i];
        const std::string& name = p.generator_names[static_cast<std::size_t>(std::abs(l) - 1)];
        if (compact) {
            char c = name[0];
            out << static_cast<char>(l > 0 ? c : std::toupper(static_cast<unsigned char>(c)));
        } else {
            if (i > 0) out << '.';
            out << name;
            if (l < 0) out << "'";
        }
    }
    return out.str();
}

} // namespace currentkit
