#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace currentkit {

// Letter +k encodes generator k-1, letter -k its inverse (k >= 1).
using Letter = std::int8_t;

inline Letter inverse_letter(Letter l) { return static_cast<Letter>(-l); }

// Freely reduced word in the surface group generators.
struct Word {
    std::vector<Letter> letters;

    Word() = default;
    explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}

    std::size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }

    bool operator==(const Word& o) const = default;
    // Length first, then lexicographic on signed letters.
    std::strong_ordering operator<=>(const Word& o) const;
};

Word free_reduce(const Word& w);
Word concat(const Word& u, const Word& v); // freely reduced concatenation
Word inverse(const Word& w);
Word power(const Word& w, int k);
Word rotated(const Word& w, std::size_t k);

// Strips cancelling first/last letters (assumes w freely reduced).
Word cyclic_free_reduce(Word w);

// Smallest p dividing w.size() with w = u^(size/p); returns w.size() if primitive.
std::size_t literal_period(const Word& w);

} // namespace currentkit
