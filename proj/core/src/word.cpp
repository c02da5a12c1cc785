#include "currentkit/word.hpp"

#include <algorithm>

namespace currentkit {

std::strong_ordering Word::operator<=>(const Word& o) const {
    if (letters.size() != o.letters.size())
        return letters.size() <=> o.letters.size();
    for (std::size_t i = 0; i < letters.size(); ++i)
        if (letters[i] != o.letters[i]) return letters[i] <=> o.letters[i];
    return std::strong_ordering::equal;
}

Word free_reduce(const Word& w) {
    Word out;
    out.letters.reserve(w.size());
    for (Letter l : w.letters) {
        if (!out.letters.empty() && out.letters.back() == inverse_letter(l))
            out.letters.pop_back();
        else
            out.letters.push_back(l);
    }
    return out;
}

Word concat(const Word& u, const Word& v) {
    Word out = u;
    for (Letter l : v.letters) {
        if (!out.letters.empty() && out.letters.back() == inverse_letter(l))
            out.letters.pop_back();
        else
            out.letters.push_back(l);
    }
    return out;
}

Word inverse(const Word& w) {
    Word out;
    out.letters.reserve(w.size());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        out.letters.push_back(inverse_letter(*it));
    return out;
}

Word power(const Word& w, int k) {
    Word base = k < 0 ? inverse(w) : w;
    Word out;
    for (int i = 0; i < std::abs(k); ++i) out = concat(out, base);
    return out;
}

Word rotated(const Word& w, std::size_t k) {
    const std::size_t n = w.size();
    if (n == 0) return w;
    Word out;
    out.letters.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.letters.push_back(w.letters[(i + k) % n]);
    return out;
}

Word cyclic_free_reduce(Word w) {
    while (w.size() > 1 && w.letters.front() == inverse_letter(w.letters.back())) {
        w.letters.erase(w.letters.begin());
        w.letters.pop_back();
    }
    return w;
}

std::size_t literal_period(const Word& w) {
    const std::size_t n = w.size();
    for (std::size_t p = 1; p <= n / 2; ++p) {
        if (n % p != 0) continue;
        bool periodic = true;
        for (std::size_t i = p; i < n && periodic; ++i)
            periodic = (w.letters[i] == w.letters[i - p]);
        if (periodic) return p;
    }
    return n;
}

} // namespace currentkit
