#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "currentkit/presentation.hpp"

namespace currentkit {

// Canonical representative of a free-homotopy class: cyclically reduced,
// minimal under cyclic rotation and inversion.  Obtain via
// Surface::canonical_conj only.
struct ConjClass {
    Word rep;

    bool operator==(const ConjClass& o) const = default;
    auto operator<=>(const ConjClass& o) const { return rep <=> o.rep; }
    bool trivial() const { return rep.empty(); }
};

struct ConjClassHash {
    std::size_t operator()(const ConjClass& c) const {
        std::size_t h = 1469598103934665603ull;
        for (Letter l : c.rep.letters) {
            h ^= static_cast<std::size_t>(static_cast<std::uint8_t>(l));
            h *= 1099511628211ull;
        }
        return h;
    }
};

// All distinct group elements of word length <= radius, BFS order
// (length, then creation).  Words are recovered through parent links.
struct GroupBall {
    struct Entry {
        std::int32_t parent = -1;
        Letter letter = 0;
        std::int8_t length = 0;
        MobiusMap map;
        // Extended-precision copy: boundary applications of deep words
        // amplify entry roundoff by the squared norm.
        std::array<long double, 4> map_ld{1.0L, 0.0L, 0.0L, 1.0L};

        std::array<long double, 2> apply_ld(const std::array<long double, 2>& v) const {
            return {map_ld[0] * v[0] + map_ld[1] * v[1], map_ld[2] * v[0] + map_ld[3] * v[1]};
        }
    };
    std::vector<Entry> entries;
    std::vector<std::size_t> count_by_radius; // [r] = #entries of length <= r
    int radius = 0;

    std::size_t size() const { return entries.size(); }
    std::size_t size_at(int r) const;
    Word word_of(std::size_t index) const;
};

// A surface presentation together with the derived group machinery:
// word reduction (Dehn's algorithm on one-relator surface groups),
// conjugacy canonical forms, and the cached Cayley ball.  Immutable after
// construction; caches are internally synchronized.
class Surface {
public:
    explicit Surface(SurfacePresentation pres, Tolerances tol = {});
    static Surface builtin(std::string_view name);

    const SurfacePresentation& presentation() const { return pres_; }
    const std::string& name() const { return pres_.name; }
    const Tolerances& tolerances() const { return tol_; }
    std::size_t rank() const { return pres_.rank(); }
    bool is_free() const { return pres_.is_free(); }

    Word parse(std::string_view text) const { return parse_word(pres_, text); }
    std::string format(const Word& w) const { return format_word(pres_, w); }
    std::string format(const ConjClass& c) const { return format_word(pres_, c.rep); }

    MobiusMap evaluate(const Word& w) const;
    MobiusMap evaluate(const ConjClass& c) const { return evaluate(c.rep); }
    // Extended-precision product, consistent with the ball's matrices;
    // feeds eigen-direction and boundary-application paths.
    std::array<long double, 4> evaluate_ld(const Word& w) const;

    // Free reduction plus Dehn reduction to a geodesic spelling.
    Word reduce(Word w) const;
    // Minimal-length cyclic form (free cyclic reduction plus cyclic Dehn).
    Word cyclic_reduce(Word w) const;
    ConjClass canonical_conj(const Word& w) const;

    bool is_trivial(const Word& w) const { return reduce(w).empty(); }
    bool elements_equal(const Word& u, const Word& v) const;

    // (primitive root class rep, exponent k >= 1) with c = root^k.
    std::pair<Word, int> primitive_root(const ConjClass& c) const;
    bool is_primitive(const ConjClass& c) const { return primitive_root(c).second == 1; }

    bool is_peripheral(const ConjClass& c) const;

    // Shared snapshot of the Cayley ball of at least the given radius.
    std::shared_ptr<const GroupBall> ball(int radius) const;

    // One minimal representative per coset eta<w> meeting the radius-R ball.
    std::vector<Word> coset_reps(int radius, const ConjClass& w) const;

    std::size_t element_cap() const { return element_cap_; }
    void set_element_cap(std::size_t cap) { element_cap_ = cap; }

    // Lazily created memo slot for derived layers (lift orbits and the like).
    template <typename T>
    std::shared_ptr<T> memo() const {
        std::lock_guard<std::mutex> lock(memo_mu_);
        if (!memo_slot_) memo_slot_ = std::make_shared<T>();
        return std::static_pointer_cast<T>(memo_slot_);
    }

private:
    Word dehn_pass(Word w, bool* changed) const;
    std::vector<Word> conjugacy_closure(const Word& cyclic_min) const;

    SurfacePresentation pres_;
    Tolerances tol_;
    std::size_t element_cap_;
    std::vector<Word> dehn_forms_; // rotations of all relators and inverses

    mutable std::mutex ball_mu_;
    mutable std::shared_ptr<const GroupBall> ball_;
    mutable std::mutex memo_mu_;
    mutable std::shared_ptr<void> memo_slot_;
};

} // namespace currentkit
