#include "currentkit/surface.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>

#include "currentkit/errors.hpp"

namespace currentkit {

std::size_t GroupBall::size_at(int r) const {
    if (r < 0) return 0;
    const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(r), count_by_radius.size() - 1);
    return count_by_radius[i];
}

Word GroupBall::word_of(std::size_t index) const {
    Word w;
    std::int32_t cur = static_cast<std::int32_t>(index);
    while (cur > 0) {
        const Entry& e = entries[static_cast<std::size_t>(cur)];
        w.letters.push_back(e.letter);
        cur = e.parent;
    }
    std::reverse(w.letters.begin(), w.letters.end());
    return w;
}

Surface::Surface(SurfacePresentation pres, Tolerances tol)
    : pres_(std::move(pres)), tol_(tol), element_cap_(5'000'000) {
    pres_.validate();
    if (const char* cap = std::getenv("CURRENTKIT_ELEMENT_CAP")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(cap, &end, 10);
        if (end && *end == '\0' && v > 0) element_cap_ = static_cast<std::size_t>(v);
    }
    for (const Word& r : pres_.relators) {
        const Word rc = cyclic_free_reduce(free_reduce(r));
        const Word ri = inverse(rc);
        for (std::size_t k = 0; k < rc.size(); ++k) {
            Word f1 = rotated(rc, k);
            Word f2 = rotated(ri, k);
            if (std::find(dehn_forms_.begin(), dehn_forms_.end(), f1) == dehn_forms_.end())
                dehn_forms_.push_back(std::move(f1));
            if (std::find(dehn_forms_.begin(), dehn_forms_.end(), f2) == dehn_forms_.end())
                dehn_forms_.push_back(std::move(f2));
        }
    }
}

Surface Surface::builtin(std::string_view name) {
    return Surface(builtin_presentation(name));
}

MobiusMap Surface::evaluate(const Word& w) const {
    MobiusMap m;
    for (Letter l : w.letters) {
        const int idx = std::abs(static_cast<int>(l)) - 1;
        if (idx < 0 || static_cast<std::size_t>(idx) >= pres_.rank())
            throw UnknownGenerator("evaluate: letter out of range");
        const MobiusMap& g = pres_.generator_maps[static_cast<std::size_t>(idx)];
        m = m * (l > 0 ? g : g.inverse());
    }
    return m;
}

std::array<long double, 4> Surface::evaluate_ld(const Word& w) const {
    std::array<long double, 4> m{1.0L, 0.0L, 0.0L, 1.0L};
    for (Letter l : w.letters) {
        const int idx = std::abs(static_cast<int>(l)) - 1;
        if (idx < 0 || static_cast<std::size_t>(idx) >= pres_.rank())
            throw UnknownGenerator("evaluate_ld: letter out of range");
        const MobiusMap& gm = pres_.generator_maps[static_cast<std::size_t>(idx)];
        const MobiusMap gg = l > 0 ? gm : gm.inverse();
        const std::array<long double, 4> g{gg.a(), gg.b(), gg.c(), gg.d()};
        m = {m[0] * g[0] + m[1] * g[2], m[0] * g[1] + m[1] * g[3],
             m[2] * g[0] + m[3] * g[2], m[2] * g[1] + m[3] * g[3]};
    }
    return m;
}

Word Surface::dehn_pass(Word w, bool* changed) const {
    *changed = false;
    if (dehn_forms_.empty() || w.empty()) return w;
    for (const Word& f : dehn_forms_) {
        const std::size_t L = f.size();
        for (std::size_t m = L; 2 * m > L; --m) {
            if (m > w.size()) continue;
            for (std::size_t i = 0; i + m <= w.size(); ++i) {
                bool match = true;
                for (std::size_t t = 0; t < m && match; ++t)
                    match = (w.letters[i + t] == f.letters[t]);
                if (!match) continue;
                Word out;
                out.letters.reserve(w.size());
                out.letters.assign(w.letters.begin(),
                                   w.letters.begin() + static_cast<std::ptrdiff_t>(i));
                Word tail;
                for (std::size_t t = L; t > m; --t)
                    tail.letters.push_back(inverse_letter(f.letters[t - 1]));
                for (Letter l : tail.letters) out.letters.push_back(l);
                for (std::size_t t = i + m; t < w.size(); ++t)
                    out.letters.push_back(w.letters[t]);
                *changed = true;
                return free_reduce(out);
            }
        }
    }
    return w;
}

Word Surface::reduce(Word w) const {
    w = free_reduce(w);
    bool changed = true;
    while (changed) w = dehn_pass(std::move(w), &changed);
    return w;
}

Word Surface::cyclic_reduce(Word w) const {
    w = cyclic_free_reduce(reduce(std::move(w)));
    if (dehn_forms_.empty()) return w;
    bool shrunk = true;
    while (shrunk && !w.empty()) {
        shrunk = false;
        for (std::size_t k = 0; k < w.size(); ++k) {
            Word red = cyclic_free_reduce(reduce(rotated(w, k)));
            if (red.size() < w.size()) {
                w = std::move(red);
                shrunk = true;
                break;
            }
        }
    }
    return w;
}

bool Surface::elements_equal(const Word& u, const Word& v) const {
    return reduce(concat(inverse(u), v)).empty();
}

namespace {

Word min_rotation(const Word& w) {
    Word best = w;
    for (std::size_t k = 1; k < w.size(); ++k) {
        Word r = rotated(w, k);
        if (r < best) best = r;
    }
    return best;
}

} // namespace

// Equal-length conjugates of a cyclically minimal word: closure under
// rotation, inversion, and half-relator swaps.
std::vector<Word> Surface::conjugacy_closure(const Word& start) const {
    std::set<Word> seen;
    std::vector<Word> queue;
    const auto push = [&](const Word& x) {
        Word n = min_rotation(x);
        if (seen.insert(n).second) queue.push_back(std::move(n));
    };
    push(start);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        if (queue.size() > 20000)
            throw ResourceLimit("conjugacy closure exceeded its cap");
        const Word x = queue[qi];
        push(inverse(x));
        for (const Word& f : dehn_forms_) {
            if (f.size() % 2 != 0) continue;
            const std::size_t h = f.size() / 2;
            if (x.size() < h) continue;
            for (std::size_t k = 0; k < x.size(); ++k) {
                const Word r = rotated(x, k);
                bool match = true;
                for (std::size_t t = 0; t < h && match; ++t)
                    match = (r.letters[t] == f.letters[t]);
                if (!match) continue;
                Word y;
                for (std::size_t t = f.size(); t > h; --t)
                    y.letters.push_back(inverse_letter(f.letters[t - 1]));
                for (std::size_t t = h; t < r.size(); ++t) y.letters.push_back(r.letters[t]);
                y = cyclic_free_reduce(free_reduce(y));
                if (y.size() < x.size()) {
                    // The swap exposed a shorter conjugate; defer to the caller.
                    return {y};
                }
                push(y);
            }
        }
    }
    return {seen.begin(), seen.end()};
}

ConjClass Surface::canonical_conj(const Word& w0) const {
    Word w = cyclic_reduce(w0);
    for (;;) {
        if (w.empty()) return ConjClass{};
        if (is_free()) {
            Word best = min_rotation(w);
            Word besti = min_rotation(inverse(w));
            return ConjClass{besti < best ? besti : best};
        }
        std::vector<Word> closure = conjugacy_closure(min_rotation(w));
        if (closure.size() == 1 && closure.front().size() < w.size()) {
            w = cyclic_reduce(closure.front());
            continue;
        }
        return ConjClass{*std::min_element(closure.begin(), closure.end())};
    }
}

std::pair<Word, int> Surface::primitive_root(const ConjClass& c) const {
    const Word& w = c.rep;
    const std::size_t n = w.size();
    if (n == 0) return {w, 1};
    std::size_t best_p = literal_period(w);
    Word best = w;
    if (!is_free() && best_p == n) {
        for (const Word& x : conjugacy_closure(min_rotation(w))) {
            const std::size_t p = literal_period(x);
            if (p < best_p) {
                best_p = p;
                best = x;
            }
        }
    }
    Word root;
    root.letters.assign(best.letters.begin(),
                        best.letters.begin() + static_cast<std::ptrdiff_t>(best_p));
    return {root, static_cast<int>(n / best_p)};
}

bool Surface::is_peripheral(const ConjClass& c) const {
    if (c.trivial()) return false;
    if (!is_free()) return false; // closed surfaces have no peripheral classes
    for (const Word& p : pres_.peripheral_words) {
        const ConjClass pc = canonical_conj(p);
        if (pc.trivial()) continue;
        if (c.rep.size() % pc.rep.size() != 0) continue;
        const int k = static_cast<int>(c.rep.size() / pc.rep.size());
        if (canonical_conj(power(pc.rep, k)) == c) return true;
    }
    return false;
}

namespace {

struct MatKey {
    std::array<std::int64_t, 5> q;
    bool operator==(const MatKey& o) const = default;
};

struct MatKeyHash {
    std::size_t operator()(const MatKey& k) const {
        std::size_t h = 1469598103934665603ull;
        for (std::int64_t v : k.q) {
            h ^= static_cast<std::size_t>(v);
            h *= 1099511628211ull;
        }
        return h;
    }
};

MatKey mat_key(const MobiusMap& m) {
    const auto& e = m.entries();
    const double fr = std::sqrt(e[0] * e[0] + e[1] * e[1] + e[2] * e[2] + e[3] * e[3]);
    double n[4] = {e[0] / fr, e[1] / fr, e[2] / fr, e[3] / fr};
    double s = 1.0;
    for (double v : n) {
        if (std::fabs(v) > 0.35) {
            s = v > 0 ? 1.0 : -1.0;
            break;
        }
    }
    MatKey k;
    for (int i = 0; i < 4; ++i) k.q[i] = static_cast<std::int64_t>(std::llround(n[i] * s * 1e9));
    k.q[4] = static_cast<std::int64_t>(std::llround(std::log(fr) * 1e4));
    return k;
}

bool close_up_to_sign_rel(const MobiusMap& a, const MobiusMap& b, double tol) {
    const auto& x = a.entries();
    const auto& y = b.entries();
    double scale = 1.0;
    for (int i = 0; i < 4; ++i)
        scale = std::max({scale, std::fabs(x[i]), std::fabs(y[i])});
    double dp = 0.0, dm = 0.0;
    for (int i = 0; i < 4; ++i) {
        dp = std::max(dp, std::fabs(x[i] - y[i]));
        dm = std::max(dm, std::fabs(x[i] + y[i]));
    }
    return std::min(dp, dm) < tol * scale;
}

} // namespace

std::shared_ptr<const GroupBall> Surface::ball(int radius) const {
    if (radius < 0) throw ValidationError("ball: negative radius");
    std::lock_guard<std::mutex> lock(ball_mu_);
    if (ball_ && ball_->radius >= radius) return ball_;

    auto nb = std::make_shared<GroupBall>();
    nb->radius = radius;
    nb->entries.push_back(GroupBall::Entry{-1, 0, 0, MobiusMap::identity(), {1.0L, 0.0L, 0.0L, 1.0L}});
    nb->count_by_radius.assign(1, 1);

    std::vector<std::array<long double, 4>> gen_ld, inv_ld;
    for (const MobiusMap& g : pres_.generator_maps) {
        gen_ld.push_back({g.a(), g.b(), g.c(), g.d()});
        const MobiusMap gi = g.inverse();
        inv_ld.push_back({gi.a(), gi.b(), gi.c(), gi.d()});
    }
    const auto mul_ld = [](const std::array<long double, 4>& x,
                           const std::array<long double, 4>& y) {
        return std::array<long double, 4>{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
                                          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
    };

    std::unordered_map<MatKey, std::int32_t, MatKeyHash> dedup;
    const bool need_dedup = !is_free();
    if (need_dedup) dedup.emplace(mat_key(MobiusMap::identity()), 0);

    std::vector<Letter> alphabet;
    for (int i = static_cast<int>(rank()); i >= 1; --i) alphabet.push_back(static_cast<Letter>(-i));
    for (int i = 1; i <= static_cast<int>(rank()); ++i) alphabet.push_back(static_cast<Letter>(i));
    std::sort(alphabet.begin(), alphabet.end());

    std::size_t level_begin = 0;
    for (int len = 1; len <= radius; ++len) {
        const std::size_t level_end = nb->entries.size();
        for (std::size_t pi = level_begin; pi < level_end; ++pi) {
            for (Letter l : alphabet) {
                const GroupBall::Entry parent = nb->entries[pi];
                if (parent.letter != 0 && parent.letter == inverse_letter(l)) continue;
                const std::size_t idx = static_cast<std::size_t>(std::abs(static_cast<int>(l)) - 1);
                const auto child_ld = mul_ld(parent.map_ld, l > 0 ? gen_ld[idx] : inv_ld[idx]);
                const MobiusMap child(static_cast<double>(child_ld[0]),
                                      static_cast<double>(child_ld[1]),
                                      static_cast<double>(child_ld[2]),
                                      static_cast<double>(child_ld[3]));
                if (need_dedup) {
                    Word cw = nb->word_of(pi);
                    cw.letters.push_back(l);
                    if (static_cast<int>(reduce(cw).size()) < len) continue; // not geodesic
                    const MatKey key = mat_key(child);
                    bool dup = false;
                    MatKey probe = key;
                    for (int d0 = -1; d0 <= 1 && !dup; ++d0)
                        for (int d1 = -1; d1 <= 1 && !dup; ++d1)
                            for (int d2 = -1; d2 <= 1 && !dup; ++d2)
                                for (int d3 = -1; d3 <= 1 && !dup; ++d3)
                                    for (int d4 = -1; d4 <= 1 && !dup; ++d4) {
                                        probe.q = {key.q[0] + d0, key.q[1] + d1, key.q[2] + d2,
                                                   key.q[3] + d3, key.q[4] + d4};
                                        auto it = dedup.find(probe);
                                        if (it == dedup.end()) continue;
                                        const auto& cand = nb->entries[static_cast<std::size_t>(it->second)];
                                        if (close_up_to_sign_rel(cand.map, child, 1e-6) &&
                                            elements_equal(nb->word_of(static_cast<std::size_t>(it->second)), cw))
                                            dup = true;
                                    }
                    if (dup) continue;
                    dedup.emplace(key, static_cast<std::int32_t>(nb->entries.size()));
                }
                nb->entries.push_back(GroupBall::Entry{static_cast<std::int32_t>(pi), l,
                                                       static_cast<std::int8_t>(len), child,
                                                       child_ld});
                if (nb->entries.size() > element_cap_)
                    throw ResourceLimit("group ball exceeds the element cap");
            }
        }
        nb->count_by_radius.push_back(nb->entries.size());
        level_begin = level_end;
    }
    ball_ = nb;
    return ball_;
}

std::vector<Word> Surface::coset_reps(int radius, const ConjClass& cls) const {
    if (cls.trivial()) throw ValidationError("coset_reps: trivial class");
    const auto [root, k] = primitive_root(cls);
    const MobiusMap m = evaluate(root);
    const ElementType type = m.classify(tol_.classification);
    std::array<long double, 2> vp, vm;
    if (type == ElementType::hyperbolic) {
        const auto mld = evaluate_ld(root);
        long double a = mld[0], b = mld[1], c = mld[2], d = mld[3];
        if (a + d < 0.0L) { a = -a; b = -b; c = -c; d = -d; }
        const long double tr = a + d;
        const long double disc = sqrtl(tr * tr - 4.0L);
        const auto eigendir = [&](long double lam, std::array<long double, 2>& out) {
            const long double x1 = b, y1 = lam - a;
            const long double x2 = lam - d, y2 = c;
            if (x1 * x1 + y1 * y1 >= x2 * x2 + y2 * y2)
                out = {x1, y1};
            else
                out = {x2, y2};
        };
        eigendir((tr + disc) / 2.0L, vp);
        eigendir((tr - disc) / 2.0L, vm);
    } else if (type == ElementType::parabolic) {
        // single boundary fixed point; orbit of it separates the cosets
        const double a = m.a(), c = m.c(), d = m.d();
        if (std::fabs(c) > 1e-14) {
            const long double t = (static_cast<long double>(a) - d) / (2.0L * c);
            vp = vm = {t, 1.0L};
        } else {
            vp = vm = {1.0L, 0.0L};
        }
    } else {
        throw NotHyperbolic("coset_reps: class is neither hyperbolic nor parabolic");
    }

    const auto bl = ball(radius);
    constexpr double kCut = 0.7390851332151607; // moves the angle origin off the data
    const auto phi_ld = [](const std::array<long double, 2>& v) {
        double p = std::fmod(static_cast<double>(2.0L * atan2l(v[1], v[0])), kTwoPi);
        if (p < 0.0) p += kTwoPi;
        return p;
    };

    // Geodesic orbits collected on a coarse hash grid; ambiguous proximity
    // is settled by the word problem (see lift_orbit).
    constexpr double kCell = 1e-8;
    constexpr double kTight = 5e-11;
    struct CellHash {
        std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& key) const {
            return std::hash<std::int64_t>{}(key.first * 1000003 + key.second);
        }
    };
    const auto same_coset_exact = [&](const Word& w1, const Word& w2) {
        const Word diff = concat(inverse(w1), w2);
        const int maxj = static_cast<int>((w1.size() + w2.size()) / root.size()) + 1;
        for (int j = -maxj; j <= maxj; ++j)
            if (elements_equal(diff, power(root, j))) return true;
        return false;
    };
    struct Bucket {
        double p1, p2;
        std::vector<std::size_t> members;
        std::int32_t next = -1;
    };
    std::vector<Bucket> buckets;
    std::unordered_map<std::pair<std::int64_t, std::int64_t>, std::int32_t, CellHash> grid;
    const std::size_t limit = bl->size_at(radius);
    for (std::size_t i = 0; i < limit; ++i) {
        const auto& e = bl->entries[i];
        double p1 = std::fmod(phi_ld(e.apply_ld(vp)) + kCut, kTwoPi);
        double p2 = std::fmod(phi_ld(e.apply_ld(vm)) + kCut, kTwoPi);
        if (p1 > p2) std::swap(p1, p2);
        const std::int64_t c1 = static_cast<std::int64_t>(std::floor(p1 / kCell));
        const std::int64_t c2 = static_cast<std::int64_t>(std::floor(p2 / kCell));
        bool placed = false;
        for (int d1 = -1; d1 <= 1 && !placed; ++d1)
            for (int d2 = -1; d2 <= 1 && !placed; ++d2) {
                auto it = grid.find({c1 + d1, c2 + d2});
                if (it == grid.end()) continue;
                for (std::int32_t bi = it->second; bi >= 0 && !placed;
                     bi = buckets[static_cast<std::size_t>(bi)].next) {
                    Bucket& b = buckets[static_cast<std::size_t>(bi)];
                    const double g1 = std::fabs(b.p1 - p1);
                    const double g2 = std::fabs(b.p2 - p2);
                    if (g1 > 2.0 * kCell || g2 > 2.0 * kCell) continue;
                    if ((g1 <= kTight && g2 <= kTight) ||
                        same_coset_exact(bl->word_of(b.members.front()), bl->word_of(i))) {
                        b.members.push_back(i);
                        placed = true;
                    }
                }
            }
        if (!placed) {
            const auto key = std::make_pair(c1, c2);
            const std::int32_t idx = static_cast<std::int32_t>(buckets.size());
            buckets.push_back(Bucket{p1, p2, {i}, -1});
            auto [it, fresh] = grid.try_emplace(key, idx);
            if (!fresh) {
                buckets.back().next = it->second;
                it->second = idx;
            }
        }
    }

    std::vector<Word> reps;
    for (const Bucket& b : buckets) {
        const Word w0 = bl->word_of(b.members.front());
        if (k == 1) {
            reps.push_back(w0);
            continue;
        }
        // split the geodesic orbit into residues mod k when cls is a power
        std::vector<std::pair<int, Word>> by_residue;
        for (std::size_t mi : b.members) {
            const Word wi = bl->word_of(mi);
            const int maxj = static_cast<int>((w0.size() + wi.size()) / root.size()) + 1;
            int res = -1;
            for (int j = -maxj; j <= maxj && res < 0; ++j)
                if (elements_equal(concat(inverse(w0), wi), power(root, j)))
                    res = ((j % k) + k) % k;
            if (res < 0) continue;
            bool found = false;
            for (auto& [r, w] : by_residue)
                if (r == res) {
                    if (wi < w) w = wi;
                    found = true;
                }
            if (!found) by_residue.emplace_back(res, wi);
        }
        for (auto& [r, w] : by_residue) reps.push_back(std::move(w));
    }
    std::sort(reps.begin(), reps.end());
    return reps;
}

} // namespace currentkit
