#include "currentkit/surgery.hpp"

#include <algorithm>

#include "currentkit/errors.hpp"

namespace currentkit {

Word find_self_crossing(const Surface& s, const ConjClass& c, int radius) {
    const StreamingBoxCount r = streaming_box_count(s, c, radius);
    // Witnesses come in ball order, so the first is the minimal (length, lex)
    // representative.
    if (r.witness_indices.empty())
        throw NoCrossing("find_self_crossing: class '" + s.format(c) + "' has no crossing lift");
    return r.ball->word_of(r.witness_indices.front());
}

namespace {

struct BranchData {
    ConjClass cls;
    ElementType type = ElementType::hyperbolic;
    long selfint = -1;
    bool stabilized = true;
};

std::optional<std::array<BranchData, 3>> try_orientation(const Surface& s, const ConjClass& c,
                                                         const Word& h, long base_selfint,
                                                         int radius) {
    const Word g2w = inverse(h);
    const Word g3w = concat(h, c.rep);
    const Word g1w = concat(h, g3w);
    // Product law gamma2 * gamma3 ~ c holds by construction; verify anyway.
    if (!(s.canonical_conj(concat(g2w, g3w)) == c)) return std::nullopt;

    std::array<BranchData, 3> out;
    const Word* words[3] = {&g1w, &g2w, &g3w};
    for (int i = 0; i < 3; ++i) {
        BranchData& b = out[static_cast<std::size_t>(i)];
        b.cls = s.canonical_conj(*words[i]);
        if (b.cls.trivial()) return std::nullopt;
        b.type = s.evaluate(b.cls).classify(s.tolerances().classification);
        if (b.type == ElementType::hyperbolic) {
            const SelfIntersectionResult si = self_intersection(s, b.cls, radius);
            b.selfint = si.value;
            b.stabilized = si.stabilized;
            if (si.value >= base_selfint) return std::nullopt; // must strictly decrease
        }
    }
    return out;
}

} // namespace

Resolution resolve(const Surface& s, const ConjClass& c, const Word& h, int radius) {
    const SelfIntersectionResult base = self_intersection(s, c, radius);
    if (base.value < 1)
        throw ValidationError("resolve: class '" + s.format(c) + "' is simple");

    for (const Word& hh : {h, inverse(h)}) {
        const auto branches = try_orientation(s, c, hh, base.value, radius);
        if (branches) {
            Resolution r;
            r.g1 = (*branches)[0].cls;
            r.g2 = (*branches)[1].cls;
            r.g3 = (*branches)[2].cls;
            r.witness = hh;
            return r;
        }
    }
    throw ValidationFailed("resolve: neither orientation of '" + s.format(h) +
                           "' yields a validated splitting of '" + s.format(c) + "'");
}

SurgeryReport surgery_report(const Surface& s, const DiscreteCurrent& mu, const ConjClass& c,
                             int radius) {
    SurgeryReport report;
    const Word h = find_self_crossing(s, c, radius);
    report.resolution = resolve(s, c, h, radius);
    report.self_intersection_of_c = self_intersection(s, c, radius).value;
    report.mu_intersection_of_c = intersection_number(s, mu, c, radius).value;

    report.all_inequalities_hold = true;
    for (const ConjClass& cls : {report.resolution.g1, report.resolution.g2, report.resolution.g3}) {
        SurgeryBranch b;
        b.cls = cls;
        const ElementType t = s.evaluate(cls).classify(s.tolerances().classification);
        b.hyperbolic = t == ElementType::hyperbolic;
        b.peripheral = s.is_peripheral(cls);
        if (b.hyperbolic) {
            b.self_intersection = self_intersection(s, cls, radius).value;
            b.mu_intersection = intersection_number(s, mu, cls, radius).value;
            b.inequality_holds = b.mu_intersection <= report.mu_intersection_of_c;
            report.some_branch_hyperbolic = true;
            report.all_inequalities_hold = report.all_inequalities_hold && b.inequality_holds;
        } else {
            b.inequality_holds = true;
        }
        report.branches.push_back(std::move(b));
    }
    if (!report.some_branch_hyperbolic && s.name() != "sphere3")
        throw ValidationFailed("surgery_report: no hyperbolic branch outside sphere3");
    return report;
}

SimplifyResult simplify_to_simple(const Surface& s, const DiscreteCurrent& mu, const ConjClass& c,
                                  int radius, int max_steps) {
    SimplifyResult out;
    ConjClass cur = c;
    for (int step = 0; step <= max_steps; ++step) {
        if (self_intersection(s, cur, radius).value == 0) {
            out.simple_class = cur;
            out.steps.push_back(cur);
            return out;
        }
        if (step == max_steps) break;
        out.steps.push_back(cur);
        const Word h = find_self_crossing(s, cur, radius);
        const Resolution r = resolve(s, cur, h, radius);
        bool found = false;
        ConjClass best;
        double best_value = 0.0;
        long best_selfint = 0;
        for (const ConjClass& cls : {r.g1, r.g2, r.g3}) {
            if (s.evaluate(cls).classify(s.tolerances().classification) != ElementType::hyperbolic)
                continue;
            const double v = intersection_number(s, mu, cls, radius).value;
            const long si = self_intersection(s, cls, radius).value;
            if (!found || v < best_value || (v == best_value && si < best_selfint) ||
                (v == best_value && si == best_selfint && cls.rep < best.rep)) {
                best = cls;
                best_value = v;
                best_selfint = si;
                found = true;
            }
        }
        if (!found)
            throw NoHyperbolicBranch("simplify_to_simple: no hyperbolic branch at '" +
                                     s.format(cur) + "'");
        cur = best;
    }
    throw StepLimit("simplify_to_simple: step limit reached");
}

} // namespace currentkit
