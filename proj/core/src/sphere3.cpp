#include "currentkit/sphere3.hpp"

#include <algorithm>

#include "currentkit/errors.hpp"
#include "currentkit/parallel.hpp"

namespace currentkit {

namespace {

void require_sphere3(const Surface& s) {
    if (s.name() != "sphere3")
        throw ValidationError("operation requires the sphere3 surface");
}

} // namespace

PeripheralTag peripheral_class(const Surface& s, const ConjClass& c) {
    require_sphere3(s);
    PeripheralTag out;
    if (c.trivial()) return out;
    const Word a = s.parse("a");
    const Word b = s.parse("b");
    const Word ab = s.parse("ab");
    const std::size_t n = c.rep.size();
    struct Probe {
        CuspTag tag;
        const Word* base;
    };
    const Probe probes[3] = {{CuspTag::a_cusp, &a}, {CuspTag::b_cusp, &b}, {CuspTag::c_cusp, &ab}};
    for (const Probe& p : probes) {
        const std::size_t base_len = p.base->size();
        if (n % base_len != 0) continue;
        const int k = static_cast<int>(n / base_len);
        if (s.canonical_conj(power(*p.base, k)) == c) {
            out.tag = p.tag;
            // Canonical forms identify c with its inverse; recover the sign
            // of the exponent from the abelianization.
            int e1 = 0, e2 = 0;
            for (Letter l : c.rep.letters) (std::abs(static_cast<int>(l)) == 1 ? e1 : e2) +=
                (l > 0 ? 1 : -1);
            const int signed_total = e1 + e2;
            out.exponent = signed_total >= 0 ? k : -k;
            return out;
        }
    }
    return out;
}

LemmaAVerdict lemma_a_check(const Surface& s, const Word& g1, const Word& g2) {
    require_sphere3(s);
    const ConjClass c1 = s.canonical_conj(g1);
    const ConjClass c2 = s.canonical_conj(g2);
    const ConjClass prod = s.canonical_conj(concat(g1, g2));
    const ConjClass quot = s.canonical_conj(concat(g1, inverse(g2)));
    if (c1.trivial() || c2.trivial() || prod.trivial() || quot.trivial())
        return LemmaAVerdict::hypothesis_not_met;

    const PeripheralTag t1 = peripheral_class(s, c1);
    const PeripheralTag t2 = peripheral_class(s, c2);
    const PeripheralTag tq = peripheral_class(s, quot);
    const PeripheralTag tp = peripheral_class(s, prod);
    const bool hypothesis = t1.tag != CuspTag::none && t2.tag != CuspTag::none &&
                            tq.tag != CuspTag::none && tp.tag == CuspTag::none;
    if (!hypothesis) return LemmaAVerdict::hypothesis_not_met;

    // Conclusion 1: three distinct primitive boundary components.
    const bool distinct = t1.tag != t2.tag && t1.tag != tq.tag && t2.tag != tq.tag;
    const bool primitive =
        std::abs(t1.exponent) == 1 && std::abs(t2.exponent) == 1 && std::abs(tq.exponent) == 1;
    // Conclusion 2: the product lies among the listed classes.
    const auto listed = single_selfint_classes(s);
    const bool in_list = std::find(listed.begin(), listed.end(), prod) != listed.end();
    return (distinct && primitive && in_list) ? LemmaAVerdict::conclusion_holds
                                              : LemmaAVerdict::counterexample;
}

std::vector<ConjClass> single_selfint_classes(const Surface& s) {
    require_sphere3(s);
    // ab^-1, bc^-1 = b(ab) ~ bab, ca^-1 = (ab)^-1 a^-1 = b^-1 a^-2; canonical
    // forms absorb inverses.
    std::vector<ConjClass> out = {
        s.canonical_conj(s.parse("aB")),
        s.canonical_conj(s.parse("bab")),
        s.canonical_conj(s.parse("BAA")),
    };
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

SingleSelfIntReport classify_single_selfint(const Surface& s, int radius, int count_radius) {
    require_sphere3(s);
    ClassFilters filters;
    filters.non_peripheral = true;
    const auto classes = enumerate_classes(s, radius, filters);
    const auto listed = single_selfint_classes(s);

    SingleSelfIntReport report;
    report.table.resize(classes.size());
    parallel_for(classes.size(), [&](std::size_t i) {
        SelfIntTableRow row;
        row.cls = classes[i];
        row.selfint = self_intersection(s, classes[i], count_radius).value;
        row.listed = std::find(listed.begin(), listed.end(), classes[i]) != listed.end();
        report.table[i] = row;
    });
    for (const SelfIntTableRow& row : report.table)
        if (row.selfint == 1 && !row.listed) report.all_single_listed = false;
    return report;
}

PositivityReport positivity_harness(const Surface& s, const DiscreteCurrent& mu, int radius,
                                    int count_radius) {
    require_sphere3(s);
    if (mu.empty()) throw ValidationError("positivity_harness: empty current");
    ClassFilters filters;
    filters.non_peripheral = true;
    const auto classes = enumerate_classes(s, radius, filters);

    std::vector<double> value(classes.size(), 0.0);
    parallel_for(classes.size(), [&](std::size_t i) {
        value[i] = intersection_number(s, mu, classes[i], count_radius).value;
    });

    PositivityReport report;
    // Running min over classes of word length <= r.
    bool found = false;
    for (int r = 2; r <= radius; ++r) {
        double m = 0.0;
        bool any = false;
        for (std::size_t i = 0; i < classes.size(); ++i) {
            if (static_cast<int>(classes[i].rep.size()) > r) continue;
            if (!any || value[i] < m) {
                m = value[i];
                any = true;
            }
        }
        if (any) {
            report.min_by_radius.push_back(m);
            found = true;
        }
    }
    if (!found) return report;
    report.final_min = report.min_by_radius.back();
    report.min_positive = report.final_min > 0.0;
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (value[i] == report.final_min) {
            report.attaining_class = classes[i];
            break;
        }
    report.stable_tail = report.min_by_radius.size() >= 2 &&
                         report.min_by_radius.back() ==
                             report.min_by_radius[report.min_by_radius.size() - 2];
    return report;
}

} // namespace currentkit
