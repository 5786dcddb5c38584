#include <unordered_set>

#include "addcomb/connectivity.hpp"

namespace addcomb {

KonyaginReport konyagin_containment(const GroupSet& a, unsigned k, const Rat& c, SearchMode mode,
                                    std::uint64_t seed, const ConnectivityCaps& caps) {
    if (k < 2) throw UsageError("konyagin_containment: k must be >= 2");
    if (c <= 0 || c > 1) throw UsageError("konyagin_containment: C must be in (0,1]");
    if (a.empty()) throw UsageError("konyagin_containment: empty set");
    if (!a.spec().finite())
        throw UsageError("konyagin_containment: requires a finite group (subgroup closure)");

    const auto& spec = a.spec();
    CutWeight cw = CutWeight::compute(a, k);

    // S = { h : w(h) |A|^2 q >= p T_k(A) }.
    const Int p = rat_num(c), q = rat_den(c);
    const Int m2 = Int(a.size()) * Int(a.size());
    std::vector<Elem> s_elems;
    for (const auto& [h, wv] : cw.w.values())
        if (wv * m2 * q >= p * cw.tk) s_elems.push_back(h);
    KonyaginReport rep{GroupSet::of(spec, std::move(s_elems))};

    // Subgroup closure <S> by breadth-first accumulation; S is symmetric
    // (w(x) = w(-x)) but negations are added anyway.
    std::vector<Elem> gens;
    for (const auto& s : rep.s_set.elems()) {
        gens.push_back(s);
        gens.push_back(spec.neg(s));
    }
    std::unordered_set<Elem, ElemHash> subgroup{spec.zero()};
    std::vector<Elem> frontier{spec.zero()};
    while (!frontier.empty()) {
        std::vector<Elem> next;
        for (const auto& x : frontier)
            for (const auto& g : gens) {
                Elem y = spec.add(x, g);
                if (subgroup.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    rep.subgroup_order = Int(subgroup.size());

    rep.anchor = a.elems().front();
    rep.contained = true;
    for (const auto& x : a.elems())
        if (!subgroup.count(spec.sub(x, rep.anchor))) {
            rep.contained = false;
            break;
        }

    rep.strong = check_strongly_connected(a, ConnectivityParams{k, c, 0, 1}, mode, seed, caps);
    rep.theorem_applicable = rep.strong.certified && rep.strong.holds();
    if (rep.theorem_applicable && !rep.contained)
        throw InternalError("konyagin_containment: certified strong connectedness without "
                            "coset containment");
    return rep;
}

} // namespace addcomb
