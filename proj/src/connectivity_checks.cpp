#include "addcomb/connectivity.hpp"

#include <algorithm>

#include "addcomb/rng.hpp"
#include "addcomb/subset_energy.hpp"

namespace addcomb {

void ConnectivityParams::validate() const {
    if (k < 2) throw UsageError("connectivity: k must be >= 2");
    if (c <= 0 || c > 1) throw UsageError("connectivity: C must be in (0,1]");
    if (beta1 < 0 || beta1 > 1 || beta2 < 0 || beta2 > 1 || beta1 > beta2)
        throw UsageError("connectivity: need 0 <= beta1 <= beta2 <= 1");
}

CutWeight CutWeight::compute(const GroupSet& a, unsigned k) {
    if (k < 2) throw UsageError("CutWeight: k must be >= 2");
    if (a.empty()) throw UsageError("CutWeight: empty set");
    IntFn u = iterated_self_conv(a, k - 2);
    CutWeight cw{correlate(u, u), energy(a, k).value, k};
    return cw;
}

Int cut_value(const CutWeight& w, const GroupSet& e, const GroupSet& f) {
    require_same_spec(e.spec(), f.spec(), "cut_value");
    require_same_spec(e.spec(), w.w.spec(), "cut_value");
    Int total = 0;
    for (const auto& x : e.elems())
        for (const auto& y : f.elems()) total += w.w.at(e.spec().sub(x, y));
    return total;
}

namespace {

std::uint64_t full_mask(std::size_t n) {
    return n >= 64 ? ~std::uint64_t(0) : ((std::uint64_t(1) << n) - 1);
}

// The connectivity inequality for a subset B of A, cross-multiplied:
//   T_k(B) q^{2k} m^{2k}  >=  p^{2k} b^{2k} T_k(A),  C = p/q.
IneqRecord connectivity_check(const Int& tk_b, std::size_t b, const Int& tk_a, std::size_t m,
                              const Rat& c, unsigned k) {
    Int lhs = tk_b * ipow(rat_den(c) * m, 2 * k);
    Int rhs = ipow(rat_num(c) * b, 2 * k) * tk_a;
    return IneqRecord::check("T_k(B) C_den^(2k) |A|^(2k) >= C_num^(2k) |B|^(2k) T_k(A)", lhs,
                             Rel::GE, rhs);
}

// The strong-connectedness inequality for a cut (E,F) of A:
//   e(E,F) q m^2 >= p |E| |F| T_k(A).
IneqRecord cut_check(const Int& e_val, std::size_t se, std::size_t sf, const Int& tk_a,
                     std::size_t m, const Rat& c) {
    Int lhs = e_val * rat_den(c) * m * m;
    Int rhs = rat_num(c) * se * sf * tk_a;
    return IneqRecord::check("e(E,F) C_den |A|^2 >= C_num |E| |F| T_k(A)", lhs, Rel::GE, rhs);
}

// Ratio comparison without division: is T_k(B1)/b1^{2k} < T_k(B2)/b2^{2k}?
bool subset_ratio_less(const Int& tk1, std::size_t b1, const Int& tk2, std::size_t b2,
                       unsigned k) {
    return tk1 * ipow(Int(b2), 2 * k) < tk2 * ipow(Int(b1), 2 * k);
}

// Size window beta1 |A| <= b <= beta2 |A| with exact rational edges;
// beta1 = 0 admits every nonempty size.
bool size_in_window(std::size_t b, std::size_t m, const Rat& beta1, const Rat& beta2) {
    if (b == 0) return false;
    if (Int(b) * rat_den(beta1) < rat_num(beta1) * m) return false;
    if (Int(b) * rat_den(beta2) > rat_num(beta2) * m) return false;
    return true;
}

struct MaskEnergy {
    std::uint64_t mask;
    Int tk;
};

ConnectedVerdict exact_connected(const GroupSet& a, const ConnectivityParams& params,
                                 const ConnectivityCaps& caps) {
    const std::size_t m = a.size();
    const unsigned k = params.k;
    ConnectedVerdict verdict;

    std::optional<SubsetEnergyTable> table;
    if (SubsetEnergyTable::supported(m, k)) {
        try {
            table.emplace(a, k);
        } catch (const CapacityError&) {
            table.reset();
        }
    }
    auto energy_of = [&](std::uint64_t mask) -> Int {
        if (table) return table->energy_of_mask(mask);
        return energy(a.subset_by_mask(mask), k).value;
    };

    verdict.tk_a = energy_of(full_mask(m));
    std::optional<MaskEnergy> worst;
    for (std::uint64_t mask = 1; mask <= full_mask(m); ++mask) {
        const auto b = std::size_t(__builtin_popcountll(mask));
        if (!size_in_window(b, m, params.beta1, params.beta2)) continue;
        Int tk_b = energy_of(mask);
        if (!worst ||
            subset_ratio_less(tk_b, b, worst->tk, std::size_t(__builtin_popcountll(worst->mask)),
                              k))
            worst = MaskEnergy{mask, tk_b};
    }
    verdict.certified = true;
    if (!worst) {
        // Empty window: nothing to check, vacuously connected.
        verdict.status = SearchStatus::CertifiedOk;
        return verdict;
    }
    SubsetWitness w;
    w.set = a.subset_by_mask(worst->mask);
    w.tk = worst->tk;
    w.check = connectivity_check(w.tk, w.set.size(), verdict.tk_a, m, params.c, k);
    verdict.status = w.check.holds ? SearchStatus::CertifiedOk : SearchStatus::ViolationFound;
    verdict.worst = std::move(w);
    return verdict;
}

ConnectedVerdict heuristic_connected(const GroupSet& a, const ConnectivityParams& params,
                                     std::uint64_t seed, const ConnectivityCaps& caps) {
    const std::size_t m = a.size();
    const unsigned k = params.k;
    ConnectedVerdict verdict;
    verdict.tk_a = energy(a, k).value;
    verdict.certified = false;

    Rng rng(seed);
    auto energy_of_members = [&](const std::vector<std::size_t>& members) -> Int {
        std::vector<Elem> elems;
        elems.reserve(members.size());
        for (auto i : members) elems.push_back(a.elems()[i]);
        return energy(GroupSet::of(a.spec(), std::move(elems)), k).value;
    };

    // Admissible subset sizes.
    std::vector<std::size_t> sizes;
    for (std::size_t b = 1; b <= m; ++b)
        if (size_in_window(b, m, params.beta1, params.beta2)) sizes.push_back(b);
    if (sizes.empty()) {
        verdict.status = SearchStatus::CertifiedOk;
        verdict.certified = true;
        return verdict;
    }

    std::optional<std::pair<std::vector<std::size_t>, Int>> best;
    auto consider = [&](const std::vector<std::size_t>& members, const Int& tk) {
        if (!best || subset_ratio_less(tk, members.size(), best->second, best->first.size(), k))
            best = {members, tk};
    };

    for (unsigned restart = 0; restart < caps.heuristic_restarts; ++restart) {
        std::vector<std::size_t> perm(m);
        for (std::size_t i = 0; i < m; ++i) perm[i] = i;
        rng.shuffle(perm);
        std::size_t b = sizes[rng.uniform(sizes.size())];
        std::vector<std::size_t> members(perm.begin(), perm.begin() + b);
        std::sort(members.begin(), members.end());
        Int cur = energy_of_members(members);
        consider(members, cur);
        // Single-element swap descent on the exact ratio.
        bool improved = true;
        while (improved) {
            improved = false;
            for (std::size_t out = 0; out < members.size() && !improved; ++out)
                for (std::size_t in = 0; in < m && !improved; ++in) {
                    if (std::find(members.begin(), members.end(), in) != members.end()) continue;
                    auto cand = members;
                    cand[out] = in;
                    std::sort(cand.begin(), cand.end());
                    Int tk = energy_of_members(cand);
                    if (subset_ratio_less(tk, cand.size(), cur, members.size(), k)) {
                        members = std::move(cand);
                        cur = tk;
                        consider(members, cur);
                        improved = true;
                    }
                }
        }
    }

    SubsetWitness w;
    std::vector<Elem> elems;
    for (auto i : best->first) elems.push_back(a.elems()[i]);
    w.set = GroupSet::of(a.spec(), std::move(elems));
    w.tk = best->second;
    w.check = connectivity_check(w.tk, w.set.size(), verdict.tk_a, m, params.c, k);
    verdict.status =
        w.check.holds ? SearchStatus::NoCounterexampleFound : SearchStatus::ViolationFound;
    verdict.worst = std::move(w);
    return verdict;
}

} // namespace

ConnectedVerdict check_connected(const GroupSet& a, const ConnectivityParams& params,
                                 SearchMode mode, std::uint64_t seed,
                                 const ConnectivityCaps& caps) {
    params.validate();
    if (a.empty()) throw UsageError("check_connected: empty set");
    if (mode == SearchMode::Exact) {
        if (a.size() > caps.subset_cap)
            throw CapacityError("check_connected: exact mode capped at " +
                                std::to_string(caps.subset_cap) + " elements");
        return exact_connected(a, params, caps);
    }
    return heuristic_connected(a, params, seed, caps);
}

namespace {

StrongVerdict exact_strong(const GroupSet& a, const ConnectivityParams& params,
                           const ConnectivityCaps& caps) {
    const std::size_t m = a.size();
    StrongVerdict verdict;

    std::optional<SubsetEnergyTable> table;
    if (SubsetEnergyTable::supported(m, params.k)) {
        try {
            table.emplace(a, params.k);
        } catch (const CapacityError&) {
            table.reset();
        }
    }
    std::optional<CutWeight> cw;
    if (!table) cw = CutWeight::compute(a, params.k);
    verdict.tk_a = table ? table->full_energy() : cw->tk;

    auto e_of = [&](std::uint64_t mask_e) -> Int {
        std::uint64_t mask_f = full_mask(m) & ~mask_e;
        if (table) return table->cut_value(mask_e, mask_f);
        return cut_value(*cw, a.subset_by_mask(mask_e), a.subset_by_mask(mask_f));
    };

    // Enumerate proper bipartitions once: element 0 stays on the E side.
    std::optional<std::pair<std::uint64_t, Int>> worst; // (mask_e, e value)
    auto ratio_less = [&](const Int& e1, std::uint64_t m1, const Int& e2, std::uint64_t m2) {
        const auto s1 = std::size_t(__builtin_popcountll(m1));
        const auto s2 = std::size_t(__builtin_popcountll(m2));
        return e1 * Int(s2) * Int(m - s2) < e2 * Int(s1) * Int(m - s1);
    };
    if (m >= 2) {
        const std::uint64_t all = full_mask(m);
        for (std::uint64_t rest = 0; rest < (std::uint64_t(1) << (m - 1)); ++rest) {
            std::uint64_t mask_e = (rest << 1) | 1;
            if (mask_e == all) continue;
            Int e_val = e_of(mask_e);
            if (!worst || ratio_less(e_val, mask_e, worst->second, worst->first))
                worst = {mask_e, e_val};
        }
    }
    verdict.certified = true;
    if (!worst) {
        verdict.status = SearchStatus::CertifiedOk; // singleton: no proper cuts
        return verdict;
    }
    CutWitness w;
    w.e_side = a.subset_by_mask(worst->first);
    w.f_side = a.subset_by_mask(full_mask(m) & ~worst->first);
    w.value = worst->second;
    w.check = cut_check(w.value, w.e_side.size(), w.f_side.size(), verdict.tk_a, m, params.c);
    verdict.status = w.check.holds ? SearchStatus::CertifiedOk : SearchStatus::ViolationFound;
    verdict.worst = std::move(w);
    return verdict;
}

StrongVerdict heuristic_strong(const GroupSet& a, const ConnectivityParams& params,
                               std::uint64_t seed, const ConnectivityCaps& caps) {
    const std::size_t m = a.size();
    StrongVerdict verdict;
    verdict.certified = false;
    CutWeight cw = CutWeight::compute(a, params.k);
    verdict.tk_a = cw.tk;
    if (m < 2) {
        verdict.status = SearchStatus::CertifiedOk;
        verdict.certified = true;
        return verdict;
    }

    // Pairwise weights once; Kernighan-Lin style single-element moves.
    std::vector<Int> w(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            w[i * m + j] = cw.w.at(a.spec().sub(a.elems()[i], a.elems()[j]));

    Rng rng(seed);
    std::optional<std::pair<std::vector<char>, Int>> best;
    auto cut_of = [&](const std::vector<char>& side) {
        Int total = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (!side[i]) continue;
            for (std::size_t j = 0; j < m; ++j)
                if (side[i] && !side[j]) total += w[i * m + j];
        }
        return total;
    };
    auto sides_of = [&](const std::vector<char>& side) {
        std::size_t se = 0;
        for (auto c : side) se += c != 0;
        return std::pair<std::size_t, std::size_t>{se, m - se};
    };
    auto ratio_less = [&](const Int& e1, std::size_t a1, std::size_t b1, const Int& e2,
                          std::size_t a2, std::size_t b2) {
        return e1 * Int(a2) * Int(b2) < e2 * Int(a1) * Int(b1);
    };

    for (unsigned restart = 0; restart < caps.heuristic_restarts; ++restart) {
        std::vector<char> side(m, 0);
        for (auto& c : side) c = rng.coin() ? 1 : 0;
        // Keep both sides nonempty.
        side[rng.uniform(m)] = 1;
        if (std::count(side.begin(), side.end(), 1) == std::ptrdiff_t(m))
            side[rng.uniform(m)] = 0;
        Int cur = cut_of(side);
        auto [se, sf] = sides_of(side);
        bool improved = true;
        while (improved) {
            improved = false;
            for (std::size_t i = 0; i < m; ++i) {
                // Moving i across must keep both sides nonempty.
                if (side[i] && se == 1) continue;
                if (!side[i] && sf == 1) continue;
                auto cand = side;
                cand[i] = !cand[i];
                Int e2 = cut_of(cand);
                auto [ce, cf] = sides_of(cand);
                if (ratio_less(e2, ce, cf, cur, se, sf)) {
                    side = std::move(cand);
                    cur = e2;
                    se = ce;
                    sf = cf;
                    improved = true;
                    break;
                }
            }
        }
        if (!best || ratio_less(cur, se, sf, best->second, sides_of(best->first).first,
                                sides_of(best->first).second))
            best = {side, cur};
    }

    CutWitness wit;
    std::vector<Elem> e_elems, f_elems;
    for (std::size_t i = 0; i < m; ++i)
        (best->first[i] ? e_elems : f_elems).push_back(a.elems()[i]);
    wit.e_side = GroupSet::of(a.spec(), std::move(e_elems));
    wit.f_side = GroupSet::of(a.spec(), std::move(f_elems));
    wit.value = best->second;
    wit.check =
        cut_check(wit.value, wit.e_side.size(), wit.f_side.size(), verdict.tk_a, m, params.c);
    verdict.status =
        wit.check.holds ? SearchStatus::NoCounterexampleFound : SearchStatus::ViolationFound;
    verdict.worst = std::move(wit);
    return verdict;
}

} // namespace

StrongVerdict check_strongly_connected(const GroupSet& a, const ConnectivityParams& params,
                                       SearchMode mode, std::uint64_t seed,
                                       const ConnectivityCaps& caps) {
    params.validate();
    if (a.empty()) throw UsageError("check_strongly_connected: empty set");
    if (mode == SearchMode::Exact) {
        if (a.size() > caps.strong_cap)
            throw CapacityError("check_strongly_connected: exact mode capped at " +
                                std::to_string(caps.strong_cap) + " elements");
        return exact_strong(a, params, caps);
    }
    return heuristic_strong(a, params, seed, caps);
}

StrongWeakReport check_strong_implies_weak(const GroupSet& a, const ConnectivityParams& params,
                                           SearchMode mode, std::uint64_t seed,
                                           const ConnectivityCaps& caps) {
    params.validate();
    if (!is_power_of_two(params.k))
        throw UsageError("check_strong_implies_weak: k must be a power of two");
    StrongWeakReport rep;
    rep.strong = check_strongly_connected(a, params, mode, seed, caps);
    if (!rep.strong.holds()) {
        rep.implication_ok = true; // vacuous
        return rep;
    }
    ConnectivityParams weak = params;
    weak.c = params.c / 8;
    weak.beta1 = 0;
    weak.beta2 = 1;
    rep.weak = check_connected(a, weak, mode, seed, caps);
    rep.implication_ok = rep.weak->holds();
    return rep;
}

} // namespace addcomb
