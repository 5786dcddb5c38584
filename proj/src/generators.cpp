#include "addcomb/generators.hpp"

#include <algorithm>
#include <set>

#include "addcomb/dissociation.hpp"
#include "addcomb/rng.hpp"

namespace addcomb {

namespace {

Elem random_element(const GroupSpec& spec, Rng& rng, const Int& window) {
    switch (spec.kind()) {
    case GroupKind::Cyclic: {
        // Rejection sampling over 64-bit blocks keeps the draw uniform for
        // any modulus that fits; larger moduli are out of desk-scale range.
        if (spec.modulus() > Int(std::uint64_t(1) << 62))
            throw UsageError("random generation: modulus too large");
        return spec.make_scalar(Int(rng.uniform(spec.modulus().convert_to<std::uint64_t>())));
    }
    case GroupKind::Integers: {
        if (window <= 0) throw UsageError("random generation: window must be positive");
        if (window > Int(std::uint64_t(1) << 62))
            throw UsageError("random generation: window too large");
        return spec.make_scalar(Int(rng.uniform(window.convert_to<std::uint64_t>())));
    }
    case GroupKind::Vector: {
        std::vector<std::uint32_t> coords(spec.dim());
        for (auto& c : coords) c = std::uint32_t(rng.uniform(spec.prime()));
        return spec.make_vector(std::move(coords));
    }
    }
    throw InternalError("unreachable");
}

GroupSet gen_random(const GeneratorSpec& g) {
    if (g.size == 0) throw UsageError("random family needs size >= 1");
    if (g.group.finite() && Int(g.size) > g.group.order())
        throw UsageError("random family: size exceeds group order");
    if (g.group.kind() == GroupKind::Integers && Int(g.size) > g.window)
        throw UsageError("random family: size exceeds window");
    Rng rng(g.seed);
    std::set<Elem> chosen;
    std::size_t stall = 0;
    while (chosen.size() < g.size) {
        if (++stall > 1000 * g.size + 10000)
            throw UsageError("random family: cannot reach requested size");
        chosen.insert(random_element(g.group, rng, g.window));
    }
    return GroupSet::of(g.group, std::vector<Elem>(chosen.begin(), chosen.end()));
}

GroupSet gen_ap(const GeneratorSpec& g) {
    if (g.length == 0) throw UsageError("ap family needs length >= 1");
    if (g.group.kind() == GroupKind::Vector)
        throw UsageError("ap family needs a scalar group (cyclic or integers)");
    std::vector<Elem> elems;
    Int value = g.start;
    for (std::size_t i = 0; i < g.length; ++i, value += g.step)
        elems.push_back(g.group.make_scalar(value));
    return GroupSet::of(g.group, std::move(elems));
}

GroupSet gen_multi_ap(const GeneratorSpec& g) {
    if (g.steps.size() != g.lengths.size() || g.steps.empty())
        throw UsageError("multi_ap family needs matching nonempty steps/lengths");
    if (g.group.kind() == GroupKind::Vector)
        throw UsageError("multi_ap family needs a scalar group");
    for (auto len : g.lengths)
        if (len == 0) throw UsageError("multi_ap lengths must be >= 1");
    std::vector<Elem> elems;
    std::vector<std::size_t> idx(g.steps.size(), 0);
    while (true) {
        Int v = g.base;
        for (std::size_t d = 0; d < g.steps.size(); ++d) v += Int(idx[d]) * g.steps[d];
        elems.push_back(g.group.make_scalar(v));
        std::size_t d = 0;
        while (d < idx.size() && ++idx[d] == g.lengths[d]) idx[d++] = 0;
        if (d == idx.size()) break;
    }
    return GroupSet::of(g.group, std::move(elems));
}

GroupSet span_closure(const GroupSpec& spec, const std::vector<Elem>& gens) {
    std::set<Elem> members{spec.zero()};
    std::vector<Elem> frontier{spec.zero()};
    while (!frontier.empty()) {
        std::vector<Elem> next;
        for (const auto& x : frontier)
            for (const auto& gen : gens) {
                Elem y = spec.add(x, gen);
                if (members.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return GroupSet::of(spec, std::vector<Elem>(members.begin(), members.end()));
}

GroupSet gen_subspace(const GeneratorSpec& g) {
    if (g.group.kind() != GroupKind::Vector)
        throw UsageError("subspace family needs a vector group");
    if (g.subspace_dim > g.group.dim())
        throw UsageError("subspace dimension exceeds ambient dimension");
    const Int target = ipow(Int(g.group.prime()), g.subspace_dim);
    Rng rng(g.seed);
    std::vector<Elem> gens;
    GroupSet space = span_closure(g.group, gens);
    std::size_t stall = 0;
    while (Int(space.size()) < target) {
        if (++stall > 10000) throw InternalError("subspace generation stalled");
        Elem cand = random_element(g.group, rng, 0);
        if (space.contains(cand)) continue;
        gens.push_back(cand);
        space = span_closure(g.group, gens);
    }
    return space;
}

GroupSet gen_dissociated(const GeneratorSpec& g) {
    if (g.size == 0) throw UsageError("dissociated family needs size >= 1");
    Rng rng(g.seed);
    DissociationCaps caps;
    std::vector<Elem> lambda;
    std::size_t stall = 0;
    while (lambda.size() < g.size) {
        if (++stall > 2000 * g.size + 20000)
            throw UsageError("dissociated family: rejection sampling stalled; "
                             "group too small for requested size?");
        Elem cand = random_element(g.group, rng, g.window);
        if (cand == g.group.zero()) continue;
        std::vector<Elem> trial = lambda;
        trial.push_back(cand);
        auto trial_set = GroupSet::of(g.group, trial);
        if (trial_set.size() != trial.size()) continue; // duplicate
        if (is_dissociated(trial_set, caps).dissociated) lambda.push_back(cand);
    }
    return GroupSet::of(g.group, std::move(lambda));
}

GroupSet gen_coset_union(const GeneratorSpec& g) {
    if (g.num_cosets == 0) throw UsageError("coset_union family needs num_cosets >= 1");
    GroupSet sub(g.group);
    if (g.group.kind() == GroupKind::Vector) {
        GeneratorSpec s = g;
        s.family = GeneratorSpec::Family::Subspace;
        sub = gen_subspace(s);
    } else if (g.group.kind() == GroupKind::Cyclic) {
        // Subgroup of order 2^subspace_dim; the modulus must admit it.
        Int order = ipow(Int(2), g.subspace_dim);
        if (g.group.modulus() % order != 0)
            throw UsageError("coset_union: 2^dim must divide the cyclic modulus");
        Int step = g.group.modulus() / order;
        std::vector<Elem> elems;
        for (Int i = 0; i < order; ++i) elems.push_back(g.group.make_scalar(i * step));
        sub = GroupSet::of(g.group, std::move(elems));
    } else {
        throw UsageError("coset_union family needs a finite group");
    }
    if (Int(g.num_cosets) * Int(sub.size()) > g.group.order())
        throw UsageError("coset_union: too many cosets for the group");

    Rng rng(g.seed);
    GroupSet result(g.group);
    std::size_t cosets = 0, stall = 0;
    while (cosets < g.num_cosets) {
        if (++stall > 10000) throw UsageError("coset_union: rejection sampling stalled");
        Elem rep = random_element(g.group, rng, 0);
        GroupSet coset = translate(sub, rep);
        GroupSet merged = result.set_union(coset);
        if (merged.size() != result.size() + coset.size()) continue; // cosets overlap
        result = std::move(merged);
        ++cosets;
    }
    return result;
}

} // namespace

GroupSet generate(const GeneratorSpec& spec) {
    switch (spec.family) {
    case GeneratorSpec::Family::Random: return gen_random(spec);
    case GeneratorSpec::Family::Ap: return gen_ap(spec);
    case GeneratorSpec::Family::MultiAp: return gen_multi_ap(spec);
    case GeneratorSpec::Family::Subspace: return gen_subspace(spec);
    case GeneratorSpec::Family::Dissociated: return gen_dissociated(spec);
    case GeneratorSpec::Family::CosetUnion: return gen_coset_union(spec);
    }
    throw InternalError("unreachable");
}

} // namespace addcomb
