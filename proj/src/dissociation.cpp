#include "addcomb/dissociation.hpp"

#include <algorithm>
#include <unordered_map>

#include "addcomb/rng.hpp"

namespace addcomb {

namespace {

// Enumerates eps in {-1,0,1}^elems (including all-zero) as (sum, signs) via
// DFS with incremental sums; visit returns true to stop early.
template <typename Visit>
class SignedSumEnumerator {
public:
    SignedSumEnumerator(const GroupSpec& spec, const std::vector<Elem>& elems, Visit& visit)
        : spec_(spec), elems_(elems), visit_(visit), signs_(elems.size(), 0) {}

    bool run() { return descend(0, spec_.zero()); }

private:
    bool descend(std::size_t idx, const Elem& partial) {
        if (idx == elems_.size()) return visit_(partial, signs_);
        signs_[idx] = 0;
        if (descend(idx + 1, partial)) return true;
        signs_[idx] = 1;
        if (descend(idx + 1, spec_.add(partial, elems_[idx]))) return true;
        signs_[idx] = -1;
        if (descend(idx + 1, spec_.sub(partial, elems_[idx]))) return true;
        signs_[idx] = 0;
        return false;
    }

    const GroupSpec& spec_;
    const std::vector<Elem>& elems_;
    Visit& visit_;
    SignVector signs_;
};

template <typename Visit>
bool enumerate_signed_sums(const GroupSpec& spec, const std::vector<Elem>& elems, Visit&& visit) {
    SignedSumEnumerator<Visit> e(spec, elems, visit);
    return e.run();
}

bool all_zero(const SignVector& s) {
    return std::all_of(s.begin(), s.end(), [](std::int8_t v) { return v == 0; });
}

std::optional<SignVector> find_relation_exhaustive(const GroupSpec& spec,
                                                   const std::vector<Elem>& elems) {
    const Elem zero = spec.zero();
    std::optional<SignVector> found;
    enumerate_signed_sums(spec, elems, [&](const Elem& sum, const SignVector& signs) {
        if (sum == zero && !all_zero(signs)) {
            found = signs;
            return true;
        }
        return false;
    });
    return found;
}

std::optional<SignVector> find_relation_mitm(const GroupSpec& spec,
                                             const std::vector<Elem>& elems) {
    const std::size_t half = elems.size() / 2;
    std::vector<Elem> left(elems.begin(), elems.begin() + half);
    std::vector<Elem> right(elems.begin() + half, elems.end());

    // sum -> signs over the left half, preferring a nonzero representative
    // so a relation living entirely in the left half is not masked.
    std::unordered_map<Elem, SignVector, ElemHash> table;
    std::size_t cap = 1;
    for (std::size_t i = 0; i < left.size() && cap < (1u << 22); ++i) cap *= 3;
    table.reserve(std::min<std::size_t>(cap, 1u << 22));
    enumerate_signed_sums(spec, left, [&](const Elem& sum, const SignVector& signs) {
        auto [it, inserted] = table.emplace(sum, signs);
        if (!inserted && all_zero(it->second) && !all_zero(signs)) it->second = signs;
        return false;
    });

    std::optional<SignVector> found;
    enumerate_signed_sums(spec, right, [&](const Elem& sum, const SignVector& signs) {
        auto it = table.find(spec.neg(sum));
        if (it == table.end()) return false;
        if (all_zero(it->second) && all_zero(signs)) return false;
        SignVector combined = it->second;
        combined.insert(combined.end(), signs.begin(), signs.end());
        found = std::move(combined);
        return true;
    });
    return found;
}

// Span membership: exists eps with sum eps_i l_i = x.
bool span_contains_impl(const GroupSpec& spec, const std::vector<Elem>& elems, const Elem& x,
                        const DissociationCaps& caps) {
    if (elems.size() > caps.mitm_cap)
        throw CapacityError("span membership beyond meet-in-the-middle cap (" +
                            std::to_string(caps.mitm_cap) + ")");
    const std::size_t half = elems.size() / 2;
    std::vector<Elem> left(elems.begin(), elems.begin() + half);
    std::vector<Elem> right(elems.begin() + half, elems.end());

    std::unordered_map<Elem, char, ElemHash> sums_left;
    std::size_t cap = 1;
    for (std::size_t i = 0; i < left.size() && cap < (1u << 22); ++i) cap *= 3;
    sums_left.reserve(std::min<std::size_t>(cap, 1u << 22));
    enumerate_signed_sums(spec, left, [&](const Elem& sum, const SignVector&) {
        sums_left.emplace(sum, 0);
        return false;
    });

    bool found = false;
    enumerate_signed_sums(spec, right, [&](const Elem& sum, const SignVector&) {
        if (sums_left.count(spec.sub(x, sum))) {
            found = true;
            return true;
        }
        return false;
    });
    return found;
}

} // namespace

DissociationVerdict is_dissociated(const GroupSet& l, const DissociationCaps& caps) {
    DissociationVerdict v;
    if (l.size() <= caps.enumerate_cap) {
        v.mode = DissociationMode::Exhaustive;
        v.witness = find_relation_exhaustive(l.spec(), l.elems());
    } else if (l.size() <= caps.mitm_cap) {
        v.mode = DissociationMode::MeetInTheMiddle;
        v.witness = find_relation_mitm(l.spec(), l.elems());
    } else {
        throw CapacityError("dissociativity test beyond cap (" + std::to_string(caps.mitm_cap) +
                            " elements)");
    }
    v.dissociated = !v.witness.has_value();
    return v;
}

DissociatedSet DissociatedSet::certify(GroupSet base, const DissociationCaps& caps) {
    auto verdict = is_dissociated(base, caps);
    if (!verdict.dissociated)
        throw UsageError("set is not dissociated: a nontrivial {-1,0,1} relation exists");
    return DissociatedSet(std::move(base), verdict.mode);
}

DissociatedSet maximal_dissociated_subset(const GroupSet& a, GreedyOrder order,
                                          std::uint64_t seed, const DissociationCaps& caps) {
    std::vector<Elem> candidates = a.elems();
    if (order == GreedyOrder::SeededShuffle) {
        Rng rng(seed);
        rng.shuffle(candidates);
    }
    std::vector<Elem> lambda;
    for (const auto& cand : candidates) {
        // Lambda u {cand} is dissociated iff cand lies outside Span Lambda.
        if (!span_contains_impl(a.spec(), lambda, cand, caps)) lambda.push_back(cand);
    }
    GroupSet ls = GroupSet::of(a.spec(), std::move(lambda));
    DissociationMode mode = ls.size() <= caps.enumerate_cap ? DissociationMode::Exhaustive
                                                            : DissociationMode::MeetInTheMiddle;
    return DissociatedSet(std::move(ls), mode);
}

SpanResult span_enumerate(const GroupSet& l, const DissociationCaps& caps) {
    if (l.size() > caps.enumerate_cap)
        throw CapacityError("span enumeration beyond cap (" + std::to_string(caps.enumerate_cap) +
                            " elements); use span_contains");
    std::vector<Elem> members;
    enumerate_signed_sums(l.spec(), l.elems(), [&](const Elem& sum, const SignVector&) {
        members.push_back(sum);
        return false;
    });
    SpanResult r{GroupSet(l.spec())};
    r.lambda = l;
    r.enumeration = GroupSet::of(l.spec(), std::move(members));
    r.size = Int(r.enumeration->size());
    return r;
}

bool span_contains(const GroupSet& l, const Elem& x, const DissociationCaps& caps) {
    if (!l.spec().valid(x)) throw UsageError("span_contains: element invalid for spec");
    return span_contains_impl(l.spec(), l.elems(), x, caps);
}

Int span_intersection_count(const GroupSet& l, const GroupSet& target,
                            const DissociationCaps& caps) {
    require_same_spec(l.spec(), target.spec(), "span_intersection_count");
    if (l.size() <= caps.enumerate_cap) {
        auto span = span_enumerate(l, caps);
        Int count = 0;
        for (const auto& e : target.elems())
            if (span.enumeration->contains(e)) ++count;
        return count;
    }
    Int count = 0;
    for (const auto& e : target.elems())
        if (span_contains(l, e, caps)) ++count;
    return count;
}

RudinReport check_rudin(const DissociatedSet& l, unsigned k) {
    if (k < 2) throw UsageError("check_rudin: k must be >= 2");
    RudinReport rep;
    rep.tk = l.base().empty() ? Int(0) : energy(l.base(), k).value;
    rep.bound = ipow(Int(288) * k * l.base().size(), k);
    rep.check = IneqRecord::check("T_k(Lambda) <= 288^k k^k |Lambda|^k", rep.tk, Rel::LE, rep.bound);
    rep.holds = rep.check.holds;
    return rep;
}

SmallBasisReport small_basis_bound(const GroupSet& a, unsigned k, const Rat& c, GreedyOrder order,
                                   std::uint64_t seed, const DissociationCaps& caps) {
    if (k < 2) throw UsageError("small_basis_bound: k must be >= 2");
    if (a.empty()) throw UsageError("small_basis_bound: empty set");
    if (c <= 0 || c > 1) throw UsageError("small_basis_bound: C must be in (0,1]");

    SmallBasisReport rep{GroupSet(a.spec())};
    auto lam = maximal_dissociated_subset(a, order, seed, caps);
    rep.lambda = lam.base();
    rep.certificate = lam.certificate();
    rep.tk = energy(a, k).value;

    // |Lambda| <= 288 C^-2 k |A|^2 / T_k(A)^{1/k}, cross-powered to integers.
    const Int p = rat_num(c), q = rat_den(c);
    Int lhs = ipow(Int(rep.lambda.size()), k) * ipow(p, 2 * k) * rep.tk;
    Int rhs = ipow(Int(288) * k, k) * ipow(Int(a.size()), 2 * k) * ipow(q, 2 * k);
    rep.bound_check = IneqRecord::check(
        "|Lambda|^k C_num^(2k) T_k(A) <= 288^k k^k |A|^(2k) C_den^(2k)", lhs, Rel::LE, rhs);
    rep.within_bound = rep.bound_check.holds;

    rep.covers_a = span_intersection_count(rep.lambda, a, caps) == Int(a.size());
    return rep;
}

} // namespace addcomb
