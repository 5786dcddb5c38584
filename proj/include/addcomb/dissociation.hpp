#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "addcomb/energy.hpp"
#include "addcomb/group.hpp"

namespace addcomb {

// Exactness caps. Exceeding one raises CapacityError; the answer is never
// approximated silently.
struct DissociationCaps {
    unsigned enumerate_cap = 12; // full 3^|L| enumeration
    unsigned mitm_cap = 30;      // meet-in-the-middle
};

// Coefficients in {-1,0,1} aligned with the sorted element order of L.
using SignVector = std::vector<std::int8_t>;

enum class DissociationMode { Exhaustive, MeetInTheMiddle };

struct DissociationVerdict {
    bool dissociated = false;
    // A nontrivial relation sum eps_i * l_i = 0, present iff !dissociated.
    std::optional<SignVector> witness;
    DissociationMode mode = DissociationMode::Exhaustive;
};

DissociationVerdict is_dissociated(const GroupSet& l, const DissociationCaps& caps = {});

// A set certified dissociated, remembering which test certified it.
class DissociatedSet {
public:
    static DissociatedSet certify(GroupSet base, const DissociationCaps& caps = {});
    const GroupSet& base() const { return base_; }
    DissociationMode certificate() const { return mode_; }

private:
    DissociatedSet(GroupSet base, DissociationMode mode)
        : base_(std::move(base)), mode_(mode) {}
    GroupSet base_;
    DissociationMode mode_;
};

enum class GreedyOrder { Canonical, SeededShuffle };

// Greedy maximal dissociated subset: the result is dissociated and every
// element of A lies in its span. Canonical order by default; the seed only
// matters for SeededShuffle.
DissociatedSet maximal_dissociated_subset(const GroupSet& a,
                                          GreedyOrder order = GreedyOrder::Canonical,
                                          std::uint64_t seed = 0,
                                          const DissociationCaps& caps = {});

struct SpanResult {
    GroupSet lambda;
    Int size = 0;
    std::optional<GroupSet> enumeration;
};

// Full Span L = { sum eps_i l_i : eps in {-1,0,1}^|L| }; |L| <= enumerate_cap.
SpanResult span_enumerate(const GroupSet& l, const DissociationCaps& caps = {});

// Exact membership via meet-in-the-middle; |L| <= mitm_cap.
bool span_contains(const GroupSet& l, const Elem& x, const DissociationCaps& caps = {});

// |Span L intersect target|, choosing enumeration or per-element membership by cap.
Int span_intersection_count(const GroupSet& l, const GroupSet& target,
                            const DissociationCaps& caps = {});

struct RudinReport {
    Int tk;
    Int bound; // (288 k |L|)^k
    IneqRecord check;
    bool holds = false;
};

// T_k(L) <= 288^k k^k |L|^k for certified dissociated L.
RudinReport check_rudin(const DissociatedSet& l, unsigned k);

struct SmallBasisReport {
    GroupSet lambda;
    DissociationMode certificate = DissociationMode::Exhaustive;
    Int tk;                  // T_k(A)
    IneqRecord bound_check;  // |Lambda|^k p^{2k} T_k(A) <= 288^k k^k |A|^{2k} q^{2k}
    bool within_bound = false;
    bool covers_a = false;   // A subset of Span Lambda
};

// Runs the greedy extraction and reports it against the bound
// |Lambda| <= 288 C^-2 k |A|^2 / T_k(A)^{1/k}, compared by cross-powering.
SmallBasisReport small_basis_bound(const GroupSet& a, unsigned k, const Rat& c,
                                   GreedyOrder order = GreedyOrder::Canonical,
                                   std::uint64_t seed = 0,
                                   const DissociationCaps& caps = {});

} // namespace addcomb
