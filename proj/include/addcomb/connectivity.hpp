#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "addcomb/dissociation.hpp"
#include "addcomb/energy.hpp"
#include "addcomb/report.hpp"

namespace addcomb {

enum class SearchMode { Exact, Heuristic };

// Parameters shared by the connectivity checks and algorithms. All values
// are exact rationals so every verdict is an integer comparison.
struct ConnectivityParams {
    unsigned k = 2;
    Rat c = 1;      // the constant C in (0,1]
    Rat beta1 = 0;  // size window [beta1 |A|, beta2 |A|]
    Rat beta2 = 1;
    void validate() const;
};

struct ConnectivityCaps {
    unsigned subset_cap = 20;        // exhaustive subset search
    unsigned strong_cap = 20;        // exhaustive bipartition search
    unsigned cut_cap = 16;           // exhaustive cuts inside partition parts
    unsigned heuristic_restarts = 12;
    unsigned heuristic_samples = 200;
    DissociationCaps dissociation{};
};

// Cut weight w = (A *_{k-2} A) o (A *_{k-2} A) with its cached T_k(A);
// e(E,F) = sum_{e in E, f in F} w(e - f).
struct CutWeight {
    IntFn w;
    Int tk;
    unsigned k;
    static CutWeight compute(const GroupSet& a, unsigned k);
};
Int cut_value(const CutWeight& w, const GroupSet& e, const GroupSet& f);

enum class SearchStatus {
    CertifiedOk,            // exhaustive search found no violation
    ViolationFound,         // concrete counterexample (always exact)
    NoCounterexampleFound,  // heuristic search came up empty; not a proof
};

struct SubsetWitness {
    GroupSet set;
    Int tk;
    IneqRecord check; // T_k(B) q^{2k} |A|^{2k} >= p^{2k} |B|^{2k} T_k(A)
};

struct ConnectedVerdict {
    SearchStatus status = SearchStatus::CertifiedOk;
    bool certified = false;
    Int tk_a;
    std::optional<SubsetWitness> worst; // ratio-minimizing B
    bool holds() const { return status != SearchStatus::ViolationFound; }
};

// (beta1,beta2)-connectedness of degree k: every B in the size window must
// satisfy T_k(B) >= C^{2k} (|B|/|A|)^{2k} T_k(A). beta1 = 0 checks every
// nonempty subset.
ConnectedVerdict check_connected(const GroupSet& a, const ConnectivityParams& params,
                                 SearchMode mode = SearchMode::Exact, std::uint64_t seed = 0,
                                 const ConnectivityCaps& caps = {});

struct CutWitness {
    GroupSet e_side;
    GroupSet f_side;
    Int value;
    IneqRecord check; // e(E,F) q |A|^2 >= p |E| |F| T_k(A)
};

struct StrongVerdict {
    SearchStatus status = SearchStatus::CertifiedOk;
    bool certified = false;
    Int tk_a;
    std::optional<CutWitness> worst;
    bool holds() const { return status != SearchStatus::ViolationFound; }
};

// Strong connectedness of degree k: every bipartition E | F = A carries
// e(E,F) >= C c_E c_F T_k(A).
StrongVerdict check_strongly_connected(const GroupSet& a, const ConnectivityParams& params,
                                       SearchMode mode = SearchMode::Exact,
                                       std::uint64_t seed = 0, const ConnectivityCaps& caps = {});

struct StrongWeakReport {
    StrongVerdict strong;
    std::optional<ConnectedVerdict> weak; // at C/8, beta = 0; run when strong holds
    bool implication_ok = false;          // vacuous when strong fails
};

// Theorem-as-test: strong connectedness at C implies beta=0 connectedness
// at C/8 (k a power of two).
StrongWeakReport check_strong_implies_weak(const GroupSet& a, const ConnectivityParams& params,
                                           SearchMode mode = SearchMode::Exact,
                                           std::uint64_t seed = 0,
                                           const ConnectivityCaps& caps = {});

struct ExtractionStep {
    GroupSet removed;
    std::size_t size_before = 0, size_after = 0;
    Int tk_before, tk_after;
    Int sigma1, sigma2; // split of T_k along B and its complement
    std::vector<IneqRecord> checks;
    int zeta_direction = 0; // sign of zeta(after) - zeta(before)
};

struct ExtractionResult {
    GroupSet result;
    std::vector<ExtractionStep> steps;
    Int tk_initial, tk_final;
    bool certified_connected = false;   // exact-mode exhaustive search, no violation
    bool theorem_preconditions = false; // C <= 1/32, 0 < beta1 <= beta2 < 1
    int zeta_direction_total = 0;
    std::vector<IneqRecord> final_checks;
};

// The connected-subset algorithm: repeatedly remove a violating B until the
// current set is (beta1,beta2)-connected. Exact mode certifies the result;
// heuristic mode can stop early ("no violating B found" is not a proof).
// The theorem guarantees (zeta monotone, size bound) are asserted only when
// C <= 1/32 and the betas are interior; larger C still runs, flagged.
ExtractionResult extract_connected_subset(const GroupSet& a, const ConnectivityParams& params,
                                          SearchMode mode = SearchMode::Exact,
                                          std::uint64_t seed = 0,
                                          const ConnectivityCaps& caps = {});

struct AlmostBasisCertificate {
    GroupSet assembled_b;
    Int tk_b;
    IneqRecord connectivity_lower; // T_k(B) >= C^{2k} beta1^{2k} T_k(A)
};

struct AlmostBasisResult {
    bool success = false;
    GroupSet lambda;
    Int coverage;              // |Span Lambda intersect A|
    IneqRecord coverage_check; // coverage >= (1 - beta1) |A|
    Int l_threshold;           // the slice size l, floored to an integer
    bool l_overridden = false;
    std::vector<GroupSet> peeled;
    std::vector<IneqRecord> hypothesis_checks;
    std::optional<AlmostBasisCertificate> certificate;
};

// The inductive almost-basis process. Succeeds with a dissociated Lambda of
// size <= l whose span covers (1-beta1)|A| elements, or emits a certificate
// demonstrating which proposition hypothesis fails for this input.
// l_override (testing hook, not exposed on the CLI) substitutes the slice
// threshold so the peeling branch can be exercised at desk scale.
AlmostBasisResult extract_almost_basis(const GroupSet& a, const ConnectivityParams& params,
                                       std::uint64_t seed = 0,
                                       const ConnectivityCaps& caps = {},
                                       std::optional<Int> l_override = std::nullopt);

enum class PartitionStart { Singletons, AllInOne };

struct PartitionParams {
    unsigned k = 2;
    Rat epsilon1 = Rat(1, 2); // in [0,1]
    PartitionStart start = PartitionStart::Singletons;
};

struct PartitionState {
    std::vector<GroupSet> parts;
    Rat sigma;
    Int tk_a;
    std::size_t moves = 0;
    bool property1_certified = true;
    std::vector<IneqRecord> property1_checks;        // one per unordered pair
    std::vector<IneqRecord> property2_checks;        // worst cut per exact part
    std::vector<std::size_t> uncertified_parts;      // heuristic cut search used
    IneqRecord property3_check;                      // sum T_k(A_i) >= (1-(2k-1)eps1) T_k(A)
    IneqRecord floor_check;                          // a part of size >= (1-(2k-1)eps1) |A|^(1/2)
};

// Local search on sigma = sum_{i<j} (e(A_i,A_j) - eps1 c_i c_j T_k(A)):
// merge pairs violating property 1, split parts violating property 2.
// Exact cut search within cut_cap; beyond it Exact mode raises
// CapacityError and Heuristic mode marks the part uncertified.
PartitionState partition_min_sigma(const GroupSet& a, const PartitionParams& params,
                                   SearchMode mode = SearchMode::Heuristic,
                                   std::uint64_t seed = 0, const ConnectivityCaps& caps = {});

struct StrongPartitionRound {
    unsigned round = 0;
    std::size_t classified_good = 0;
    std::size_t still_pending = 0;
};

struct StrongPartitionResult {
    std::vector<GroupSet> parts;     // certified strongly beta-connected (degree 2)
    std::vector<GroupSet> witnesses; // the inner B per part, |B| >= beta |part|
    GroupSet omega;
    Rat certified_c;  // epsilon' = epsilon / (6 ceil(s0))
    unsigned rounds_used = 0;
    unsigned rounds_max = 0;
    bool success = false; // accounting reached (1-eps) T_2(A)
    Int t2_a, t2_omega;
    IneqRecord accounting;  // sum T_2(parts) >= (1-eps) T_2(A)
    IneqRecord omega_bound; // T_2(omega) <= eps T_2(A)
    std::vector<std::size_t> uncertified_parts;
    std::vector<StrongPartitionRound> trace;
};

// Degree-2 recursive partition: after at most ceil(s0) rounds of
// sigma-minimal refinement every output part carries a witness sub-part of
// relative size >= beta whose cuts are all heavy at constant epsilon'.
StrongPartitionResult strong_partition(const GroupSet& a, const Rat& epsilon, const Rat& beta,
                                       std::uint64_t seed = 0,
                                       const ConnectivityCaps& caps = {});

struct KonyaginReport {
    GroupSet s_set;
    Int subgroup_order;
    Elem anchor;
    bool contained = false;
    StrongVerdict strong;
    bool theorem_applicable = false; // strong certified -> containment asserted
};

// S = { h : w(h) >= C T_k(A)/|A|^2 }; reports whether A lies in a coset of
// the subgroup generated by S. Finite groups only.
KonyaginReport konyagin_containment(const GroupSet& a, unsigned k, const Rat& c,
                                    SearchMode mode = SearchMode::Exact, std::uint64_t seed = 0,
                                    const ConnectivityCaps& caps = {});

} // namespace addcomb
