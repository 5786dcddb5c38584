#include <algorithm>

#include "addcomb/connectivity.hpp"
#include "addcomb/rng.hpp"

namespace addcomb {

namespace {

using IndexPart = std::vector<std::uint32_t>;

struct CutSearchResult {
    std::vector<std::uint32_t> e_local; // positions within the part
    Int value;
    bool exact = true;
};

class PartitionEngine {
public:
    PartitionEngine(const GroupSet& a, const PartitionParams& params, SearchMode mode,
                    std::uint64_t seed, const ConnectivityCaps& caps)
        : a_(a), k_(params.k), eps1_(params.epsilon1), mode_(mode), caps_(caps), rng_(seed) {
        m_ = a.size();
        tk_ = energy(a, k_).value;
        IntFn u = iterated_self_conv(a, k_ - 2);
        IntFn wfn = correlate(u, u);
        w_.resize(m_ * m_);
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j < m_; ++j)
                w_[i * m_ + j] = wfn.at(a.spec().sub(a.elems()[i], a.elems()[j]));

        if (params.start == PartitionStart::Singletons) {
            for (std::uint32_t i = 0; i < m_; ++i) parts_.push_back({i});
        } else {
            IndexPart all(m_);
            for (std::uint32_t i = 0; i < m_; ++i) all[i] = i;
            parts_.push_back(std::move(all));
        }
        sigma_ = recompute_sigma();
    }

    PartitionState run() {
        const std::size_t guard = 1000 + 10 * m_ * m_;
        std::size_t moves = 0;
        while (true) {
            if (moves > guard) throw InternalError("partition_min_sigma: move guard tripped");
            if (try_merge()) {
                ++moves;
                continue;
            }
            if (try_split()) {
                ++moves;
                continue;
            }
            break;
        }
        return finish(moves);
    }

private:
    Int e_between(const IndexPart& x, const IndexPart& y) const {
        Int total = 0;
        for (auto i : x)
            for (auto j : y) total += w_[i * m_ + j];
        return total;
    }

    // sigma as an exact rational: sum_{i<j} (e_ij - eps1 c_i c_j T).
    Rat pair_penalty(std::size_t si, std::size_t sj) const {
        return eps1_ * Rat(Int(si) * Int(sj) * tk_, Int(m_) * Int(m_));
    }

    Rat recompute_sigma() const {
        Rat s = 0;
        for (std::size_t i = 0; i < parts_.size(); ++i)
            for (std::size_t j = i + 1; j < parts_.size(); ++j)
                s += Rat(e_between(parts_[i], parts_[j])) -
                     pair_penalty(parts_[i].size(), parts_[j].size());
        return s;
    }

    // e q1 m^2 > p1 |Ai| |Aj| T: merging strictly decreases sigma.
    bool merge_improves(const Int& e, std::size_t si, std::size_t sj) const {
        return e * rat_den(eps1_) * Int(m_) * Int(m_) >
               rat_num(eps1_) * Int(si) * Int(sj) * tk_;
    }

    bool try_merge() {
        for (std::size_t i = 0; i < parts_.size(); ++i)
            for (std::size_t j = i + 1; j < parts_.size(); ++j) {
                Int e = e_between(parts_[i], parts_[j]);
                if (!merge_improves(e, parts_[i].size(), parts_[j].size())) continue;
                sigma_ -= Rat(e) - pair_penalty(parts_[i].size(), parts_[j].size());
                IndexPart merged = parts_[i];
                merged.insert(merged.end(), parts_[j].begin(), parts_[j].end());
                std::sort(merged.begin(), merged.end());
                parts_.erase(parts_.begin() + std::ptrdiff_t(j));
                parts_[i] = std::move(merged);
                sort_parts();
                return true;
            }
        return false;
    }

    // Minimum-ratio cut of one part; exact within cut_cap, else heuristic.
    std::optional<CutSearchResult> find_min_cut(const IndexPart& part) {
        const std::size_t s = part.size();
        if (s < 2) return std::nullopt;
        if (s <= caps_.cut_cap) return exact_min_cut(part);
        if (mode_ == SearchMode::Exact)
            throw CapacityError("partition_min_sigma: part exceeds exact cut cap (" +
                                std::to_string(caps_.cut_cap) + ")");
        return heuristic_min_cut(part);
    }

    CutSearchResult exact_min_cut(const IndexPart& part) const {
        const std::size_t s = part.size();
        CutSearchResult best;
        bool have = false;
        std::size_t best_se = 0;
        for (std::uint64_t rest = 0; rest < (std::uint64_t(1) << (s - 1)); ++rest) {
            const std::uint64_t mask_e = (rest << 1) | 1;
            if (mask_e == ((std::uint64_t(1) << s) - 1)) continue;
            Int e = 0;
            std::size_t se = 0;
            for (std::size_t x = 0; x < s; ++x) {
                if (!(mask_e & (std::uint64_t(1) << x))) continue;
                ++se;
                for (std::size_t y = 0; y < s; ++y)
                    if (!(mask_e & (std::uint64_t(1) << y))) e += w_[part[x] * m_ + part[y]];
            }
            const std::size_t sf = s - se;
            if (!have || e * Int(best_se) * Int(s - best_se) < best.value * Int(se) * Int(sf)) {
                have = true;
                best.value = e;
                best_se = se;
                best.e_local.clear();
                for (std::size_t x = 0; x < s; ++x)
                    if (mask_e & (std::uint64_t(1) << x)) best.e_local.push_back(std::uint32_t(x));
            }
        }
        best.exact = true;
        return best;
    }

    CutSearchResult heuristic_min_cut(const IndexPart& part) {
        const std::size_t s = part.size();
        CutSearchResult best;
        best.exact = false;
        std::size_t best_se = 0;
        bool have = false;
        auto cut_of = [&](const std::vector<char>& side) {
            Int total = 0;
            for (std::size_t x = 0; x < s; ++x) {
                if (!side[x]) continue;
                for (std::size_t y = 0; y < s; ++y)
                    if (!side[y]) total += w_[part[x] * m_ + part[y]];
            }
            return total;
        };
        for (unsigned restart = 0; restart < caps_.heuristic_restarts; ++restart) {
            std::vector<char> side(s, 0);
            for (auto& c : side) c = rng_.coin() ? 1 : 0;
            side[0] = 1;
            if (std::count(side.begin(), side.end(), 1) == std::ptrdiff_t(s)) side[s - 1] = 0;
            Int cur = cut_of(side);
            auto count_e = [&] { return std::size_t(std::count(side.begin(), side.end(), 1)); };
            std::size_t se = count_e();
            bool improved = true;
            while (improved) {
                improved = false;
                for (std::size_t x = 0; x < s; ++x) {
                    if (side[x] && se == 1) continue;
                    if (!side[x] && s - se == 1) continue;
                    side[x] = !side[x];
                    Int e2 = cut_of(side);
                    std::size_t se2 = side[x] ? se + 1 : se - 1;
                    if (e2 * Int(se) * Int(s - se) < cur * Int(se2) * Int(s - se2)) {
                        cur = e2;
                        se = se2;
                        improved = true;
                        break;
                    }
                    side[x] = !side[x]; // revert
                }
            }
            if (!have || cur * Int(best_se) * Int(s - best_se) < best.value * Int(se) * Int(s - se)) {
                have = true;
                best.value = cur;
                best_se = se;
                best.e_local.clear();
                for (std::size_t x = 0; x < s; ++x)
                    if (side[x]) best.e_local.push_back(std::uint32_t(x));
            }
        }
        return best;
    }

    // e q1 m^2 < p1 |E| |F| T: splitting strictly decreases sigma.
    bool split_improves(const Int& e, std::size_t se, std::size_t sf) const {
        return e * rat_den(eps1_) * Int(m_) * Int(m_) <
               rat_num(eps1_) * Int(se) * Int(sf) * tk_;
    }

    bool try_split() {
        for (std::size_t pi = 0; pi < parts_.size(); ++pi) {
            auto cut = find_min_cut(parts_[pi]);
            if (!cut) continue;
            const std::size_t s = parts_[pi].size();
            const std::size_t se = cut->e_local.size(), sf = s - se;
            if (!split_improves(cut->value, se, sf)) continue;
            sigma_ += Rat(cut->value) - pair_penalty(se, sf);
            IndexPart e_part, f_part;
            std::vector<char> in_e(s, 0);
            for (auto x : cut->e_local) in_e[x] = 1;
            for (std::size_t x = 0; x < s; ++x)
                (in_e[x] ? e_part : f_part).push_back(parts_[pi][x]);
            parts_[pi] = std::move(e_part);
            parts_.push_back(std::move(f_part));
            sort_parts();
            return true;
        }
        return false;
    }

    void sort_parts() {
        std::sort(parts_.begin(), parts_.end(),
                  [](const IndexPart& x, const IndexPart& y) { return x.front() < y.front(); });
    }

    GroupSet materialize(const IndexPart& part) const {
        std::vector<Elem> elems;
        elems.reserve(part.size());
        for (auto i : part) elems.push_back(a_.elems()[i]);
        return GroupSet::of(a_.spec(), std::move(elems));
    }

    PartitionState finish(std::size_t moves) {
        PartitionState st;
        st.tk_a = tk_;
        st.sigma = sigma_;
        st.moves = moves;
        for (const auto& part : parts_) st.parts.push_back(materialize(part));

        // Property 1: every pair is light (no merge was possible).
        for (std::size_t i = 0; i < parts_.size(); ++i)
            for (std::size_t j = i + 1; j < parts_.size(); ++j) {
                Int e = e_between(parts_[i], parts_[j]);
                st.property1_checks.push_back(IneqRecord::check(
                    "e(Ai,Aj) eps1_den |A|^2 <= eps1_num |Ai| |Aj| T_k(A)",
                    e * rat_den(eps1_) * Int(m_) * Int(m_), Rel::LE,
                    rat_num(eps1_) * Int(parts_[i].size()) * Int(parts_[j].size()) * tk_));
                if (!st.property1_checks.back().holds)
                    throw InternalError("partition_min_sigma: property 1 failed at fixpoint");
            }

        // Property 2: the worst internal cut of each part is heavy.
        for (std::size_t pi = 0; pi < parts_.size(); ++pi) {
            if (parts_[pi].size() < 2) continue;
            if (parts_[pi].size() > caps_.cut_cap) {
                st.uncertified_parts.push_back(pi);
                continue;
            }
            auto cut = exact_min_cut(parts_[pi]);
            const std::size_t se = cut.e_local.size(), sf = parts_[pi].size() - se;
            st.property2_checks.push_back(IneqRecord::check(
                "min-cut e(E,F) eps1_den |A|^2 >= eps1_num |E| |F| T_k(A)",
                cut.value * rat_den(eps1_) * Int(m_) * Int(m_), Rel::GE,
                rat_num(eps1_) * Int(se) * Int(sf) * tk_));
            if (!st.property2_checks.back().holds)
                throw InternalError("partition_min_sigma: property 2 failed at fixpoint");
        }

        // Property 3: sum T_k(A_i) >= (1 - (2k-1) eps1) T_k(A).
        Int sum_tk = 0;
        for (const auto& p : st.parts) sum_tk += energy(p, k_).value;
        Int coeff = rat_den(eps1_) - Int(2 * k_ - 1) * rat_num(eps1_);
        if (coeff < 0) coeff = 0;
        st.property3_check =
            IneqRecord::check("sum T_k(A_i) eps1_den >= (eps1_den - (2k-1) eps1_num) T_k(A)",
                              sum_tk * rat_den(eps1_), Rel::GE, coeff * tk_);
        if (!st.property3_check.holds)
            throw InternalError("partition_min_sigma: property 3 failed");

        // A part of size >= (1-(2k-1)eps1) |A|^(1/2) must exist.
        std::size_t max_size = 0;
        for (const auto& p : parts_) max_size = std::max(max_size, p.size());
        st.floor_check = IneqRecord::check(
            "max|A_i|^2 eps1_den^2 >= (eps1_den - (2k-1) eps1_num)^2 |A|",
            Int(max_size) * Int(max_size) * rat_den(eps1_) * rat_den(eps1_), Rel::GE,
            coeff * coeff * Int(m_));
        if (!st.floor_check.holds)
            throw InternalError("partition_min_sigma: size floor failed");

        st.property1_certified = true;
        return st;
    }

    const GroupSet& a_;
    unsigned k_;
    Rat eps1_;
    SearchMode mode_;
    ConnectivityCaps caps_;
    Rng rng_;
    std::size_t m_ = 0;
    Int tk_;
    std::vector<Int> w_;
    std::vector<IndexPart> parts_;
    Rat sigma_;
};

} // namespace

PartitionState partition_min_sigma(const GroupSet& a, const PartitionParams& params,
                                   SearchMode mode, std::uint64_t seed,
                                   const ConnectivityCaps& caps) {
    if (params.k < 2) throw UsageError("partition_min_sigma: k must be >= 2");
    if (params.epsilon1 < 0 || params.epsilon1 > 1)
        throw UsageError("partition_min_sigma: epsilon1 must be in [0,1]");
    if (a.empty()) throw UsageError("partition_min_sigma: empty set");
    PartitionEngine engine(a, params, mode, seed, caps);
    return engine.run();
}

StrongPartitionResult strong_partition(const GroupSet& a, const Rat& epsilon, const Rat& beta,
                                       std::uint64_t seed, const ConnectivityCaps& caps) {
    if (epsilon <= 0 || epsilon >= 1) throw UsageError("strong_partition: epsilon in (0,1)");
    if (beta <= 0 || beta >= 1) throw UsageError("strong_partition: beta in (0,1)");
    if (a.empty()) throw UsageError("strong_partition: empty set");
    const std::size_t m = a.size();
    // Precondition |A| >= epsilon / (2 beta^2).
    if (Rat(m) * 2 * beta * beta < epsilon)
        throw UsageError("strong_partition: need |A| >= epsilon / (2 beta^2)");

    StrongPartitionResult res{{}, {}, GroupSet(a.spec()), 0, 0, 0, false};
    res.t2_a = energy(a, 2).value;

    // s0 = log(2m/eps) / (2 log(1/beta)), rounded up through certified
    // rational log bounds; eps' = eps / (6 ceil(s0)).
    RatInterval num = log2_bounds(Rat(2 * m) / epsilon, 48);
    RatInterval den = log2_bounds(1 / beta, 48);
    Rat s0_hi = num.hi / (2 * den.lo);
    Int rounds = rat_num(s0_hi) / rat_den(s0_hi);
    if (Rat(rounds) < s0_hi) rounds += 1;
    if (rounds < 1) rounds = 1;
    res.rounds_max = rounds.convert_to<unsigned>();
    res.certified_c = epsilon / (6 * Rat(rounds));

    PartitionParams pp;
    pp.k = 2;
    pp.epsilon1 = res.certified_c;

    const Int pb = rat_num(beta), qb = rat_den(beta);
    const Int pe = rat_num(epsilon), qe = rat_den(epsilon);

    std::vector<GroupSet> pending{a};
    Int good_t2 = 0;
    for (unsigned round = 1; round <= res.rounds_max && !pending.empty(); ++round) {
        res.rounds_used = round;
        std::vector<GroupSet> next_pending;
        std::size_t classified = 0;
        for (const auto& x : pending) {
            PartitionState st = partition_min_sigma(x, pp, SearchMode::Heuristic,
                                                    seed + round, caps);
            // X is certified strongly beta-connected when its refinement
            // contains a part of relative size >= beta: that part's internal
            // cuts are all heavy by partition property 2.
            std::ptrdiff_t witness = -1;
            for (std::size_t i = 0; i < st.parts.size(); ++i)
                if (Int(st.parts[i].size()) * qb >= pb * Int(x.size())) {
                    witness = std::ptrdiff_t(i);
                    break;
                }
            if (witness >= 0) {
                if (std::find(st.uncertified_parts.begin(), st.uncertified_parts.end(),
                              std::size_t(witness)) != st.uncertified_parts.end())
                    res.uncertified_parts.push_back(res.parts.size());
                res.parts.push_back(x);
                res.witnesses.push_back(st.parts[std::size_t(witness)]);
                good_t2 += energy(x, 2).value;
                ++classified;
            } else {
                for (auto& p : st.parts) next_pending.push_back(std::move(p));
            }
        }
        pending = std::move(next_pending);
        res.trace.push_back({round, classified, pending.size()});
        if (good_t2 * qe >= (qe - pe) * res.t2_a) {
            res.success = true;
            break;
        }
    }

    GroupSet omega(a.spec());
    for (const auto& x : pending) omega = omega.set_union(x);
    res.omega = omega;
    res.t2_omega = omega.empty() ? Int(0) : energy(omega, 2).value;
    res.accounting = IneqRecord::check("sum T_2(parts) eps_den >= (eps_den - eps_num) T_2(A)",
                                       good_t2 * qe, Rel::GE, (qe - pe) * res.t2_a);
    res.omega_bound = IneqRecord::check("T_2(Omega) eps_den <= eps_num T_2(A)",
                                        res.t2_omega * qe, Rel::LE, pe * res.t2_a);
    if (pending.empty() && !res.success) {
        // Everything classified good; the stop-check may still have been
        // evaluated before the final additions.
        res.success = res.accounting.holds;
    }
    return res;
}

} // namespace addcomb
