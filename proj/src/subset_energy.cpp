#include "addcomb/subset_energy.hpp"

#include <cstring>

namespace addcomb {

namespace {

constexpr std::size_t kUniverseCap = 2'000'000;

SubsetEnergyTable::u128 u128_from_int(const Int& v) {
    if (v < 0) throw InternalError("u128_from_int: negative");
    Int hi = v >> 64;
    if (hi >> 64 != 0) throw InternalError("u128_from_int: overflow");
    static const Int kLow64 = (Int(1) << 64) - 1;
    using u128 = SubsetEnergyTable::u128;
    u128 out = hi.convert_to<std::uint64_t>();
    out <<= 64;
    out |= (v & kLow64).convert_to<std::uint64_t>();
    return out;
}

} // namespace

Int int_from_u128(SubsetEnergyTable::u128 v) {
    Int out = std::uint64_t(v >> 64);
    out <<= 64;
    out += std::uint64_t(v);
    return out;
}

SubsetEnergyTable::SubsetEnergyTable(const GroupSet& a, unsigned k)
    : ambient_(a), k_(k), n_(a.size()) {
    if (!supported(n_, k))
        throw CapacityError("SubsetEnergyTable: |A| must be in [1,64] and k in [2,8]");
    const auto& spec = a.spec();
    const auto& base = a.elems();

    universes_.resize(k_);
    transitions_.resize(k_ - 1);
    universes_[0] = base;

    std::size_t total = n_;
    for (unsigned lvl = 0; lvl + 1 < k_; ++lvl) {
        std::unordered_map<Elem, std::uint32_t, ElemHash> index;
        auto& next = universes_[lvl + 1];
        auto& trans = transitions_[lvl];
        trans.resize(universes_[lvl].size() * n_);
        for (std::size_t u = 0; u < universes_[lvl].size(); ++u)
            for (std::size_t i = 0; i < n_; ++i) {
                Elem s = spec.add(universes_[lvl][u], base[i]);
                auto [it, inserted] = index.emplace(s, std::uint32_t(next.size()));
                if (inserted) next.push_back(std::move(s));
                trans[u * n_ + i] = it->second;
            }
        total += next.size();
        if (total > kUniverseCap)
            throw CapacityError("SubsetEnergyTable: sum universe too large");
    }
    buffers_.resize(k_);
    for (unsigned lvl = 0; lvl < k_; ++lvl) buffers_[lvl].resize(universes_[lvl].size());

    // Pairwise cut weights from the sparse engine (independent of the
    // fast energy path above).
    IntFn u = iterated_self_conv(a, k_ - 2);
    IntFn w = correlate(u, u);
    weights_.resize(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            weights_[i * n_ + j] = u128_from_int(w.at(spec.sub(base[i], base[j])));
}

Int SubsetEnergyTable::energy_of_mask(std::uint64_t mask) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n_; ++i)
        if (mask & (std::uint64_t(1) << i)) members.push_back(i);
    if (members.empty()) return 0;

    auto& first = buffers_[0];
    std::memset(first.data(), 0, first.size() * sizeof(u128));
    for (auto i : members) first[i] = 1;

    for (unsigned lvl = 0; lvl + 1 < k_; ++lvl) {
        auto& cur = buffers_[lvl];
        auto& nxt = buffers_[lvl + 1];
        std::memset(nxt.data(), 0, nxt.size() * sizeof(u128));
        const auto& trans = transitions_[lvl];
        for (std::size_t u = 0; u < cur.size(); ++u) {
            if (cur[u] == 0) continue;
            const u128 v = cur[u];
            for (auto i : members) nxt[trans[u * n_ + i]] += v;
        }
    }
    u128 total = 0;
    for (const auto v : buffers_[k_ - 1]) total += v * v;
    return int_from_u128(total);
}

Int SubsetEnergyTable::full_energy() {
    return energy_of_mask(n_ == 64 ? ~std::uint64_t(0) : ((std::uint64_t(1) << n_) - 1));
}

Int SubsetEnergyTable::cut_value(std::uint64_t mask_e, std::uint64_t mask_f) const {
    u128 total = 0;
    for (std::size_t i = 0; i < n_; ++i) {
        if (!(mask_e & (std::uint64_t(1) << i))) continue;
        const u128* row = &weights_[i * n_];
        for (std::size_t j = 0; j < n_; ++j)
            if (mask_f & (std::uint64_t(1) << j)) total += row[j];
    }
    return int_from_u128(total);
}

Int SubsetEnergyTable::pair_weight(std::size_t i, std::size_t j) const {
    return int_from_u128(weights_[i * n_ + j]);
}

} // namespace addcomb
