#include "addcomb/oracle.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace addcomb::oracle {

namespace {

void enumerate_tuples(const GroupSpec& spec, const std::vector<Elem>& elems, unsigned depth,
                      const Elem& acc, std::map<Elem, Int>& hist) {
    if (depth == 0) {
        ++hist[acc];
        return;
    }
    for (const auto& e : elems) enumerate_tuples(spec, elems, depth - 1, spec.add(acc, e), hist);
}

} // namespace

std::map<Elem, Int> sum_histogram(const GroupSet& a, unsigned k) {
    if (a.empty()) throw UsageError("oracle: empty set");
    if (k == 0) throw UsageError("oracle: k must be >= 1");
    std::map<Elem, Int> hist;
    enumerate_tuples(a.spec(), a.elems(), k, a.spec().zero(), hist);
    return hist;
}

Int energy(const GroupSet& a, unsigned k) {
    Int total = 0;
    for (const auto& [e, cnt] : sum_histogram(a, k)) total += cnt * cnt;
    return total;
}

Int energy_fast(const GroupSet& a, unsigned k) {
    if (a.empty()) throw UsageError("oracle: empty set");
    const auto& spec = a.spec();
    const std::size_t n = a.size();

    // Standalone int64 encoding with its own addition, so this path shares
    // nothing with the engine's element arithmetic.
    std::vector<std::int64_t> codes(n);
    std::int64_t modulus = 0;
    std::int64_t q = 0;
    int dim = 0;
    switch (spec.kind()) {
    case GroupKind::Cyclic:
        if (spec.modulus() > Int(std::int64_t(1) << 40))
            throw CapacityError("oracle::energy_fast: modulus too large");
        modulus = spec.modulus().convert_to<std::int64_t>();
        for (std::size_t i = 0; i < n; ++i) codes[i] = a.elems()[i].scalar_value().convert_to<std::int64_t>();
        break;
    case GroupKind::Integers:
        for (std::size_t i = 0; i < n; ++i) {
            const Int& v = a.elems()[i].scalar_value();
            if (v > Int(std::int64_t(1) << 40) || v < -Int(std::int64_t(1) << 40))
                throw CapacityError("oracle::energy_fast: element too large");
            codes[i] = v.convert_to<std::int64_t>();
        }
        break;
    case GroupKind::Vector: {
        q = spec.prime();
        dim = int(spec.dim());
        double packed = 1;
        for (int d = 0; d < dim; ++d) packed *= double(q);
        if (packed > double(std::int64_t(1) << 40))
            throw CapacityError("oracle::energy_fast: vector group too large");
        for (std::size_t i = 0; i < n; ++i) {
            std::int64_t code = 0;
            for (auto c : a.elems()[i].coords()) code = code * q + c;
            codes[i] = code;
        }
        break;
    }
    }

    auto add_codes = [&](std::int64_t x, std::int64_t y) -> std::int64_t {
        switch (spec.kind()) {
        case GroupKind::Cyclic: return (x + y) % modulus;
        case GroupKind::Integers: return x + y;
        case GroupKind::Vector: {
            // Digit-wise addition mod q.
            std::int64_t out = 0, mult = 1;
            for (int d = 0; d < dim; ++d) {
                out += ((x % q + y % q) % q) * mult;
                x /= q;
                y /= q;
                mult *= q;
            }
            return out;
        }
        }
        return 0;
    };

    std::unordered_map<std::int64_t, std::uint64_t> hist;
    std::vector<unsigned> idx(k, 0);
    while (true) {
        std::int64_t sum = 0;
        bool first = true;
        for (unsigned d = 0; d < k; ++d) {
            sum = first ? codes[idx[d]] : add_codes(sum, codes[idx[d]]);
            first = false;
        }
        ++hist[sum];
        unsigned d = 0;
        while (d < k && ++idx[d] == n) idx[d++] = 0;
        if (d == k) break;
    }
    Int total = 0;
    for (const auto& [code, cnt] : hist) total += Int(cnt) * Int(cnt);
    return total;
}

} // namespace addcomb::oracle
