#include "addcomb/intfn.hpp"

#include <cstddef>
#include <vector>

namespace addcomb {

IntFn IntFn::characteristic(const GroupSet& a) {
    IntFn f(a.spec());
    for (const auto& e : a.elems()) f.vals_.emplace(e, 1);
    return f;
}

IntFn IntFn::delta(const GroupSpec& spec, const Elem& at, Int value) {
    if (!spec.valid(at)) throw UsageError("delta: element invalid for spec");
    if (value < 0) throw UsageError("delta: negative value");
    IntFn f(spec);
    if (value > 0) f.vals_.emplace(at, std::move(value));
    return f;
}

Int IntFn::at(const Elem& e) const {
    auto it = vals_.find(e);
    return it == vals_.end() ? Int(0) : it->second;
}

void IntFn::add_at(const Elem& e, const Int& delta) {
    if (!spec_.valid(e)) throw UsageError("add_at: element invalid for spec");
    auto it = vals_.find(e);
    if (it == vals_.end()) {
        if (delta < 0) throw UsageError("IntFn values must stay non-negative");
        if (delta > 0) vals_.emplace(e, delta);
        return;
    }
    it->second += delta;
    if (it->second < 0) throw UsageError("IntFn values must stay non-negative");
    if (it->second == 0) vals_.erase(it);
}

Int IntFn::mass() const {
    Int total = 0;
    for (const auto& [e, v] : vals_) total += v;
    return total;
}

GroupSet IntFn::support() const {
    std::vector<Elem> elems;
    elems.reserve(vals_.size());
    for (const auto& [e, v] : vals_) elems.push_back(e);
    return GroupSet::of(spec_, std::move(elems));
}

namespace {

// Dense path for small finite groups: elements index into a flat array.
// Exact (values stay arbitrary-precision); cross-checked against the
// sparse path in the test suite.
constexpr std::uint64_t kDenseOrderCap = 1 << 16;

bool dense_eligible(const GroupSpec& spec) {
    if (!spec.finite()) return false;
    return spec.order() <= kDenseOrderCap;
}

std::size_t dense_index(const GroupSpec& spec, const Elem& e) {
    if (spec.kind() == GroupKind::Cyclic) return e.scalar_value().convert_to<std::size_t>();
    std::size_t idx = 0;
    for (auto c : e.coords()) idx = idx * spec.prime() + c;
    return idx;
}

Elem dense_element(const GroupSpec& spec, std::size_t idx) {
    if (spec.kind() == GroupKind::Cyclic) return spec.make_scalar(Int(idx));
    std::vector<std::uint32_t> coords(spec.dim());
    for (std::size_t i = spec.dim(); i-- > 0;) {
        coords[i] = std::uint32_t(idx % spec.prime());
        idx /= spec.prime();
    }
    return spec.make_vector(std::move(coords));
}

enum class PairOp { Conv, Corr };

IntFn combine_dense(const IntFn& f, const IntFn& g, PairOp op) {
    const auto& spec = f.spec();
    const auto order = spec.order().convert_to<std::size_t>();
    std::vector<Int> acc(order);
    std::vector<std::pair<std::size_t, Int>> fs, gs;
    for (const auto& [e, v] : f.values()) fs.emplace_back(dense_index(spec, e), v);
    for (const auto& [e, v] : g.values()) gs.emplace_back(dense_index(spec, e), v);

    if (spec.kind() == GroupKind::Cyclic) {
        for (const auto& [si, sv] : fs)
            for (const auto& [ti, tv] : gs) {
                std::size_t idx = op == PairOp::Conv ? (si + ti) % order
                                                     : (si + order - ti) % order;
                acc[idx] += sv * tv;
            }
    } else {
        // Coordinatewise arithmetic through canonical elements; index math
        // mod q per digit would duplicate GroupSpec logic.
        for (const auto& [e, sv] : f.values())
            for (const auto& [e2, tv] : g.values()) {
                Elem r = op == PairOp::Conv ? spec.add(e, e2) : spec.sub(e, e2);
                acc[dense_index(spec, r)] += sv * tv;
            }
    }

    IntFn out(spec);
    for (std::size_t i = 0; i < order; ++i)
        if (acc[i] != 0) out.add_at(dense_element(spec, i), acc[i]);
    return out;
}

IntFn combine_sparse(const IntFn& f, const IntFn& g, PairOp op) {
    IntFn out(f.spec());
    const auto& spec = f.spec();
    for (const auto& [s, sv] : f.values())
        for (const auto& [t, tv] : g.values()) {
            // Conv: out(s+t) += f(s) g(t).  Corr: out(s-t) += f(s) g(t),
            // matching (f o g)(x) = sum_s f(s) g(s-x).
            Elem r = op == PairOp::Conv ? spec.add(s, t) : spec.sub(s, t);
            out.add_at(r, sv * tv);
        }
    return out;
}

IntFn combine(const IntFn& f, const IntFn& g, PairOp op, const char* name) {
    require_same_spec(f.spec(), g.spec(), name);
    if (dense_eligible(f.spec())) return combine_dense(f, g, op);
    return combine_sparse(f, g, op);
}

} // namespace

IntFn convolve(const IntFn& f, const IntFn& g) { return combine(f, g, PairOp::Conv, "convolve"); }

IntFn correlate(const IntFn& f, const IntFn& g) { return combine(f, g, PairOp::Corr, "correlate"); }

IntFn iterated_self_conv(const GroupSet& a, unsigned j) {
    if (a.empty()) throw UsageError("iterated_self_conv: empty set");
    IntFn chr = IntFn::characteristic(a);
    IntFn acc = chr;
    for (unsigned i = 0; i < j; ++i) acc = convolve(acc, chr);
    return acc;
}

Int dot(const IntFn& f, const IntFn& g) {
    require_same_spec(f.spec(), g.spec(), "dot");
    Int total = 0;
    // Iterate the smaller support.
    const IntFn& small = f.values().size() <= g.values().size() ? f : g;
    const IntFn& large = f.values().size() <= g.values().size() ? g : f;
    for (const auto& [e, v] : small.values()) total += v * large.at(e);
    return total;
}

Int sum_of_squares(const IntFn& f) {
    Int total = 0;
    for (const auto& [e, v] : f.values()) total += v * v;
    return total;
}

} // namespace addcomb
