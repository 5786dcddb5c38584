#include "addcomb/group.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace addcomb {

namespace {

bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Int mod_reduce(const Int& v, const Int& n) {
    Int r = v % n;
    if (r < 0) r += n;
    return r;
}

} // namespace

GroupSpec GroupSpec::cyclic(Int modulus) {
    if (modulus < 2) throw UsageError("cyclic group needs modulus >= 2");
    GroupSpec s;
    s.kind_ = GroupKind::Cyclic;
    s.modulus_ = std::move(modulus);
    return s;
}

GroupSpec GroupSpec::vectors(std::uint32_t q, std::uint32_t dim) {
    if (!is_prime_u32(q)) throw UsageError("vector group needs prime q");
    if (dim < 1) throw UsageError("vector group needs dimension >= 1");
    GroupSpec s;
    s.kind_ = GroupKind::Vector;
    s.q_ = q;
    s.dim_ = dim;
    return s;
}

GroupSpec GroupSpec::integers() {
    GroupSpec s;
    s.kind_ = GroupKind::Integers;
    return s;
}

Int GroupSpec::order() const {
    switch (kind_) {
    case GroupKind::Cyclic: return modulus_;
    case GroupKind::Vector: return ipow(Int(q_), dim_);
    case GroupKind::Integers: throw UsageError("integers group has no finite order");
    }
    throw InternalError("unreachable");
}

bool GroupSpec::operator==(const GroupSpec& other) const {
    if (kind_ != other.kind_) return false;
    switch (kind_) {
    case GroupKind::Cyclic: return modulus_ == other.modulus_;
    case GroupKind::Vector: return q_ == other.q_ && dim_ == other.dim_;
    case GroupKind::Integers: return true;
    }
    return false;
}

Elem GroupSpec::zero() const {
    if (kind_ == GroupKind::Vector) return Elem::tuple(std::vector<std::uint32_t>(dim_, 0));
    return Elem::scalar(0);
}

Elem GroupSpec::make_scalar(const Int& v) const {
    switch (kind_) {
    case GroupKind::Cyclic: return Elem::scalar(mod_reduce(v, modulus_));
    case GroupKind::Integers: return Elem::scalar(v);
    case GroupKind::Vector: throw UsageError("vector group element needs coordinates");
    }
    throw InternalError("unreachable");
}

Elem GroupSpec::make_vector(std::vector<std::uint32_t> coords) const {
    if (kind_ != GroupKind::Vector) throw UsageError("coordinate element in non-vector group");
    if (coords.size() != dim_) throw UsageError("wrong coordinate count");
    for (auto c : coords)
        if (c >= q_) throw UsageError("coordinate out of range [0, q)");
    return Elem::tuple(std::move(coords));
}

bool GroupSpec::valid(const Elem& e) const {
    switch (kind_) {
    case GroupKind::Cyclic:
        return e.is_scalar() && e.scalar_value() >= 0 && e.scalar_value() < modulus_;
    case GroupKind::Integers:
        return e.is_scalar();
    case GroupKind::Vector: {
        if (e.is_scalar() || e.coords().size() != dim_) return false;
        for (auto c : e.coords())
            if (c >= q_) return false;
        return true;
    }
    }
    return false;
}

Elem GroupSpec::add(const Elem& a, const Elem& b) const {
    switch (kind_) {
    case GroupKind::Cyclic: return Elem::scalar(mod_reduce(a.scalar_value() + b.scalar_value(), modulus_));
    case GroupKind::Integers: return Elem::scalar(a.scalar_value() + b.scalar_value());
    case GroupKind::Vector: {
        std::vector<std::uint32_t> out(dim_);
        const auto& x = a.coords();
        const auto& y = b.coords();
        for (std::uint32_t i = 0; i < dim_; ++i) {
            std::uint64_t s = std::uint64_t(x[i]) + y[i];
            out[i] = std::uint32_t(s >= q_ ? s - q_ : s);
        }
        return Elem::tuple(std::move(out));
    }
    }
    throw InternalError("unreachable");
}

Elem GroupSpec::neg(const Elem& a) const {
    switch (kind_) {
    case GroupKind::Cyclic: return Elem::scalar(mod_reduce(-a.scalar_value(), modulus_));
    case GroupKind::Integers: return Elem::scalar(-a.scalar_value());
    case GroupKind::Vector: {
        std::vector<std::uint32_t> out(dim_);
        const auto& x = a.coords();
        for (std::uint32_t i = 0; i < dim_; ++i) out[i] = x[i] == 0 ? 0 : q_ - x[i];
        return Elem::tuple(std::move(out));
    }
    }
    throw InternalError("unreachable");
}

Elem GroupSpec::sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

Elem GroupSpec::scale(const Elem& a, const Int& factor) const {
    switch (kind_) {
    case GroupKind::Cyclic: return Elem::scalar(mod_reduce(a.scalar_value() * factor, modulus_));
    case GroupKind::Integers: return Elem::scalar(a.scalar_value() * factor);
    case GroupKind::Vector: {
        Int f = mod_reduce(factor, Int(q_));
        auto fu = f.convert_to<std::uint64_t>();
        std::vector<std::uint32_t> out(dim_);
        const auto& x = a.coords();
        for (std::uint32_t i = 0; i < dim_; ++i) out[i] = std::uint32_t((fu * x[i]) % q_);
        return Elem::tuple(std::move(out));
    }
    }
    throw InternalError("unreachable");
}

std::string GroupSpec::to_string() const {
    std::ostringstream os;
    switch (kind_) {
    case GroupKind::Cyclic: os << "cyclic(" << modulus_ << ")"; break;
    case GroupKind::Vector: os << "vector(" << q_ << "," << dim_ << ")"; break;
    case GroupKind::Integers: os << "integers"; break;
    }
    return os.str();
}

bool Elem::operator<(const Elem& other) const {
    if (rep_.index() != other.rep_.index()) return rep_.index() < other.rep_.index();
    if (is_scalar()) return scalar_value() < other.scalar_value();
    return coords() < other.coords();
}

std::size_t Elem::hash() const {
    if (is_scalar()) return std::hash<Int>{}(scalar_value());
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (auto c : coords()) h = (h ^ c) * 1099511628211ull;
    return h;
}

std::string Elem::to_string() const {
    if (is_scalar()) return scalar_value().str();
    std::string out = "(";
    for (std::size_t i = 0; i < coords().size(); ++i) {
        if (i) out += ",";
        out += std::to_string(coords()[i]);
    }
    return out + ")";
}

GroupSet GroupSet::of(GroupSpec spec, std::vector<Elem> elems) {
    for (const auto& e : elems)
        if (!spec.valid(e))
            throw UsageError("element " + e.to_string() + " invalid for " + spec.to_string());
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    GroupSet s(std::move(spec));
    s.elems_ = std::move(elems);
    return s;
}

bool GroupSet::contains(const Elem& e) const {
    return std::binary_search(elems_.begin(), elems_.end(), e);
}

GroupSet GroupSet::subset_by_mask(std::uint64_t mask) const {
    if (size() > 64) throw CapacityError("subset_by_mask limited to 64 elements");
    std::vector<Elem> out;
    for (std::size_t i = 0; i < size(); ++i)
        if (mask & (std::uint64_t(1) << i)) out.push_back(elems_[i]);
    GroupSet s(spec_);
    s.elems_ = std::move(out); // preserves sorted unique order
    return s;
}

GroupSet GroupSet::set_union(const GroupSet& other) const {
    require_same_spec(spec_, other.spec_, "set_union");
    std::vector<Elem> out;
    std::set_union(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end(),
                   std::back_inserter(out));
    GroupSet s(spec_);
    s.elems_ = std::move(out);
    return s;
}

GroupSet GroupSet::set_difference(const GroupSet& other) const {
    require_same_spec(spec_, other.spec_, "set_difference");
    std::vector<Elem> out;
    std::set_difference(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end(),
                        std::back_inserter(out));
    GroupSet s(spec_);
    s.elems_ = std::move(out);
    return s;
}

bool GroupSet::is_subset_of(const GroupSet& other) const {
    require_same_spec(spec_, other.spec_, "is_subset_of");
    return std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(), elems_.end());
}

Elem elem_add(const GroupSpec& spec, const Elem& a, const Elem& b) {
    if (!spec.valid(a) || !spec.valid(b)) throw UsageError("elem_add: operand invalid for spec");
    return spec.add(a, b);
}

Elem elem_neg(const GroupSpec& spec, const Elem& a) {
    if (!spec.valid(a)) throw UsageError("elem_neg: operand invalid for spec");
    return spec.neg(a);
}

GroupSet sumset(const GroupSet& a, const GroupSet& b) {
    require_same_spec(a.spec(), b.spec(), "sumset");
    std::vector<Elem> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a.elems())
        for (const auto& y : b.elems()) out.push_back(a.spec().add(x, y));
    return GroupSet::of(a.spec(), std::move(out));
}

GroupSet negated(const GroupSet& a) {
    std::vector<Elem> out;
    out.reserve(a.size());
    for (const auto& x : a.elems()) out.push_back(a.spec().neg(x));
    return GroupSet::of(a.spec(), std::move(out));
}

GroupSet difference_set(const GroupSet& a, const GroupSet& b) {
    return sumset(a, negated(b));
}

GroupSet translate(const GroupSet& a, const Elem& t) {
    if (!a.spec().valid(t)) throw UsageError("translate: offset invalid for spec");
    std::vector<Elem> out;
    out.reserve(a.size());
    for (const auto& x : a.elems()) out.push_back(a.spec().add(x, t));
    return GroupSet::of(a.spec(), std::move(out));
}

GroupSet dilate(const GroupSet& a, const Int& factor) {
    std::vector<Elem> out;
    out.reserve(a.size());
    for (const auto& x : a.elems()) out.push_back(a.spec().scale(x, factor));
    return GroupSet::of(a.spec(), std::move(out));
}

void require_same_spec(const GroupSpec& a, const GroupSpec& b, const char* op) {
    if (a != b)
        throw UsageError(std::string(op) + ": group specs differ (" + a.to_string() + " vs " +
                         b.to_string() + ")");
}

} // namespace addcomb
