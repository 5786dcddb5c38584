#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "addcomb/numbers.hpp"

namespace addcomb {

enum class GroupKind { Cyclic, Vector, Integers };

class Elem;

// Descriptor of the ambient abelian group. Three families: Z/N (N >= 2),
// (Z/qZ)^n with q prime, and the integers. Equality is structural.
class GroupSpec {
public:
    static GroupSpec cyclic(Int modulus);
    static GroupSpec vectors(std::uint32_t q, std::uint32_t dim);
    static GroupSpec integers();

    GroupKind kind() const { return kind_; }
    const Int& modulus() const { return modulus_; }
    std::uint32_t prime() const { return q_; }
    std::uint32_t dim() const { return dim_; }

    bool finite() const { return kind_ != GroupKind::Integers; }
    Int order() const; // finite groups only

    bool operator==(const GroupSpec& other) const;
    bool operator!=(const GroupSpec& other) const { return !(*this == other); }

    Elem zero() const;
    // Canonicalizing constructors: cyclic values are reduced mod N,
    // integer values taken as-is, vector coordinates validated in [0, q).
    Elem make_scalar(const Int& v) const;
    Elem make_vector(std::vector<std::uint32_t> coords) const;

    bool valid(const Elem& e) const;
    Elem add(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem scale(const Elem& a, const Int& factor) const;

    std::string to_string() const;

private:
    GroupSpec() = default;
    GroupKind kind_ = GroupKind::Integers;
    Int modulus_;        // cyclic
    std::uint32_t q_ = 0, dim_ = 0; // vector
};

// A single group element in canonical form: a reduced residue (cyclic),
// a coordinate tuple (vector), or an arbitrary-precision integer.
class Elem {
public:
    Elem() : rep_(Int(0)) {}
    static Elem scalar(Int v) { return Elem(std::move(v)); }
    static Elem tuple(std::vector<std::uint32_t> coords) { return Elem(std::move(coords)); }

    bool is_scalar() const { return rep_.index() == 0; }
    const Int& scalar_value() const { return std::get<0>(rep_); }
    const std::vector<std::uint32_t>& coords() const { return std::get<1>(rep_); }

    bool operator==(const Elem& other) const { return rep_ == other.rep_; }
    bool operator<(const Elem& other) const;
    bool operator>(const Elem& other) const { return other < *this; }
    bool operator<=(const Elem& other) const { return !(other < *this); }
    bool operator>=(const Elem& other) const { return !(*this < other); }

    std::size_t hash() const;
    std::string to_string() const;

private:
    explicit Elem(Int v) : rep_(std::move(v)) {}
    explicit Elem(std::vector<std::uint32_t> coords) : rep_(std::move(coords)) {}
    std::variant<Int, std::vector<std::uint32_t>> rep_;
};

struct ElemHash {
    std::size_t operator()(const Elem& e) const { return e.hash(); }
};

// Finite set of distinct elements in deterministic sorted order.
class GroupSet {
public:
    explicit GroupSet(GroupSpec spec) : spec_(std::move(spec)) {}
    // Sorts and removes duplicates; every element must be valid for spec.
    static GroupSet of(GroupSpec spec, std::vector<Elem> elems);

    const GroupSpec& spec() const { return spec_; }
    const std::vector<Elem>& elems() const { return elems_; }
    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    bool contains(const Elem& e) const;

    // Subsets are addressed by bitmask over the sorted element order.
    GroupSet subset_by_mask(std::uint64_t mask) const;
    GroupSet set_union(const GroupSet& other) const;
    GroupSet set_difference(const GroupSet& other) const;
    bool is_subset_of(const GroupSet& other) const;

    bool operator==(const GroupSet& other) const {
        return spec_ == other.spec_ && elems_ == other.elems_;
    }

private:
    GroupSpec spec_;
    std::vector<Elem> elems_;
};

Elem elem_add(const GroupSpec& spec, const Elem& a, const Elem& b);
Elem elem_neg(const GroupSpec& spec, const Elem& a);

GroupSet sumset(const GroupSet& a, const GroupSet& b);
GroupSet negated(const GroupSet& a);
// A - B = { a - b }.
GroupSet difference_set(const GroupSet& a, const GroupSet& b);
GroupSet translate(const GroupSet& a, const Elem& t);
GroupSet dilate(const GroupSet& a, const Int& factor);

void require_same_spec(const GroupSpec& a, const GroupSpec& b, const char* op);

} // namespace addcomb
