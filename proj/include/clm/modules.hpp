#pragma once

// Finite modules over the components of Z_(S)[G], stored in canonical form
// P_V (+) M_0: a rank per component plus an integer partition per maximal ideal.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "clm/abelian.hpp"
#include "clm/numeric.hpp"

namespace clm {

/// Non-increasing sequence of positive parts; the empty partition is the zero module.
struct Partition {
    std::vector<unsigned> parts;

    Partition() = default;
    Partition(std::initializer_list<unsigned> init);
    explicit Partition(std::vector<unsigned> p);

    unsigned size() const;
    std::size_t length() const { return parts.size(); }
    bool empty() const { return parts.empty(); }
    bool valid() const;
    std::string str() const;

    auto operator<=>(const Partition&) const = default;
};

/// All partitions of n, in reverse lexicographic order.
std::vector<Partition> partitions_of(unsigned n);

/// Union of the parts of two partitions (the direct sum of local modules).
Partition merge(const Partition& a, const Partition& b);

// Counts for modules over a discrete valuation ring with residue field of size q.
Int hom_count(const Partition& lambda, const Partition& mu, const Int& q);
Int aut_count(const Partition& lambda, const Int& q);
/// Surjections from the free module of rank u onto the module of type lambda.
Int sur_count(const Partition& lambda, const Int& q, unsigned u);

/// P_V (+) M_0. Components are referred to by their integer id.
struct ModuleShape {
    std::map<MaximalIdeal, Partition> torsion;
    std::map<int, unsigned> ranks;

    bool is_torsion_zero() const;
    /// #M_0 as an exact integer.
    Int torsion_order() const;
    /// Drops empty partitions and zero ranks.
    void normalize();

    bool operator==(const ModuleShape& other) const;
};

ModuleShape direct_sum(const ModuleShape& a, const ModuleShape& b);

/// #Hom(P, M0) for the projective module with the given rank vector.
Int hom_from_projective(const std::map<int, unsigned>& ranks, const ModuleShape& m0);
Int aut_torsion(const ModuleShape& m0);

/// ia(P + L0, P + M0) = #Hom(P, M0) #Aut M0 / (#Hom(P, L0) #Aut L0).
Rational ia_index(const ModuleShape& l0, const ModuleShape& m0, const std::map<int, unsigned>& ranks);

/// Finite abelian group C with a class for every maximal ideal in play.
struct ClassDatum {
    GroupSpec group;
    std::map<std::string, GroupElement> ideal_class;  // keyed by MaximalIdeal::id()

    const GroupElement& class_of_ideal(const MaximalIdeal& m) const;
    GroupElement zero() const;
    GroupElement add(const GroupElement& a, const GroupElement& b) const;
    GroupElement scale(const GroupElement& a, std::uint64_t k) const;
    GroupElement negate(const GroupElement& a) const;
    std::vector<Character> characters() const { return all_characters(group); }
};

struct GrothendieckClass {
    std::map<int, std::uint64_t> free_rank;
    std::map<int, GroupElement> torsion;  // per component, in C
    GroupElement total;                   // sum over components
};

GrothendieckClass class_of(const ModuleShape& m, const ClassDatum& datum);

/// JSON: {"ranks": {"<component id>": u}, "torsion": [{"ideal": "c0:p3:j0", "parts": [2,1]}]}.
std::string dump_module_shape(const ModuleShape& m);
ModuleShape parse_module_shape(const std::string& json_text, const std::vector<MaximalIdeal>& ideals);

}  // namespace clm
