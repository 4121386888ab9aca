#pragma once

// Finite abelian groups G, their characters up to kernel equivalence, the
// simple components of the localized group ring Z_(S)[G] and the maximal
// ideals of each component.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clm/numeric.hpp"

namespace clm {

/// Finite abelian group in invariant-factor form: orders d_1 | d_2 | ... | d_k.
struct GroupSpec {
    std::vector<std::uint64_t> cyclic_orders;
    std::uint64_t order = 1;

    /// Largest invariant factor.
    std::uint64_t exponent() const { return cyclic_orders.back(); }
};

/// Normalizes an arbitrary list of cyclic orders to invariant-factor form.
/// Throws std::invalid_argument on an empty list or a zero entry.
GroupSpec build_group(const std::vector<std::uint64_t>& cyclic_orders);

using GroupElement = std::vector<std::uint64_t>;

/// Enumerates every element of G in mixed-radix order (first coordinate fastest).
std::vector<GroupElement> group_elements(const GroupSpec& group);
std::uint64_t element_order(const GroupSpec& group, const GroupElement& x);

/// A character chi of G: chi(g_i) = zeta_e^{exponents[i]} where g_i are the
/// invariant-factor generators and e is the exponent of G.
struct Character {
    std::vector<std::uint64_t> exponents;
    std::uint64_t order = 1;
    /// Kernel as a membership mask over group_elements(G).
    std::vector<bool> kernel;

    /// chi(x) as a power of zeta_e.
    std::uint64_t value_exponent(const GroupSpec& group, const GroupElement& x) const;
};

std::vector<Character> all_characters(const GroupSpec& group);

/// One simple factor chi(T) = Z_(S)[zeta_n] of the localized group ring.
struct GroupComponent {
    int id = 0;
    Character representative;
    std::uint64_t n = 1;       // order of chi(G)
    std::uint64_t degree = 1;  // phi(n)
    std::optional<bool> minus_flag;

    /// Characters chi^a (a coprime to n) lie in the same class; these are their exponents a.
    std::vector<std::uint64_t> galois_exponents() const;
};

std::vector<GroupComponent> components(const GroupSpec& group);

/// Components on which the involution c acts as -1. Throws unless c has order 2.
std::vector<GroupComponent> minus_components(const GroupSpec& group, const GroupElement& involution);

/// The maximal ideal m_{p, psi} of a component, psi = chi^psi_exponent.
struct MaximalIdeal {
    int component = 0;
    std::uint64_t p = 0;
    unsigned residue_degree = 1;
    std::uint64_t index = 0;         // j in 0..g-1
    std::uint64_t psi_exponent = 1;  // smallest a in the Frobenius orbit a<p>
    Int norm = 1;                    // p^f

    /// Stable textual id, e.g. "c2:p3:j0".
    std::string id() const;
    double log_norm() const;

    auto operator<=>(const MaximalIdeal& other) const {
        if (auto c = component <=> other.component; c != 0) return c;
        if (auto c = p <=> other.p; c != 0) return c;
        return index <=> other.index;
    }
    bool operator==(const MaximalIdeal& other) const {
        return component == other.component && p == other.p && index == other.index;
    }
};

/// Maximal ideals of a component above every p in primes. Throws if some p
/// divides group_order or is not prime.
std::vector<MaximalIdeal> maximal_ideals(const GroupComponent& comp, const std::vector<std::uint64_t>& primes,
                                         std::uint64_t group_order);

/// Input document {"cyclic_orders":[...], "involution":[...], "primes":[...]}.
struct GroupDocument {
    GroupSpec group;
    std::optional<GroupElement> involution;
    std::vector<std::uint64_t> primes;
};

GroupDocument parse_group_document(const std::string& json_text);
std::string dump_group_document(const GroupDocument& doc);

/// Shorthands accepted by the CLI: "C4", "C2xC6", "C58minus" (minus part of the unique involution).
GroupDocument parse_group_shorthand(const std::string& text);

/// Unique element of order 2 in a cyclic group of even order.
GroupElement cyclic_involution(const GroupSpec& group);

}  // namespace clm
