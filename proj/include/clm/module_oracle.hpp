#pragma once

// Independent brute-force counts over explicit abelian p-groups, used to
// validate the closed-form counts in modules.hpp.

#include <cstdint>
#include <vector>

#include "clm/modules.hpp"

namespace clm::oracle {

/// Largest module order the oracle accepts.
inline constexpr std::uint64_t kMaxOrder = 1U << 12U;

/// Z/p^{l_1} + ... + Z/p^{l_r} with elements encoded as mixed-radix integers.
class PGroup {
public:
    PGroup(const Partition& lambda, std::uint64_t p);

    std::uint32_t order() const { return order_; }
    std::uint64_t prime() const { return p_; }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t mul(std::uint32_t a, std::uint64_t k) const;
    /// v such that the element has order p^v.
    unsigned order_exponent(std::uint32_t a) const { return ord_[a]; }
    /// Membership mask of the subgroup generated by base and extra.
    std::vector<bool> closure(const std::vector<bool>& base, std::uint32_t extra) const;
    std::uint32_t subgroup_size(const std::vector<std::uint32_t>& gens) const;

private:
    std::uint64_t p_;
    std::vector<std::uint32_t> mods_;
    std::uint32_t order_ = 1;
    std::vector<unsigned> ord_;
};

Int brute_hom(const Partition& lambda, const Partition& mu, std::uint64_t p);
Int brute_aut(const Partition& lambda, std::uint64_t p);
Int brute_sur(const Partition& lambda, std::uint64_t p, unsigned u);

enum class Mode { hom, aut, sur };

/// Dispatcher. Throws std::invalid_argument when p is not prime or a module exceeds kMaxOrder.
Int brute_force_counts(const Partition& lambda, const Partition& mu, std::uint64_t p, Mode mode, unsigned u);

}  // namespace clm::oracle
