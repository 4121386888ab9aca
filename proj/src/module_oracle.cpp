#include "clm/module_oracle.hpp"

#include <stdexcept>

#include "clm/arith.hpp"

namespace clm::oracle {

namespace {

// Full enumeration is used while (#tuples) * (#M) stays below this.
constexpr std::uint64_t kEnumBudget = 1ULL << 22U;

void check_size(const Partition& lambda, std::uint64_t p) {
    if (!arith::is_prime(p)) throw std::invalid_argument("oracle: p must be prime");
    std::uint64_t n = 1;
    for (unsigned i = 0; i < lambda.size(); ++i) {
        n *= p;
        if (n > kMaxOrder) throw std::invalid_argument("oracle: module order exceeds 2^12");
    }
}

}  // namespace

PGroup::PGroup(const Partition& lambda, std::uint64_t p) : p_(p) {
    check_size(lambda, p);
    for (unsigned l : lambda.parts) {
        const auto m = static_cast<std::uint32_t>(arith::checked_pow(p, l));
        mods_.push_back(m);
        order_ *= m;
    }
    ord_.resize(order_);
    for (std::uint32_t a = 0; a < order_; ++a) {
        unsigned v = 0;
        std::uint32_t x = a;
        while (x != 0) {
            x = mul(x, p_);
            ++v;
        }
        ord_[a] = v;
    }
}

std::uint32_t PGroup::add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t out = 0, scale = 1;
    for (std::uint32_t m : mods_) {
        out += ((a % m + b % m) % m) * scale;
        a /= m;
        b /= m;
        scale *= m;
    }
    return out;
}

std::uint32_t PGroup::mul(std::uint32_t a, std::uint64_t k) const {
    std::uint32_t out = 0, scale = 1;
    for (std::uint32_t m : mods_) {
        out += static_cast<std::uint32_t>((a % m) * (k % m) % m) * scale;
        a /= m;
        scale *= m;
    }
    return out;
}

std::vector<bool> PGroup::closure(const std::vector<bool>& base, std::uint32_t extra) const {
    std::vector<bool> in = base;
    std::vector<std::uint32_t> list;
    for (std::uint32_t a = 0; a < order_; ++a)
        if (in[a]) list.push_back(a);
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::uint32_t y = add(list[i], extra);
        if (!in[y]) {
            in[y] = true;
            list.push_back(y);
        }
    }
    return in;
}

std::uint32_t PGroup::subgroup_size(const std::vector<std::uint32_t>& gens) const {
    std::vector<bool> h(order_, false);
    h[0] = true;
    for (std::uint32_t g : gens) h = closure(h, g);
    std::uint32_t n = 0;
    for (bool b : h) n += b;
    return n;
}

Int brute_hom(const Partition& lambda, const Partition& mu, std::uint64_t p) {
    check_size(lambda, p);
    const PGroup target(mu, p);
    // A map is a choice of image y_i for each generator with p^{l_i} y_i = 0.
    Int total = 1;
    for (unsigned l : lambda.parts) {
        std::uint64_t admissible = 0;
        for (std::uint32_t y = 0; y < target.order(); ++y) admissible += target.order_exponent(y) <= l;
        total *= admissible;
    }
    return total;
}

namespace {

// Every tuple of admissible generator images, handed to visit().
template <class Visit>
void for_each_map(const PGroup& source_shape_group, const std::vector<unsigned>& source_parts, Visit&& visit) {
    std::vector<std::vector<std::uint32_t>> choices;
    for (unsigned l : source_parts) {
        std::vector<std::uint32_t> c;
        for (std::uint32_t y = 0; y < source_shape_group.order(); ++y)
            if (source_shape_group.order_exponent(y) <= l) c.push_back(y);
        choices.push_back(std::move(c));
    }
    std::vector<std::size_t> idx(choices.size(), 0);
    std::vector<std::uint32_t> images(choices.size());
    while (true) {
        for (std::size_t i = 0; i < idx.size(); ++i) images[i] = choices[i][idx[i]];
        visit(images);
        std::size_t i = 0;
        for (; i < idx.size(); ++i) {
            if (++idx[i] < choices[i].size()) break;
            idx[i] = 0;
        }
        if (i == idx.size()) break;
    }
}

Int sequential_aut(const PGroup& g, const Partition& lambda, bool pick_last) {
    std::vector<bool> h(g.order(), false);
    h[0] = true;
    Int total = 1;
    for (unsigned l : lambda.parts) {
        std::vector<std::uint32_t> candidates;
        for (std::uint32_t x = 0; x < g.order(); ++x) {
            if (g.order_exponent(x) != l) continue;
            if (h[g.mul(x, arith::checked_pow(g.prime(), l - 1))]) continue;
            candidates.push_back(x);
        }
        if (candidates.empty()) return 0;
        total *= candidates.size();
        h = g.closure(h, pick_last ? candidates.back() : candidates.front());
    }
    std::uint32_t n = 0;
    for (bool b : h) n += b;
    if (n != g.order()) throw std::logic_error("oracle: sequential basis did not generate M");
    return total;
}

}  // namespace

Int brute_aut(const Partition& lambda, std::uint64_t p) {
    const PGroup g(lambda, p);
    Int maps = brute_hom(lambda, lambda, p);
    if (maps * g.order() <= kEnumBudget) {
        std::uint64_t count = 0;
        for_each_map(g, lambda.parts, [&](const std::vector<std::uint32_t>& images) {
            count += g.subgroup_size(images) == g.order();
        });
        return count;
    }
    // Count bases x_1..x_r of type lambda one vector at a time; the number of
    // extensions does not depend on the earlier choices, which the two runs check.
    const Int a = sequential_aut(g, lambda, false);
    const Int b = sequential_aut(g, lambda, true);
    if (a != b) throw std::logic_error("oracle: sequential automorphism count depends on choices");
    return a;
}

Int brute_sur(const Partition& lambda, std::uint64_t p, unsigned u) {
    const PGroup g(lambda, p);
    std::uint64_t maps = 1;
    for (unsigned i = 0; i < u && maps <= kEnumBudget; ++i) maps *= g.order();
    const std::vector<unsigned> free_parts(u, lambda.empty() ? 1 : lambda.parts.front());
    if (maps * g.order() <= kEnumBudget) {
        std::uint64_t count = 0;
        if (u == 0) return g.order() == 1 ? 1 : 0;
        for_each_map(g, free_parts, [&](const std::vector<std::uint32_t>& images) {
            count += g.subgroup_size(images) == g.order();
        });
        return count;
    }
    const std::size_t r = lambda.length();
    // u vectors cannot span M/pM of dimension r > u.
    if (r > u) return 0;
    Partition frattini;
    frattini.parts.assign(r, 1);
    const PGroup top(frattini, p);
    std::uint64_t spanning = 0;
    for_each_map(top, std::vector<unsigned>(u, 1), [&](const std::vector<std::uint32_t>& images) {
        spanning += top.subgroup_size(images) == top.order();
    });
    // A tuple generates M iff its image generates M/pM; each such image has #(pM)^u lifts.
    const Int pm = Int(g.order()) / top.order();
    return Int(spanning) * ipow(pm, u);
}

Int brute_force_counts(const Partition& lambda, const Partition& mu, std::uint64_t p, Mode mode, unsigned u) {
    switch (mode) {
        case Mode::hom:
            return brute_hom(lambda, mu, p);
        case Mode::aut:
            return brute_aut(lambda, p);
        case Mode::sur:
            return brute_sur(lambda, p, u);
    }
    throw std::invalid_argument("oracle: unknown mode");
}

}  // namespace clm::oracle
