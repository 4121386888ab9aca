#include "clm/abelian.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "clm/arith.hpp"

namespace clm {

namespace {

// Groups larger than this are rejected by the character enumeration.
constexpr std::uint64_t kMaxGroupOrder = 1U << 14U;

}  // namespace

GroupSpec build_group(const std::vector<std::uint64_t>& cyclic_orders) {
    if (cyclic_orders.empty()) throw std::invalid_argument("build_group: empty list of cyclic orders");
    std::map<std::uint64_t, std::vector<unsigned>> prime_exponents;
    std::uint64_t order = 1;
    for (std::uint64_t d : cyclic_orders) {
        if (d == 0) throw std::invalid_argument("build_group: zero cyclic order");
        if (order > UINT64_MAX / d) throw std::overflow_error("build_group: order overflows");
        order *= d;
        if (d == 1) continue;
        for (const auto& [p, e] : arith::factorize(d)) prime_exponents[p].push_back(e);
    }
    std::size_t length = 1;
    for (auto& [p, es] : prime_exponents) {
        std::sort(es.begin(), es.end(), std::greater<>());
        length = std::max(length, es.size());
    }
    // Invariant factor k (from the top) collects the k-th largest exponent of every prime.
    std::vector<std::uint64_t> factors(length, 1);
    for (const auto& [p, es] : prime_exponents)
        for (std::size_t k = 0; k < es.size(); ++k) factors[length - 1 - k] *= arith::checked_pow(p, es[k]);
    GroupSpec spec;
    spec.cyclic_orders = std::move(factors);
    spec.order = order;
    return spec;
}

std::vector<GroupElement> group_elements(const GroupSpec& group) {
    if (group.order > kMaxGroupOrder) throw std::invalid_argument("group too large to enumerate");
    std::vector<GroupElement> out;
    out.reserve(group.order);
    GroupElement x(group.cyclic_orders.size(), 0);
    for (std::uint64_t idx = 0; idx < group.order; ++idx) {
        out.push_back(x);
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (++x[i] < group.cyclic_orders[i]) break;
            x[i] = 0;
        }
    }
    return out;
}

std::uint64_t element_order(const GroupSpec& group, const GroupElement& x) {
    if (x.size() != group.cyclic_orders.size()) throw std::invalid_argument("element has wrong length");
    std::uint64_t order = 1;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const std::uint64_t d = group.cyclic_orders[i];
        const std::uint64_t xi = x[i] % d;
        order = std::lcm(order, d / std::gcd(d, xi));
    }
    return order;
}

std::uint64_t Character::value_exponent(const GroupSpec& group, const GroupElement& x) const {
    const std::uint64_t e = group.exponent();
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) acc = (acc + arith::mulmod(exponents[i], x[i], e)) % e;
    return acc;
}

std::vector<Character> all_characters(const GroupSpec& group) {
    const auto elements = group_elements(group);
    const std::uint64_t e = group.exponent();
    std::vector<Character> out;
    out.reserve(group.order);
    std::vector<std::uint64_t> a(group.cyclic_orders.size(), 0);
    for (std::uint64_t idx = 0; idx < group.order; ++idx) {
        Character chi;
        std::uint64_t g = e;
        for (std::size_t i = 0; i < a.size(); ++i) {
            chi.exponents.push_back(a[i] * (e / group.cyclic_orders[i]) % e);
            g = std::gcd(g, chi.exponents.back());
        }
        chi.order = e / g;
        chi.kernel.reserve(elements.size());
        for (const auto& x : elements) chi.kernel.push_back(chi.value_exponent(group, x) == 0);
        out.push_back(std::move(chi));
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (++a[i] < group.cyclic_orders[i]) break;
            a[i] = 0;
        }
    }
    return out;
}

std::vector<std::uint64_t> GroupComponent::galois_exponents() const {
    std::vector<std::uint64_t> out;
    if (n <= 2) return {1};
    for (std::uint64_t a = 1; a < n; ++a)
        if (std::gcd(a, n) == 1) out.push_back(a);
    return out;
}

std::vector<GroupComponent> components(const GroupSpec& group) {
    std::vector<GroupComponent> out;
    std::map<std::vector<bool>, std::size_t> seen;
    for (auto& chi : all_characters(group)) {
        if (seen.contains(chi.kernel)) continue;
        seen.emplace(chi.kernel, out.size());
        GroupComponent comp;
        comp.n = chi.order;
        comp.degree = arith::euler_phi(chi.order);
        comp.representative = std::move(chi);
        out.push_back(std::move(comp));
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.n < r.n; });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<int>(i);
    return out;
}

std::vector<GroupComponent> minus_components(const GroupSpec& group, const GroupElement& involution) {
    if (element_order(group, involution) != 2) throw std::invalid_argument("minus_components: c is not of order 2");
    const std::uint64_t half = group.exponent() / 2;
    std::vector<GroupComponent> out;
    for (auto comp : components(group)) {
        const bool minus = comp.representative.value_exponent(group, involution) == half;
        comp.minus_flag = minus;
        if (minus) out.push_back(std::move(comp));
    }
    return out;
}

std::string MaximalIdeal::id() const {
    return "c" + std::to_string(component) + ":p" + std::to_string(p) + ":j" + std::to_string(index);
}

double MaximalIdeal::log_norm() const { return residue_degree * std::log(static_cast<double>(p)); }

std::vector<MaximalIdeal> maximal_ideals(const GroupComponent& comp, const std::vector<std::uint64_t>& primes,
                                         std::uint64_t group_order) {
    std::vector<MaximalIdeal> out;
    std::vector<std::uint64_t> sorted = primes;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    const auto exps = comp.galois_exponents();
    for (std::uint64_t p : sorted) {
        if (!arith::is_prime(p)) throw std::invalid_argument("maximal_ideals: " + std::to_string(p) + " is not prime");
        if (group_order % p == 0)
            throw std::invalid_argument("maximal_ideals: prime " + std::to_string(p) + " divides #G");
        const auto f = static_cast<unsigned>(arith::multiplicative_order(p % comp.n, comp.n));
        std::map<std::uint64_t, bool> assigned;
        std::uint64_t j = 0;
        for (std::uint64_t a : exps) {
            if (assigned[a]) continue;
            std::uint64_t b = a;
            for (unsigned i = 0; i < f; ++i) {
                assigned[b] = true;
                b = comp.n <= 2 ? 1 : (b * p) % comp.n;
            }
            MaximalIdeal m;
            m.component = comp.id;
            m.p = p;
            m.residue_degree = f;
            m.index = j++;
            m.psi_exponent = a;
            m.norm = ipow(Int(p), f);
            out.push_back(std::move(m));
        }
    }
    return out;
}

GroupDocument parse_group_document(const std::string& json_text) {
    const auto j = nlohmann::json::parse(json_text);
    GroupDocument doc;
    doc.group = build_group(j.at("cyclic_orders").get<std::vector<std::uint64_t>>());
    if (j.contains("involution") && !j.at("involution").is_null()) {
        GroupElement c = j.at("involution").get<GroupElement>();
        if (c.size() != doc.group.cyclic_orders.size())
            throw std::invalid_argument("involution must be given in invariant-factor coordinates");
        doc.involution = std::move(c);
    }
    if (j.contains("primes")) doc.primes = j.at("primes").get<std::vector<std::uint64_t>>();
    return doc;
}

std::string dump_group_document(const GroupDocument& doc) {
    nlohmann::json j;
    j["cyclic_orders"] = doc.group.cyclic_orders;
    j["involution"] = doc.involution ? nlohmann::json(*doc.involution) : nlohmann::json(nullptr);
    j["primes"] = doc.primes;
    return j.dump();
}

GroupElement cyclic_involution(const GroupSpec& group) {
    if (group.cyclic_orders.size() != 1 || group.order % 2 != 0)
        throw std::invalid_argument("group is not cyclic of even order");
    return {group.order / 2};
}

GroupDocument parse_group_shorthand(const std::string& text) {
    std::string body = text;
    bool minus = false;
    if (body.size() > 5 && body.ends_with("minus")) {
        minus = true;
        body.resize(body.size() - 5);
    }
    std::vector<std::uint64_t> orders;
    std::size_t pos = 0;
    while (pos < body.size()) {
        if (body[pos] != 'C') throw std::invalid_argument("bad group shorthand: " + text);
        std::size_t end = body.find('x', pos);
        if (end == std::string::npos) end = body.size();
        const std::string digits = body.substr(pos + 1, end - pos - 1);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad group shorthand: " + text);
        orders.push_back(std::stoull(digits));
        pos = end == body.size() ? end : end + 1;
    }
    GroupDocument doc;
    doc.group = build_group(orders);
    if (minus) doc.involution = cyclic_involution(doc.group);
    return doc;
}

}  // namespace clm
