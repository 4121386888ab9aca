#include "clm/modules.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include <json.hpp>

namespace clm {

Partition::Partition(std::initializer_list<unsigned> init) : parts(init) {
    if (!valid()) throw std::invalid_argument("invalid partition " + str());
}

Partition::Partition(std::vector<unsigned> p) : parts(std::move(p)) {
    if (!valid()) throw std::invalid_argument("invalid partition " + str());
}

unsigned Partition::size() const {
    unsigned s = 0;
    for (unsigned x : parts) s += x;
    return s;
}

bool Partition::valid() const {
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] == 0) return false;
        if (i > 0 && parts[i] > parts[i - 1]) return false;
    }
    return true;
}

std::string Partition::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + std::to_string(parts[i]);
    return s + ")";
}

std::vector<Partition> partitions_of(unsigned n) {
    std::vector<Partition> out;
    std::vector<unsigned> cur;
    std::function<void(unsigned, unsigned)> rec = [&](unsigned rest, unsigned cap) {
        if (rest == 0) {
            Partition p;
            p.parts = cur;
            out.push_back(std::move(p));
            return;
        }
        for (unsigned k = std::min(rest, cap); k >= 1; --k) {
            cur.push_back(k);
            rec(rest - k, k);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

Partition merge(const Partition& a, const Partition& b) {
    Partition out;
    out.parts = a.parts;
    out.parts.insert(out.parts.end(), b.parts.begin(), b.parts.end());
    std::sort(out.parts.begin(), out.parts.end(), std::greater<>());
    return out;
}

namespace {

void check_q(const Int& q) {
    if (q < 2) throw std::invalid_argument("residue field size q must be >= 2");
}

std::uint64_t min_sum(const Partition& a, const Partition& b) {
    std::uint64_t s = 0;
    for (unsigned x : a.parts)
        for (unsigned y : b.parts) s += std::min(x, y);
    return s;
}

}  // namespace

Int hom_count(const Partition& lambda, const Partition& mu, const Int& q) {
    check_q(q);
    return ipow(q, min_sum(lambda, mu));
}

Int aut_count(const Partition& lambda, const Int& q) {
    check_q(q);
    std::uint64_t e = min_sum(lambda, lambda);
    Int prod = 1;
    std::size_t i = 0;
    while (i < lambda.parts.size()) {
        std::size_t j = i;
        while (j < lambda.parts.size() && lambda.parts[j] == lambda.parts[i]) ++j;
        const std::uint64_t m = j - i;
        e -= m * (m + 1) / 2;
        for (std::uint64_t k = 1; k <= m; ++k) prod *= ipow(q, k) - 1;
        i = j;
    }
    return ipow(q, e) * prod;
}

Int sur_count(const Partition& lambda, const Int& q, unsigned u) {
    check_q(q);
    const std::size_t r = lambda.length();
    if (u < r) return 0;
    std::uint64_t e = static_cast<std::uint64_t>(u) * lambda.size();
    Int prod = 1;
    for (std::size_t i = 0; i < r; ++i) {
        e -= u - i;
        prod *= ipow(q, u - i) - 1;
    }
    return ipow(q, e) * prod;
}

bool ModuleShape::is_torsion_zero() const {
    for (const auto& [m, lam] : torsion)
        if (!lam.empty()) return false;
    return true;
}

Int ModuleShape::torsion_order() const {
    Int n = 1;
    for (const auto& [m, lam] : torsion) n *= ipow(m.norm, lam.size());
    return n;
}

void ModuleShape::normalize() {
    std::erase_if(torsion, [](const auto& kv) { return kv.second.empty(); });
    std::erase_if(ranks, [](const auto& kv) { return kv.second == 0; });
}

bool ModuleShape::operator==(const ModuleShape& other) const {
    ModuleShape a = *this, b = other;
    a.normalize();
    b.normalize();
    return a.torsion == b.torsion && a.ranks == b.ranks;
}

ModuleShape direct_sum(const ModuleShape& a, const ModuleShape& b) {
    ModuleShape out = a;
    for (const auto& [m, lam] : b.torsion) out.torsion[m] = merge(out.torsion[m], lam);
    for (const auto& [c, u] : b.ranks) out.ranks[c] += u;
    out.normalize();
    return out;
}

Int hom_from_projective(const std::map<int, unsigned>& ranks, const ModuleShape& m0) {
    Int n = 1;
    for (const auto& [m, lam] : m0.torsion) {
        auto it = ranks.find(m.component);
        if (it == ranks.end() || it->second == 0) continue;
        n *= ipow(m.norm, static_cast<std::uint64_t>(it->second) * lam.size());
    }
    return n;
}

Int aut_torsion(const ModuleShape& m0) {
    Int n = 1;
    for (const auto& [m, lam] : m0.torsion) n *= aut_count(lam, m.norm);
    return n;
}

Rational ia_index(const ModuleShape& l0, const ModuleShape& m0, const std::map<int, unsigned>& ranks) {
    const Int num = hom_from_projective(ranks, m0) * aut_torsion(m0);
    const Int den = hom_from_projective(ranks, l0) * aut_torsion(l0);
    return Rational(num, den);
}

const GroupElement& ClassDatum::class_of_ideal(const MaximalIdeal& m) const {
    auto it = ideal_class.find(m.id());
    if (it == ideal_class.end()) throw std::out_of_range("class datum has no class for ideal " + m.id());
    return it->second;
}

GroupElement ClassDatum::zero() const { return GroupElement(group.cyclic_orders.size(), 0); }

GroupElement ClassDatum::add(const GroupElement& a, const GroupElement& b) const {
    GroupElement out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] + b[i]) % group.cyclic_orders[i];
    return out;
}

GroupElement ClassDatum::scale(const GroupElement& a, std::uint64_t k) const {
    GroupElement out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::uint64_t d = group.cyclic_orders[i];
        out[i] = static_cast<std::uint64_t>(static_cast<unsigned __int128>(a[i] % d) * (k % d) % d);
    }
    return out;
}

GroupElement ClassDatum::negate(const GroupElement& a) const {
    GroupElement out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = (group.cyclic_orders[i] - a[i] % group.cyclic_orders[i]) % group.cyclic_orders[i];
    return out;
}

GrothendieckClass class_of(const ModuleShape& m, const ClassDatum& datum) {
    GrothendieckClass g;
    g.total = datum.zero();
    for (const auto& [c, u] : m.ranks)
        if (u > 0) g.free_rank[c] = u;
    for (const auto& [ideal, lam] : m.torsion) {
        if (lam.empty()) continue;
        const GroupElement term = datum.scale(datum.class_of_ideal(ideal), lam.size());
        auto [it, inserted] = g.torsion.try_emplace(ideal.component, datum.zero());
        it->second = datum.add(it->second, term);
        g.total = datum.add(g.total, term);
    }
    return g;
}

std::string dump_module_shape(const ModuleShape& m) {
    nlohmann::json j;
    j["ranks"] = nlohmann::json::object();
    for (const auto& [c, u] : m.ranks) j["ranks"][std::to_string(c)] = u;
    j["torsion"] = nlohmann::json::array();
    for (const auto& [ideal, lam] : m.torsion) {
        if (lam.empty()) continue;
        j["torsion"].push_back({{"ideal", ideal.id()}, {"parts", lam.parts}});
    }
    return j.dump();
}

ModuleShape parse_module_shape(const std::string& json_text, const std::vector<MaximalIdeal>& ideals) {
    const auto j = nlohmann::json::parse(json_text);
    ModuleShape m;
    if (j.contains("ranks"))
        for (const auto& [key, val] : j.at("ranks").items()) m.ranks[std::stoi(key)] = val.get<unsigned>();
    if (j.contains("torsion")) {
        for (const auto& entry : j.at("torsion")) {
            const auto id = entry.at("ideal").get<std::string>();
            auto it = std::find_if(ideals.begin(), ideals.end(), [&](const MaximalIdeal& x) { return x.id() == id; });
            if (it == ideals.end()) throw std::invalid_argument("unknown ideal " + id);
            m.torsion[*it] = merge(m.torsion[*it], Partition(entry.at("parts").get<std::vector<unsigned>>()));
        }
    }
    m.normalize();
    return m;
}

}  // namespace clm
