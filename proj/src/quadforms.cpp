#include "clm/quadforms.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "clm/arith.hpp"

namespace clm {

namespace {

constexpr std::int64_t kMaxIndefinite = 100'000'000;

using Factors = std::vector<std::pair<std::uint32_t, unsigned>>;

bool squarefree_odd_part_ok(std::uint64_t m, const arith::FactorTable* table, bool need_one_mod_four) {
    if (table != nullptr && m <= table->limit()) {
        Factors f;
        table->factor(static_cast<std::uint32_t>(m), f);
        for (const auto& [p, e] : f) {
            if (e > 1) return false;
            if (need_one_mod_four && p != 2 && p % 4 != 1) return false;
        }
        return true;
    }
    for (const auto& [p, e] : arith::factorize(m)) {
        if (e > 1) return false;
        if (need_one_mod_four && p != 2 && p % 4 != 1) return false;
    }
    return true;
}

bool fundamental_with(std::int64_t d, const arith::FactorTable* table, bool two_squares) {
    if (d == 0 || d == 1) return false;
    if (two_squares && d < 0) return false;
    const std::uint64_t ad = d < 0 ? static_cast<std::uint64_t>(-d) : static_cast<std::uint64_t>(d);
    const std::int64_t r4 = ((d % 4) + 4) % 4;
    if (r4 == 1) return squarefree_odd_part_ok(ad, table, two_squares);
    if (r4 != 0) return false;
    const std::int64_t m = d / 4;
    const std::int64_t m4 = ((m % 4) + 4) % 4;
    if (m4 != 2 && m4 != 3) return false;
    if (two_squares && m4 == 3) return false;
    return squarefree_odd_part_ok(ad / 4, table, two_squares);
}

void require_fundamental(std::int64_t d) {
    if (!is_fundamental_discriminant(d))
        throw std::invalid_argument(std::to_string(d) + " is not a fundamental discriminant");
}

std::vector<QuadForm> reduced_indefinite_impl(std::int64_t d, const arith::FactorTable* table) {
    const auto s = static_cast<std::int64_t>(arith::isqrt(static_cast<std::uint64_t>(d)));
    std::vector<QuadForm> out;
    Factors f;
    std::vector<std::int64_t> divs;
    for (std::int64_t b = (d % 2 == 0) ? 2 : 1; b <= s; b += 2) {
        const std::int64_t n = (d - b * b) / 4;
        const std::int64_t amin = (s - b + 2) / 2;  // ceil((s - b + 1) / 2)
        const std::int64_t amax = (s + b) / 2;
        divs.assign(1, 1);
        if (table != nullptr && static_cast<std::uint64_t>(n) <= table->limit()) {
            table->factor(static_cast<std::uint32_t>(n), f);
        } else {
            f.clear();
            for (const auto& [p, e] : arith::factorize(static_cast<std::uint64_t>(n)))
                f.emplace_back(static_cast<std::uint32_t>(p), e);
        }
        for (const auto& [p, e] : f) {
            const std::size_t base = divs.size();
            std::int64_t pk = 1;
            for (unsigned k = 1; k <= e; ++k) {
                pk *= p;
                for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
            }
        }
        for (std::int64_t a : divs) {
            if (a < amin || a > amax) continue;
            out.push_back({a, b, -n / a});
            out.push_back({-a, b, n / a});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t cycles_impl(std::int64_t d, const arith::FactorTable* table) {
    const auto forms = reduced_indefinite_impl(d, table);
    std::vector<bool> seen(forms.size(), false);
    std::uint64_t cycles = 0;
    for (std::size_t i = 0; i < forms.size(); ++i) {
        if (seen[i]) continue;
        ++cycles;
        std::size_t j = i;
        while (!seen[j]) {
            seen[j] = true;
            const QuadForm next = rho(forms[j], d);
            auto it = std::lower_bound(forms.begin(), forms.end(), next);
            if (it == forms.end() || !(*it == next)) throw std::logic_error("rho left the set of reduced forms");
            j = static_cast<std::size_t>(it - forms.begin());
        }
    }
    return cycles;
}

FormClassRow row_impl(std::int64_t d, const arith::FactorTable* table) {
    FormClassRow r;
    r.d = d;
    r.h_narrow = cycles_impl(d, table);
    r.unit_norm = fundamental_unit_norm(d);
    if (r.unit_norm == -1) {
        r.h_ordinary = r.h_narrow;
    } else {
        if (r.h_narrow % 2 != 0) throw std::logic_error("odd narrow class number with a unit of norm +1");
        r.h_ordinary = r.h_narrow / 2;
    }
    return r;
}

}  // namespace

bool is_fundamental_discriminant(std::int64_t d) { return fundamental_with(d, nullptr, false); }

bool is_sum_of_two_squares_discriminant(std::int64_t d) { return fundamental_with(d, nullptr, true); }

std::vector<QuadForm> reduced_definite_forms(std::int64_t d) {
    require_fundamental(d);
    if (d >= 0) throw std::invalid_argument("definite forms need d < 0");
    if (d < -10'000'000) throw std::invalid_argument("|d| exceeds 10^7");
    std::vector<QuadForm> out;
    const std::int64_t ad = -d;
    for (std::int64_t a = 1; 3 * a * a <= ad; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            if (((b - d) % 2 + 2) % 2 != 0) continue;
            const std::int64_t num = b * b - d;
            if (num % (4 * a) != 0) continue;
            const std::int64_t c = num / (4 * a);
            if (c < a) continue;
            if (c == a && b < 0) continue;
            out.push_back({a, b, c});
        }
    }
    return out;
}

std::uint64_t class_number_definite(std::int64_t d) { return reduced_definite_forms(d).size(); }

std::vector<QuadForm> reduced_indefinite_forms(std::int64_t d) {
    require_fundamental(d);
    if (d <= 0) throw std::invalid_argument("indefinite forms need d > 0");
    if (d > kMaxIndefinite) throw std::invalid_argument("d exceeds the indefinite cap");
    return reduced_indefinite_impl(d, nullptr);
}

QuadForm rho(const QuadForm& f, std::int64_t d) {
    const auto s = static_cast<std::int64_t>(arith::isqrt(static_cast<std::uint64_t>(d)));
    const std::int64_t two_c = 2 * std::llabs(f.c);
    const std::int64_t b = s - (((s + f.b) % two_c) + two_c) % two_c;
    return {f.c, b, (b * b - d) / (4 * f.c)};
}

std::uint64_t narrow_class_number_indefinite(std::int64_t d) {
    require_fundamental(d);
    if (d <= 0) throw std::invalid_argument("indefinite forms need d > 0");
    if (d > kMaxIndefinite) throw std::invalid_argument("d exceeds the indefinite cap");
    return cycles_impl(d, nullptr);
}

int fundamental_unit_norm(std::int64_t d) {
    if (d <= 0) throw std::invalid_argument("unit norm needs d > 0");
    const std::int64_t m = d % 4 == 0 ? d / 4 : d;
    const auto a0 = static_cast<std::int64_t>(arith::isqrt(static_cast<std::uint64_t>(m)));
    if (a0 * a0 == m) throw std::invalid_argument("square radicand");
    std::int64_t mk = 0, dk = 1, ak = a0;
    std::uint64_t period = 0;
    do {
        mk = dk * ak - mk;
        dk = (m - mk * mk) / dk;
        ak = (a0 + mk) / dk;
        ++period;
    } while (ak != 2 * a0);
    return period % 2 == 1 ? -1 : 1;
}

FormClassRow ordinary_class_number(std::int64_t d) {
    require_fundamental(d);
    if (d <= 0) throw std::invalid_argument("ordinary_class_number needs d > 0");
    if (d > kMaxIndefinite) throw std::invalid_argument("d exceeds the indefinite cap");
    return row_impl(d, nullptr);
}

void FormClassTable::add_range(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) return;
    ranges.emplace_back(lo, hi);
    std::sort(ranges.begin(), ranges.end());
    std::vector<std::pair<std::int64_t, std::int64_t>> merged;
    for (const auto& r : ranges) {
        if (!merged.empty() && r.first <= merged.back().second + 1)
            merged.back().second = std::max(merged.back().second, r.second);
        else
            merged.push_back(r);
    }
    ranges = std::move(merged);
}

bool FormClassTable::covers(std::int64_t d) const {
    return std::any_of(ranges.begin(), ranges.end(), [d](const auto& r) { return r.first <= d && d <= r.second; });
}

const FormClassRow& FormClassTable::at(std::int64_t d) const {
    if (!covers(d)) throw std::out_of_range("class-number table does not cover d = " + std::to_string(d));
    auto it = rows.find(d);
    if (it == rows.end()) throw std::out_of_range("no class-number row for d = " + std::to_string(d));
    return it->second;
}

namespace {

bool passes(std::int64_t d, TableFilter filter, const arith::FactorTable& table) {
    return fundamental_with(d, &table, filter == TableFilter::sum_of_two_squares);
}

void check_build_range(std::int64_t& d0, std::int64_t d1) {
    d0 = std::max<std::int64_t>(d0, 1);
    if (d1 > kMaxIndefinite) throw std::invalid_argument("d exceeds the indefinite cap");
}

}  // namespace

FormClassTable build_table_serial(std::int64_t d0, std::int64_t d1, TableFilter filter) {
    check_build_range(d0, d1);
    FormClassTable t;
    t.filter = filter;
    if (d1 < d0) return t;
    const arith::FactorTable table(static_cast<std::uint32_t>(d1));
    for (std::int64_t d = d0; d <= d1; ++d)
        if (passes(d, filter, table)) t.rows.emplace(d, row_impl(d, &table));
    t.add_range(d0, d1);
    return t;
}

FormClassTable build_table(std::int64_t d0, std::int64_t d1, TableFilter filter) {
    check_build_range(d0, d1);
    FormClassTable t;
    t.filter = filter;
    if (d1 < d0) return t;
    const arith::FactorTable table(static_cast<std::uint32_t>(d1));
    constexpr std::int64_t kBlock = 2048;
    const std::int64_t blocks = (d1 - d0) / kBlock + 1;
    std::vector<std::vector<FormClassRow>> parts(static_cast<std::size_t>(blocks));
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t blk = 0; blk < blocks; ++blk) {
        const std::int64_t lo = d0 + blk * kBlock;
        const std::int64_t hi = std::min(d1, lo + kBlock - 1);
        auto& out = parts[static_cast<std::size_t>(blk)];
        for (std::int64_t d = lo; d <= hi; ++d)
            if (passes(d, filter, table)) out.push_back(row_impl(d, &table));
    }
    for (const auto& part : parts)
        for (const auto& r : part) t.rows.emplace(r.d, r);
    t.add_range(d0, d1);
    return t;
}

namespace {

const char* filter_name(TableFilter f) { return f == TableFilter::fundamental ? "fundamental" : "sum-of-two-squares"; }

TableFilter parse_filter(const std::string& s) {
    if (s == "fundamental") return TableFilter::fundamental;
    if (s == "sum-of-two-squares") return TableFilter::sum_of_two_squares;
    throw std::invalid_argument("unknown table filter " + s);
}

void write_rows(std::ostream& os, const std::vector<FormClassRow>& rows) {
    for (const auto& r : rows) os << r.d << ',' << r.h_narrow << ',' << r.h_ordinary << ',' << r.unit_norm << '\n';
}

void insert_row(FormClassTable& t, const FormClassRow& r) {
    auto [it, inserted] = t.rows.emplace(r.d, r);
    if (!inserted && !(it->second == r))
        throw std::runtime_error("inconsistent rows for d = " + std::to_string(r.d));
}

}  // namespace

void save_table(const FormClassTable& table, const std::string& path) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp);
        if (!os) throw std::runtime_error("cannot write " + tmp);
        os << "#clm-forms," << filter_name(table.filter) << '\n';
        std::vector<FormClassRow> rows;
        for (const auto& [d, r] : table.rows) rows.push_back(r);
        write_rows(os, rows);
        for (const auto& [lo, hi] : table.ranges) os << "#covered," << lo << ',' << hi << '\n';
        if (!os) throw std::runtime_error("write failed for " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

FormClassTable load_table(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read " + path);
    FormClassTable t;
    std::string line;
    if (!std::getline(is, line) || line.rfind("#clm-forms,", 0) != 0)
        throw std::runtime_error(path + " is not a class-number cache");
    t.filter = parse_filter(line.substr(11));
    std::vector<FormClassRow> pending;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line.rfind("#covered,", 0) == 0) {
            std::int64_t lo = 0, hi = 0;
            char comma = 0;
            std::istringstream ls(line.substr(9));
            if (!(ls >> lo >> comma >> hi)) throw std::runtime_error("bad coverage line in " + path);
            for (const auto& r : pending) insert_row(t, r);
            pending.clear();
            t.add_range(lo, hi);
            continue;
        }
        if (line[0] == '#') continue;
        FormClassRow r;
        std::istringstream ls(line);
        char c1 = 0, c2 = 0, c3 = 0;
        if (!(ls >> r.d >> c1 >> r.h_narrow >> c2 >> r.h_ordinary >> c3 >> r.unit_norm) || c1 != ',' || c2 != ',' ||
            c3 != ',')
            break;  // a torn final line
        pending.push_back(r);
    }
    return t;
}

FormClassTable extend_cache(const std::string& path, std::int64_t d0, std::int64_t d1, TableFilter filter,
                            std::int64_t block) {
    FormClassTable t;
    t.filter = filter;
    if (const auto parent = std::filesystem::path(path).parent_path(); !parent.empty())
        std::filesystem::create_directories(parent);
    if (std::filesystem::exists(path)) {
        t = load_table(path);
        if (t.filter != filter && t.filter != TableFilter::fundamental)
            throw std::runtime_error("cache " + path + " was built with a different filter");
        // Rewrite without any torn tail before appending.
        save_table(t, path);
    } else {
        save_table(t, path);
    }
    d0 = std::max<std::int64_t>(d0, 1);
    for (std::int64_t lo = d0; lo <= d1; lo += block) {
        const std::int64_t hi = std::min(d1, lo + block - 1);
        bool covered = true;
        for (std::int64_t d = lo; d <= hi && covered; ++d) covered = t.covers(d);
        if (covered) continue;
        const FormClassTable part = build_table(lo, hi, t.filter);
        std::vector<FormClassRow> fresh;
        for (const auto& [d, r] : part.rows)
            if (!t.rows.contains(d)) fresh.push_back(r);
        std::ofstream os(path, std::ios::app);
        write_rows(os, fresh);
        os << "#covered," << lo << ',' << hi << '\n';
        os.flush();
        if (!os) throw std::runtime_error("append failed for " + path);
        for (const auto& r : fresh) t.rows.emplace(r.d, r);
        t.add_range(lo, hi);
    }
    return t;
}

VerifyReport verify_table(const FormClassTable& table, double fraction, std::uint64_t seed) {
    VerifyReport rep;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<const FormClassRow*> chosen;
    for (const auto& [d, r] : table.rows)
        if (unif(rng) < fraction) chosen.push_back(&r);
    if (chosen.empty() && !table.rows.empty()) chosen.push_back(&table.rows.begin()->second);
    for (const auto* r : chosen) {
        ++rep.checked;
        bool ok = false;
        try {
            ok = ordinary_class_number(r->d) == *r;
        } catch (const std::exception&) {
            ok = false;
        }
        if (!ok) rep.mismatched.push_back(r->d);
    }
    return rep;
}

FormClassTable merge_tables(const FormClassTable& a, const FormClassTable& b) {
    if (a.filter != b.filter) throw std::runtime_error("cannot merge caches built with different filters");
    FormClassTable out = a;
    for (const auto& [d, r] : b.rows) insert_row(out, r);
    for (const auto& [lo, hi] : b.ranges) out.add_range(lo, hi);
    return out;
}

}  // namespace clm
