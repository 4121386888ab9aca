#pragma once

// Class numbers of quadratic fields from reduced binary quadratic forms, and a
// line-oriented CSV cache of (d, h_narrow, h_ordinary, unit_norm).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace clm {

struct QuadForm {
    std::int64_t a = 0, b = 0, c = 0;
    std::int64_t discriminant() const { return b * b - 4 * a * c; }
    auto operator<=>(const QuadForm&) const = default;
};

bool is_fundamental_discriminant(std::int64_t d);

/// Positive fundamental d all of whose odd prime factors are 1 mod 4 (d = d' or 8d').
bool is_sum_of_two_squares_discriminant(std::int64_t d);

/// Reduced positive definite forms of discriminant d < 0.
std::vector<QuadForm> reduced_definite_forms(std::int64_t d);
std::uint64_t class_number_definite(std::int64_t d);

/// Reduced indefinite forms: 0 < b < sqrt d and sqrt d - b < 2|a| < sqrt d + b.
std::vector<QuadForm> reduced_indefinite_forms(std::int64_t d);
/// One reduction step along a cycle of reduced indefinite forms.
QuadForm rho(const QuadForm& f, std::int64_t d);
/// Number of cycles of reduced forms.
std::uint64_t narrow_class_number_indefinite(std::int64_t d);

/// Norm of the fundamental unit (-1 iff the continued fraction of sqrt m has odd period,
/// m = d for d = 1 mod 4 and m = d/4 otherwise).
int fundamental_unit_norm(std::int64_t d);

struct FormClassRow {
    std::int64_t d = 0;
    std::uint64_t h_narrow = 0;
    std::uint64_t h_ordinary = 0;
    int unit_norm = 0;
    bool operator==(const FormClassRow&) const = default;
};

/// h from h_narrow and the unit norm, for d > 0.
FormClassRow ordinary_class_number(std::int64_t d);

enum class TableFilter { fundamental, sum_of_two_squares };

struct FormClassTable {
    std::map<std::int64_t, FormClassRow> rows;
    /// Disjoint sorted ranges [lo, hi]; every d in them passing the filter is present.
    std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
    TableFilter filter = TableFilter::fundamental;

    void add_range(std::int64_t lo, std::int64_t hi);

    bool covers(std::int64_t d) const;
    /// Throws std::out_of_range on a gap (d not covered).
    const FormClassRow& at(std::int64_t d) const;
};

/// Rows for fundamental 0 < d in [d0, d1] (optionally only sum-of-two-squares d).
/// OpenMP over blocks of d; the serial reference computes the same table.
FormClassTable build_table(std::int64_t d0, std::int64_t d1, TableFilter filter = TableFilter::fundamental);
FormClassTable build_table_serial(std::int64_t d0, std::int64_t d1, TableFilter filter = TableFilter::fundamental);

/// CSV: "#clm-forms,<filter>" header, then "d,h_narrow,h_ordinary,unit_norm" rows with a
/// "#covered,<lo>,<hi>" line after each completed block. Rows after the last marker are ignored.
void save_table(const FormClassTable& table, const std::string& path);
FormClassTable load_table(const std::string& path);

/// Extends a cache file to cover [d0, d1], appending blocks so an interrupted run resumes.
FormClassTable extend_cache(const std::string& path, std::int64_t d0, std::int64_t d1, TableFilter filter,
                            std::int64_t block = 20000);

struct VerifyReport {
    std::size_t checked = 0;
    std::vector<std::int64_t> mismatched;
    bool ok() const { return mismatched.empty(); }
};

/// Recomputes a seeded random fraction of the rows.
VerifyReport verify_table(const FormClassTable& table, double fraction, std::uint64_t seed);

/// Union of two tables; throws on inconsistent overlapping rows or different filters.
FormClassTable merge_tables(const FormClassTable& a, const FormClassTable& b);

}  // namespace clm
