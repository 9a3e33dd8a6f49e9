// Tabular datasets behind the CLI subcommands.
//
// Every builder returns a Table of preformatted cells. Numbers use the
// shortest decimal string that round-trips to the same double
// (std::to_chars), so identical parameters always produce identical bytes.

#pragma once

#include "ramsq/core.hpp"
#include "ramsq/snl.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace ramsq {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(std::string_view name) const;  // throws if absent
};

std::string format_double(double value);

/// Header row plus data rows, comma separated, "\n" line endings. Each line
/// of `comment` is emitted first, prefixed with "# ".
std::string to_csv(const Table& table, std::string_view comment = {});

/// Inverse of to_csv for the subset it emits (no quoting); comment lines skipped.
Table parse_csv(std::string_view text);

/// Evenly spaced values lo, ..., hi (steps >= 2), or {lo} when steps == 1.
struct Range {
    double lo = 0.0;
    double hi = 1.0;
    int steps = 2;

    std::vector<double> values() const;
};

// ---------------------------------------------------------------- coeffs

Table coeffs_table(const MediumSpec& spec);

// ---------------------------------------------------------------- fig2

struct Fig2Params {
    std::string panel = "both";  // a, b or both
    double thickness_a = 6.0;    // panel a: fixed L/l
    double squeeze_b = 1.5;      // panel b: fixed r
    Range squeeze{0.0, 2.0, 21};
    Range gain{0.0, 3.0, 31};
    Range thickness{2.0, 20.0, 19};
};

Table fig2_table(const Fig2Params& params);

// ---------------------------------------------------------------- fig3 / fig4

// Rescaled fluctuation curves. Panels a/b run over r, c/d over L/La; the
// fixed caption parameter of each panel is pinned and the curve family runs
// over the matching list.
//   a: L/La = 2.5, curves over thickness_curves
//   b: L/l = 10,   curves over gain_curves
//   c: L/l = 10,   curves over squeeze_curves
//   d: r = 1,      curves over thickness_curves
struct Fig3Params {
    std::string panel = "all";  // a, b, c, d or all
    std::vector<double> thickness_curves{5.0, 10.0, 20.0};
    std::vector<double> gain_curves{1.0, 2.0, 2.5};
    std::vector<double> squeeze_curves{0.5, 1.0, 1.5};
    Range squeeze{0.0, 2.0, 41};
    Range gain{0.0, 3.0, 31};
};

Table fig3_table(const Fig3Params& params);

// Absolute x/p variances. a: vs r at L/La = 2.5, L/l = 10.
// b: vs L/La at r = 0.7, L/l = 10.
struct Fig4Params {
    std::string panel = "both";
    double thickness = 10.0;
    double gain_a = 2.5;
    double squeeze_b = 0.7;
    Range squeeze{0.0, 2.0, 41};
    Range gain{0.0, 3.0, 31};
};

Table fig4_table(const Fig4Params& params);

// ---------------------------------------------------------------- figxr

// Amplifying vs linear media with and without shaping, plus the SNL.
// a: vs r at L/l = 2; b: vs L/l at r = 1. Amplifying series use L/La = 1.
struct FigXrParams {
    std::string panel = "both";
    double gain = 1.0;
    double thickness_a = 2.0;
    double squeeze_b = 1.0;
    Range squeeze{0.0, 2.0, 41};
    Range thickness{1.5, 20.0, 38};
};

Table figxr_table(const FigXrParams& params);

// ---------------------------------------------------------------- snl-region

inline constexpr double kLargeSqueezingVar = 1e-8;  // e^{-2r} for the large-squeezing preset

struct SnlRegionParams {
    double squeezed_var = kLargeSqueezingVar;
    Range thickness{1.2, 10.0, 45};
    Range gain{0.0, 3.1, 63};
};

RegionScan snl_region_scan(const SnlRegionParams& params);
Table snl_matrix_table(const RegionScan& scan);
Table snl_boundary_table(const RegionScan& scan);

}  // namespace ramsq
