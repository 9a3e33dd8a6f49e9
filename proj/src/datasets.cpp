#include "ramsq/datasets.hpp"

#include "ramsq/analytic.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ramsq {
namespace {

bool wants(const std::string& selected, const char* panel) {
    return selected == "both" || selected == "all" || selected == panel;
}

void check_panel(const std::string& selected, std::initializer_list<const char*> allowed) {
    if (selected == "both" || selected == "all") return;
    for (const char* p : allowed) {
        if (selected == p) return;
    }
    throw ParameterError(ParameterError::Kind::DomainError,
                         "DomainError: unknown panel '" + selected + "'");
}

const std::array<const char*, 5> kVarianceQuantities{"x_wfs", "x_nowfs", "p_wfs", "p_nowfs",
                                                     "coherent"};

std::array<double, 5> variance_row(const MediumSpec& spec, double r) {
    const auto rep = full_report(spec, {r, {}});
    return {rep.x_wfs, rep.x_nowfs, rep.p_wfs, rep.p_nowfs, rep.coherent_baseline};
}

}  // namespace

std::size_t Table::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw std::out_of_range("no column named " + std::string(name));
}

std::string format_double(double value) {
    if (value == 0.0) return "0";  // drop the sign of -0
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

std::string to_csv(const Table& table, std::string_view comment) {
    std::string out;
    std::size_t start = 0;
    while (start < comment.size()) {
        auto end = comment.find('\n', start);
        if (end == std::string_view::npos) end = comment.size();
        out += "# ";
        out += comment.substr(start, end - start);
        out += '\n';
        start = end + 1;
    }
    auto write_row = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    write_row(table.header);
    for (const auto& row : table.rows) write_row(row);
    return out;
}

Table parse_csv(std::string_view text) {
    Table table;
    bool have_header = false;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        const auto line = text.substr(start, end - start);
        start = end + 1;
        if (line.empty() || line.front() == '#') continue;
        std::vector<std::string> cells;
        std::size_t cs = 0;
        while (true) {
            const auto ce = line.find(',', cs);
            cells.emplace_back(line.substr(cs, ce == std::string_view::npos ? ce : ce - cs));
            if (ce == std::string_view::npos) break;
            cs = ce + 1;
        }
        if (!have_header) {
            table.header = std::move(cells);
            have_header = true;
        } else {
            table.rows.push_back(std::move(cells));
        }
    }
    return table;
}

std::vector<double> Range::values() const {
    if (steps < 1) {
        throw ParameterError(ParameterError::Kind::DomainError,
                             "DomainError: a grid needs at least one step");
    }
    if (steps == 1) return {lo};
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        out.push_back(i == steps - 1 ? hi : lo + (hi - lo) * i / (steps - 1));
    }
    return out;
}

Table coeffs_table(const MediumSpec& spec) {
    const auto coef = mean_coefficients(spec);
    Table t;
    t.header = {"L_over_l", "L_over_La", "T_bar", "R_bar", "V_bar", "constraint_residual"};
    t.rows.push_back({format_double(spec.thickness_ratio), format_double(spec.gain_ratio),
                      format_double(coef.t_bar), format_double(coef.r_bar),
                      format_double(coef.v_bar), format_double(coef.flux_residual())});
    return t;
}

Table fig2_table(const Fig2Params& params) {
    check_panel(params.panel, {"a", "b"});
    Table t;
    t.header = {"panel", "squeeze_r", "L_over_l", "L_over_La", "wfs_gain"};
    auto emit = [&t](const char* panel, double r, double k, double g) {
        const auto coef = mean_coefficients({k, g, 1});
        t.rows.push_back({panel, format_double(r), format_double(k), format_double(g),
                          format_double(wfs_gain(coef, {r, {}}))});
    };
    if (wants(params.panel, "a")) {
        for (double r : params.squeeze.values())
            for (double g : params.gain.values()) emit("a", r, params.thickness_a, g);
    }
    if (wants(params.panel, "b")) {
        for (double k : params.thickness.values())
            for (double g : params.gain.values()) emit("b", params.squeeze_b, k, g);
    }
    return t;
}

Table fig3_table(const Fig3Params& params) {
    check_panel(params.panel, {"a", "b", "c", "d"});
    Table t;
    t.header = {"panel", "L_over_l", "L_over_La", "squeeze_r", "x_param", "value", "quantity"};
    auto emit = [&t](const char* panel, double k, double g, double r, double x) {
        const auto coef = mean_coefficients({k, g, 1});
        const InputState in{r, {}};
        const std::array<std::pair<const char*, double>, 3> values{{
            {"ratio_wfs", rescaled_fluctuation(coef, in, Shaping::Shaped)},
            {"ratio_nowfs", rescaled_fluctuation(coef, in, Shaping::Unshaped)},
            {"coherent", 1.0},
        }};
        for (const auto& [name, v] : values) {
            t.rows.push_back({panel, format_double(k), format_double(g), format_double(r),
                              format_double(x), format_double(v), name});
        }
    };
    if (wants(params.panel, "a")) {
        for (double k : params.thickness_curves)
            for (double r : params.squeeze.values()) emit("a", k, 2.5, r, r);
    }
    if (wants(params.panel, "b")) {
        for (double g : params.gain_curves)
            for (double r : params.squeeze.values()) emit("b", 10.0, g, r, r);
    }
    if (wants(params.panel, "c")) {
        for (double r : params.squeeze_curves)
            for (double g : params.gain.values()) emit("c", 10.0, g, r, g);
    }
    if (wants(params.panel, "d")) {
        for (double k : params.thickness_curves)
            for (double g : params.gain.values()) emit("d", k, g, 1.0, g);
    }
    return t;
}

Table fig4_table(const Fig4Params& params) {
    check_panel(params.panel, {"a", "b"});
    Table t;
    t.header = {"panel", "L_over_l", "L_over_La", "squeeze_r", "x_param", "value", "quantity"};
    auto emit = [&t](const char* panel, double k, double g, double r, double x) {
        const auto values = variance_row({k, g, 1}, r);
        for (std::size_t i = 0; i < values.size(); ++i) {
            t.rows.push_back({panel, format_double(k), format_double(g), format_double(r),
                              format_double(x), format_double(values[i]),
                              kVarianceQuantities[i]});
        }
    };
    if (wants(params.panel, "a")) {
        for (double r : params.squeeze.values()) emit("a", params.thickness, params.gain_a, r, r);
    }
    if (wants(params.panel, "b")) {
        for (double g : params.gain.values())
            emit("b", params.thickness, g, params.squeeze_b, g);
    }
    return t;
}

Table figxr_table(const FigXrParams& params) {
    check_panel(params.panel, {"a", "b"});
    Table t;
    t.header = {"panel", "x_param", "value", "series"};
    auto emit = [&t, &params](const char* panel, double k, double r, double x) {
        const auto amp = full_report({k, params.gain, 1}, {r, {}});
        const auto lin = full_report({k, 0.0, 1}, {r, {}});
        const std::array<std::pair<const char*, double>, 5> values{{
            {"amp_nowfs", amp.x_nowfs},
            {"amp_wfs", amp.x_wfs},
            {"lin_nowfs", lin.x_nowfs},
            {"lin_wfs", lin.x_wfs},
            {"snl", kShotNoiseLevel},
        }};
        for (const auto& [name, v] : values) {
            t.rows.push_back({panel, format_double(x), format_double(v), name});
        }
    };
    if (wants(params.panel, "a")) {
        for (double r : params.squeeze.values()) emit("a", params.thickness_a, r, r);
    }
    if (wants(params.panel, "b")) {
        for (double k : params.thickness.values()) emit("b", k, params.squeeze_b, k);
    }
    return t;
}

RegionScan snl_region_scan(const SnlRegionParams& params) {
    const auto thickness = params.thickness.values();
    const auto gain = params.gain.values();
    return region_scan_var(thickness, gain, params.squeezed_var);
}

Table snl_matrix_table(const RegionScan& scan) {
    Table t;
    t.header = {"L_over_l", "L_over_La", "below_snl", "x_wfs"};
    const double loss = 1.0 - scan.squeezed_var;
    for (std::size_t i = 0; i < scan.thickness_grid.size(); ++i) {
        const double k = scan.thickness_grid[i];
        for (std::size_t j = 0; j < scan.gain_grid.size(); ++j) {
            const double g = scan.gain_grid[j];
            const auto coef = mean_coefficients({k, g, 1});
            const double x_wfs = coef.coherent_baseline() - coef.t_bar * loss;
            t.rows.push_back({format_double(k), format_double(g),
                              scan.below_snl[i][j] ? "1" : "0", format_double(x_wfs)});
        }
    }
    return t;
}

Table snl_boundary_table(const RegionScan& scan) {
    Table t;
    t.header = {"L_over_l", "gain_boundary", "fixed_point_gain", "sign_changes"};
    for (const auto& p : scan.boundary) {
        t.rows.push_back({format_double(p.thickness_ratio),
                          p.gain ? format_double(*p.gain) : std::string{},
                          p.fixed_point_gain ? format_double(*p.fixed_point_gain) : std::string{},
                          std::to_string(p.sign_changes)});
    }
    return t;
}

}  // namespace ramsq
