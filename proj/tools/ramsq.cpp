// ramsq: datasets and self-checks for squeezed light through random
// amplifying media.
//
//   ramsq coeffs --L-over-l 10 --L-over-La 2.5
//   ramsq fig4 --panel a --out fig4a.csv
//   ramsq snl-region --table boundary
//   ramsq validate --seed 42 --realizations 10000
//
// Exit codes: 0 success, 1 validation failure, 2 parameter error.

#include "ramsq/analytic.hpp"
#include "ramsq/datasets.hpp"
#include "ramsq/validation.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr const char* kToolVersion = "0.1.0";

using nlohmann::ordered_json;

std::string sha256_hex(const std::string& data) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 digest failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += kHex[digest[i] >> 4];
        out += kHex[digest[i] & 0xf];
    }
    return out;
}

ordered_json range_json(const ramsq::Range& r) {
    return {{"min", r.lo}, {"max", r.hi}, {"steps", r.steps}};
}

void add_range(CLI::App* cmd, const std::string& name, ramsq::Range& range,
               const std::string& what) {
    cmd->add_option("--" + name + "-min", range.lo, what + " grid start")->capture_default_str();
    cmd->add_option("--" + name + "-max", range.hi, what + " grid end")->capture_default_str();
    cmd->add_option("--" + name + "-steps", range.steps, what + " grid points")
        ->capture_default_str();
}

// Where and how a result is written.
struct Output {
    std::string out_path;
    std::string manifest_path;

    void attach(CLI::App* cmd) {
        cmd->add_option("--out", out_path, "Write the dataset here instead of stdout");
        cmd->add_option("--manifest", manifest_path,
                        "Manifest path (default: <out>.manifest.json when --out is given)");
    }
};

// Writes `body` and its manifest. `parameters` must hold every resolved
// input; the CSV comment carries the SHA-256 of that canonical record.
void emit(const Output& output, const std::string& command, const std::vector<std::string>& argv,
          ordered_json parameters, const std::string& body) {
    std::ofstream file;
    if (!output.out_path.empty()) {
        file.open(output.out_path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open " + output.out_path);
        file << body;
    } else {
        std::cout << body;
    }

    std::string manifest_path = output.manifest_path;
    if (manifest_path.empty() && !output.out_path.empty()) {
        manifest_path = output.out_path + ".manifest.json";
    }
    if (manifest_path.empty()) return;

    ordered_json manifest;
    manifest["tool"] = "ramsq";
    manifest["version"] = kToolVersion;
    manifest["command"] = command;
    manifest["argv"] = argv;
    manifest["parameters"] = std::move(parameters);
    manifest["parameters_sha256"] = sha256_hex(manifest["parameters"].dump());
    manifest["outputs"] = ordered_json::array(
        {{{"path", output.out_path.empty() ? "-" : output.out_path},
          {"sha256", sha256_hex(body)},
          {"bytes", body.size()}}});
    std::ofstream mf(manifest_path, std::ios::binary);
    if (!mf) throw std::runtime_error("cannot open " + manifest_path);
    mf << manifest.dump(2) << '\n';
}

std::string csv_with_manifest_comment(const std::string& command, const ordered_json& parameters,
                                      const ramsq::Table& table) {
    const std::string comment = std::string("ramsq ") + kToolVersion + " " + command +
                                " manifest-sha256=" + sha256_hex(parameters.dump());
    return ramsq::to_csv(table, comment);
}

ordered_json report_json(const ramsq::ValidationReport& report,
                         const ramsq::ValidationOptions& opts) {
    ordered_json j;
    j["status"] = ramsq::to_string(report.overall);
    j["seed"] = opts.seed;
    j["realizations"] = opts.realizations;
    j["channels"] = opts.channels;
    j["warnings"] = report.warnings;
    auto& checks = j["checks"] = ordered_json::array();
    for (const auto& c : report.checks) {
        ordered_json item;
        item["name"] = c.name;
        item["status"] = ramsq::to_string(c.status);
        item["metric"] = std::isfinite(c.metric) ? ordered_json(c.metric) : ordered_json("inf");
        item["threshold"] = c.threshold;
        item["unit"] = c.unit;
        if (c.unit == "sigma") item["margin_sigma"] = item["metric"];
        item["detail"] = c.detail;
        checks.push_back(std::move(item));
    }
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quadrature noise of squeezed light through random amplifying media"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);
    const std::vector<std::string> args(argv, argv + argc);

    // coeffs
    ramsq::MediumSpec coeff_spec{10.0, 0.0, 1};
    Output coeff_out;
    auto* coeffs = app.add_subcommand("coeffs", "Ensemble-mean T, R, V for one medium");
    coeffs->add_option("--L-over-l", coeff_spec.thickness_ratio, "L/l")->required();
    coeffs->add_option("--L-over-La", coeff_spec.gain_ratio, "L/La")->required();
    coeffs->add_option("--channels", coeff_spec.channels, "N")->capture_default_str();
    coeff_out.attach(coeffs);

    // fig2
    ramsq::Fig2Params fig2_params;
    Output fig2_out;
    auto* fig2 = app.add_subcommand("fig2", "Noise removed by shaping, T sinh 2r, on two grids");
    fig2->add_option("--panel", fig2_params.panel, "a, b or both")->capture_default_str();
    fig2->add_option("--L-over-l", fig2_params.thickness_a, "Panel a: fixed L/l")
        ->capture_default_str();
    fig2->add_option("--squeeze-r", fig2_params.squeeze_b, "Panel b: fixed r")
        ->capture_default_str();
    add_range(fig2, "r", fig2_params.squeeze, "r");
    add_range(fig2, "gain", fig2_params.gain, "L/La");
    add_range(fig2, "thickness", fig2_params.thickness, "L/l");
    fig2_out.attach(fig2);

    // fig3
    ramsq::Fig3Params fig3_params;
    Output fig3_out;
    auto* fig3 = app.add_subcommand("fig3", "Rescaled fluctuations vs r and L/La");
    fig3->add_option("--panel", fig3_params.panel, "a, b, c, d or all")->capture_default_str();
    fig3->add_option("--L-over-l", fig3_params.thickness_curves, "Curve family for panels a, d")
        ->delimiter(',')
        ->capture_default_str();
    fig3->add_option("--L-over-La", fig3_params.gain_curves, "Curve family for panel b")
        ->delimiter(',')
        ->capture_default_str();
    fig3->add_option("--squeeze-r", fig3_params.squeeze_curves, "Curve family for panel c")
        ->delimiter(',')
        ->capture_default_str();
    add_range(fig3, "r", fig3_params.squeeze, "r");
    add_range(fig3, "gain", fig3_params.gain, "L/La");
    fig3_out.attach(fig3);

    // fig4
    ramsq::Fig4Params fig4_params;
    Output fig4_out;
    auto* fig4 = app.add_subcommand("fig4", "x and p variances with and without shaping");
    fig4->add_option("--panel", fig4_params.panel, "a, b or both")->capture_default_str();
    fig4->add_option("--L-over-l", fig4_params.thickness, "Fixed L/l")->capture_default_str();
    fig4->add_option("--L-over-La", fig4_params.gain_a, "Panel a: fixed L/La")
        ->capture_default_str();
    fig4->add_option("--squeeze-r", fig4_params.squeeze_b, "Panel b: fixed r")
        ->capture_default_str();
    add_range(fig4, "r", fig4_params.squeeze, "r");
    add_range(fig4, "gain", fig4_params.gain, "L/La");
    fig4_out.attach(fig4);

    // figxr
    ramsq::FigXrParams xr_params;
    Output xr_out;
    auto* figxr = app.add_subcommand("figxr", "Amplifying vs linear media, vs r and L/l");
    figxr->add_option("--panel", xr_params.panel, "a, b or both")->capture_default_str();
    figxr->add_option("--L-over-La", xr_params.gain, "L/La of the amplifying medium")
        ->capture_default_str();
    figxr->add_option("--L-over-l", xr_params.thickness_a, "Panel a: fixed L/l")
        ->capture_default_str();
    figxr->add_option("--squeeze-r", xr_params.squeeze_b, "Panel b: fixed r")
        ->capture_default_str();
    add_range(figxr, "r", xr_params.squeeze, "r");
    add_range(figxr, "thickness", xr_params.thickness, "L/l");
    xr_out.attach(figxr);

    // snl-region
    ramsq::SnlRegionParams snl_params;
    std::string snl_preset = "large-squeezing";
    std::optional<double> snl_r;
    std::string snl_table = "matrix";
    Output snl_out;
    auto* snl = app.add_subcommand("snl-region", "Where the shaped x variance beats the SNL");
    snl->add_option("--preset", snl_preset, "large-squeezing (e^{-2r} = 1e-8) or coherent")
        ->check(CLI::IsMember({"large-squeezing", "coherent"}))
        ->capture_default_str();
    snl->add_option("--squeeze-r", snl_r, "Explicit r; overrides --preset");
    snl->add_option("--table", snl_table, "matrix or boundary")
        ->check(CLI::IsMember({"matrix", "boundary"}))
        ->capture_default_str();
    add_range(snl, "thickness", snl_params.thickness, "L/l");
    add_range(snl, "gain", snl_params.gain, "L/La");
    snl_out.attach(snl);

    // validate
    ramsq::ValidationOptions val_opts;
    std::string sampler = "both";
    std::string inject;
    Output val_out;
    auto* validate = app.add_subcommand("validate", "Identity suite and Monte Carlo oracle");
    validate->add_option("--seed", val_opts.seed, "RNG seed")->capture_default_str();
    validate->add_option("--realizations", val_opts.realizations, "Draws per grid point")
        ->capture_default_str();
    validate->add_option("--channels", val_opts.channels, "N")->capture_default_str();
    validate->add_option("--sampler", sampler, "mean, exponential or both")
        ->check(CLI::IsMember({"mean", "exponential", "both"}))
        ->capture_default_str();
    validate->add_option("--inject-fault", inject, "")
        ->check(CLI::IsMember({"flux"}))
        ->group("");
    val_out.attach(validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*coeffs) {
            ordered_json params{{"L_over_l", coeff_spec.thickness_ratio},
                                {"L_over_La", coeff_spec.gain_ratio},
                                {"channels", coeff_spec.channels}};
            const auto table = ramsq::coeffs_table(coeff_spec);
            emit(coeff_out, "coeffs", args, params,
                 csv_with_manifest_comment("coeffs", params, table));
        } else if (*fig2) {
            ordered_json params{{"panel", fig2_params.panel},
                                {"L_over_l_panel_a", fig2_params.thickness_a},
                                {"squeeze_r_panel_b", fig2_params.squeeze_b},
                                {"r", range_json(fig2_params.squeeze)},
                                {"L_over_La", range_json(fig2_params.gain)},
                                {"L_over_l", range_json(fig2_params.thickness)}};
            const auto table = ramsq::fig2_table(fig2_params);
            emit(fig2_out, "fig2", args, params, csv_with_manifest_comment("fig2", params, table));
        } else if (*fig3) {
            ordered_json params{{"panel", fig3_params.panel},
                                {"L_over_l_curves", fig3_params.thickness_curves},
                                {"L_over_La_curves", fig3_params.gain_curves},
                                {"squeeze_r_curves", fig3_params.squeeze_curves},
                                {"r", range_json(fig3_params.squeeze)},
                                {"L_over_La", range_json(fig3_params.gain)}};
            const auto table = ramsq::fig3_table(fig3_params);
            emit(fig3_out, "fig3", args, params, csv_with_manifest_comment("fig3", params, table));
        } else if (*fig4) {
            ordered_json params{{"panel", fig4_params.panel},
                                {"L_over_l", fig4_params.thickness},
                                {"L_over_La_panel_a", fig4_params.gain_a},
                                {"squeeze_r_panel_b", fig4_params.squeeze_b},
                                {"r", range_json(fig4_params.squeeze)},
                                {"L_over_La", range_json(fig4_params.gain)}};
            const auto table = ramsq::fig4_table(fig4_params);
            emit(fig4_out, "fig4", args, params, csv_with_manifest_comment("fig4", params, table));
        } else if (*figxr) {
            ordered_json params{{"panel", xr_params.panel},
                                {"L_over_La", xr_params.gain},
                                {"L_over_l_panel_a", xr_params.thickness_a},
                                {"squeeze_r_panel_b", xr_params.squeeze_b},
                                {"r", range_json(xr_params.squeeze)},
                                {"L_over_l", range_json(xr_params.thickness)}};
            const auto table = ramsq::figxr_table(xr_params);
            emit(xr_out, "figxr", args, params, csv_with_manifest_comment("figxr", params, table));
        } else if (*snl) {
            if (snl_r) {
                ramsq::validate_input({*snl_r, {}});
                snl_params.squeezed_var = std::exp(-2.0 * *snl_r);
                snl_preset = "custom";
            } else if (snl_preset == "coherent") {
                snl_params.squeezed_var = 1.0;
            }
            ordered_json params{{"preset", snl_preset},
                                {"squeezed_variance", snl_params.squeezed_var},
                                {"table", snl_table},
                                {"L_over_l", range_json(snl_params.thickness)},
                                {"L_over_La", range_json(snl_params.gain)}};
            const auto scan = ramsq::snl_region_scan(snl_params);
            for (const auto& note : scan.anomalies) std::cerr << "note: " << note << '\n';
            const auto table = snl_table == "matrix" ? ramsq::snl_matrix_table(scan)
                                                     : ramsq::snl_boundary_table(scan);
            emit(snl_out, "snl-region", args, params,
                 csv_with_manifest_comment("snl-region", params, table));
        } else if (*validate) {
            if (sampler == "mean") {
                val_opts.samplers = {ramsq::SamplerMode::MeanMagnitudes};
            } else if (sampler == "exponential") {
                val_opts.samplers = {ramsq::SamplerMode::ExponentialMagnitudes};
            }
            val_opts.corrupt_flux = inject == "flux";
            ramsq::validate_medium({2.0, 0.0, val_opts.channels});
            if (val_opts.realizations < 1) {
                throw ramsq::ParameterError(ramsq::ParameterError::Kind::DomainError,
                                            "DomainError: --realizations must be >= 1");
            }
            const auto report = ramsq::run_validation(val_opts);
            ordered_json params{{"seed", val_opts.seed},
                                {"realizations", val_opts.realizations},
                                {"channels", val_opts.channels},
                                {"sampler", sampler}};
            emit(val_out, "validate", args, params, report_json(report, val_opts).dump(2) + "\n");
            for (const auto& c : report.checks) {
                if (c.status == ramsq::CheckStatus::Fail) {
                    std::cerr << "validation failed: " << c.name << " (" << c.detail
                              << "), metric " << c.metric << " > " << c.threshold << '\n';
                }
            }
            return report.passed() ? 0 : 1;
        }
    } catch (const ramsq::ParameterError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
