// mafr: basis-expansion functional PCA with smoothness-ordered factor
// rotation. Subcommands cover the pipeline stages: simulate, fit, fpca,
// rotate, and pipeline (everything end to end).

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mafr/csv.hpp"
#include "mafr/errors.hpp"
#include "mafr/fpca.hpp"
#include "mafr/ldo.hpp"
#include "mafr/rotation.hpp"
#include "mafr/simulate.hpp"
#include "mafr/smoothing.hpp"
#include "mafr/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunConfig {
    // input: exactly one of these drives the run
    std::string input_csv;
    bool use_simulation = false;
    mafr::SimulationSpec sim;
    std::size_t sim_grid_points = 101;

    std::string csv_format = "auto";
    std::optional<json> basis_spec; // required for CSV input

    bool center = true;
    std::string retain = "0.99";
    std::string penalty = "d2";
    std::string fit_penalty = "d2";
    double lambda = 0.0;
    std::string ordering = "smooth-first";
    std::vector<double> weights;

    std::string out_dir = "mafr_out";
    std::size_t quad_points = 501;
    std::size_t eval_grid = 101;
};

json config_to_json(const RunConfig& cfg) {
    json j;
    if (!cfg.input_csv.empty()) j["input_csv"] = cfg.input_csv;
    if (cfg.use_simulation) {
        j["simulate"] = {
            {"num_curves", cfg.sim.num_curves},
            {"num_basis", cfg.sim.num_basis},
            {"scale_decay", cfg.sim.scale_decay},
            {"scale_interpretation",
             cfg.sim.scale_interpretation == mafr::ScaleInterpretation::StdDev ? "stddev"
                                                                               : "variance"},
            {"seed", cfg.sim.seed},
            {"grid_points", cfg.sim_grid_points},
        };
    }
    j["format"] = cfg.csv_format;
    if (cfg.basis_spec) j["basis"] = *cfg.basis_spec;
    j["center"] = cfg.center;
    j["retain"] = cfg.retain;
    j["penalty"] = cfg.penalty;
    j["fit_penalty"] = cfg.fit_penalty;
    j["lambda"] = cfg.lambda;
    j["ordering"] = cfg.ordering;
    if (!cfg.weights.empty()) j["weights"] = cfg.weights;
    j["out_dir"] = cfg.out_dir;
    j["quad_points"] = cfg.quad_points;
    j["eval_grid"] = cfg.eval_grid;
    return j;
}

void config_from_json(const json& j, RunConfig& cfg) {
    if (j.contains("input_csv")) cfg.input_csv = j["input_csv"].get<std::string>();
    if (j.contains("simulate")) {
        cfg.use_simulation = true;
        const json& s = j["simulate"];
        if (s.contains("num_curves")) cfg.sim.num_curves = s["num_curves"].get<std::size_t>();
        if (s.contains("num_basis")) cfg.sim.num_basis = s["num_basis"].get<std::size_t>();
        if (s.contains("scale_decay")) cfg.sim.scale_decay = s["scale_decay"].get<double>();
        if (s.contains("scale_interpretation")) {
            const auto v = s["scale_interpretation"].get<std::string>();
            if (v == "stddev") {
                cfg.sim.scale_interpretation = mafr::ScaleInterpretation::StdDev;
            } else if (v == "variance") {
                cfg.sim.scale_interpretation = mafr::ScaleInterpretation::Variance;
            } else {
                throw mafr::ParameterError("config: unknown scale interpretation '" + v + "'");
            }
        }
        if (s.contains("seed")) cfg.sim.seed = s["seed"].get<std::uint64_t>();
        if (s.contains("grid_points")) cfg.sim_grid_points = s["grid_points"].get<std::size_t>();
    }
    if (j.contains("format")) cfg.csv_format = j["format"].get<std::string>();
    if (j.contains("basis")) cfg.basis_spec = j["basis"];
    if (j.contains("center")) cfg.center = j["center"].get<bool>();
    if (j.contains("retain")) {
        cfg.retain = j["retain"].is_string() ? j["retain"].get<std::string>()
                                             : j["retain"].dump();
    }
    if (j.contains("penalty")) cfg.penalty = j["penalty"].get<std::string>();
    if (j.contains("fit_penalty")) cfg.fit_penalty = j["fit_penalty"].get<std::string>();
    if (j.contains("lambda")) cfg.lambda = j["lambda"].get<double>();
    if (j.contains("ordering")) cfg.ordering = j["ordering"].get<std::string>();
    if (j.contains("weights")) cfg.weights = j["weights"].get<std::vector<double>>();
    if (j.contains("out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();
    if (j.contains("quad_points")) cfg.quad_points = j["quad_points"].get<std::size_t>();
    if (j.contains("eval_grid")) cfg.eval_grid = j["eval_grid"].get<std::size_t>();
}

mafr::CsvFormat parse_format(const std::string& s) {
    if (s == "auto") return mafr::CsvFormat::Auto;
    if (s == "long") return mafr::CsvFormat::Long;
    if (s == "wide") return mafr::CsvFormat::Wide;
    throw mafr::ParameterError("cli: unknown CSV format '" + s + "'");
}

mafr::BasisSystem parse_basis(const json& spec) {
    if (!spec.contains("kind")) throw mafr::ParameterError("basis spec: missing 'kind'");
    const auto kind = spec["kind"].get<std::string>();
    if (!spec.contains("interval") || !spec["interval"].is_array() ||
        spec["interval"].size() != 2) {
        throw mafr::ParameterError("basis spec: 'interval' must be [lo, hi]");
    }
    const mafr::Interval iv(spec["interval"][0].get<double>(), spec["interval"][1].get<double>());
    if (kind == "fourier") {
        if (!spec.contains("size")) throw mafr::ParameterError("basis spec: fourier needs 'size'");
        const double period = spec.value("period", 0.0);
        mafr::BasisSystem b = mafr::fourier_basis(iv, spec["size"].get<std::size_t>(), period);
        if (spec.value("orthonormal", false)) b = mafr::orthonormalized(b);
        return b;
    }
    if (kind == "bspline") {
        if (!spec.contains("num_basis")) {
            throw mafr::ParameterError("basis spec: bspline needs 'num_basis'");
        }
        return mafr::bspline_basis(iv, spec.value("order", std::size_t{4}),
                                   spec["num_basis"].get<std::size_t>());
    }
    throw mafr::ParameterError("basis spec: unknown kind '" + kind + "'");
}

mafr::LinearDifferentialOperator parse_penalty(const std::string& s) {
    using LDO = mafr::LinearDifferentialOperator;
    if (s == "d1") return LDO::first_derivative();
    if (s == "d2") return LDO::second_derivative();
    if (s.rfind("harmonic:", 0) == 0) {
        return LDO::harmonic_acceleration(std::stod(s.substr(9)));
    }
    if (s.rfind("custom:", 0) == 0) {
        const json j = json::parse(s.substr(7));
        const auto order = j.at("order").get<std::size_t>();
        const auto coefs = j.at("coefficients").get<std::vector<double>>();
        if (coefs.size() != order) {
            throw mafr::ParameterError(
                "cli: custom penalty needs one coefficient per order below the leading one");
        }
        std::vector<LDO::Coefficient> cs(coefs.begin(), coefs.end());
        return LDO(order, std::move(cs));
    }
    throw mafr::ParameterError("cli: unknown penalty '" + s +
                               "' (expected d1 | d2 | harmonic:<period> | custom:<json>)");
}

mafr::RetainSpec parse_retain(const std::string& s) {
    const bool fractional = s.find('.') != std::string::npos ||
                            s.find('e') != std::string::npos ||
                            s.find('E') != std::string::npos;
    try {
        if (fractional) return mafr::RetainSpec::fraction(std::stod(s));
        return mafr::RetainSpec::count(static_cast<std::size_t>(std::stoull(s)));
    } catch (const std::logic_error&) {
        throw mafr::ParameterError("cli: cannot parse retention '" + s + "'");
    }
}

std::vector<double> uniform_grid(const mafr::Interval& iv, std::size_t n) {
    std::vector<double> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        pts[i] = iv.lo + iv.length() * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    pts.back() = iv.hi;
    return pts;
}

std::vector<std::string> numbered(const std::string& prefix, std::size_t n) {
    std::vector<std::string> names(n);
    for (std::size_t i = 0; i < n; ++i) names[i] = prefix + std::to_string(i + 1);
    return names;
}

class BundleWriter {
public:
    explicit BundleWriter(const fs::path& dir) : dir_(dir) { fs::create_directories(dir); }

    std::ofstream open(const std::string& name) {
        files_.push_back(name);
        std::ofstream out(dir_ / name);
        if (!out) throw mafr::Error("cli: cannot write " + (dir_ / name).string());
        return out;
    }

    const std::vector<std::string>& files() const { return files_; }

private:
    fs::path dir_;
    std::vector<std::string> files_;
};

void write_manifest(BundleWriter& bundle, const std::string& command, const RunConfig& cfg) {
    json manifest;
    manifest["tool"] = "mafr";
    manifest["version"] = mafr::kVersion;
    manifest["command"] = command;
    manifest["config"] = config_to_json(cfg);
    manifest["outputs"] = bundle.files(); // captured before manifest.json itself
    auto out = bundle.open("manifest.json");
    out << manifest.dump(2) << '\n';
}

mafr::FunctionalDataSet load_dataset(const RunConfig& cfg, BundleWriter& bundle,
                                     bool write_dataset_csv) {
    if (cfg.use_simulation && !cfg.input_csv.empty()) {
        throw mafr::ParameterError("cli: choose either --input or simulation, not both");
    }
    if (cfg.use_simulation) {
        mafr::FunctionalDataSet data = mafr::simulate(cfg.sim);
        if (write_dataset_csv) {
            const auto pts = uniform_grid(data.basis.interval, cfg.sim_grid_points);
            const mafr::ObservationGrid grid(pts, evaluate_curves(data, pts), data.curve_ids);
            auto out = bundle.open("dataset.csv");
            write_long_csv(out, grid);
        }
        if (cfg.basis_spec) {
            // refit the sampled curves on the requested basis
            const auto basis = parse_basis(*cfg.basis_spec);
            const auto pts = uniform_grid(basis.interval, cfg.sim_grid_points);
            const mafr::ObservationGrid grid(pts, evaluate_curves(data, pts), data.curve_ids);
            std::optional<mafr::RoughnessPenalty> pen;
            if (cfg.lambda > 0.0) pen = {parse_penalty(cfg.fit_penalty), cfg.lambda};
            return mafr::fit(grid, basis, pen, cfg.quad_points);
        }
        return data;
    }
    if (cfg.input_csv.empty()) {
        throw mafr::ParameterError("cli: an input CSV or a simulation spec is required");
    }
    if (!cfg.basis_spec) {
        throw mafr::ParameterError("cli: --basis is required for CSV input");
    }
    const mafr::ObservationGrid grid =
        mafr::read_observations_csv_file(cfg.input_csv, parse_format(cfg.csv_format));
    const auto basis = parse_basis(*cfg.basis_spec);
    std::optional<mafr::RoughnessPenalty> pen;
    if (cfg.lambda > 0.0) pen = {parse_penalty(cfg.fit_penalty), cfg.lambda};
    return mafr::fit(grid, basis, pen, cfg.quad_points);
}

void write_fit_outputs(BundleWriter& bundle, const RunConfig& cfg,
                       const mafr::FunctionalDataSet& data) {
    {
        auto out = bundle.open("coefficients.csv");
        write_matrix_csv(out, data.coefficients, numbered("c", data.basis.size), "curve_id",
                         data.curve_ids);
    }
    if (cfg.eval_grid > 1) {
        const auto pts = uniform_grid(data.basis.interval, cfg.eval_grid);
        const mafr::ObservationGrid grid(pts, evaluate_curves(data, pts), data.curve_ids);
        auto out = bundle.open("curves_eval.csv");
        write_wide_csv(out, grid);
    }
}

void write_fpca_outputs(BundleWriter& bundle, const RunConfig& cfg,
                        const mafr::PcaDecomposition& pca) {
    {
        auto out = bundle.open("components.csv");
        write_matrix_csv(out, pca.components, numbered("c", pca.basis.size));
    }
    {
        auto out = bundle.open("scores.csv");
        write_matrix_csv(out, pca.scores, numbered("pc", pca.num_components()), "curve_id",
                         pca.curve_ids);
    }
    {
        auto out = bundle.open("variances.csv");
        mafr::Matrix v(pca.variances.size(), 1);
        for (std::size_t i = 0; i < pca.variances.size(); ++i) v(i, 0) = pca.variances[i];
        write_matrix_csv(out, v, {"variance"});
    }
    {
        auto out = bundle.open("mean_coefficients.csv");
        mafr::Matrix m(1, pca.basis.size);
        for (std::size_t j = 0; j < pca.basis.size; ++j) m(0, j) = pca.mean_coefficients[j];
        write_matrix_csv(out, m, numbered("c", pca.basis.size));
    }
    if (cfg.eval_grid > 1) {
        const auto pts = uniform_grid(pca.basis.interval, cfg.eval_grid);
        const mafr::Matrix vals =
            evaluate_curves(mafr::FunctionalDataSet(pca.basis, pca.components), pts);
        mafr::Matrix table(pts.size(), pca.num_components() + 1);
        for (std::size_t p = 0; p < pts.size(); ++p) {
            table(p, 0) = pts[p];
            for (std::size_t c = 0; c < pca.num_components(); ++c) table(p, c + 1) = vals(c, p);
        }
        auto names = numbered("pc", pca.num_components());
        names.insert(names.begin(), "t");
        auto out = bundle.open("components_eval.csv");
        write_matrix_csv(out, table, names);
    }
}

void write_rotation_outputs(BundleWriter& bundle, const RunConfig& cfg,
                            const mafr::PcaDecomposition& pca, const mafr::MafrRotation& rot,
                            const mafr::LinearDifferentialOperator& op) {
    const std::size_t kr = rot.num_components();
    {
        auto out = bundle.open("rotation_matrix.csv");
        write_matrix_csv(out, rot.rotation, numbered("u", kr));
    }
    {
        auto out = bundle.open("rotated_components.csv");
        write_matrix_csv(out, rot.rotated_components, numbered("c", rot.basis.size));
    }
    {
        auto out = bundle.open("rotated_scores.csv");
        write_matrix_csv(out, rot.rotated_scores, numbered("mafr", kr), "curve_id",
                         pca.curve_ids);
    }
    {
        auto out = bundle.open("penalty_eigenvalues.csv");
        mafr::Matrix v(kr, 1);
        for (std::size_t i = 0; i < kr; ++i) v(i, 0) = rot.penalty_eigenvalues[i];
        write_matrix_csv(out, v, {"penalty_eigenvalue"});
    }
    {
        auto out = bundle.open("rotated_variances.csv");
        mafr::Matrix v(kr, 1);
        for (std::size_t i = 0; i < kr; ++i) v(i, 0) = rot.rotated_score_covariance(i, i);
        write_matrix_csv(out, v, {"variance"});
    }
    {
        const auto fpca_rough = roughness_profile(pca, op, cfg.quad_points);
        const auto mafr_rough = roughness_profile(rot, op, cfg.quad_points);
        mafr::Matrix table(kr, 3);
        for (std::size_t i = 0; i < kr; ++i) {
            table(i, 0) = static_cast<double>(i + 1);
            table(i, 1) = fpca_rough[i];
            table(i, 2) = mafr_rough[i];
        }
        auto out = bundle.open("roughness.csv");
        write_matrix_csv(out, table, {"component", "fpca", "mafr"});
    }
    if (cfg.eval_grid > 1) {
        const auto pts = uniform_grid(rot.basis.interval, cfg.eval_grid);
        const mafr::Matrix vals =
            evaluate_curves(mafr::FunctionalDataSet(rot.basis, rot.rotated_components), pts);
        mafr::Matrix table(pts.size(), kr + 1);
        for (std::size_t p = 0; p < pts.size(); ++p) {
            table(p, 0) = pts[p];
            for (std::size_t c = 0; c < kr; ++c) table(p, c + 1) = vals(c, p);
        }
        auto names = numbered("mafr", kr);
        names.insert(names.begin(), "t");
        auto out = bundle.open("rotated_components_eval.csv");
        write_matrix_csv(out, table, names);
    }
}

enum class Stage { Simulate, Fit, Fpca, Rotate, Pipeline };

int run_stage(Stage stage, const std::string& command, const RunConfig& cfg) {
    BundleWriter bundle{fs::path(cfg.out_dir)};

    if (stage == Stage::Simulate) {
        RunConfig sim_cfg = cfg;
        sim_cfg.use_simulation = true;
        load_dataset(sim_cfg, bundle, true);
        write_manifest(bundle, command, sim_cfg);
        return 0;
    }

    const bool write_dataset = stage == Stage::Pipeline && cfg.use_simulation;
    const mafr::FunctionalDataSet data = load_dataset(cfg, bundle, write_dataset);
    write_fit_outputs(bundle, cfg, data);
    if (stage == Stage::Fit) {
        write_manifest(bundle, command, cfg);
        return 0;
    }

    const mafr::PcaDecomposition pca =
        fpca(data, parse_retain(cfg.retain), cfg.center, cfg.quad_points);
    write_fpca_outputs(bundle, cfg, pca);
    if (stage == Stage::Fpca) {
        write_manifest(bundle, command, cfg);
        return 0;
    }

    const auto op = parse_penalty(cfg.penalty);
    const mafr::Ordering ordering = [&] {
        if (cfg.ordering == "smooth-first") return mafr::Ordering::SmoothFirst;
        if (cfg.ordering == "rough-first") return mafr::Ordering::RoughFirst;
        throw mafr::ParameterError("cli: unknown ordering '" + cfg.ordering + "'");
    }();
    const mafr::MafrRotation rot =
        cfg.weights.empty() ? rotate(pca, op, ordering, cfg.quad_points)
                            : joint_rotate(pca, op, cfg.weights, ordering, cfg.quad_points);
    write_rotation_outputs(bundle, cfg, pca, rot, op);
    write_manifest(bundle, command, cfg);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Functional PCA with smoothness-ordered factor rotation"};
    app.set_version_flag("--version", std::string(mafr::kVersion));
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    std::string basis_json;
    std::string scale_interp = "stddev";
    std::string weights_csv;
    bool no_center = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config or manifest to start from");
        sub->add_option("--out", cfg.out_dir, "output directory");
        sub->add_option("--quad-points", cfg.quad_points, "quadrature resolution");
        sub->add_option("--eval-grid", cfg.eval_grid,
                        "points for evaluated-curve exports (0 disables)");
    };
    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--input", cfg.input_csv, "input curves CSV (long or wide)");
        sub->add_option("--format", cfg.csv_format, "csv format: auto|long|wide");
        sub->add_option("--basis", basis_json, "basis spec as JSON");
        sub->add_option("--fit-penalty", cfg.fit_penalty,
                        "smoothing penalty: d1|d2|harmonic:<p>|custom:<json>");
        sub->add_option("--lambda", cfg.lambda, "smoothing penalty weight");
    };
    auto add_sim = [&](CLI::App* sub) {
        sub->add_option("--num-curves", cfg.sim.num_curves, "curves to simulate");
        sub->add_option("--num-basis", cfg.sim.num_basis, "fourier functions to simulate");
        sub->add_option("--scale-decay", cfg.sim.scale_decay, "coefficient scale decay rate");
        sub->add_option("--scale-interpretation", scale_interp,
                        "decayed value is stddev|variance");
        sub->add_option("--seed", cfg.sim.seed, "simulation seed");
        sub->add_option("--grid-points", cfg.sim_grid_points, "sampling grid for dataset CSV");
    };
    auto add_analysis = [&](CLI::App* sub) {
        sub->add_option("--retain", cfg.retain,
                        "components to retain: fraction in (0,1) or integer count");
        sub->add_flag("--no-center", no_center, "skip centering before fPCA");
    };
    auto add_rotation = [&](CLI::App* sub) {
        sub->add_option("--penalty", cfg.penalty,
                        "rotation penalty: d1|d2|harmonic:<p>|custom:<json>");
        sub->add_option("--ordering", cfg.ordering, "smooth-first|rough-first");
        sub->add_option("--weights", weights_csv,
                        "comma-separated positive weights for a joint rotation");
    };

    CLI::App* sub_sim = app.add_subcommand("simulate", "generate a synthetic dataset CSV");
    add_common(sub_sim);
    add_sim(sub_sim);

    CLI::App* sub_fit = app.add_subcommand("fit", "fit basis coefficients to observed curves");
    add_common(sub_fit);
    add_input(sub_fit);

    CLI::App* sub_fpca = app.add_subcommand("fpca", "fit, then functional PCA");
    add_common(sub_fpca);
    add_input(sub_fpca);
    add_sim(sub_fpca);
    add_analysis(sub_fpca);

    CLI::App* sub_rot = app.add_subcommand("rotate", "fit, fPCA, then the smoothness rotation");
    add_common(sub_rot);
    add_input(sub_rot);
    add_sim(sub_rot);
    add_analysis(sub_rot);
    add_rotation(sub_rot);

    CLI::App* sub_pipe = app.add_subcommand("pipeline", "full run from data or simulation");
    add_common(sub_pipe);
    add_input(sub_pipe);
    add_sim(sub_pipe);
    add_analysis(sub_pipe);
    add_rotation(sub_pipe);

    CLI11_PARSE(app, argc, argv);

    try {
        CLI::App* active = app.get_subcommands().front();
        const std::string command = active->get_name();

        // layering: config file first, then explicit flags override
        RunConfig file_cfg;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw mafr::ParameterError("cli: cannot open config '" + config_path + "'");
            json j = json::parse(in);
            if (j.contains("config")) j = j["config"]; // accept manifests too
            config_from_json(j, file_cfg);

            auto seen = [&](const std::string& flag) {
                return active->count(flag) > 0;
            };
            if (!seen("--out")) cfg.out_dir = file_cfg.out_dir;
            if (!seen("--quad-points")) cfg.quad_points = file_cfg.quad_points;
            if (!seen("--eval-grid")) cfg.eval_grid = file_cfg.eval_grid;
            if (active->get_option_no_throw("--input") != nullptr) {
                if (!seen("--input")) cfg.input_csv = file_cfg.input_csv;
                if (!seen("--format")) cfg.csv_format = file_cfg.csv_format;
                if (!seen("--basis")) cfg.basis_spec = file_cfg.basis_spec;
                if (!seen("--fit-penalty")) cfg.fit_penalty = file_cfg.fit_penalty;
                if (!seen("--lambda")) cfg.lambda = file_cfg.lambda;
            }
            if (active->get_option_no_throw("--num-curves") != nullptr) {
                if (file_cfg.use_simulation) {
                    cfg.use_simulation = true;
                    if (!seen("--num-curves")) cfg.sim.num_curves = file_cfg.sim.num_curves;
                    if (!seen("--num-basis")) cfg.sim.num_basis = file_cfg.sim.num_basis;
                    if (!seen("--scale-decay")) cfg.sim.scale_decay = file_cfg.sim.scale_decay;
                    if (!seen("--scale-interpretation")) {
                        cfg.sim.scale_interpretation = file_cfg.sim.scale_interpretation;
                        scale_interp = cfg.sim.scale_interpretation ==
                                               mafr::ScaleInterpretation::StdDev
                                           ? "stddev"
                                           : "variance";
                    }
                    if (!seen("--seed")) cfg.sim.seed = file_cfg.sim.seed;
                    if (!seen("--grid-points")) cfg.sim_grid_points = file_cfg.sim_grid_points;
                }
            }
            if (active->get_option_no_throw("--retain") != nullptr) {
                if (!seen("--retain")) cfg.retain = file_cfg.retain;
                if (!seen("--no-center") && !file_cfg.center) no_center = true;
            }
            if (active->get_option_no_throw("--penalty") != nullptr) {
                if (!seen("--penalty")) cfg.penalty = file_cfg.penalty;
                if (!seen("--ordering")) cfg.ordering = file_cfg.ordering;
                if (!seen("--weights")) cfg.weights = file_cfg.weights;
            }
        }

        if (!basis_json.empty()) cfg.basis_spec = json::parse(basis_json);
        if (!weights_csv.empty()) {
            cfg.weights.clear();
            std::size_t start = 0;
            while (start <= weights_csv.size()) {
                const std::size_t pos = weights_csv.find(',', start);
                const std::string tok = weights_csv.substr(
                    start, pos == std::string::npos ? std::string::npos : pos - start);
                if (!tok.empty()) cfg.weights.push_back(std::stod(tok));
                if (pos == std::string::npos) break;
                start = pos + 1;
            }
        }
        if (scale_interp == "variance") {
            cfg.sim.scale_interpretation = mafr::ScaleInterpretation::Variance;
        } else if (scale_interp != "stddev") {
            throw mafr::ParameterError("cli: unknown scale interpretation '" + scale_interp +
                                       "'");
        }
        cfg.center = !no_center;

        Stage stage = Stage::Pipeline;
        if (command == "simulate") stage = Stage::Simulate;
        else if (command == "fit") stage = Stage::Fit;
        else if (command == "fpca") stage = Stage::Fpca;
        else if (command == "rotate") stage = Stage::Rotate;

        if (stage != Stage::Simulate && stage != Stage::Fit && cfg.input_csv.empty() &&
            active->get_option_no_throw("--num-curves") != nullptr && !cfg.use_simulation) {
            // fpca/rotate/pipeline with simulation flags but no --input
            cfg.use_simulation = true;
        }

        return run_stage(stage, command, cfg);
    } catch (const mafr::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: config: " << e.what() << '\n';
        return 2;
    } catch (const mafr::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
