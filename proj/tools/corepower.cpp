#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "corepower/calibration.hpp"
#include "corepower/data_io.hpp"
#include "corepower/evaluation.hpp"
#include "corepower/model.hpp"
#include "corepower/parameters.hpp"

namespace {

using namespace corepower;

constexpr double kEstimateBudgetS = 15.0;
constexpr double kCalibrateBudgetS = 600.0;

class Stopwatch {
  public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

void warn_budget(const Stopwatch& watch, double budget_s, const char* what) {
    double elapsed = watch.seconds();
    if (elapsed > budget_s) {
        std::cerr << "warning: " << what << " took " << elapsed << " s, above the "
                  << budget_s << " s budget\n";
    }
}

std::string format_w(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%12.6e", v);
    return buf;
}

std::string report_table(const PowerReport& report) {
    std::ostringstream out;
    out << "Component      Dynamic (W)    Leakage (W)      Total (W)\n";
    for (const auto& cp : report.components) {
        char line[160];
        std::snprintf(line, sizeof(line), "%-11s %s %s %s\n",
                      component_name(cp.component).c_str(),
                      format_w(cp.dynamic_power_w).c_str(),
                      format_w(cp.leakage_power_w).c_str(), format_w(cp.total_w()).c_str());
        out << line;
    }
    out << "\nTotal power:    " << format_w(report.total_power_w) << " W\n";
    out << "Execution time: " << format_w(report.execution_time_s) << " s\n";
    return out.str();
}

std::string report_csv(const PowerReport& report) {
    std::ostringstream out;
    out << "component,dynamic_w,leakage_w,total_w\n";
    char buf[160];
    for (const auto& cp : report.components) {
        std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%.17g\n",
                      component_name(cp.component).c_str(), cp.dynamic_power_w,
                      cp.leakage_power_w, cp.total_w());
        out << buf;
    }
    std::snprintf(buf, sizeof(buf), "Total,,,%.17g\n", report.total_power_w);
    out << buf;
    return out.str();
}

/// Parses "Name=Value;Name=Value" architecture overrides onto `arch`.
void apply_arch_overrides(ParameterSet& arch, const std::string& overrides) {
    std::istringstream in(overrides);
    std::string item;
    while (std::getline(in, item, ';')) {
        if (item.empty()) continue;
        size_t eq = item.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("architecture override '" + item +
                                        "' is not Name=Value");
        }
        auto strip = [](std::string s) {
            size_t b = s.find_first_not_of(" \t");
            size_t e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string name = strip(item.substr(0, eq));
        std::string value = strip(item.substr(eq + 1));
        ParamId id = param_from_name(name);
        const ParameterSpec& spec = param_spec(id);
        if (spec.level != ParamLevel::Architecture) {
            throw std::invalid_argument("'" + name + "' is not an architecture-level parameter");
        }
        bool matched = false;
        for (size_t i = 0; i < spec.enum_values.size(); ++i) {
            if (spec.enum_values[i] == value) {
                arch.set(id, static_cast<double>(i));
                matched = true;
                break;
            }
        }
        if (!matched) {
            throw std::invalid_argument("invalid value '" + value + "' for '" + name + "'");
        }
    }
}

/// Architecture values shared by a set of samples; inconsistencies are a user
/// error (one calibration covers one processor architecture).
ParameterSet arch_from_samples(const std::vector<TrainingSample>& samples) {
    ParameterSet arch = default_parameter_set();
    bool first = true;
    for (const auto& s : samples) {
        if (first) {
            arch = s.arch_params;
            first = false;
            continue;
        }
        for (const auto& spec : parameter_registry()) {
            if (spec.level != ParamLevel::Architecture) continue;
            if (arch.get(spec.id) != s.arch_params.get(spec.id)) {
                throw std::invalid_argument(
                    "inconsistent architecture parameter '" + spec.name +
                    "' across dataset design configs (" + s.config_id + " differs)");
            }
        }
    }
    arch.set_provenance(ParamLevel::Architecture, Provenance::UserSupplied);
    return arch;
}

std::string loss_log_csv(const CalibrationResult& result) {
    std::ostringstream out;
    out << "component,iteration,loss_mw2\n";
    char buf[96];
    for (const auto& cc : result.components) {
        for (size_t i = 0; i < cc.loss_history.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%s,%zu,%.17g\n",
                          component_name(cc.component).c_str(), i, cc.loss_history[i]);
            out << buf;
        }
    }
    return out.str();
}

int run(int argc, char** argv) {
    CLI::App app{"Analytical out-of-order CPU core power model with three-level "
                 "parameter injection and automatic calibration"};
    app.require_subcommand(1);

    // estimate
    auto* estimate = app.add_subcommand("estimate", "Estimate core power for one design/workload");
    std::string est_design, est_events, est_params, est_tech = "generic", est_csv;
    estimate->add_option("--design", est_design, "Design configuration file")->required();
    estimate->add_option("--events", est_events, "Event trace file")->required();
    estimate->add_option("--params", est_params, "Parameter file (defaults when omitted)");
    estimate->add_option("--tech", est_tech, "Technology profile name or file");
    estimate->add_option("--csv", est_csv, "Also write the report as CSV to this path");

    // tech-calibrate
    auto* techcal = app.add_subcommand("tech-calibrate",
                                       "Decide the two technology factors from a library characterization");
    std::string tc_char, tc_tech = "generic", tc_out;
    techcal->add_option("--tech-char", tc_char, "Technology characterization file")->required();
    techcal->add_option("--tech", tc_tech, "Technology profile name or file");
    techcal->add_option("--out", tc_out, "Output parameter file")->required();

    // calibrate
    auto* calibrate = app.add_subcommand("calibrate",
                                         "Decide all parameters from a training dataset");
    std::string cal_train, cal_arch, cal_char, cal_tech = "generic", cal_out, cal_loss_log;
    CalibrationConfig cal_config;
    calibrate->add_option("--train", cal_train, "Training dataset directory")->required();
    calibrate->add_option("--arch", cal_arch,
                          "Architecture overrides, e.g. \"BP Scalability=Yes;...\"");
    calibrate->add_option("--tech-char", cal_char, "Technology characterization file")->required();
    calibrate->add_option("--tech", cal_tech, "Technology profile name or file");
    calibrate->add_option("--out", cal_out, "Output parameter file")->required();
    calibrate->add_option("--seed", cal_config.rng_seed, "Calibration seed");
    calibrate->add_option("--lr", cal_config.learning_rate, "Learning rate");
    calibrate->add_option("--delta", cal_config.delta,
                          "Finite-difference step (0 = per-parameter default)");
    calibrate->add_option("--iters", cal_config.max_iterations, "Maximum iterations");
    calibrate->add_option("--loss-log", cal_loss_log,
                          "Loss log CSV path (default: <out>.losslog.csv)");

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate",
                                        "Calibrate on a scenario's train split and report test metrics");
    std::string ev_family, ev_scenario, ev_variant = "full", ev_data, ev_char,
                ev_tech = "generic", ev_out, ev_points;
    CalibrationConfig ev_config;
    evaluate->add_option("--family", ev_family, "boom | xiangshan")->required();
    evaluate->add_option("--scenario", ev_scenario, "balance | small | large")->required();
    evaluate->add_option("--variant", ev_variant, "full | wo-arch | wo-impl | wo-tech");
    evaluate->add_option("--data", ev_data, "Dataset directory")->required();
    evaluate->add_option("--tech-char", ev_char,
                         "Technology characterization file (unused by wo-tech)");
    evaluate->add_option("--tech", ev_tech, "Technology profile name or file");
    evaluate->add_option("--out", ev_out, "Metrics CSV output path")->required();
    evaluate->add_option("--points", ev_points, "Per-point CSV output path");
    evaluate->add_option("--seed", ev_config.rng_seed, "Calibration seed");
    evaluate->add_option("--lr", ev_config.learning_rate, "Learning rate");
    evaluate->add_option("--iters", ev_config.max_iterations, "Maximum iterations");

    // transfer
    auto* transfer = app.add_subcommand("transfer",
                                        "Re-decide technology factors for a new library");
    std::string tr_params, tr_char, tr_tech = "generic", tr_out;
    transfer->add_option("--params", tr_params, "Calibrated parameter file")->required();
    transfer->add_option("--tech-char", tr_char, "Target characterization file")->required();
    transfer->add_option("--tech", tr_tech, "Technology profile name or file");
    transfer->add_option("--out", tr_out, "Output parameter file")->required();

    // synth
    auto* synth = app.add_subcommand("synth",
                                     "Generate a synthetic ground-truth dataset directory");
    std::string sy_out, sy_family = "boom", sy_hidden, sy_tech = "generic";
    std::uint64_t sy_seed = 1;
    double sy_noise = 0.0, sy_freq = 1e9;
    synth->add_option("--out", sy_out, "Output dataset directory")->required();
    synth->add_option("--family", sy_family, "boom | xiangshan");
    synth->add_option("--seed", sy_seed, "Seed for hidden parameters and noise");
    synth->add_option("--noise", sy_noise, "Relative label noise stddev");
    synth->add_option("--hidden", sy_hidden,
                      "Hidden parameter file (default: sampled from the seed)");
    synth->add_option("--tech", sy_tech, "Technology profile name or file");
    synth->add_option("--freq", sy_freq, "Clock frequency in Hz");

    CLI11_PARSE(app, argc, argv);

    if (estimate->parsed()) {
        Stopwatch watch;
        std::vector<std::string> warnings;
        DesignConfig design = parse_design_config(read_file(est_design));
        EventCounts events = parse_event_trace(read_file(est_events), &warnings);
        ParameterSet params = est_params.empty() ? default_parameter_set()
                                                 : parse_parameter_file(read_file(est_params));
        if (est_params.empty()) {
            // No calibrated file given: honor the design's architecture section.
            for (const auto& spec : parameter_registry()) {
                if (spec.level == ParamLevel::Architecture) {
                    params.set(spec.id, design.arch_params.get(spec.id));
                }
            }
        }
        if (events.clock_frequency_hz != design.clock_frequency_hz) {
            warnings.push_back("event trace clock frequency differs from the design's");
        }
        PowerReport report = estimate_core(design.hw, events, params,
                                           load_tech_profile(est_tech), &warnings);
        print_warnings(warnings);
        std::cout << report_table(report);
        if (!est_csv.empty()) write_file_atomic(est_csv, report_csv(report));
        warn_budget(watch, kEstimateBudgetS, "estimation");
        return 0;
    }

    if (techcal->parsed()) {
        TechProfile tech = load_tech_profile(tc_tech);
        TechCharacterization chr = parse_tech_characterization(read_file(tc_char));
        ParameterSet params = default_parameter_set();
        params.set(ParamId::TechArrayFactor, decide_tech_array_factor(chr, tech));
        params.set(ParamId::TechLogicFactor, decide_tech_logic_factor(chr, tech));
        params = clamp(params);
        params.set_provenance(ParamLevel::Technology, Provenance::Calibrated);
        write_file_atomic(tc_out, serialize_parameter_set(params));
        std::cout << "Tech Array Factor = " << params.get(ParamId::TechArrayFactor)
                  << "\nTech Logic Factor = " << params.get(ParamId::TechLogicFactor)
                  << "\n";
        return 0;
    }

    if (calibrate->parsed()) {
        Stopwatch watch;
        std::vector<std::string> warnings;
        std::vector<TrainingSample> samples = load_dataset_dir(cal_train, &warnings);
        print_warnings(warnings);
        ParameterSet arch = arch_from_samples(samples);
        if (!cal_arch.empty()) apply_arch_overrides(arch, cal_arch);
        TechProfile tech = load_tech_profile(cal_tech);
        TechCharacterization chr = parse_tech_characterization(read_file(cal_char));
        CalibrationResult result = calibrate_all(samples, arch, chr, tech, cal_config);
        write_file_atomic(cal_out, serialize_parameter_set(result.params));
        std::string log_path = cal_loss_log.empty() ? cal_out + ".losslog.csv" : cal_loss_log;
        write_file_atomic(log_path, loss_log_csv(result));
        for (const auto& cc : result.components) {
            std::cout << component_name(cc.component) << ": loss " << cc.initial_loss
                      << " -> " << cc.final_loss << " mW^2 in " << cc.iterations
                      << " iterations\n";
        }
        warn_budget(watch, kCalibrateBudgetS, "calibration");
        return 0;
    }

    if (evaluate->parsed()) {
        ConfigFamily family = family_from_name(ev_family);
        ScenarioKind kind = scenario_from_name(ev_scenario);
        AblationVariant variant = variant_from_name(ev_variant);
        std::vector<std::string> warnings;
        std::vector<TrainingSample> all = load_dataset_dir(ev_data, &warnings);
        print_warnings(warnings);

        std::vector<std::string> ids = family_config_ids(family);
        std::vector<TrainingSample> samples;
        for (auto& s : all) {
            if (std::find(ids.begin(), ids.end(), s.config_id) != ids.end()) {
                samples.push_back(std::move(s));
            }
        }
        if (samples.empty()) {
            throw std::invalid_argument("dataset has no configurations of family " +
                                        family_name(family));
        }

        TechProfile tech = load_tech_profile(ev_tech);
        TechCharacterization chr =
            ev_char.empty() ? characterization_for(default_parameter_set(), tech)
                            : parse_tech_characterization(read_file(ev_char));
        if (ev_char.empty() && variant != AblationVariant::WithoutTech) {
            std::cerr << "warning: no --tech-char given; technology factors stay at 1\n";
        }

        Scenario scenario = split_scenario(family, kind);
        ParameterSet arch = arch_from_samples(samples);
        AblationOutcome outcome =
            run_ablation(variant, scenario, samples, arch, chr, tech, ev_config);

        // Baseline rows: the uncalibrated model and the single-factor scaled model.
        std::vector<TrainingSample> train, test;
        for (const auto& s : samples) {
            auto& ids_ref = scenario.train_config_ids;
            bool in_train =
                std::find(ids_ref.begin(), ids_ref.end(), s.config_id) != ids_ref.end();
            (in_train ? train : test).push_back(s);
        }
        double scale = fit_scaling_baseline(train, tech);
        ParameterSet defaults = default_parameter_set();
        std::vector<double> base_preds, labels;
        for (const auto& s : test) {
            base_preds.push_back(estimate_core(s.hw, s.events, defaults, tech).total_power_w);
            labels.push_back(s.total_label_w);
        }
        std::vector<double> scaled_preds = base_preds;
        for (auto& p : scaled_preds) p *= scale;

        std::vector<MetricsRow> rows;
        rows.push_back({family_name(family), scenario_name(kind), variant_name(variant),
                        "calibrated", outcome.metrics});
        rows.push_back({family_name(family), scenario_name(kind), variant_name(variant),
                        "base",
                        Metrics{mape(base_preds, labels), pearson_r(base_preds, labels),
                                static_cast<int>(labels.size())}});
        rows.push_back({family_name(family), scenario_name(kind), variant_name(variant),
                        "scaled-base",
                        Metrics{mape(scaled_preds, labels), pearson_r(scaled_preds, labels),
                                static_cast<int>(labels.size())}});
        write_file_atomic(ev_out, metrics_csv(rows));
        if (!ev_points.empty()) write_file_atomic(ev_points, points_csv(outcome.points));
        std::cout << metrics_csv(rows);
        return 0;
    }

    if (transfer->parsed()) {
        TechProfile tech = load_tech_profile(tr_tech);
        ParameterSet params = parse_parameter_file(read_file(tr_params));
        TechCharacterization chr = parse_tech_characterization(read_file(tr_char));
        ParameterSet transferred = transfer_tech(params, chr, tech);
        write_file_atomic(tr_out, serialize_parameter_set(transferred));
        std::cout << "Tech Array Factor = " << transferred.get(ParamId::TechArrayFactor)
                  << "\nTech Logic Factor = " << transferred.get(ParamId::TechLogicFactor)
                  << "\n";
        return 0;
    }

    if (synth->parsed()) {
        TechProfile tech = load_tech_profile(sy_tech);
        SyntheticDatasetSpec spec;
        spec.family = family_from_name(sy_family);
        spec.hidden_params = sy_hidden.empty()
                                 ? sample_hidden_parameter_set(sy_seed)
                                 : parse_parameter_file(read_file(sy_hidden));
        spec.noise_rel_stddev = sy_noise;
        spec.rng_seed = sy_seed;
        spec.clock_frequency_hz = sy_freq;
        std::vector<TrainingSample> samples = generate_synthetic_dataset(spec, tech);
        std::filesystem::create_directories(sy_out);
        write_dataset_dir(sy_out, samples, sy_freq);
        write_file_atomic(std::filesystem::path(sy_out) / "tech.char",
                          serialize_tech_characterization(
                              characterization_for(spec.hidden_params, tech)));
        write_file_atomic(std::filesystem::path(sy_out) / "hidden_params.txt",
                          serialize_parameter_set(spec.hidden_params));
        std::cout << "wrote " << samples.size() << " samples to " << sy_out << "\n";
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const corepower::CalibrationDivergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
