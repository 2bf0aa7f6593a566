#include "corepower/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "corepower/data_io.hpp"

namespace corepower {

namespace {

const std::array<std::string, 2> kFamilyNames = {"BOOM", "XiangShan"};
const std::array<std::string, 3> kScenarioNames = {"balance", "small", "large"};
const std::array<std::string, 4> kVariantNames = {"full", "wo-arch", "wo-impl",
                                                  "wo-tech"};

std::string csv_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

const std::string& family_name(ConfigFamily family) {
    return kFamilyNames[static_cast<int>(family)];
}

ConfigFamily family_from_name(const std::string& name) {
    std::string lower = name;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (lower == "boom") return ConfigFamily::BOOM;
    if (lower == "xiangshan") return ConfigFamily::XiangShan;
    throw std::invalid_argument("unknown configuration family '" + name + "'");
}

const std::string& scenario_name(ScenarioKind kind) {
    return kScenarioNames[static_cast<int>(kind)];
}

ScenarioKind scenario_from_name(const std::string& name) {
    for (int i = 0; i < 3; ++i) {
        if (kScenarioNames[i] == name) return static_cast<ScenarioKind>(i);
    }
    throw std::invalid_argument("unknown scenario '" + name + "'");
}

const std::string& variant_name(AblationVariant variant) {
    return kVariantNames[static_cast<int>(variant)];
}

AblationVariant variant_from_name(const std::string& name) {
    for (int i = 0; i < 4; ++i) {
        if (kVariantNames[i] == name) return static_cast<AblationVariant>(i);
    }
    throw std::invalid_argument("unknown ablation variant '" + name + "'");
}

double mape(std::span<const double> predictions, std::span<const double> labels) {
    if (predictions.size() != labels.size()) {
        throw std::invalid_argument("prediction/label length mismatch");
    }
    if (predictions.empty()) throw std::invalid_argument("mape of empty vectors");
    double acc = 0.0;
    for (size_t i = 0; i < labels.size(); ++i) {
        if (!(labels[i] > 0.0)) {
            throw std::invalid_argument("mape requires positive labels");
        }
        acc += std::abs(predictions[i] - labels[i]) / labels[i];
    }
    return 100.0 * acc / static_cast<double>(labels.size());
}

double pearson_r(std::span<const double> predictions, std::span<const double> labels) {
    if (predictions.size() != labels.size()) {
        throw std::invalid_argument("prediction/label length mismatch");
    }
    size_t n = predictions.size();
    if (n < 2) throw std::invalid_argument("pearson_r needs at least 2 points");
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mx += predictions[i];
        my += labels[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double dx = predictions[i] - mx;
        double dy = labels[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (!(sxx > 0.0) || !(syy > 0.0)) {
        throw std::invalid_argument("pearson_r undefined for zero-variance input");
    }
    return sxy / std::sqrt(sxx * syy);
}

Scenario split_scenario(ConfigFamily family, ScenarioKind kind) {
    std::vector<std::string> ids = family_config_ids(family);
    const size_t n = ids.size();
    if (n < 4) throw std::logic_error("configuration family too small to split");

    Scenario scenario;
    scenario.kind = kind;
    std::vector<size_t> train_idx;
    switch (kind) {
        case ScenarioKind::Balance:
            train_idx = {0, n / 2, n - 1};
            break;
        case ScenarioKind::Small:
            train_idx = {0, 1, 2};
            break;
        case ScenarioKind::Large:
            train_idx = {n - 3, n - 2, n - 1};
            break;
    }
    for (size_t i = 0; i < n; ++i) {
        bool in_train = std::find(train_idx.begin(), train_idx.end(), i) != train_idx.end();
        (in_train ? scenario.train_config_ids : scenario.test_config_ids).push_back(ids[i]);
    }
    return scenario;
}

AblationOutcome run_ablation(AblationVariant variant, const Scenario& scenario,
                             const std::vector<TrainingSample>& samples,
                             const ParameterSet& arch_input,
                             const TechCharacterization& tech_char,
                             const TechProfile& tech,
                             const CalibrationConfig& config) {
    auto in_ids = [](const std::vector<std::string>& ids, const std::string& id) {
        return std::find(ids.begin(), ids.end(), id) != ids.end();
    };
    std::vector<TrainingSample> train, test;
    for (const auto& s : samples) {
        if (in_ids(scenario.train_config_ids, s.config_id)) train.push_back(s);
        if (in_ids(scenario.test_config_ids, s.config_id)) test.push_back(s);
    }
    if (train.empty()) throw std::invalid_argument("scenario has no training samples");
    if (test.empty()) throw std::invalid_argument("scenario has no test samples");

    ParameterSet defaults = default_parameter_set();
    const ParameterSet& arch = variant == AblationVariant::WithoutArch ? defaults : arch_input;

    ParameterSet calibrated;
    if (variant == AblationVariant::WithoutImpl) {
        // No descent: architecture from the user, technology from the library.
        calibrated = defaults;
        for (const auto& spec : parameter_registry()) {
            if (spec.level == ParamLevel::Architecture) {
                calibrated.set(spec.id, arch.get(spec.id));
            }
        }
        calibrated.set(ParamId::TechArrayFactor, decide_tech_array_factor(tech_char, tech));
        calibrated.set(ParamId::TechLogicFactor, decide_tech_logic_factor(tech_char, tech));
        calibrated = clamp(calibrated);
        calibrated.set_provenance(ParamLevel::Architecture, Provenance::UserSupplied);
        calibrated.set_provenance(ParamLevel::Technology, Provenance::Calibrated);
    } else if (variant == AblationVariant::WithoutTech) {
        // Identity characterization pins both factors at their default 1.
        TechCharacterization identity = characterization_for(defaults, tech);
        calibrated = calibrate_all(train, arch, identity, tech, config).params;
        calibrated.set_provenance(ParamLevel::Technology, Provenance::Default);
    } else {
        calibrated = calibrate_all(train, arch, tech_char, tech, config).params;
    }

    AblationOutcome outcome;
    outcome.params = calibrated;
    std::vector<double> preds, labels;
    for (const auto& s : test) {
        double p = estimate_core(s.hw, s.events, calibrated, tech).total_power_w;
        preds.push_back(p);
        labels.push_back(s.total_label_w);
        outcome.points.push_back(PredictionPoint{s.config_id, s.workload, p, s.total_label_w});
    }
    outcome.metrics.mape = mape(preds, labels);
    outcome.metrics.pearson_r = pearson_r(preds, labels);
    outcome.metrics.n_points = static_cast<int>(preds.size());
    return outcome;
}

ParameterSet transfer_tech(const ParameterSet& calibrated,
                           const TechCharacterization& target_char,
                           const TechProfile& tech) {
    if (calibrated.provenance(ParamLevel::Implementation) != Provenance::Calibrated) {
        throw std::invalid_argument(
            "transfer requires a parameter set with calibrated implementation level");
    }
    ParameterSet out = calibrated;
    out.set(ParamId::TechArrayFactor, decide_tech_array_factor(target_char, tech));
    out.set(ParamId::TechLogicFactor, decide_tech_logic_factor(target_char, tech));
    out = clamp(out);
    out.set_provenance(ParamLevel::Technology, Provenance::Calibrated);
    return out;
}

std::string metrics_csv(const std::vector<MetricsRow>& rows) {
    std::ostringstream out;
    out << "family,scenario,variant,method,mape,pearson_r,n_points\n";
    for (const auto& row : rows) {
        out << row.family << ',' << row.scenario << ',' << row.variant << ','
            << row.method << ',' << csv_number(row.metrics.mape) << ','
            << csv_number(row.metrics.pearson_r) << ',' << row.metrics.n_points << '\n';
    }
    return out.str();
}

std::string points_csv(const std::vector<PredictionPoint>& points) {
    std::ostringstream out;
    out << "config_id,workload,prediction_w,label_w\n";
    for (const auto& p : points) {
        out << p.config_id << ',' << p.workload << ',' << csv_number(p.prediction_w)
            << ',' << csv_number(p.label_w) << '\n';
    }
    return out.str();
}

}  // namespace corepower
