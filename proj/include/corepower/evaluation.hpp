#ifndef COREPOWER_EVALUATION_HPP
#define COREPOWER_EVALUATION_HPP

#include <span>
#include <string>
#include <vector>

#include "corepower/calibration.hpp"
#include "corepower/types.hpp"

namespace corepower {

enum class ConfigFamily : int { BOOM = 0, XiangShan };

const std::string& family_name(ConfigFamily family);
ConfigFamily family_from_name(const std::string& name);

enum class ScenarioKind : int { Balance = 0, Small, Large };

const std::string& scenario_name(ScenarioKind kind);
ScenarioKind scenario_from_name(const std::string& name);

/// A 3-configuration training split; the rest of the family is for testing.
struct Scenario {
    ScenarioKind kind = ScenarioKind::Balance;
    std::vector<std::string> train_config_ids;
    std::vector<std::string> test_config_ids;
};

struct Metrics {
    double mape = 0.0;       // percent
    double pearson_r = 0.0;
    int n_points = 0;
};

/// 100 * mean(|pred - label| / label). Labels must be positive.
double mape(std::span<const double> predictions, std::span<const double> labels);

/// Pearson product-moment correlation. Throws on fewer than two points or
/// zero variance in either vector (the coefficient is undefined, not zero).
double pearson_r(std::span<const double> predictions, std::span<const double> labels);

/// Builds the Balance / Small / Large training split of a configuration
/// family. Balance picks the smallest, middle and largest configuration;
/// Small the three smallest; Large the three largest. Scale order is the
/// bundled table's index order.
Scenario split_scenario(ConfigFamily family, ScenarioKind kind);

enum class AblationVariant : int { Full = 0, WithoutArch, WithoutImpl, WithoutTech };

const std::string& variant_name(AblationVariant variant);
AblationVariant variant_from_name(const std::string& name);

/// Per-point record for external plotting.
struct PredictionPoint {
    std::string config_id;
    std::string workload;
    double prediction_w = 0.0;
    double label_w = 0.0;
};

struct AblationOutcome {
    Metrics metrics;
    ParameterSet params;
    std::vector<PredictionPoint> points;
};

/// Calibrates under one ablation variant (the ablated level pinned to its
/// defaults and excluded from the decision), then evaluates total core power
/// on the scenario's test split.
AblationOutcome run_ablation(AblationVariant variant, const Scenario& scenario,
                             const std::vector<TrainingSample>& samples,
                             const ParameterSet& arch_input,
                             const TechCharacterization& tech_char,
                             const TechProfile& tech,
                             const CalibrationConfig& config);

/// Re-decides only the two technology factors from the target library; the 23
/// architecture and implementation values transfer bit-identically. Requires
/// the implementation level of `calibrated` to carry Calibrated provenance.
ParameterSet transfer_tech(const ParameterSet& calibrated,
                           const TechCharacterization& target_char,
                           const TechProfile& tech);

/// One metrics row of the evaluation report CSV.
struct MetricsRow {
    std::string family;
    std::string scenario;
    std::string variant;
    std::string method;
    Metrics metrics;
};

std::string metrics_csv(const std::vector<MetricsRow>& rows);
std::string points_csv(const std::vector<PredictionPoint>& points);

}  // namespace corepower

#endif
