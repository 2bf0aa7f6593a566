#ifndef COREPOWER_CALIBRATION_HPP
#define COREPOWER_CALIBRATION_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "corepower/model.hpp"
#include "corepower/parameters.hpp"
#include "corepower/types.hpp"

namespace corepower {

/// One (configuration, workload) training point with ground-truth power.
struct TrainingSample {
    std::string config_id;
    std::string workload;
    HardwareConfig hw;
    ParameterSet arch_params;  // architecture-level values for this design
    EventCounts events;
    std::array<double, kComponentCount> component_labels_w{};
    double total_label_w = 0.0;

    /// Throws when any label is non-positive or the component labels do not
    /// sum to the total within 1%.
    void validate() const;
};

struct CalibrationConfig {
    double learning_rate = 0.8;  // step scale; < 2 is stable for one linear parameter
    double delta = 0.0;          // finite-difference step; 0 selects the per-parameter rule
    int max_iterations = 500;
    int early_stop_patience = 20;
    double early_stop_rel_tol = 1e-6;
    std::uint64_t rng_seed = 0;  // reserved for reproducibility of any randomized policy

    void validate() const;
};

/// Measured data from a real technology library: one SRAM macro probe and the
/// worst-case (clock toggling) DFF power.
struct TechCharacterization {
    std::string node_name;
    int sram_rows = 256;
    int sram_width = 64;
    double sram_read_energy_pj = 0.0;
    double sram_write_energy_pj = 0.0;
    double dff_worst_case_power_uw = 0.0;
    double dff_reference_freq_hz = 1e9;

    void validate() const;
};

/// Calibration failed because the loss exploded (10^6x the initial loss).
class CalibrationDivergence : public std::runtime_error {
  public:
    explicit CalibrationDivergence(const std::string& what)
        : std::runtime_error(what) {}
};

/// Ratio aligning the surrogate array energies to the library: build the
/// library's SRAM probe shape in the model with factor 1, then average the
/// library/model ratios of read and write energy.
double decide_tech_array_factor(const TechCharacterization& chr,
                                const TechProfile& tech);

/// Ratio of the library's worst-case DFF power to the model's, with the
/// model's reference power scaled to the library's stated frequency.
double decide_tech_logic_factor(const TechCharacterization& chr,
                                const TechProfile& tech);

/// Secant slope of `predict` along one numeric parameter: forward difference
/// with step `delta`, falling back to a backward difference when p + delta
/// would leave the range. Exact for linear-flagged parameters regardless of
/// delta. Pass delta <= 0 to use the per-parameter default step.
double finite_diff_gradient(const std::function<double(const ParameterSet&)>& predict,
                            const ParameterSet& set, ParamId param, double delta);

/// The default finite-difference step of one parameter:
/// max(1e-3 * range width, 1e-6).
double default_delta(ParamId param);

struct ComponentCalibration {
    ComponentId component = ComponentId::BP;
    std::map<ParamId, double> values;
    std::vector<double> loss_history;  // batch MSE (mW^2) per iteration, [0] = initial
    double initial_loss = 0.0;
    double final_loss = 0.0;
    int iterations = 0;
};

/// Gradient-descent decision of one component's implementation-level
/// parameters against its per-component labels. Architecture and technology
/// values inside `base` are frozen. Integer parameters are relaxed during the
/// descent and repaired at the end; the best-loss iterate visited is
/// returned, so the final loss never exceeds the initial loss.
ComponentCalibration calibrate_component(ComponentId id,
                                         const std::vector<TrainingSample>& samples,
                                         const ParameterSet& base,
                                         const TechProfile& tech,
                                         const CalibrationConfig& config);

struct CalibrationResult {
    ParameterSet params;
    std::vector<ComponentCalibration> components;
};

/// Full decision pipeline in order Architecture -> Technology ->
/// Implementation: fixes architecture values from `arch_input`, decides both
/// technology factors from the library characterization, then calibrates
/// every component's implementation parameters independently.
CalibrationResult calibrate_all(const std::vector<TrainingSample>& samples,
                                const ParameterSet& arch_input,
                                const TechCharacterization& tech_char,
                                const TechProfile& tech,
                                const CalibrationConfig& config);

/// Single scaling-factor baseline: mean(label_total / base-model total) over
/// the training samples. The baseline prediction is the default-parameter
/// model output times this factor.
double fit_scaling_baseline(const std::vector<TrainingSample>& samples,
                            const TechProfile& tech);

}  // namespace corepower

#endif
