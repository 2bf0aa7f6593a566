#ifndef COREPOWER_DATA_IO_HPP
#define COREPOWER_DATA_IO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "corepower/calibration.hpp"
#include "corepower/evaluation.hpp"
#include "corepower/parameters.hpp"
#include "corepower/types.hpp"

namespace corepower {

/// Parsed design configuration file: the hardware section, the optional
/// architecture-parameters section (absent keys take registry defaults), and
/// the design clock frequency.
struct DesignConfig {
    HardwareConfig hw;
    ParameterSet arch_params;  // only architecture-level values are meaningful
    double clock_frequency_hz = 0.0;
};

/// Parses the `[hardware]` / `[architecture]` sectioned key-value format.
/// Unknown keys, out-of-range values and missing mandatory hardware keys are
/// rejected with the key name and line number.
DesignConfig parse_design_config(const std::string& text);

std::string serialize_design_config(const DesignConfig& config);

/// Parses a flat key-value event trace. Missing counters default to 0 with a
/// warning; cycles and clock_frequency_hz are mandatory; negative counters
/// and zero cycles are rejected.
EventCounts parse_event_trace(const std::string& text,
                              std::vector<std::string>* warnings = nullptr);

std::string serialize_event_trace(const EventCounts& events);

/// Technology characterization file (key = value, one per line).
TechCharacterization parse_tech_characterization(const std::string& text);
std::string serialize_tech_characterization(const TechCharacterization& chr);

/// Per-sample ground-truth labels file (component powers + total, watts).
struct LabelSet {
    std::array<double, kComponentCount> component_w{};
    double total_w = 0.0;
};
LabelSet parse_labels(const std::string& text);
std::string serialize_labels(const LabelSet& labels);

/// Technology profile file (key = value); `name_or_path` may also name a
/// built-in profile ("generic").
TechProfile load_tech_profile(const std::string& name_or_path);
TechProfile parse_tech_profile(const std::string& text);

/// The 25 bundled core configurations, 15 BOOM-family (B1..B15) and 10
/// XiangShan-family (X1..X10), ordered small to large within each family.
struct BundledConfig {
    std::string config_id;
    ConfigFamily family;
    HardwareConfig hw;
};
const std::vector<BundledConfig>& bundled_config_table();
const BundledConfig& bundled_config(const std::string& config_id);
std::vector<std::string> family_config_ids(ConfigFamily family);

/// Synthetic event-rate template: rates are per 1000 committed instructions.
/// Event counts also depend on the configuration (cache misses drop with more
/// ways, fetch packets shrink with wider fetch), deterministically.
struct WorkloadProfile {
    std::string name;
    double instructions = 0.0;
    double base_ipc = 0.0;
    double branch_pki = 0.0;
    double mispredict_pki = 0.0;
    double icache_access_pki = 0.0;
    double icache_miss_ratio = 0.0;
    double load_pki = 0.0;
    double store_pki = 0.0;
    double dcache_miss_ratio = 0.0;
    double alu_pki = 0.0;
    double mul_pki = 0.0;
    double fpu_pki = 0.0;
    double wakeup_per_inst = 0.0;
};

/// The eight bundled workload profiles (named after the riscv-tests set they
/// stand in for).
const std::vector<WorkloadProfile>& default_workload_profiles();

/// Deterministic event synthesis for one (configuration, profile) pair.
EventCounts synthesize_events(const HardwareConfig& hw, const WorkloadProfile& profile,
                              double clock_frequency_hz);

struct SyntheticDatasetSpec {
    ConfigFamily family = ConfigFamily::BOOM;
    ParameterSet hidden_params;  // ground-truth parameter values
    std::vector<WorkloadProfile> workload_profiles;  // empty = bundled eight
    double noise_rel_stddev = 0.0;
    std::uint64_t rng_seed = 0;
    double clock_frequency_hz = 1e9;
};

/// Generates one TrainingSample per (family config, workload profile):
/// synthesizes the events, labels them with the hidden-parameter model, and
/// optionally applies multiplicative Gaussian noise. A pure function of the
/// spec (same seed, same dataset).
std::vector<TrainingSample> generate_synthetic_dataset(const SyntheticDatasetSpec& spec,
                                                       const TechProfile& tech);

/// A TechCharacterization consistent with the hidden technology factors: the
/// library probe energies are the model's probe energies scaled by the hidden
/// Tech Array Factor, and likewise for the DFF power.
TechCharacterization characterization_for(const ParameterSet& hidden_params,
                                          const TechProfile& tech);

/// A seeded in-range hidden parameter set for synthetic-oracle experiments:
/// architecture options flipped at random, implementation values drawn from
/// physically plausible bands, technology factors in [0.4, 2.5].
ParameterSet sample_hidden_parameter_set(std::uint64_t seed);

/// Dataset directory layout: `<dir>/<config_id>/design.cfg` plus one
/// `<workload>.events` and one `<workload>.labels` per sample.
void write_dataset_dir(const std::filesystem::path& dir,
                       const std::vector<TrainingSample>& samples,
                       double clock_frequency_hz);
std::vector<TrainingSample> load_dataset_dir(const std::filesystem::path& dir,
                                             std::vector<std::string>* warnings = nullptr);

/// Writes via a temporary file in the same directory, then renames.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

}  // namespace corepower

#endif
