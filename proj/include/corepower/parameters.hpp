#ifndef COREPOWER_PARAMETERS_HPP
#define COREPOWER_PARAMETERS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "corepower/types.hpp"

namespace corepower {

enum class ParamLevel : int { Architecture = 0, Implementation, Technology };

const std::string& level_name(ParamLevel level);
ParamLevel level_from_name(const std::string& name);

enum class ValueType : int { Enum, Bool, Int, Float };

/// Cache/table access discipline: Low Latency probes every way (or predictor
/// table) in parallel, Low Power serializes and touches exactly one.
enum class TableAccessType : int { LowLatency = 0, LowPower = 1 };

/// How the DCache data array provides multi-port access.
enum class MultiPortDesign : int { MultiBanking = 0, DuplicatedArray = 1 };

/// The 25 injected parameters, in registry order: 5 architecture-level,
/// then 18 implementation-level, then 2 technology-level.
enum class ParamId : int {
    IcacheTableAccessType = 0,
    IcacheScalability,
    BpTableAccessType,
    BpScalability,
    DcacheMultiPortDesign,

    BpGlobalInfoFactor,
    BpLocalInfoFactor,
    IcacheMetaDataBit,
    IfuLogicFactor,
    RnuLogicFactor,
    LsuLogicFactor,
    DcacheMetaDataBit,
    PhysicalRegfileWidth,
    InstWindowWidth,
    RobEntryWidth,
    FpuPowerScale,
    AluPowerScale,
    MulPowerScale,
    OtherLogicFactor,
    IcacheAccessCoefficient,
    IcacheAccessBias,
    DcacheAccessCoefficient,
    DcacheAccessBias,

    TechLogicFactor,
    TechArrayFactor,
};

inline constexpr int kParamCount = 25;
inline constexpr int kArchParamCount = 5;
inline constexpr int kImplParamCount = 18;
inline constexpr int kTechParamCount = 2;

/// Identity, type, range and default of one injected parameter.
struct ParameterSpec {
    ParamId id;
    std::string name;  // unique, e.g. "ICache Table Access Type"
    ParamLevel level;
    ComponentId component;     // owning component; tech factors are global
    bool global = false;       // true only for the two technology factors
    ValueType value_type;
    double min_value = 0.0;    // numeric range, closed; enums/bools use [0, n-1]
    double max_value = 0.0;
    std::vector<std::string> enum_values;  // for Enum/Bool: value names by index
    double default_value = 0.0;
    /// True when the model output is exactly linear in this parameter, so a
    /// finite-difference slope computed once stays valid for every iterate.
    bool linear = false;
};

/// The immutable table of all 25 parameter specs, in registry order.
const std::array<ParameterSpec, kParamCount>& parameter_registry();

const ParameterSpec& param_spec(ParamId id);

/// Lookup by unique name. Throws std::invalid_argument for unknown names.
ParamId param_from_name(const std::string& name);

/// Implementation-level parameters owned by one component, registry order.
std::vector<ParamId> implementation_params_of(ComponentId component);

enum class Provenance : int { Default = 0, UserSupplied, Calibrated };

const std::string& provenance_name(Provenance p);
Provenance provenance_from_name(const std::string& name);

/// One concrete value per registered parameter plus a provenance tag per
/// level. Values are stored as doubles: enum/bool values hold the index of
/// the active variant, integer parameters hold an integral value once
/// clamped, and may hold fractional iterates during calibration.
class ParameterSet {
  public:
    /// All values at their registry defaults, provenance Default everywhere.
    ParameterSet();

    double get(ParamId id) const { return values_[static_cast<int>(id)]; }
    void set(ParamId id, double value) { values_[static_cast<int>(id)] = value; }

    TableAccessType access_type(ComponentId cache) const;
    bool scalability(ComponentId component) const;
    MultiPortDesign multi_port_design() const;

    Provenance provenance(ParamLevel level) const {
        return provenance_[static_cast<int>(level)];
    }
    void set_provenance(ParamLevel level, Provenance p) {
        provenance_[static_cast<int>(level)] = p;
    }

    bool operator==(const ParameterSet& other) const = default;

  private:
    std::array<double, kParamCount> values_;
    std::array<Provenance, 3> provenance_;
};

ParameterSet default_parameter_set();

/// Projects every numeric value onto its closed range and snaps enum/bool
/// values to the nearest valid variant index. Idempotent; in-range values
/// pass through untouched.
ParameterSet clamp(const ParameterSet& set);

/// True when every value already lies within its spec's range.
bool in_range(const ParameterSet& set);

/// Resets every parameter of `level` to its default (used to build the
/// w/o-Arch / w/o-Impl / w/o-Tech ablation variants). Other levels untouched.
ParameterSet reset_level(const ParameterSet& set, ParamLevel level);

/// Round integer-typed parameters to the nearest integral value (clamped).
ParameterSet round_integer_params(const ParameterSet& set);

/// Line-oriented text form: a format_version header, one provenance line per
/// level, then one `name = value # level` line per parameter in registry
/// order. parse(serialize(s)) == s bit-exactly.
std::string serialize_parameter_set(const ParameterSet& set);

/// Strict parse: rejects malformed lines, unknown or duplicate parameters,
/// out-of-range values (they signal a corrupted artifact, so no clamping),
/// and files missing any of the 25 parameters.
ParameterSet parse_parameter_file(const std::string& text);

}  // namespace corepower

#endif
