#ifndef COREPOWER_MODEL_HPP
#define COREPOWER_MODEL_HPP

#include <string>
#include <utility>
#include <vector>

#include "corepower/parameters.hpp"
#include "corepower/types.hpp"

namespace corepower {

/// Two-step analytical core power estimator.
///
/// Step 1 sizes the array structures behind each component from the hardware
/// configuration (with geometry-affecting parameters applied) and prices each
/// operation with the closed-form energy model below. Step 2 turns event
/// counters into per-structure operation counts (with event-affecting
/// parameters applied), accumulates energy, and divides by execution time.

enum class ArrayOp { Read, Write };

/// Per-operation energy of one array structure, in pJ:
///   E = e_bit * width * (1 + rows_per_bank / 1024) * tech_array_factor
/// with rows_per_bank = rows / banks. Writes to a duplicated array hit every
/// copy and multiply by `duplicates`; reads hit a single copy.
double array_op_energy(const ArrayGeometry& geom, ArrayOp op,
                       const TechProfile& tech, double tech_array_factor);

/// Per-cycle switching energy of a block of `dff_equiv` flip-flop
/// equivalents, in pJ. `activity` is the fraction of flops toggling.
double logic_energy_per_cycle(double dff_equiv, double activity,
                              const TechProfile& tech,
                              double tech_logic_factor, double logic_factor);

/// Flip-flop equivalents of the logic-dominated components; 0 for the rest.
/// The absolute constants are absorbed by the calibratable logic factors.
double logic_dff_equiv(ComponentId id, const HardwareConfig& hw);

/// Flip-flop equivalents of the functional units (sized by issue widths);
/// anchors FUPool leakage.
double fu_pool_dff_equiv(const HardwareConfig& hw);

/// The array structures backing one component, with every geometry-affecting
/// parameter applied. Throws std::invalid_argument on unknown components and
/// std::overflow_error when a dimension exceeds 2^31 (misconfigured
/// parameters).
std::vector<std::pair<std::string, ArrayGeometry>> instantiate_geometries(
    ComponentId id, const HardwareConfig& hw, const ParameterSet& params);

/// Transforms the component's event counters into per-structure operation
/// counts, applying access scaling (effective = coeff * raw + bias, for cache
/// hits and misses) and the table-access-type discipline. Effective counts
/// that would go negative are clamped to zero; when `warnings` is non-null a
/// note is appended (implausible calibration).
std::vector<StructureOps> events_to_ops(ComponentId id,
                                        const HardwareConfig& hw,
                                        const EventCounts& events,
                                        const ParameterSet& params,
                                        std::vector<std::string>* warnings = nullptr);

/// Dynamic power contribution of one array structure:
///   (read_ops * E_read + write_ops * E_write) / execution_time.
double array_dynamic_power_w(const ArrayGeometry& geom, const StructureOps& ops,
                             const TechProfile& tech, double tech_array_factor,
                             double execution_time_s);

ComponentPower estimate_component(ComponentId id, const HardwareConfig& hw,
                                  const EventCounts& events,
                                  const ParameterSet& params,
                                  const TechProfile& tech,
                                  std::vector<std::string>* warnings = nullptr);

/// Runs all 11 component estimates and sums them. Pure: identical inputs
/// produce bit-identical reports.
PowerReport estimate_core(const HardwareConfig& hw, const EventCounts& events,
                          const ParameterSet& params, const TechProfile& tech,
                          std::vector<std::string>* warnings = nullptr);

namespace model_constants {
// Fixed shapes of the surrogate structures. Everything configurable about a
// real design that these constants flatten is recovered by the calibratable
// parameters.
inline constexpr double kCacheSets = 256.0;
inline constexpr double kCacheLineBits = 512.0;  // 64-byte lines
inline constexpr double kCacheTagBits = 20.0;
inline constexpr double kBpGlobalRows = 4096.0;
inline constexpr double kBpChooserRows = 4096.0;
inline constexpr double kBpLocalRows = 1024.0;
inline constexpr double kBpCounterBits = 2.0;
inline constexpr double kBpSnapshotBits = 128.0;
inline constexpr double kScalabilityBaseFetchWidth = 4.0;
inline constexpr double kRegWidthBits = 64.0;
inline constexpr double kRobBaseEntryBits = 64.0;
inline constexpr double kIsuBaseEntryBits = 40.0;
inline constexpr double kIsuEntriesPerIssueSlot = 16.0;
inline constexpr double kLdqEntryBits = 96.0;
inline constexpr double kStqEntryBits = 160.0;
inline constexpr double kDtlbEntryBits = 56.0;
inline constexpr double kMshrEntryBits = 64.0;
inline constexpr double kMapTableRows = 64.0;  // 32 int + 32 fp architectural regs

// Flip-flop equivalents per functional unit.
inline constexpr double kAluDff = 1200.0;
inline constexpr double kMulDff = 4000.0;
inline constexpr double kFpuDff = 9000.0;
}  // namespace model_constants

}  // namespace corepower

#endif
