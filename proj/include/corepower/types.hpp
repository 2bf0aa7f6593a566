#ifndef COREPOWER_TYPES_HPP
#define COREPOWER_TYPES_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace corepower {

/// The eleven per-core component slots: ten microarchitectural components
/// plus a catch-all for control/pipeline circuitry not covered elsewhere.
enum class ComponentId : int {
    BP = 0,     // branch predictor
    IFU,        // instruction fetch unit (fetch buffer + fetch control)
    ICache,
    RNU,        // renaming unit
    ROB,        // reorder buffer
    ISU,        // instruction schedule unit (issue window)
    Regfile,    // physical register files (int + fp)
    FUPool,     // functional units (ALU / MUL / FPU)
    LSU,        // load-store unit (LDQ, STQ, DTLB + control)
    DCache,
    OtherLogic, // everything else: misc pipeline and control logic
};

inline constexpr int kComponentCount = 11;

inline constexpr std::array<ComponentId, kComponentCount> kAllComponents = {
    ComponentId::BP,      ComponentId::IFU,    ComponentId::ICache,
    ComponentId::RNU,     ComponentId::ROB,    ComponentId::ISU,
    ComponentId::Regfile, ComponentId::FUPool, ComponentId::LSU,
    ComponentId::DCache,  ComponentId::OtherLogic,
};

const std::string& component_name(ComponentId id);

/// Parses a component name ("BP", "ICache", ...). Throws std::invalid_argument
/// on unknown names.
ComponentId component_from_name(const std::string& name);

/// Static microarchitecture configuration knobs of one core design.
struct HardwareConfig {
    int fetch_width = 0;
    int decode_width = 0;
    int fetch_buffer_entry = 0;
    int rob_entry = 0;
    int int_phy_register = 0;
    int fp_phy_register = 0;
    int ldq_stq_entry = 0;
    int branch_count = 0;
    int mem_fp_issue_width = 0;
    int int_issue_width = 0;
    int dcache_icache_way = 0;
    int dtlb_entry = 0;
    int mshr_entry = 0;
    int icache_fetch_bytes = 0;

    /// Throws std::invalid_argument naming the offending field when any knob
    /// is non-positive or decode_width exceeds fetch_width.
    void validate() const;
};

/// Per-workload dynamic event counters plus the cycle count and clock
/// frequency the workload ran at. Counter ownership (which component's
/// estimate consumes which counter) is documented in model.cpp; cycles and
/// clock_frequency are global (every component's power divides by the
/// execution time they define). decoded_insts drives both IFU and OtherLogic.
struct EventCounts {
    std::uint64_t bp_lookups = 0;
    std::uint64_t bp_updates = 0;
    std::uint64_t bp_mispredictions = 0;
    std::uint64_t icache_hits = 0;
    std::uint64_t icache_misses = 0;
    std::uint64_t decoded_insts = 0;
    std::uint64_t renamed_insts = 0;
    std::uint64_t rob_reads = 0;
    std::uint64_t rob_writes = 0;
    std::uint64_t issue_window_reads = 0;
    std::uint64_t issue_window_writes = 0;
    std::uint64_t issue_window_wakeups = 0;
    std::uint64_t int_regfile_reads = 0;
    std::uint64_t int_regfile_writes = 0;
    std::uint64_t fp_regfile_reads = 0;
    std::uint64_t fp_regfile_writes = 0;
    std::uint64_t int_alu_ops = 0;
    std::uint64_t mul_ops = 0;
    std::uint64_t fpu_ops = 0;
    std::uint64_t loads = 0;
    std::uint64_t stores = 0;
    std::uint64_t dcache_hits = 0;
    std::uint64_t dcache_misses = 0;

    std::uint64_t cycles = 0;
    double clock_frequency_hz = 0.0;

    /// Seconds. Requires cycles > 0 and clock_frequency_hz > 0.
    double execution_time_s() const;

    void validate() const;
};

/// Shape of one SRAM array structure. Dimensions are real-valued so that
/// integer parameters entering the geometry stay smooth under the continuous
/// relaxation used during calibration.
struct ArrayGeometry {
    double rows = 1.0;
    double width_bits = 1.0;
    int read_ports = 1;
    int write_ports = 1;
    int banks = 1;       // banks partition the rows of a fixed capacity
    int duplicates = 1;  // duplicates replicate the whole array; all copies written

    void validate() const;
};

/// Surrogate per-operation energy constants of one technology node. Stands in
/// for the empirical built-in tables a circuit-level estimator would carry.
struct TechProfile {
    std::string node_name;
    double e_bit_read_pj = 0.0;   // read energy per accessed bit
    double e_bit_write_pj = 0.0;  // write energy per accessed bit
    double p_leak_bit_uw = 0.0;   // static leakage per stored bit
    double dff_clock_toggle_power_uw = 0.0;  // worst-case DFF power at 1 GHz
    double dff_leak_power_uw = 0.0;          // static leakage per DFF
    double e_fu_alu_pj = 0.0;  // per-operation functional unit energies
    double e_fu_mul_pj = 0.0;
    double e_fu_fpu_pj = 0.0;

    void validate() const;
};

/// The frequency at which TechProfile::dff_clock_toggle_power_uw is quoted.
inline constexpr double kDffReferenceFreqHz = 1e9;

/// The built-in node every model run defaults to.
TechProfile generic_tech_profile();

struct ComponentPower {
    ComponentId component = ComponentId::BP;
    double dynamic_power_w = 0.0;
    double leakage_power_w = 0.0;

    double total_w() const { return dynamic_power_w + leakage_power_w; }
};

struct PowerReport {
    std::array<ComponentPower, kComponentCount> components{};
    double total_power_w = 0.0;
    double execution_time_s = 0.0;

    const ComponentPower& component(ComponentId id) const {
        return components[static_cast<int>(id)];
    }
};

/// Operation counts for one named structure of a component. Real-valued:
/// event-scaling parameters make effective counts fractional by design.
struct StructureOps {
    std::string structure;
    double read_ops = 0.0;
    double write_ops = 0.0;
    double fu_ops = 0.0;
};

}  // namespace corepower

#endif
