#include "corepower/model.hpp"

#include <cmath>
#include <stdexcept>

// Component decomposition
// -----------------------
// Each component is a set of named array structures plus, for the four
// logic-dominated components, a block of flip-flop equivalents. Event
// counters map to per-structure operations as follows (counter ownership in
// parentheses; decoded_insts drives both IFU and OtherLogic):
//
//  BP      (bp_*)           lookup reads the predictor tables (all three in
//                           parallel for Low Latency; chooser plus the one
//                           selected table, i.e. half of global/local each,
//                           for Low Power); update writes all three; each
//                           misprediction reads + writes the snapshot array.
//  IFU     (decoded_insts)  one fetch-buffer read per decoded instruction,
//                           one write per fetch packet (decoded/FetchWidth).
//  ICache  (icache_*)       effective counts = coeff*raw + bias; every access
//                           reads the tag array; data reads per access follow
//                           the table access type (all ways vs one); each
//                           effective miss writes tag and data (line fill).
//  RNU     (renamed_insts)  2 map-table reads + 1 write per renamed
//                           instruction; free list read + write per rename.
//  ROB     (rob_*)          reads/writes as counted.
//  ISU     (issue_window_*) window reads = reads + wakeups (the wakeup CAM
//                           broadcast is priced as one entry-width read);
//                           writes as counted.
//  Regfile (.._regfile_*)   reads/writes as counted, per register file.
//  FUPool  (*_ops)          one functional-unit operation per counted op.
//  LSU     (loads, stores)  LDQ read+write per load; STQ write per store and
//                           read per store and per load (forwarding search);
//                           DTLB read per load and store.
//  DCache  (dcache_*)       as ICache but with a fixed one-way data read
//                           discipline, plus MSHR read+write per effective
//                           miss.
//  OtherLogic (decoded_insts) pure logic, no arrays.

namespace corepower {

namespace mc = model_constants;

namespace {

constexpr double kGeomLimit = 2147483648.0;  // 2^31

void require_known_component(ComponentId id) {
    int v = static_cast<int>(id);
    if (v < 0 || v >= kComponentCount) {
        throw std::invalid_argument("unknown component id " + std::to_string(v));
    }
}

double scal_factor(const ParameterSet& params, ComponentId comp,
                   const HardwareConfig& hw) {
    return params.scalability(comp)
               ? static_cast<double>(hw.fetch_width) / mc::kScalabilityBaseFetchWidth
               : 1.0;
}

double clamp_activity(double x) {
    if (x < 0.0) return 0.0;
    if (x > 1.0) return 1.0;
    return x;
}

int fu_alu_count(const HardwareConfig& hw) { return hw.int_issue_width; }
int fu_mul_count(const HardwareConfig& hw) { return (hw.int_issue_width + 1) / 2; }
int fu_fpu_count(const HardwareConfig& hw) { return hw.mem_fp_issue_width; }

/// Effective access count after the linear event-scaling injection.
double effective_count(double raw, double coeff, double bias, ComponentId comp,
                       std::vector<std::string>* warnings) {
    double eff = coeff * raw + bias;
    if (eff < 0.0) {
        if (warnings) {
            warnings->push_back(component_name(comp) +
                                ": negative effective access count clamped to 0 "
                                "(implausible access coefficient/bias)");
        }
        eff = 0.0;
    }
    return eff;
}

}  // namespace

double array_op_energy(const ArrayGeometry& geom, ArrayOp op, const TechProfile& tech,
                       double tech_array_factor) {
    geom.validate();
    if (!(tech_array_factor > 0.0)) {
        throw std::invalid_argument("tech_array_factor must be > 0");
    }
    double e_bit = op == ArrayOp::Read ? tech.e_bit_read_pj : tech.e_bit_write_pj;
    double rows_per_bank = geom.rows / static_cast<double>(geom.banks);
    double energy =
        e_bit * geom.width_bits * (1.0 + rows_per_bank / 1024.0) * tech_array_factor;
    if (op == ArrayOp::Write) {
        energy *= static_cast<double>(geom.duplicates);
    }
    return energy;
}

double logic_energy_per_cycle(double dff_equiv, double activity, const TechProfile& tech,
                              double tech_logic_factor, double logic_factor) {
    if (dff_equiv < 0.0 || activity < 0.0 || tech_logic_factor < 0.0 ||
        logic_factor < 0.0) {
        throw std::invalid_argument("logic energy arguments must be non-negative");
    }
    // Toggle power at the 1 GHz reference is energy per cycle: 1 uW / 1 GHz
    // = 1e-3 pJ.
    double e_dff_pj = tech.dff_clock_toggle_power_uw / (kDffReferenceFreqHz / 1e9) * 1e-3;
    return dff_equiv * e_dff_pj * activity * tech_logic_factor * logic_factor;
}

double logic_dff_equiv(ComponentId id, const HardwareConfig& hw) {
    switch (id) {
        case ComponentId::IFU:
            return 64.0 * hw.fetch_width * 8.0;
        case ComponentId::RNU:
            return 32.0 * hw.decode_width * 8.0;
        case ComponentId::LSU:
            return 48.0 * hw.ldq_stq_entry;
        case ComponentId::OtherLogic:
            return 256.0 * hw.decode_width * 8.0;
        default:
            return 0.0;
    }
}

double fu_pool_dff_equiv(const HardwareConfig& hw) {
    return fu_alu_count(hw) * mc::kAluDff + fu_mul_count(hw) * mc::kMulDff +
           fu_fpu_count(hw) * mc::kFpuDff;
}

std::vector<std::pair<std::string, ArrayGeometry>> instantiate_geometries(
    ComponentId id, const HardwareConfig& hw, const ParameterSet& params) {
    require_known_component(id);
    hw.validate();
    std::vector<std::pair<std::string, ArrayGeometry>> out;

    auto push = [&](const std::string& name, double rows, double width, int rp, int wp,
                    int banks, int duplicates) {
        if (rows > kGeomLimit || width > kGeomLimit) {
            throw std::overflow_error(component_name(id) + "/" + name +
                                      ": array dimension exceeds 2^31; check parameters");
        }
        ArrayGeometry g;
        g.rows = rows;
        g.width_bits = width;
        g.read_ports = rp;
        g.write_ports = wp;
        g.banks = banks;
        g.duplicates = duplicates;
        g.validate();
        out.emplace_back(name, g);
    };

    const double ways = hw.dcache_icache_way;

    switch (id) {
        case ComponentId::BP: {
            double s = scal_factor(params, ComponentId::BP, hw);
            double gif = params.get(ParamId::BpGlobalInfoFactor);
            double lif = params.get(ParamId::BpLocalInfoFactor);
            push("global", mc::kBpGlobalRows * gif * s, mc::kBpCounterBits, 1, 1, 1, 1);
            push("local", mc::kBpLocalRows * lif * s, mc::kBpCounterBits, 1, 1, 1, 1);
            push("chooser", mc::kBpChooserRows * gif * s, mc::kBpCounterBits, 1, 1, 1, 1);
            push("snapshot", hw.branch_count, mc::kBpSnapshotBits, 1, 1, 1, 1);
            break;
        }
        case ComponentId::IFU: {
            double packet_bits = 8.0 * hw.icache_fetch_bytes * hw.fetch_width;
            push("fetch_buffer", hw.fetch_buffer_entry, packet_bits, 1, 1, 1, 1);
            break;
        }
        case ComponentId::ICache: {
            double s = scal_factor(params, ComponentId::ICache, hw);
            double meta = params.get(ParamId::IcacheMetaDataBit);
            push("tag", mc::kCacheSets * ways, mc::kCacheTagBits + meta, 1, 1, 1, 1);
            push("data", mc::kCacheSets * ways, mc::kCacheLineBits * s, 1, 1, 1, 1);
            break;
        }
        case ComponentId::RNU: {
            double ptr_bits = std::ceil(std::log2(static_cast<double>(hw.int_phy_register)));
            push("map_table", mc::kMapTableRows, ptr_bits, 2 * hw.decode_width,
                 hw.decode_width, 1, 1);
            push("free_list", hw.int_phy_register, ptr_bits, 1, 1, 1, 1);
            break;
        }
        case ComponentId::ROB: {
            double width = mc::kRobBaseEntryBits + params.get(ParamId::RobEntryWidth);
            push("rob", hw.rob_entry, width, hw.decode_width, hw.decode_width, 1, 1);
            break;
        }
        case ComponentId::ISU: {
            double entries = mc::kIsuEntriesPerIssueSlot *
                             (hw.int_issue_width + hw.mem_fp_issue_width);
            double width = mc::kIsuBaseEntryBits + params.get(ParamId::InstWindowWidth);
            push("issue_window", entries, width,
                 hw.int_issue_width + hw.mem_fp_issue_width, hw.decode_width, 1, 1);
            break;
        }
        case ComponentId::Regfile: {
            double pw = params.get(ParamId::PhysicalRegfileWidth);
            push("int_rf", hw.int_phy_register, mc::kRegWidthBits * pw,
                 2 * hw.int_issue_width, hw.int_issue_width, 1, 1);
            push("fp_rf", hw.fp_phy_register, mc::kRegWidthBits * pw,
                 3 * hw.mem_fp_issue_width, hw.mem_fp_issue_width, 1, 1);
            break;
        }
        case ComponentId::FUPool:
            break;  // functional units are logic, not arrays
        case ComponentId::LSU: {
            push("ldq", hw.ldq_stq_entry, mc::kLdqEntryBits, 1, 1, 1, 1);
            push("stq", hw.ldq_stq_entry, mc::kStqEntryBits, 1, 1, 1, 1);
            push("dtlb", hw.dtlb_entry, mc::kDtlbEntryBits, 1, 1, 1, 1);
            break;
        }
        case ComponentId::DCache: {
            double meta = params.get(ParamId::DcacheMetaDataBit);
            int banks = 1;
            int duplicates = 1;
            if (params.multi_port_design() == MultiPortDesign::MultiBanking) {
                banks = hw.mem_fp_issue_width;
            } else {
                duplicates = hw.mem_fp_issue_width;
            }
            push("tag", mc::kCacheSets * ways, mc::kCacheTagBits + meta, 1, 1, 1, 1);
            push("data", mc::kCacheSets * ways, mc::kCacheLineBits, 1, 1, banks,
                 duplicates);
            push("mshr", hw.mshr_entry, mc::kMshrEntryBits, 1, 1, 1, 1);
            break;
        }
        case ComponentId::OtherLogic:
            break;  // pure logic
    }
    return out;
}

std::vector<StructureOps> events_to_ops(ComponentId id, const HardwareConfig& hw,
                                        const EventCounts& events,
                                        const ParameterSet& params,
                                        std::vector<std::string>* warnings) {
    require_known_component(id);
    std::vector<StructureOps> out;
    auto push = [&](const std::string& name, double reads, double writes,
                    double fu = 0.0) {
        out.push_back(StructureOps{name, reads, writes, fu});
    };

    switch (id) {
        case ComponentId::BP: {
            double lookups = static_cast<double>(events.bp_lookups);
            double updates = static_cast<double>(events.bp_updates);
            double misp = static_cast<double>(events.bp_mispredictions);
            bool parallel = params.access_type(ComponentId::BP) == TableAccessType::LowLatency;
            // Low Power reads the chooser, then only the table it selects.
            double table_reads = parallel ? lookups : 0.5 * lookups;
            push("global", table_reads, updates);
            push("local", table_reads, updates);
            push("chooser", lookups, updates);
            push("snapshot", misp, misp);
            break;
        }
        case ComponentId::IFU: {
            double decoded = static_cast<double>(events.decoded_insts);
            push("fetch_buffer", decoded, decoded / hw.fetch_width);
            break;
        }
        case ComponentId::ICache: {
            double coeff = params.get(ParamId::IcacheAccessCoefficient);
            double bias = params.get(ParamId::IcacheAccessBias);
            double eff_hits = effective_count(static_cast<double>(events.icache_hits),
                                              coeff, bias, id, warnings);
            double eff_misses = effective_count(static_cast<double>(events.icache_misses),
                                                coeff, bias, id, warnings);
            double accesses = eff_hits + eff_misses;
            bool parallel =
                params.access_type(ComponentId::ICache) == TableAccessType::LowLatency;
            double way_reads = parallel ? accesses * hw.dcache_icache_way : accesses;
            push("tag", accesses, eff_misses);
            push("data", way_reads, eff_misses);
            break;
        }
        case ComponentId::RNU: {
            double renamed = static_cast<double>(events.renamed_insts);
            push("map_table", 2.0 * renamed, renamed);
            push("free_list", renamed, renamed);
            break;
        }
        case ComponentId::ROB:
            push("rob", static_cast<double>(events.rob_reads),
                 static_cast<double>(events.rob_writes));
            break;
        case ComponentId::ISU: {
            double reads = static_cast<double>(events.issue_window_reads) +
                           static_cast<double>(events.issue_window_wakeups);
            push("issue_window", reads, static_cast<double>(events.issue_window_writes));
            break;
        }
        case ComponentId::Regfile:
            push("int_rf", static_cast<double>(events.int_regfile_reads),
                 static_cast<double>(events.int_regfile_writes));
            push("fp_rf", static_cast<double>(events.fp_regfile_reads),
                 static_cast<double>(events.fp_regfile_writes));
            break;
        case ComponentId::FUPool:
            push("alu", 0.0, 0.0, static_cast<double>(events.int_alu_ops));
            push("mul", 0.0, 0.0, static_cast<double>(events.mul_ops));
            push("fpu", 0.0, 0.0, static_cast<double>(events.fpu_ops));
            break;
        case ComponentId::LSU: {
            double loads = static_cast<double>(events.loads);
            double stores = static_cast<double>(events.stores);
            push("ldq", loads, loads);
            push("stq", stores + loads, stores);
            push("dtlb", loads + stores, 0.0);
            break;
        }
        case ComponentId::DCache: {
            double coeff = params.get(ParamId::DcacheAccessCoefficient);
            double bias = params.get(ParamId::DcacheAccessBias);
            double eff_hits = effective_count(static_cast<double>(events.dcache_hits),
                                              coeff, bias, id, warnings);
            double eff_misses = effective_count(static_cast<double>(events.dcache_misses),
                                                coeff, bias, id, warnings);
            double accesses = eff_hits + eff_misses;
            push("tag", accesses, eff_misses);
            push("data", accesses, eff_misses);
            push("mshr", eff_misses, eff_misses);
            break;
        }
        case ComponentId::OtherLogic:
            break;
    }
    return out;
}

double array_dynamic_power_w(const ArrayGeometry& geom, const StructureOps& ops,
                             const TechProfile& tech, double tech_array_factor,
                             double execution_time_s) {
    if (!(execution_time_s > 0.0)) {
        throw std::invalid_argument("execution time must be > 0");
    }
    double energy_pj =
        ops.read_ops * array_op_energy(geom, ArrayOp::Read, tech, tech_array_factor) +
        ops.write_ops * array_op_energy(geom, ArrayOp::Write, tech, tech_array_factor);
    return energy_pj * 1e-12 / execution_time_s;
}

namespace {

double component_logic_factor(ComponentId id, const ParameterSet& params) {
    switch (id) {
        case ComponentId::IFU:
            return params.get(ParamId::IfuLogicFactor);
        case ComponentId::RNU:
            return params.get(ParamId::RnuLogicFactor);
        case ComponentId::LSU:
            return params.get(ParamId::LsuLogicFactor);
        case ComponentId::OtherLogic:
            return params.get(ParamId::OtherLogicFactor);
        default:
            return 1.0;
    }
}

double component_logic_activity(ComponentId id, const HardwareConfig& hw,
                                const EventCounts& events) {
    double cycles = static_cast<double>(events.cycles);
    switch (id) {
        case ComponentId::IFU:
            return clamp_activity(static_cast<double>(events.decoded_insts) /
                                  (cycles * hw.fetch_width));
        case ComponentId::RNU:
            return clamp_activity(static_cast<double>(events.renamed_insts) /
                                  (cycles * hw.decode_width));
        case ComponentId::LSU:
            return clamp_activity(
                (static_cast<double>(events.loads) + static_cast<double>(events.stores)) /
                (cycles * hw.mem_fp_issue_width));
        case ComponentId::OtherLogic:
            return clamp_activity(static_cast<double>(events.decoded_insts) /
                                  (cycles * hw.decode_width));
        default:
            return 0.0;
    }
}

}  // namespace

ComponentPower estimate_component(ComponentId id, const HardwareConfig& hw,
                                  const EventCounts& events, const ParameterSet& params,
                                  const TechProfile& tech,
                                  std::vector<std::string>* warnings) {
    events.validate();
    tech.validate();
    double exec_time = events.execution_time_s();
    double cycles = static_cast<double>(events.cycles);
    double taf = params.get(ParamId::TechArrayFactor);
    double tlf = params.get(ParamId::TechLogicFactor);

    auto geoms = instantiate_geometries(id, hw, params);
    auto ops = events_to_ops(id, hw, events, params, warnings);

    ComponentPower power;
    power.component = id;

    // Array structures: op-driven dynamic energy plus per-bit leakage.
    // Duplicated copies leak in full; banks only partition a fixed capacity.
    for (const auto& [name, geom] : geoms) {
        for (const auto& op : ops) {
            if (op.structure != name) continue;
            power.dynamic_power_w +=
                array_dynamic_power_w(geom, op, tech, taf, exec_time);
        }
        power.leakage_power_w += tech.p_leak_bit_uw * geom.rows * geom.width_bits *
                                 geom.duplicates * taf * 1e-6;
    }

    // Functional units: per-operation energy scaled by the per-kind power
    // scale; leakage anchored on flip-flop equivalents.
    if (id == ComponentId::FUPool) {
        double fu_energy_pj = 0.0;
        for (const auto& op : ops) {
            if (op.structure == "alu") {
                fu_energy_pj +=
                    op.fu_ops * tech.e_fu_alu_pj * params.get(ParamId::AluPowerScale);
            } else if (op.structure == "mul") {
                fu_energy_pj +=
                    op.fu_ops * tech.e_fu_mul_pj * params.get(ParamId::MulPowerScale);
            } else if (op.structure == "fpu") {
                fu_energy_pj +=
                    op.fu_ops * tech.e_fu_fpu_pj * params.get(ParamId::FpuPowerScale);
            }
        }
        power.dynamic_power_w += fu_energy_pj * tlf * 1e-12 / exec_time;
        power.leakage_power_w +=
            fu_pool_dff_equiv(hw) * tech.dff_leak_power_uw * tlf * 1e-6;
    }

    // Logic blocks.
    double dff = logic_dff_equiv(id, hw);
    if (dff > 0.0) {
        double lf = component_logic_factor(id, params);
        double activity = component_logic_activity(id, hw, events);
        double e_cycle_pj = logic_energy_per_cycle(dff, activity, tech, tlf, lf);
        power.dynamic_power_w += e_cycle_pj * cycles * 1e-12 / exec_time;
        power.leakage_power_w += dff * tech.dff_leak_power_uw * tlf * lf * 1e-6;
    }

    return power;
}

PowerReport estimate_core(const HardwareConfig& hw, const EventCounts& events,
                          const ParameterSet& params, const TechProfile& tech,
                          std::vector<std::string>* warnings) {
    PowerReport report;
    report.execution_time_s = events.execution_time_s();
    double total = 0.0;
    for (ComponentId id : kAllComponents) {
        ComponentPower p = estimate_component(id, hw, events, params, tech, warnings);
        report.components[static_cast<int>(id)] = p;
        total += p.dynamic_power_w + p.leakage_power_w;
    }
    report.total_power_w = total;
    return report;
}

}  // namespace corepower
