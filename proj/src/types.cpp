#include "corepower/types.hpp"

#include <stdexcept>

namespace corepower {

namespace {

const std::array<std::string, kComponentCount> kComponentNames = {
    "BP", "IFU", "ICache", "RNU", "ROB", "ISU",
    "Regfile", "FUPool", "LSU", "DCache", "OtherLogic",
};

void require_positive(long long value, const char* field) {
    if (value <= 0) {
        throw std::invalid_argument(std::string(field) + " must be strictly positive, got " +
                                    std::to_string(value));
    }
}

}  // namespace

const std::string& component_name(ComponentId id) {
    return kComponentNames[static_cast<int>(id)];
}

ComponentId component_from_name(const std::string& name) {
    for (int i = 0; i < kComponentCount; ++i) {
        if (kComponentNames[i] == name) return static_cast<ComponentId>(i);
    }
    throw std::invalid_argument("unknown component '" + name + "'");
}

void HardwareConfig::validate() const {
    require_positive(fetch_width, "FetchWidth");
    require_positive(decode_width, "DecodeWidth");
    require_positive(fetch_buffer_entry, "FetchBufferEntry");
    require_positive(rob_entry, "RobEntry");
    require_positive(int_phy_register, "IntPhyRegister");
    require_positive(fp_phy_register, "FpPhyRegister");
    require_positive(ldq_stq_entry, "LdqStqEntry");
    require_positive(branch_count, "BranchCount");
    require_positive(mem_fp_issue_width, "MemFpIssueWidth");
    require_positive(int_issue_width, "IntIssueWidth");
    require_positive(dcache_icache_way, "DCacheICacheWay");
    require_positive(dtlb_entry, "DTLBEntry");
    require_positive(mshr_entry, "MSHREntry");
    require_positive(icache_fetch_bytes, "ICacheFetchBytes");
    if (decode_width > fetch_width) {
        throw std::invalid_argument("DecodeWidth (" + std::to_string(decode_width) +
                                    ") must not exceed FetchWidth (" +
                                    std::to_string(fetch_width) + ")");
    }
}

double EventCounts::execution_time_s() const {
    validate();
    return static_cast<double>(cycles) / clock_frequency_hz;
}

void EventCounts::validate() const {
    if (cycles == 0) throw std::invalid_argument("cycles must be > 0");
    if (!(clock_frequency_hz > 0.0)) {
        throw std::invalid_argument("clock_frequency_hz must be > 0");
    }
}

void ArrayGeometry::validate() const {
    if (!(rows >= 1.0)) throw std::invalid_argument("array rows must be >= 1");
    if (!(width_bits >= 1.0)) throw std::invalid_argument("array width must be >= 1");
    if (read_ports < 1 || write_ports < 1) {
        throw std::invalid_argument("array ports must be >= 1");
    }
    if (banks < 1) throw std::invalid_argument("array banks must be >= 1");
    if (duplicates < 1) throw std::invalid_argument("array duplicates must be >= 1");
}

void TechProfile::validate() const {
    auto positive = [](double v, const char* field) {
        if (!(v > 0.0)) {
            throw std::invalid_argument(std::string("tech profile ") + field +
                                        " must be strictly positive");
        }
    };
    positive(e_bit_read_pj, "e_bit_read_pj");
    positive(e_bit_write_pj, "e_bit_write_pj");
    positive(p_leak_bit_uw, "p_leak_bit_uw");
    positive(dff_clock_toggle_power_uw, "dff_clock_toggle_power_uw");
    positive(dff_leak_power_uw, "dff_leak_power_uw");
    positive(e_fu_alu_pj, "e_fu_alu_pj");
    positive(e_fu_mul_pj, "e_fu_mul_pj");
    positive(e_fu_fpu_pj, "e_fu_fpu_pj");
}

TechProfile generic_tech_profile() {
    TechProfile tech;
    tech.node_name = "generic";
    tech.e_bit_read_pj = 0.05;
    tech.e_bit_write_pj = 0.06;
    tech.p_leak_bit_uw = 1.5e-3;
    tech.dff_clock_toggle_power_uw = 2.0;
    tech.dff_leak_power_uw = 0.04;
    tech.e_fu_alu_pj = 5.0;
    tech.e_fu_mul_pj = 15.0;
    tech.e_fu_fpu_pj = 25.0;
    return tech;
}

}  // namespace corepower
