#include "corepower/data_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace corepower {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

struct KvLine {
    int line_no;
    std::string key;
    std::string value;
    std::string section;  // empty outside any [section]
};

/// Key-value lines with optional [section] headers; '#' starts a comment.
std::vector<KvLine> parse_kv_lines(const std::string& text) {
    std::vector<KvLine> out;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw std::invalid_argument("line " + std::to_string(line_no) +
                                            ": malformed section header '" + line + "'");
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": expected 'key = value', got '" + line + "'");
        }
        out.push_back(KvLine{line_no, trim(line.substr(0, eq)), trim(line.substr(eq + 1)),
                             section});
    }
    return out;
}

double parse_double(const KvLine& kv) {
    char* end = nullptr;
    double v = std::strtod(kv.value.c_str(), &end);
    if (end == kv.value.c_str() || *end != '\0') {
        throw std::invalid_argument("line " + std::to_string(kv.line_no) + ": key '" +
                                    kv.key + "' has invalid numeric value '" + kv.value +
                                    "'");
    }
    return v;
}

long long parse_integer(const KvLine& kv) {
    char* end = nullptr;
    long long v = std::strtoll(kv.value.c_str(), &end, 10);
    if (end == kv.value.c_str() || *end != '\0') {
        throw std::invalid_argument("line " + std::to_string(kv.line_no) + ": key '" +
                                    kv.key + "' has invalid integer value '" + kv.value +
                                    "'");
    }
    return v;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const std::array<std::string, 14> kHardwareKeys = {
    "FetchWidth",     "DecodeWidth", "FetchBufferEntry", "RobEntry",
    "IntPhyRegister", "FpPhyRegister", "LdqStqEntry",    "BranchCount",
    "MemFpIssueWidth", "IntIssueWidth", "DCacheICacheWay", "DTLBEntry",
    "MSHREntry",      "ICacheFetchBytes",
};

int* hardware_field(HardwareConfig& hw, const std::string& key) {
    if (key == "FetchWidth") return &hw.fetch_width;
    if (key == "DecodeWidth") return &hw.decode_width;
    if (key == "FetchBufferEntry") return &hw.fetch_buffer_entry;
    if (key == "RobEntry") return &hw.rob_entry;
    if (key == "IntPhyRegister") return &hw.int_phy_register;
    if (key == "FpPhyRegister") return &hw.fp_phy_register;
    if (key == "LdqStqEntry") return &hw.ldq_stq_entry;
    if (key == "BranchCount") return &hw.branch_count;
    if (key == "MemFpIssueWidth") return &hw.mem_fp_issue_width;
    if (key == "IntIssueWidth") return &hw.int_issue_width;
    if (key == "DCacheICacheWay") return &hw.dcache_icache_way;
    if (key == "DTLBEntry") return &hw.dtlb_entry;
    if (key == "MSHREntry") return &hw.mshr_entry;
    if (key == "ICacheFetchBytes") return &hw.icache_fetch_bytes;
    return nullptr;
}

const std::array<std::pair<const char*, std::uint64_t EventCounts::*>, 23> kEventFields =
    {{
        {"bp_lookups", &EventCounts::bp_lookups},
        {"bp_updates", &EventCounts::bp_updates},
        {"bp_mispredictions", &EventCounts::bp_mispredictions},
        {"icache_hits", &EventCounts::icache_hits},
        {"icache_misses", &EventCounts::icache_misses},
        {"decoded_insts", &EventCounts::decoded_insts},
        {"renamed_insts", &EventCounts::renamed_insts},
        {"rob_reads", &EventCounts::rob_reads},
        {"rob_writes", &EventCounts::rob_writes},
        {"issue_window_reads", &EventCounts::issue_window_reads},
        {"issue_window_writes", &EventCounts::issue_window_writes},
        {"issue_window_wakeups", &EventCounts::issue_window_wakeups},
        {"int_regfile_reads", &EventCounts::int_regfile_reads},
        {"int_regfile_writes", &EventCounts::int_regfile_writes},
        {"fp_regfile_reads", &EventCounts::fp_regfile_reads},
        {"fp_regfile_writes", &EventCounts::fp_regfile_writes},
        {"int_alu_ops", &EventCounts::int_alu_ops},
        {"mul_ops", &EventCounts::mul_ops},
        {"fpu_ops", &EventCounts::fpu_ops},
        {"loads", &EventCounts::loads},
        {"stores", &EventCounts::stores},
        {"dcache_hits", &EventCounts::dcache_hits},
        {"dcache_misses", &EventCounts::dcache_misses},
    }};

std::uint64_t to_count(double v) {
    return v <= 0.0 ? 0 : static_cast<std::uint64_t>(std::llround(v));
}

}  // namespace

DesignConfig parse_design_config(const std::string& text) {
    DesignConfig config;
    config.arch_params = default_parameter_set();

    std::map<std::string, bool> seen_hw;
    bool seen_clock = false;

    for (const auto& kv : parse_kv_lines(text)) {
        if (kv.section == "hardware") {
            if (kv.key == "clock_frequency_hz") {
                config.clock_frequency_hz = parse_double(kv);
                if (!(config.clock_frequency_hz > 0.0)) {
                    throw std::invalid_argument("line " + std::to_string(kv.line_no) +
                                                ": clock_frequency_hz must be > 0");
                }
                seen_clock = true;
                continue;
            }
            int* field = hardware_field(config.hw, kv.key);
            if (field == nullptr) {
                throw std::invalid_argument("line " + std::to_string(kv.line_no) +
                                            ": unknown hardware key '" + kv.key + "'");
            }
            if (seen_hw[kv.key]) {
                throw std::invalid_argument("line " + std::to_string(kv.line_no) +
                                            ": duplicate hardware key '" + kv.key + "'");
            }
            long long v = parse_integer(kv);
            if (v <= 0 || v > 1'000'000) {
                throw std::invalid_argument("line " + std::to_string(kv.line_no) +
                                            ": hardware key '" + kv.key +
                                            "' out of range: " + kv.value);
            }
            *field = static_cast<int>(v);
            seen_hw[kv.key] = true;
        } else if (kv.section == "architecture") {
            ParamId id;
            try {
                id = param_from_name(kv.key);
            } catch (const std::invalid_argument&) {
                throw std::invalid_argument("line " + std::to_string(kv.line_no) +
                                            ": unknown architecture key '" + kv.key + "'");
            }
            const ParameterSpec& spec = param_spec(id);
            if (spec.level != ParamLevel::Architecture) {
                throw std::invalid_argument("line " + std::to_string(kv.line_no) + ": '" +
                                            kv.key + "' is not an architecture-level key");
            }
            bool matched = false;
            for (size_t i = 0; i < spec.enum_values.size(); ++i) {
                if (spec.enum_values[i] == kv.value) {
                    config.arch_params.set(id, static_cast<double>(i));
                    matched = true;
                    break;
                }
            }
            if (!matched) {
                throw std::invalid_argument("line " + std::to_string(kv.line_no) +
                                            ": invalid value '" + kv.value + "' for '" +
                                            kv.key + "'");
            }
        } else {
            throw std::invalid_argument("line " + std::to_string(kv.line_no) + ": key '" +
                                        kv.key + "' outside a known section");
        }
    }

    for (const auto& key : kHardwareKeys) {
        if (!seen_hw[key]) {
            throw std::invalid_argument("missing mandatory hardware key '" + key + "'");
        }
    }
    if (!seen_clock) {
        throw std::invalid_argument("missing mandatory hardware key 'clock_frequency_hz'");
    }
    config.hw.validate();
    config.arch_params.set_provenance(ParamLevel::Architecture, Provenance::UserSupplied);
    return config;
}

std::string serialize_design_config(const DesignConfig& config) {
    std::ostringstream out;
    out << "[hardware]\n";
    HardwareConfig hw = config.hw;  // non-const for field access
    for (const auto& key : kHardwareKeys) {
        out << key << " = " << *hardware_field(hw, key) << "\n";
    }
    out << "clock_frequency_hz = " << format_double(config.clock_frequency_hz) << "\n";
    out << "\n[architecture]\n";
    for (const auto& spec : parameter_registry()) {
        if (spec.level != ParamLevel::Architecture) continue;
        int idx = static_cast<int>(std::lround(config.arch_params.get(spec.id)));
        out << spec.name << " = " << spec.enum_values.at(static_cast<size_t>(idx)) << "\n";
    }
    return out.str();
}

EventCounts parse_event_trace(const std::string& text,
                              std::vector<std::string>* warnings) {
    EventCounts events;
    std::map<std::string, bool> seen;
    for (const auto& kv : parse_kv_lines(text)) {
        if (!kv.section.empty()) {
            throw std::invalid_argument("line " + std::to_string(kv.line_no) +
                                        ": event traces have no sections");
        }
        if (seen[kv.key]) {
            throw std::invalid_argument("line " + std::to_string(kv.line_no) +
                                        ": duplicate counter '" + kv.key + "'");
        }
        seen[kv.key] = true;
        if (kv.key == "clock_frequency_hz") {
            events.clock_frequency_hz = parse_double(kv);
            continue;
        }
        long long v = parse_integer(kv);
        if (v < 0) {
            throw std::invalid_argument("line " + std::to_string(kv.line_no) +
                                        ": negative counter '" + kv.key + "'");
        }
        if (kv.key == "cycles") {
            events.cycles = static_cast<std::uint64_t>(v);
            continue;
        }
        bool known = false;
        for (const auto& [name, member] : kEventFields) {
            if (kv.key == name) {
                events.*member = static_cast<std::uint64_t>(v);
                known = true;
                break;
            }
        }
        if (!known) {
            throw std::invalid_argument("line " + std::to_string(kv.line_no) +
                                        ": unknown event counter '" + kv.key + "'");
        }
    }
    if (!seen["cycles"]) throw std::invalid_argument("event trace missing 'cycles'");
    if (!seen["clock_frequency_hz"]) {
        throw std::invalid_argument("event trace missing 'clock_frequency_hz'");
    }
    if (warnings) {
        for (const auto& [name, member] : kEventFields) {
            if (!seen[name]) {
                warnings->push_back(std::string("event trace: counter '") + name +
                                    "' missing, defaulting to 0");
            }
        }
    }
    events.validate();
    return events;
}

std::string serialize_event_trace(const EventCounts& events) {
    std::ostringstream out;
    for (const auto& [name, member] : kEventFields) {
        out << name << " = " << events.*member << "\n";
    }
    out << "cycles = " << events.cycles << "\n";
    out << "clock_frequency_hz = " << format_double(events.clock_frequency_hz) << "\n";
    return out.str();
}

TechCharacterization parse_tech_characterization(const std::string& text) {
    TechCharacterization chr;
    std::map<std::string, bool> seen;
    for (const auto& kv : parse_kv_lines(text)) {
        if (seen[kv.key]) {
            throw std::invalid_argument("line " + std::to_string(kv.line_no) +
                                        ": duplicate key '" + kv.key + "'");
        }
        seen[kv.key] = true;
        if (kv.key == "node_name") {
            chr.node_name = kv.value;
        } else if (kv.key == "sram_rows") {
            chr.sram_rows = static_cast<int>(parse_integer(kv));
        } else if (kv.key == "sram_width") {
            chr.sram_width = static_cast<int>(parse_integer(kv));
        } else if (kv.key == "sram_read_energy_pj") {
            chr.sram_read_energy_pj = parse_double(kv);
        } else if (kv.key == "sram_write_energy_pj") {
            chr.sram_write_energy_pj = parse_double(kv);
        } else if (kv.key == "dff_worst_case_power_uw") {
            chr.dff_worst_case_power_uw = parse_double(kv);
        } else if (kv.key == "dff_reference_freq_hz") {
            chr.dff_reference_freq_hz = parse_double(kv);
        } else {
            throw std::invalid_argument("line " + std::to_string(kv.line_no) +
                                        ": unknown key '" + kv.key + "'");
        }
    }
    for (const char* key : {"node_name", "sram_rows", "sram_width", "sram_read_energy_pj",
                            "sram_write_energy_pj", "dff_worst_case_power_uw",
                            "dff_reference_freq_hz"}) {
        if (!seen[key]) {
            throw std::invalid_argument(std::string("characterization missing key '") +
                                        key + "'");
        }
    }
    chr.validate();
    return chr;
}

std::string serialize_tech_characterization(const TechCharacterization& chr) {
    std::ostringstream out;
    out << "node_name = " << chr.node_name << "\n";
    out << "sram_rows = " << chr.sram_rows << "\n";
    out << "sram_width = " << chr.sram_width << "\n";
    out << "sram_read_energy_pj = " << format_double(chr.sram_read_energy_pj) << "\n";
    out << "sram_write_energy_pj = " << format_double(chr.sram_write_energy_pj) << "\n";
    out << "dff_worst_case_power_uw = " << format_double(chr.dff_worst_case_power_uw)
        << "\n";
    out << "dff_reference_freq_hz = " << format_double(chr.dff_reference_freq_hz) << "\n";
    return out.str();
}

LabelSet parse_labels(const std::string& text) {
    LabelSet labels;
    std::map<std::string, bool> seen;
    for (const auto& kv : parse_kv_lines(text)) {
        if (seen[kv.key]) {
            throw std::invalid_argument("line " + std::to_string(kv.line_no) +
                                        ": duplicate label '" + kv.key + "'");
        }
        seen[kv.key] = true;
        double v = parse_double(kv);
        if (!(v > 0.0)) {
            throw std::invalid_argument("line " + std::to_string(kv.line_no) +
                                        ": label '" + kv.key + "' must be > 0");
        }
        if (kv.key == "total") {
            labels.total_w = v;
        } else {
            labels.component_w[static_cast<int>(component_from_name(kv.key))] = v;
        }
    }
    for (ComponentId id : kAllComponents) {
        if (!seen[component_name(id)]) {
            throw std::invalid_argument("labels missing component '" + component_name(id) +
                                        "'");
        }
    }
    if (!seen["total"]) throw std::invalid_argument("labels missing 'total'");
    return labels;
}

std::string serialize_labels(const LabelSet& labels) {
    std::ostringstream out;
    for (ComponentId id : kAllComponents) {
        out << component_name(id) << " = "
            << format_double(labels.component_w[static_cast<int>(id)]) << "\n";
    }
    out << "total = " << format_double(labels.total_w) << "\n";
    return out.str();
}

TechProfile parse_tech_profile(const std::string& text) {
    TechProfile tech;
    std::map<std::string, bool> seen;
    for (const auto& kv : parse_kv_lines(text)) {
        seen[kv.key] = true;
        if (kv.key == "node_name") {
            tech.node_name = kv.value;
        } else if (kv.key == "e_bit_read_pj") {
            tech.e_bit_read_pj = parse_double(kv);
        } else if (kv.key == "e_bit_write_pj") {
            tech.e_bit_write_pj = parse_double(kv);
        } else if (kv.key == "p_leak_bit_uw") {
            tech.p_leak_bit_uw = parse_double(kv);
        } else if (kv.key == "dff_clock_toggle_power_uw") {
            tech.dff_clock_toggle_power_uw = parse_double(kv);
        } else if (kv.key == "dff_leak_power_uw") {
            tech.dff_leak_power_uw = parse_double(kv);
        } else if (kv.key == "e_fu_alu_pj") {
            tech.e_fu_alu_pj = parse_double(kv);
        } else if (kv.key == "e_fu_mul_pj") {
            tech.e_fu_mul_pj = parse_double(kv);
        } else if (kv.key == "e_fu_fpu_pj") {
            tech.e_fu_fpu_pj = parse_double(kv);
        } else {
            throw std::invalid_argument("line " + std::to_string(kv.line_no) +
                                        ": unknown tech profile key '" + kv.key + "'");
        }
    }
    tech.validate();
    return tech;
}

TechProfile load_tech_profile(const std::string& name_or_path) {
    if (name_or_path == "generic") return generic_tech_profile();
    std::filesystem::path path(name_or_path);
    if (!std::filesystem::exists(path)) {
        throw std::invalid_argument("unknown tech profile '" + name_or_path +
                                    "' (not a built-in name or a file)");
    }
    return parse_tech_profile(read_file(path));
}

namespace {

std::vector<BundledConfig> build_config_table() {
    // Fields: fetch, decode, fetch_buffer, rob, int_phy, fp_phy, ldq_stq,
    // branch, mem_fp_issue, int_issue, ways, dtlb, mshr, icache_fetch_bytes.
    struct Row {
        const char* id;
        ConfigFamily family;
        std::array<int, 14> v;
    };
    static const Row rows[] = {
        {"B1", ConfigFamily::BOOM, {4, 1, 5, 16, 36, 36, 4, 6, 1, 1, 2, 8, 2, 2}},
        {"B2", ConfigFamily::BOOM, {4, 1, 8, 32, 53, 48, 8, 8, 1, 1, 4, 8, 2, 2}},
        {"B3", ConfigFamily::BOOM, {4, 1, 16, 48, 68, 56, 16, 10, 1, 1, 8, 16, 4, 2}},
        {"B4", ConfigFamily::BOOM, {4, 2, 8, 64, 64, 56, 12, 10, 1, 1, 4, 8, 2, 2}},
        {"B5", ConfigFamily::BOOM, {4, 2, 16, 64, 80, 64, 16, 12, 1, 2, 4, 8, 2, 2}},
        {"B6", ConfigFamily::BOOM, {8, 2, 24, 80, 88, 72, 20, 14, 1, 2, 8, 16, 4, 4}},
        {"B7", ConfigFamily::BOOM, {8, 3, 18, 81, 88, 88, 16, 14, 1, 2, 8, 16, 4, 4}},
        {"B8", ConfigFamily::BOOM, {8, 3, 24, 96, 110, 96, 24, 16, 1, 3, 8, 16, 4, 4}},
        {"B9", ConfigFamily::BOOM, {8, 3, 30, 114, 112, 112, 32, 16, 2, 3, 8, 32, 4, 4}},
        {"B10", ConfigFamily::BOOM, {8, 4, 24, 112, 108, 108, 24, 18, 1, 4, 8, 32, 4, 4}},
        {"B11", ConfigFamily::BOOM, {8, 4, 32, 128, 128, 128, 32, 20, 2, 4, 8, 32, 4, 4}},
        {"B12", ConfigFamily::BOOM, {8, 4, 40, 136, 136, 136, 36, 20, 2, 4, 8, 32, 8, 4}},
        {"B13", ConfigFamily::BOOM, {8, 5, 30, 125, 108, 108, 24, 18, 2, 5, 8, 32, 8, 4}},
        {"B14", ConfigFamily::BOOM, {8, 5, 35, 130, 128, 128, 32, 20, 2, 5, 8, 32, 8, 4}},
        {"B15", ConfigFamily::BOOM, {8, 5, 40, 140, 140, 140, 36, 20, 2, 5, 8, 32, 8, 4}},
        {"X1", ConfigFamily::XiangShan, {4, 2, 8, 16, 36, 36, 16, 7, 2, 2, 4, 8, 2, 2}},
        {"X2", ConfigFamily::XiangShan, {4, 2, 16, 32, 53, 53, 20, 7, 2, 2, 4, 8, 2, 2}},
        {"X3", ConfigFamily::XiangShan, {4, 2, 24, 48, 68, 68, 24, 7, 2, 2, 8, 16, 4, 2}},
        {"X4", ConfigFamily::XiangShan, {4, 3, 16, 64, 64, 64, 20, 7, 2, 2, 4, 8, 2, 2}},
        {"X5", ConfigFamily::XiangShan, {4, 3, 24, 64, 80, 80, 24, 7, 2, 4, 4, 8, 2, 2}},
        {"X6", ConfigFamily::XiangShan, {8, 3, 24, 80, 88, 88, 28, 7, 2, 4, 8, 16, 4, 2}},
        {"X7", ConfigFamily::XiangShan, {8, 4, 24, 81, 88, 88, 24, 7, 2, 4, 8, 16, 4, 2}},
        {"X8", ConfigFamily::XiangShan, {8, 4, 32, 96, 110, 110, 32, 7, 2, 6, 8, 16, 4, 2}},
        {"X9", ConfigFamily::XiangShan, {8, 4, 32, 114, 112, 112, 40, 7, 2, 6, 8, 32, 4, 2}},
        {"X10", ConfigFamily::XiangShan, {8, 5, 24, 112, 108, 108, 32, 7, 2, 6, 8, 32, 4, 2}},
    };
    std::vector<BundledConfig> table;
    for (const auto& row : rows) {
        BundledConfig cfg;
        cfg.config_id = row.id;
        cfg.family = row.family;
        cfg.hw.fetch_width = row.v[0];
        cfg.hw.decode_width = row.v[1];
        cfg.hw.fetch_buffer_entry = row.v[2];
        cfg.hw.rob_entry = row.v[3];
        cfg.hw.int_phy_register = row.v[4];
        cfg.hw.fp_phy_register = row.v[5];
        cfg.hw.ldq_stq_entry = row.v[6];
        cfg.hw.branch_count = row.v[7];
        cfg.hw.mem_fp_issue_width = row.v[8];
        cfg.hw.int_issue_width = row.v[9];
        cfg.hw.dcache_icache_way = row.v[10];
        cfg.hw.dtlb_entry = row.v[11];
        cfg.hw.mshr_entry = row.v[12];
        cfg.hw.icache_fetch_bytes = row.v[13];
        cfg.hw.validate();
        table.push_back(std::move(cfg));
    }
    return table;
}

}  // namespace

const std::vector<BundledConfig>& bundled_config_table() {
    static const std::vector<BundledConfig> table = build_config_table();
    return table;
}

const BundledConfig& bundled_config(const std::string& config_id) {
    for (const auto& cfg : bundled_config_table()) {
        if (cfg.config_id == config_id) return cfg;
    }
    throw std::invalid_argument("unknown configuration id '" + config_id + "'");
}

std::vector<std::string> family_config_ids(ConfigFamily family) {
    std::vector<std::string> ids;
    for (const auto& cfg : bundled_config_table()) {
        if (cfg.family == family) ids.push_back(cfg.config_id);
    }
    return ids;
}

const std::vector<WorkloadProfile>& default_workload_profiles() {
    // name, insts, ipc, branch, misp, ic_acc, ic_miss, load, store, dc_miss,
    // alu, mul, fpu, wakeup (rates per 1000 committed instructions).
    static const std::vector<WorkloadProfile> profiles = {
        {"dhrystone", 1e6, 1.6, 180, 8, 240, 0.002, 190, 110, 0.010, 620, 15, 0, 1.3},
        {"median", 1e6, 1.2, 160, 14, 260, 0.004, 260, 90, 0.030, 540, 5, 0, 1.2},
        {"multiply", 1e6, 1.4, 120, 6, 230, 0.001, 140, 70, 0.008, 500, 240, 0, 1.4},
        {"qsort", 1e6, 1.1, 210, 22, 280, 0.006, 290, 150, 0.050, 520, 10, 0, 1.1},
        {"rsort", 1e6, 1.3, 150, 10, 250, 0.003, 310, 220, 0.060, 480, 8, 0, 1.2},
        {"towers", 1e6, 1.5, 190, 12, 245, 0.002, 230, 160, 0.020, 560, 4, 0, 1.3},
        {"spmv", 1e6, 0.9, 110, 9, 220, 0.005, 340, 120, 0.090, 420, 30, 180, 1.0},
        {"vvadd", 1e6, 1.7, 90, 4, 210, 0.002, 330, 170, 0.070, 380, 12, 260, 1.5},
    };
    return profiles;
}

EventCounts synthesize_events(const HardwareConfig& hw, const WorkloadProfile& profile,
                              double clock_frequency_hz) {
    hw.validate();
    const double insts = profile.instructions;
    const double ipc = std::min(profile.base_ipc, 0.9 * hw.decode_width);
    const double branches = insts * profile.branch_pki / 1000.0;
    const double mispredicts = insts * profile.mispredict_pki / 1000.0;
    // Larger caches miss less; wider fetch takes fewer packets.
    const double way_relief = 4.0 / (2.0 + hw.dcache_icache_way);
    const double decoded = insts * (1.0 + 6.0 * profile.mispredict_pki / 1000.0);
    const double renamed = decoded * 0.97;
    const double loads = insts * profile.load_pki / 1000.0;
    const double stores = insts * profile.store_pki / 1000.0;
    const double alu = insts * profile.alu_pki / 1000.0;
    const double mul = insts * profile.mul_pki / 1000.0;
    const double fpu = insts * profile.fpu_pki / 1000.0;

    const double ic_accesses =
        insts * profile.icache_access_pki / 1000.0 * (4.0 / hw.fetch_width);
    const double ic_misses = ic_accesses * profile.icache_miss_ratio * way_relief;
    const double dc_accesses = (loads + stores) * 0.98;
    const double dc_misses = dc_accesses * profile.dcache_miss_ratio * way_relief;

    EventCounts ev;
    ev.cycles = std::max<std::uint64_t>(1, to_count(insts / ipc));
    ev.clock_frequency_hz = clock_frequency_hz;
    ev.bp_lookups = to_count(branches);
    ev.bp_updates = to_count(branches * 0.95);
    ev.bp_mispredictions = to_count(mispredicts);
    ev.icache_hits = to_count(ic_accesses - ic_misses);
    ev.icache_misses = to_count(ic_misses);
    ev.decoded_insts = to_count(decoded);
    ev.renamed_insts = to_count(renamed);
    ev.rob_reads = to_count(insts * 1.05);
    ev.rob_writes = to_count(renamed);
    ev.issue_window_reads = to_count(insts * 1.02);
    ev.issue_window_writes = to_count(renamed * 0.95);
    ev.issue_window_wakeups =
        to_count(insts * profile.wakeup_per_inst * (0.5 + hw.int_issue_width / 8.0));
    ev.int_regfile_reads = to_count((alu + mul) * 1.8 + loads);
    ev.int_regfile_writes = to_count((alu + mul) * 0.9 + loads * 0.95);
    ev.fp_regfile_reads = to_count(fpu * 1.9);
    ev.fp_regfile_writes = to_count(fpu * 0.95);
    ev.int_alu_ops = to_count(alu);
    ev.mul_ops = to_count(mul);
    ev.fpu_ops = to_count(fpu);
    ev.loads = to_count(loads);
    ev.stores = to_count(stores);
    ev.dcache_hits = to_count(dc_accesses - dc_misses);
    ev.dcache_misses = to_count(dc_misses);
    return ev;
}

std::vector<TrainingSample> generate_synthetic_dataset(const SyntheticDatasetSpec& spec,
                                                       const TechProfile& tech) {
    if (!in_range(spec.hidden_params)) {
        throw std::invalid_argument("hidden parameter set has out-of-range values");
    }
    if (spec.noise_rel_stddev < 0.0) {
        throw std::invalid_argument("noise_rel_stddev must be >= 0");
    }
    const auto& profiles =
        spec.workload_profiles.empty() ? default_workload_profiles() : spec.workload_profiles;

    std::mt19937_64 rng(spec.rng_seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    std::vector<TrainingSample> samples;
    for (const auto& cfg : bundled_config_table()) {
        if (cfg.family != spec.family) continue;
        for (const auto& profile : profiles) {
            TrainingSample sample;
            sample.config_id = cfg.config_id;
            sample.workload = profile.name;
            sample.hw = cfg.hw;
            sample.arch_params = spec.hidden_params;
            sample.events = synthesize_events(cfg.hw, profile, spec.clock_frequency_hz);

            PowerReport report =
                estimate_core(cfg.hw, sample.events, spec.hidden_params, tech);
            double total = 0.0;
            for (int i = 0; i < kComponentCount; ++i) {
                double label = report.components[i].total_w();
                if (spec.noise_rel_stddev > 0.0) {
                    double factor = 1.0 + spec.noise_rel_stddev * normal(rng);
                    label *= std::max(factor, 0.01);
                }
                sample.component_labels_w[i] = label;
                total += label;
            }
            sample.total_label_w = total;
            sample.validate();
            samples.push_back(std::move(sample));
        }
    }
    return samples;
}

TechCharacterization characterization_for(const ParameterSet& hidden_params,
                                          const TechProfile& tech) {
    TechCharacterization chr;
    chr.node_name = tech.node_name + "-hidden";
    chr.sram_rows = 256;
    chr.sram_width = 64;
    ArrayGeometry probe;
    probe.rows = chr.sram_rows;
    probe.width_bits = chr.sram_width;
    double taf = hidden_params.get(ParamId::TechArrayFactor);
    double tlf = hidden_params.get(ParamId::TechLogicFactor);
    chr.sram_read_energy_pj = array_op_energy(probe, ArrayOp::Read, tech, 1.0) * taf;
    chr.sram_write_energy_pj = array_op_energy(probe, ArrayOp::Write, tech, 1.0) * taf;
    chr.dff_worst_case_power_uw = tech.dff_clock_toggle_power_uw * tlf;
    chr.dff_reference_freq_hz = kDffReferenceFreqHz;
    return chr;
}

ParameterSet sample_hidden_parameter_set(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto uniform = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    auto uniform_int = [&](int lo, int hi) {
        return static_cast<double>(std::uniform_int_distribution<int>(lo, hi)(rng));
    };
    auto coin = [&]() { return std::uniform_int_distribution<int>(0, 1)(rng); };

    ParameterSet hidden = default_parameter_set();
    hidden.set(ParamId::IcacheTableAccessType, coin());
    hidden.set(ParamId::IcacheScalability, coin());
    hidden.set(ParamId::BpTableAccessType, coin());
    hidden.set(ParamId::BpScalability, coin());
    hidden.set(ParamId::DcacheMultiPortDesign, coin());

    hidden.set(ParamId::BpGlobalInfoFactor, uniform_int(1, 8));
    hidden.set(ParamId::BpLocalInfoFactor, uniform_int(1, 8));
    hidden.set(ParamId::IcacheMetaDataBit, uniform_int(0, 16));
    hidden.set(ParamId::IfuLogicFactor, uniform(0.5, 1.9));
    hidden.set(ParamId::RnuLogicFactor, uniform(0.5, 1.9));
    hidden.set(ParamId::LsuLogicFactor, uniform(0.5, 1.9));
    hidden.set(ParamId::DcacheMetaDataBit, uniform_int(0, 16));
    hidden.set(ParamId::PhysicalRegfileWidth, uniform_int(1, 4));
    hidden.set(ParamId::InstWindowWidth, uniform_int(0, 32));
    hidden.set(ParamId::RobEntryWidth, uniform_int(0, 32));
    hidden.set(ParamId::FpuPowerScale, uniform(0.5, 4.0));
    hidden.set(ParamId::AluPowerScale, uniform(0.5, 4.0));
    hidden.set(ParamId::MulPowerScale, uniform(0.5, 4.0));
    hidden.set(ParamId::OtherLogicFactor, uniform(0.5, 1.9));
    hidden.set(ParamId::IcacheAccessCoefficient, uniform(0.5, 3.0));
    hidden.set(ParamId::IcacheAccessBias, uniform(0.0, 8.0));
    hidden.set(ParamId::DcacheAccessCoefficient, uniform(0.5, 3.0));
    hidden.set(ParamId::DcacheAccessBias, uniform(0.0, 8.0));

    hidden.set(ParamId::TechLogicFactor, uniform(0.4, 2.5));
    hidden.set(ParamId::TechArrayFactor, uniform(0.4, 2.5));
    return hidden;
}

void write_dataset_dir(const std::filesystem::path& dir,
                       const std::vector<TrainingSample>& samples,
                       double clock_frequency_hz) {
    namespace fs = std::filesystem;
    std::map<std::string, bool> design_written;
    for (const auto& sample : samples) {
        fs::path config_dir = dir / sample.config_id;
        fs::create_directories(config_dir);
        if (!design_written[sample.config_id]) {
            DesignConfig config;
            config.hw = sample.hw;
            config.arch_params = sample.arch_params;
            config.clock_frequency_hz = clock_frequency_hz;
            write_file_atomic(config_dir / "design.cfg", serialize_design_config(config));
            design_written[sample.config_id] = true;
        }
        write_file_atomic(config_dir / (sample.workload + ".events"),
                          serialize_event_trace(sample.events));
        LabelSet labels;
        labels.component_w = sample.component_labels_w;
        labels.total_w = sample.total_label_w;
        write_file_atomic(config_dir / (sample.workload + ".labels"),
                          serialize_labels(labels));
    }
}

namespace {

/// Bundled configurations first in table order, then anything else by name.
int config_order_key(const std::string& id) {
    const auto& table = bundled_config_table();
    for (size_t i = 0; i < table.size(); ++i) {
        if (table[i].config_id == id) return static_cast<int>(i);
    }
    return static_cast<int>(table.size());
}

}  // namespace

std::vector<TrainingSample> load_dataset_dir(const std::filesystem::path& dir,
                                             std::vector<std::string>* warnings) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) {
        throw std::invalid_argument("dataset directory '" + dir.string() +
                                    "' does not exist");
    }
    std::vector<std::string> config_ids;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_directory()) config_ids.push_back(entry.path().filename().string());
    }
    std::sort(config_ids.begin(), config_ids.end(),
              [](const std::string& a, const std::string& b) {
                  int ka = config_order_key(a), kb = config_order_key(b);
                  return ka != kb ? ka < kb : a < b;
              });

    std::vector<TrainingSample> samples;
    for (const auto& config_id : config_ids) {
        fs::path config_dir = dir / config_id;
        fs::path design_path = config_dir / "design.cfg";
        if (!fs::exists(design_path)) {
            throw std::invalid_argument("missing design config '" + design_path.string() +
                                        "'");
        }
        DesignConfig design = parse_design_config(read_file(design_path));

        std::vector<std::string> workloads;
        for (const auto& entry : fs::directory_iterator(config_dir)) {
            if (entry.path().extension() == ".events") {
                workloads.push_back(entry.path().stem().string());
            }
        }
        std::sort(workloads.begin(), workloads.end());

        for (const auto& workload : workloads) {
            TrainingSample sample;
            sample.config_id = config_id;
            sample.workload = workload;
            sample.hw = design.hw;
            sample.arch_params = design.arch_params;
            sample.events =
                parse_event_trace(read_file(config_dir / (workload + ".events")), warnings);
            fs::path labels_path = config_dir / (workload + ".labels");
            if (!fs::exists(labels_path)) {
                throw std::invalid_argument("missing labels file '" + labels_path.string() +
                                            "'");
            }
            LabelSet labels = parse_labels(read_file(labels_path));
            sample.component_labels_w = labels.component_w;
            sample.total_label_w = labels.total_w;
            sample.validate();
            samples.push_back(std::move(sample));
        }
    }
    return samples;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        out << content;
        if (!out) throw std::runtime_error("failed writing '" + tmp.string() + "'");
    }
    fs::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace corepower
