#include "corepower/parameters.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace corepower {

namespace {

// Lower bound standing in for the open (0, 64] range of the technology
// factors; a factor of exactly 0 is not physically meaningful.
constexpr double kTechFactorFloor = 1e-6;

std::array<ParameterSpec, kParamCount> build_registry() {
    std::array<ParameterSpec, kParamCount> specs;
    int n = 0;

    auto add = [&](ParamId id, std::string name, ParamLevel level, ComponentId comp,
                   bool global, ValueType type, double min_v, double max_v,
                   std::vector<std::string> enums, double def, bool linear) {
        ParameterSpec s;
        s.id = id;
        s.name = std::move(name);
        s.level = level;
        s.component = comp;
        s.global = global;
        s.value_type = type;
        s.min_value = min_v;
        s.max_value = max_v;
        s.enum_values = std::move(enums);
        s.default_value = def;
        s.linear = linear;
        specs[n++] = std::move(s);
    };

    const std::vector<std::string> access_enum = {"Low Latency", "Low Power"};
    const std::vector<std::string> bool_enum = {"No", "Yes"};
    const std::vector<std::string> port_enum = {"Multi-Banking", "Duplicated Array"};

    using PL = ParamLevel;
    using VT = ValueType;
    using CI = ComponentId;

    // Architecture level.
    add(ParamId::IcacheTableAccessType, "ICache Table Access Type", PL::Architecture,
        CI::ICache, false, VT::Enum, 0, 1, access_enum,
        static_cast<double>(TableAccessType::LowPower), false);
    add(ParamId::IcacheScalability, "ICache Scalability", PL::Architecture, CI::ICache,
        false, VT::Bool, 0, 1, bool_enum, 0, false);
    add(ParamId::BpTableAccessType, "BP Table Access Type", PL::Architecture, CI::BP,
        false, VT::Enum, 0, 1, access_enum,
        static_cast<double>(TableAccessType::LowPower), false);
    add(ParamId::BpScalability, "BP Scalability", PL::Architecture, CI::BP, false,
        VT::Bool, 0, 1, bool_enum, 0, false);
    add(ParamId::DcacheMultiPortDesign, "DCache Multi-Port Design", PL::Architecture,
        CI::DCache, false, VT::Enum, 0, 1, port_enum,
        static_cast<double>(MultiPortDesign::MultiBanking), false);

    // Implementation level.
    add(ParamId::BpGlobalInfoFactor, "Global Info Factor", PL::Implementation, CI::BP,
        false, VT::Int, 1, 64, {}, 1, false);
    add(ParamId::BpLocalInfoFactor, "Local Info Factor", PL::Implementation, CI::BP,
        false, VT::Int, 1, 64, {}, 1, false);
    add(ParamId::IcacheMetaDataBit, "ICache MetaData Bit", PL::Implementation,
        CI::ICache, false, VT::Int, 0, 64, {}, 0, false);
    add(ParamId::IfuLogicFactor, "IFU Logic Factor", PL::Implementation, CI::IFU,
        false, VT::Float, 0, 2, {}, 1, true);
    add(ParamId::RnuLogicFactor, "RNU Logic Factor", PL::Implementation, CI::RNU,
        false, VT::Float, 0, 2, {}, 1, true);
    add(ParamId::LsuLogicFactor, "LSU Logic Factor", PL::Implementation, CI::LSU,
        false, VT::Float, 0, 2, {}, 1, true);
    add(ParamId::DcacheMetaDataBit, "DCache MetaData Bit", PL::Implementation,
        CI::DCache, false, VT::Int, 0, 64, {}, 0, false);
    add(ParamId::PhysicalRegfileWidth, "Physical Regfile Width", PL::Implementation,
        CI::Regfile, false, VT::Int, 1, 16, {}, 1, false);
    add(ParamId::InstWindowWidth, "Inst. Window Width", PL::Implementation, CI::ISU,
        false, VT::Int, 0, 64, {}, 0, false);
    add(ParamId::RobEntryWidth, "ROB Entry Width", PL::Implementation, CI::ROB, false,
        VT::Int, 0, 64, {}, 0, false);
    add(ParamId::FpuPowerScale, "FPU Power Scale", PL::Implementation, CI::FUPool,
        false, VT::Float, 0, 16, {}, 1, true);
    add(ParamId::AluPowerScale, "ALU Power Scale", PL::Implementation, CI::FUPool,
        false, VT::Float, 0, 16, {}, 1, true);
    add(ParamId::MulPowerScale, "MUL Power Scale", PL::Implementation, CI::FUPool,
        false, VT::Float, 0, 16, {}, 1, true);
    add(ParamId::OtherLogicFactor, "Other Logic Factor", PL::Implementation,
        CI::OtherLogic, false, VT::Float, 0, 2, {}, 1, true);
    add(ParamId::IcacheAccessCoefficient, "ICache Access Coefficient",
        PL::Implementation, CI::ICache, false, VT::Float, 0, 32, {}, 1, true);
    add(ParamId::IcacheAccessBias, "ICache Access Bias", PL::Implementation,
        CI::ICache, false, VT::Float, 0, 32, {}, 0, true);
    add(ParamId::DcacheAccessCoefficient, "DCache Access Coefficient",
        PL::Implementation, CI::DCache, false, VT::Float, 0, 32, {}, 1, true);
    add(ParamId::DcacheAccessBias, "DCache Access Bias", PL::Implementation,
        CI::DCache, false, VT::Float, 0, 32, {}, 0, true);

    // Technology level. Global ratios, one per circuit class.
    add(ParamId::TechLogicFactor, "Tech Logic Factor", PL::Technology, CI::OtherLogic,
        true, VT::Float, kTechFactorFloor, 64, {}, 1, true);
    add(ParamId::TechArrayFactor, "Tech Array Factor", PL::Technology, CI::OtherLogic,
        true, VT::Float, kTechFactorFloor, 64, {}, 1, true);

    if (n != kParamCount) throw std::logic_error("parameter registry size mismatch");
    return specs;
}

const std::array<std::string, 3> kLevelNames = {"architecture", "implementation",
                                                "technology"};
const std::array<std::string, 3> kProvenanceNames = {"default", "user-supplied",
                                                     "calibrated"};

std::string format_value(const ParameterSpec& spec, double value) {
    switch (spec.value_type) {
        case ValueType::Enum:
        case ValueType::Bool: {
            int idx = static_cast<int>(std::lround(value));
            return spec.enum_values.at(static_cast<size_t>(idx));
        }
        case ValueType::Int:
            return std::to_string(static_cast<long long>(std::llround(value)));
        case ValueType::Float: {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.17g", value);
            return buf;
        }
    }
    throw std::logic_error("unreachable");
}

double parse_value(const ParameterSpec& spec, const std::string& text) {
    if (spec.value_type == ValueType::Enum || spec.value_type == ValueType::Bool) {
        for (size_t i = 0; i < spec.enum_values.size(); ++i) {
            if (spec.enum_values[i] == text) return static_cast<double>(i);
        }
        throw std::invalid_argument("invalid value '" + text + "' for " + spec.name);
    }
    char* end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0') {
        throw std::invalid_argument("invalid numeric value '" + text + "' for " +
                                    spec.name);
    }
    if (spec.value_type == ValueType::Int && v != std::floor(v)) {
        throw std::invalid_argument(spec.name + " must be an integer, got '" + text + "'");
    }
    return v;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

const std::array<ParameterSpec, kParamCount>& parameter_registry() {
    static const std::array<ParameterSpec, kParamCount> registry = build_registry();
    return registry;
}

const ParameterSpec& param_spec(ParamId id) {
    return parameter_registry()[static_cast<int>(id)];
}

ParamId param_from_name(const std::string& name) {
    for (const auto& spec : parameter_registry()) {
        if (spec.name == name) return spec.id;
    }
    throw std::invalid_argument("unknown parameter '" + name + "'");
}

std::vector<ParamId> implementation_params_of(ComponentId component) {
    std::vector<ParamId> out;
    for (const auto& spec : parameter_registry()) {
        if (spec.level == ParamLevel::Implementation && spec.component == component) {
            out.push_back(spec.id);
        }
    }
    return out;
}

const std::string& level_name(ParamLevel level) {
    return kLevelNames[static_cast<int>(level)];
}

ParamLevel level_from_name(const std::string& name) {
    for (int i = 0; i < 3; ++i) {
        if (kLevelNames[i] == name) return static_cast<ParamLevel>(i);
    }
    throw std::invalid_argument("unknown parameter level '" + name + "'");
}

const std::string& provenance_name(Provenance p) {
    return kProvenanceNames[static_cast<int>(p)];
}

Provenance provenance_from_name(const std::string& name) {
    for (int i = 0; i < 3; ++i) {
        if (kProvenanceNames[i] == name) return static_cast<Provenance>(i);
    }
    throw std::invalid_argument("unknown provenance '" + name + "'");
}

ParameterSet::ParameterSet() {
    for (const auto& spec : parameter_registry()) {
        values_[static_cast<int>(spec.id)] = spec.default_value;
    }
    provenance_.fill(Provenance::Default);
}

TableAccessType ParameterSet::access_type(ComponentId cache) const {
    switch (cache) {
        case ComponentId::ICache:
            return static_cast<TableAccessType>(
                std::lround(get(ParamId::IcacheTableAccessType)));
        case ComponentId::BP:
            return static_cast<TableAccessType>(
                std::lround(get(ParamId::BpTableAccessType)));
        default:
            throw std::invalid_argument(component_name(cache) +
                                        " has no table access type parameter");
    }
}

bool ParameterSet::scalability(ComponentId component) const {
    switch (component) {
        case ComponentId::ICache:
            return std::lround(get(ParamId::IcacheScalability)) != 0;
        case ComponentId::BP:
            return std::lround(get(ParamId::BpScalability)) != 0;
        default:
            throw std::invalid_argument(component_name(component) +
                                        " has no scalability parameter");
    }
}

MultiPortDesign ParameterSet::multi_port_design() const {
    return static_cast<MultiPortDesign>(std::lround(get(ParamId::DcacheMultiPortDesign)));
}

ParameterSet default_parameter_set() { return ParameterSet(); }

ParameterSet clamp(const ParameterSet& set) {
    ParameterSet out = set;
    for (const auto& spec : parameter_registry()) {
        double v = out.get(spec.id);
        if (spec.value_type == ValueType::Enum || spec.value_type == ValueType::Bool ||
            spec.value_type == ValueType::Int) {
            v = std::round(v);
        }
        if (v < spec.min_value) v = spec.min_value;
        if (v > spec.max_value) v = spec.max_value;
        out.set(spec.id, v);
    }
    return out;
}

bool in_range(const ParameterSet& set) {
    for (const auto& spec : parameter_registry()) {
        double v = set.get(spec.id);
        if (v < spec.min_value || v > spec.max_value) return false;
        if (spec.value_type != ValueType::Float && v != std::round(v)) return false;
    }
    return true;
}

ParameterSet reset_level(const ParameterSet& set, ParamLevel level) {
    ParameterSet out = set;
    for (const auto& spec : parameter_registry()) {
        if (spec.level == level) out.set(spec.id, spec.default_value);
    }
    out.set_provenance(level, Provenance::Default);
    return out;
}

ParameterSet round_integer_params(const ParameterSet& set) {
    ParameterSet out = set;
    for (const auto& spec : parameter_registry()) {
        if (spec.value_type == ValueType::Float) continue;
        double v = std::round(out.get(spec.id));
        if (v < spec.min_value) v = spec.min_value;
        if (v > spec.max_value) v = spec.max_value;
        out.set(spec.id, v);
    }
    return out;
}

std::string serialize_parameter_set(const ParameterSet& set) {
    std::ostringstream out;
    out << "format_version = 1\n";
    for (int lvl = 0; lvl < 3; ++lvl) {
        auto level = static_cast<ParamLevel>(lvl);
        out << "provenance_" << level_name(level) << " = "
            << provenance_name(set.provenance(level)) << "\n";
    }
    for (const auto& spec : parameter_registry()) {
        out << spec.name << " = " << format_value(spec, set.get(spec.id)) << " # "
            << level_name(spec.level) << "\n";
    }
    return out.str();
}

ParameterSet parse_parameter_file(const std::string& text) {
    ParameterSet set;
    std::array<bool, kParamCount> seen{};
    bool version_seen = false;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        // A trailing "# level" annotation is informational; strip it first.
        std::string body = line;
        std::string level_note;
        size_t hash = body.find('#');
        if (hash != std::string::npos) {
            level_note = trim(body.substr(hash + 1));
            body = body.substr(0, hash);
        }
        body = trim(body);
        if (body.empty()) continue;

        size_t eq = body.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("parameter file line " + std::to_string(line_no) +
                                        ": expected 'name = value'");
        }
        std::string key = trim(body.substr(0, eq));
        std::string value = trim(body.substr(eq + 1));

        if (key == "format_version") {
            if (value != "1") {
                throw std::invalid_argument("unsupported parameter file format_version '" +
                                            value + "'");
            }
            version_seen = true;
            continue;
        }
        if (key.rfind("provenance_", 0) == 0) {
            ParamLevel level = level_from_name(key.substr(11));
            set.set_provenance(level, provenance_from_name(value));
            continue;
        }

        ParamId id = param_from_name(key);  // throws with the parameter name
        const ParameterSpec& spec = param_spec(id);
        if (seen[static_cast<int>(id)]) {
            throw std::invalid_argument("duplicate parameter '" + key + "' at line " +
                                        std::to_string(line_no));
        }
        if (!level_note.empty() && level_note != level_name(spec.level)) {
            throw std::invalid_argument("parameter '" + key + "' annotated with level '" +
                                        level_note + "', expected '" +
                                        level_name(spec.level) + "'");
        }
        double v = parse_value(spec, value);
        if (v < spec.min_value || v > spec.max_value) {
            std::ostringstream msg;
            msg << "parameter '" << key << "' value " << value << " out of range "
                << spec.min_value << "-" << spec.max_value;
            throw std::invalid_argument(msg.str());
        }
        set.set(id, v);
        seen[static_cast<int>(id)] = true;
    }

    if (!version_seen) {
        throw std::invalid_argument("parameter file missing format_version header");
    }
    for (const auto& spec : parameter_registry()) {
        if (!seen[static_cast<int>(spec.id)]) {
            throw std::invalid_argument("parameter file missing entry for '" + spec.name +
                                        "'");
        }
    }
    return set;
}

}  // namespace corepower
