#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>
#include <set>

#include "corepower/parameters.hpp"

using namespace corepower;

TEST_CASE("registry holds exactly 5 + 18 + 2 parameters with the documented names") {
    const auto& registry = parameter_registry();
    REQUIRE(registry.size() == 25);

    int arch = 0, impl = 0, tech = 0;
    std::set<std::string> names;
    for (const auto& spec : registry) {
        names.insert(spec.name);
        switch (spec.level) {
            case ParamLevel::Architecture: ++arch; break;
            case ParamLevel::Implementation: ++impl; break;
            case ParamLevel::Technology: ++tech; break;
        }
        CHECK(spec.default_value >= spec.min_value);
        CHECK(spec.default_value <= spec.max_value);
    }
    CHECK(arch == kArchParamCount);
    CHECK(impl == kImplParamCount);
    CHECK(tech == kTechParamCount);
    CHECK(names.size() == 25);  // unique

    const char* expected[] = {
        "ICache Table Access Type", "ICache Scalability", "BP Table Access Type",
        "BP Scalability", "DCache Multi-Port Design", "Global Info Factor",
        "Local Info Factor", "ICache MetaData Bit", "IFU Logic Factor",
        "RNU Logic Factor", "LSU Logic Factor", "DCache MetaData Bit",
        "Physical Regfile Width", "Inst. Window Width", "ROB Entry Width",
        "FPU Power Scale", "ALU Power Scale", "MUL Power Scale", "Other Logic Factor",
        "ICache Access Coefficient", "ICache Access Bias", "DCache Access Coefficient",
        "DCache Access Bias", "Tech Logic Factor", "Tech Array Factor",
    };
    for (int i = 0; i < 25; ++i) CHECK(registry[i].name == expected[i]);
}

TEST_CASE("defaults match the parameter table") {
    ParameterSet set = default_parameter_set();
    CHECK(set.access_type(ComponentId::ICache) == TableAccessType::LowPower);
    CHECK(set.access_type(ComponentId::BP) == TableAccessType::LowPower);
    CHECK_FALSE(set.scalability(ComponentId::ICache));
    CHECK_FALSE(set.scalability(ComponentId::BP));
    CHECK(set.multi_port_design() == MultiPortDesign::MultiBanking);
    CHECK(set.get(ParamId::FpuPowerScale) == 1.0);
    CHECK(set.get(ParamId::IcacheMetaDataBit) == 0.0);
    CHECK(set.get(ParamId::BpGlobalInfoFactor) == 1.0);
    CHECK(set.get(ParamId::IcacheAccessCoefficient) == 1.0);
    CHECK(set.get(ParamId::IcacheAccessBias) == 0.0);
    CHECK(set.get(ParamId::TechLogicFactor) == 1.0);
    CHECK(set.get(ParamId::TechArrayFactor) == 1.0);
    for (int lvl = 0; lvl < 3; ++lvl) {
        CHECK(set.provenance(static_cast<ParamLevel>(lvl)) == Provenance::Default);
    }
}

TEST_CASE("linear flags cover exactly the scale-type parameters") {
    std::set<ParamId> expected = {
        ParamId::IfuLogicFactor,    ParamId::RnuLogicFactor,
        ParamId::LsuLogicFactor,    ParamId::OtherLogicFactor,
        ParamId::FpuPowerScale,     ParamId::AluPowerScale,
        ParamId::MulPowerScale,     ParamId::IcacheAccessCoefficient,
        ParamId::IcacheAccessBias,  ParamId::DcacheAccessCoefficient,
        ParamId::DcacheAccessBias,  ParamId::TechLogicFactor,
        ParamId::TechArrayFactor,
    };
    for (const auto& spec : parameter_registry()) {
        CHECK(spec.linear == (expected.count(spec.id) > 0));
    }
}

TEST_CASE("clamp projects onto ranges and is idempotent") {
    ParameterSet set = default_parameter_set();
    set.set(ParamId::FpuPowerScale, 20.0);
    set.set(ParamId::BpGlobalInfoFactor, 0.0);
    ParameterSet clamped = clamp(set);
    CHECK(clamped.get(ParamId::FpuPowerScale) == 16.0);
    CHECK(clamped.get(ParamId::BpGlobalInfoFactor) == 1.0);
    CHECK(clamp(clamped) == clamped);

    ParameterSet valid = default_parameter_set();
    valid.set(ParamId::AluPowerScale, 2.5);
    CHECK(clamp(valid) == valid);
}

TEST_CASE("reset_level restores one level's defaults and composes to the default set") {
    ParameterSet set = default_parameter_set();
    set.set(ParamId::BpScalability, 1.0);
    set.set(ParamId::FpuPowerScale, 2.5);
    set.set(ParamId::IcacheMetaDataBit, 8.0);
    set.set(ParamId::TechArrayFactor, 1.7);
    set.set(ParamId::TechLogicFactor, 0.6);
    set.set_provenance(ParamLevel::Implementation, Provenance::Calibrated);

    ParameterSet no_impl = reset_level(set, ParamLevel::Implementation);
    CHECK(no_impl.get(ParamId::FpuPowerScale) == 1.0);
    CHECK(no_impl.get(ParamId::IcacheMetaDataBit) == 0.0);
    CHECK(no_impl.get(ParamId::BpScalability) == 1.0);       // arch preserved
    CHECK(no_impl.get(ParamId::TechArrayFactor) == 1.7);     // tech preserved
    CHECK(no_impl.provenance(ParamLevel::Implementation) == Provenance::Default);

    ParameterSet no_tech = reset_level(set, ParamLevel::Technology);
    CHECK(no_tech.get(ParamId::TechArrayFactor) == 1.0);
    CHECK(no_tech.get(ParamId::TechLogicFactor) == 1.0);
    CHECK(no_tech.get(ParamId::FpuPowerScale) == 2.5);

    ParameterSet all = reset_level(
        reset_level(reset_level(set, ParamLevel::Architecture), ParamLevel::Technology),
        ParamLevel::Implementation);
    CHECK(all == default_parameter_set());
}

TEST_CASE("reset_level commutes across distinct levels") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        ParameterSet set = default_parameter_set();
        for (const auto& spec : parameter_registry()) {
            std::uniform_real_distribution<double> dist(spec.min_value, spec.max_value);
            double v = dist(rng);
            if (spec.value_type != ValueType::Float) v = std::round(v);
            set.set(spec.id, v);
        }
        set = clamp(set);
        auto a = static_cast<ParamLevel>(trial % 3);
        auto b = static_cast<ParamLevel>((trial + 1) % 3);
        CHECK(reset_level(reset_level(set, a), b) == reset_level(reset_level(set, b), a));
    }
}

TEST_CASE("parameter file round-trips bit-exactly") {
    ParameterSet set = default_parameter_set();
    CHECK(parse_parameter_file(serialize_parameter_set(set)) == set);

    set.set(ParamId::IfuLogicFactor, 0.12345678901234567);
    set.set(ParamId::IcacheAccessCoefficient, 3.0000000000000004);
    set.set(ParamId::InstWindowWidth, 17.0);
    set.set(ParamId::DcacheMultiPortDesign,
            static_cast<double>(MultiPortDesign::DuplicatedArray));
    set.set_provenance(ParamLevel::Implementation, Provenance::Calibrated);
    set.set_provenance(ParamLevel::Architecture, Provenance::UserSupplied);
    CHECK(parse_parameter_file(serialize_parameter_set(set)) == set);
}

TEST_CASE("parameter file parsing rejects bad input") {
    ParameterSet set = default_parameter_set();
    std::string good = serialize_parameter_set(set);

    SUBCASE("out-of-range value is rejected, not clamped") {
        std::string text = good;
        text.replace(text.find("FPU Power Scale = 1"), 19, "FPU Power Scale = 20");
        CHECK_THROWS_WITH_AS(parse_parameter_file(text),
                             doctest::Contains("out of range 0-16"), std::invalid_argument);
    }
    SUBCASE("missing parameter is named") {
        std::string text = good;
        size_t pos = text.find("MUL Power Scale");
        text.erase(pos, text.find('\n', pos) - pos + 1);
        CHECK_THROWS_WITH_AS(parse_parameter_file(text),
                             doctest::Contains("MUL Power Scale"), std::invalid_argument);
    }
    SUBCASE("unknown parameter is rejected") {
        CHECK_THROWS_AS(parse_parameter_file(good + "Bogus Knob = 3 # implementation\n"),
                        std::invalid_argument);
    }
    SUBCASE("duplicate parameter is rejected") {
        CHECK_THROWS_AS(
            parse_parameter_file(good + "FPU Power Scale = 2 # implementation\n"),
            std::invalid_argument);
    }
    SUBCASE("missing format_version is rejected") {
        std::string text = good;
        text.erase(0, text.find('\n') + 1);
        CHECK_THROWS_WITH_AS(parse_parameter_file(text),
                             doctest::Contains("format_version"), std::invalid_argument);
    }
    SUBCASE("non-integer value for an integer parameter is rejected") {
        std::string text = good;
        text.replace(text.find("ICache MetaData Bit = 0"), 23, "ICache MetaData Bit = 0.5");
        CHECK_THROWS_AS(parse_parameter_file(text), std::invalid_argument);
    }
    SUBCASE("malformed line is rejected") {
        CHECK_THROWS_AS(parse_parameter_file("format_version = 1\nnot a kv line\n"),
                        std::invalid_argument);
    }
}

TEST_CASE("implementation parameter ownership covers all 18 once") {
    int total = 0;
    for (ComponentId id : kAllComponents) {
        total += static_cast<int>(implementation_params_of(id).size());
    }
    CHECK(total == kImplParamCount);
    CHECK(implementation_params_of(ComponentId::FUPool).size() == 3);
    CHECK(implementation_params_of(ComponentId::ICache).size() == 3);
    CHECK(implementation_params_of(ComponentId::BP).size() == 2);
    CHECK(implementation_params_of(ComponentId::IFU).size() == 1);
}
