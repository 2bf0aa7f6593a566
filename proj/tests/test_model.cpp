#include <doctest.h>

#include <map>
#include <stdexcept>

#include "base_oracle.hpp"
#include "corepower/model.hpp"
#include "fixtures.hpp"

using namespace corepower;
using fixtures::busy_events;
using fixtures::mid_core;
using fixtures::zero_events;

namespace {

std::map<std::string, ArrayGeometry> geometry_map(ComponentId id, const HardwareConfig& hw,
                                                  const ParameterSet& params) {
    std::map<std::string, ArrayGeometry> out;
    for (const auto& [name, geom] : instantiate_geometries(id, hw, params)) {
        out[name] = geom;
    }
    return out;
}

std::map<std::string, StructureOps> ops_map(ComponentId id, const HardwareConfig& hw,
                                            const EventCounts& ev,
                                            const ParameterSet& params,
                                            std::vector<std::string>* warnings = nullptr) {
    std::map<std::string, StructureOps> out;
    for (const auto& ops : events_to_ops(id, hw, ev, params, warnings)) {
        out[ops.structure] = ops;
    }
    return out;
}

}  // namespace

TEST_CASE("array_op_energy matches the reference formula") {
    TechProfile tech = generic_tech_profile();
    tech.e_bit_read_pj = 0.05;
    tech.e_bit_write_pj = 0.05;
    ArrayGeometry geom;
    geom.rows = 256;
    geom.width_bits = 64;

    // 0.05 * 64 * (1 + 256/1024) = 0.05 * 64 * 1.25
    CHECK(array_op_energy(geom, ArrayOp::Read, tech, 1.0) == 4.0);
    CHECK(array_op_energy(geom, ArrayOp::Read, tech, 2.0) == 8.0);

    geom.duplicates = 2;
    CHECK(array_op_energy(geom, ArrayOp::Write, tech, 1.0) == 8.0);  // all copies written
    CHECK(array_op_energy(geom, ArrayOp::Read, tech, 1.0) == 4.0);   // one copy read

    geom.duplicates = 1;
    geom.banks = 4;  // rows per bank drops to 64
    CHECK(array_op_energy(geom, ArrayOp::Read, tech, 1.0) ==
          doctest::Approx(0.05 * 64 * (1.0 + 64.0 / 1024.0)).epsilon(1e-15));

    CHECK_THROWS_AS(array_op_energy(geom, ArrayOp::Read, tech, 0.0), std::invalid_argument);
}

TEST_CASE("logic_energy_per_cycle matches the reference formula") {
    TechProfile tech = generic_tech_profile();
    tech.dff_clock_toggle_power_uw = 1.0;  // 1 uW at 1 GHz = 0.001 pJ per cycle

    CHECK(logic_energy_per_cycle(1000.0, 0.0, tech, 1.0, 1.0) == 0.0);
    CHECK(logic_energy_per_cycle(1000.0, 1.0, tech, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(logic_energy_per_cycle(1000.0, 1.0, tech, 1.0, 2.0) ==
          2.0 * logic_energy_per_cycle(1000.0, 1.0, tech, 1.0, 1.0));
    CHECK_THROWS_AS(logic_energy_per_cycle(-1.0, 0.5, tech, 1.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("logic dff equivalents follow the documented per-component functions") {
    HardwareConfig hw = mid_core();  // fetch 8, decode 3, ldq/stq 24
    CHECK(logic_dff_equiv(ComponentId::IFU, hw) == 64.0 * 8 * 8);
    CHECK(logic_dff_equiv(ComponentId::RNU, hw) == 32.0 * 3 * 8);
    CHECK(logic_dff_equiv(ComponentId::LSU, hw) == 48.0 * 24);
    CHECK(logic_dff_equiv(ComponentId::OtherLogic, hw) == 256.0 * 3 * 8);
    CHECK(logic_dff_equiv(ComponentId::ICache, hw) == 0.0);
}

TEST_CASE("cache tag width includes the metadata bits") {
    HardwareConfig hw = mid_core();
    hw.dcache_icache_way = 4;
    ParameterSet params = default_parameter_set();
    params.set(ParamId::IcacheMetaDataBit, 4.0);

    auto geoms = geometry_map(ComponentId::ICache, hw, params);
    CHECK(geoms.at("tag").width_bits == 24.0);  // 20-bit tag + 4 metadata bits
    CHECK(geoms.at("tag").rows == 256.0 * 4);
    CHECK(geoms.at("data").width_bits == 512.0);
}

TEST_CASE("BP geometry is the base model's at default info factors") {
    HardwareConfig hw = mid_core();
    ParameterSet defaults = default_parameter_set();
    auto geoms = geometry_map(ComponentId::BP, hw, defaults);
    CHECK(geoms.at("global").rows == 4096.0);
    CHECK(geoms.at("local").rows == 1024.0);
    CHECK(geoms.at("chooser").rows == 4096.0);
    CHECK(geoms.at("snapshot").rows == static_cast<double>(hw.branch_count));

    ParameterSet scaled = defaults;
    scaled.set(ParamId::BpGlobalInfoFactor, 4.0);
    scaled.set(ParamId::BpLocalInfoFactor, 2.0);
    auto scaled_geoms = geometry_map(ComponentId::BP, hw, scaled);
    CHECK(scaled_geoms.at("global").rows == 4.0 * 4096.0);
    CHECK(scaled_geoms.at("chooser").rows == 4.0 * 4096.0);
    CHECK(scaled_geoms.at("local").rows == 2.0 * 1024.0);
}

TEST_CASE("scalability scales BP rows and the ICache line with FetchWidth/4") {
    HardwareConfig hw = mid_core();  // fetch 8
    ParameterSet params = default_parameter_set();
    params.set(ParamId::BpScalability, 1.0);
    params.set(ParamId::IcacheScalability, 1.0);
    CHECK(geometry_map(ComponentId::BP, hw, params).at("global").rows == 2.0 * 4096.0);
    CHECK(geometry_map(ComponentId::ICache, hw, params).at("data").width_bits ==
          2.0 * 512.0);

    hw.fetch_width = 4;  // at the baseline width the scaling is the identity
    hw.decode_width = 3;
    CHECK(geometry_map(ComponentId::BP, hw, params).at("global").rows == 4096.0);
}

TEST_CASE("DCache multi-port design selects banking or duplication") {
    HardwareConfig hw = mid_core();
    hw.mem_fp_issue_width = 2;
    ParameterSet params = default_parameter_set();

    auto banked = geometry_map(ComponentId::DCache, hw, params);
    CHECK(banked.at("data").banks == 2);
    CHECK(banked.at("data").duplicates == 1);

    params.set(ParamId::DcacheMultiPortDesign,
               static_cast<double>(MultiPortDesign::DuplicatedArray));
    auto duplicated = geometry_map(ComponentId::DCache, hw, params);
    CHECK(duplicated.at("data").duplicates == 2);
    CHECK(duplicated.at("data").banks == 1);
}

TEST_CASE("geometry rejects unknown components and overflowing dimensions") {
    HardwareConfig hw = mid_core();
    ParameterSet params = default_parameter_set();
    CHECK_THROWS_AS(instantiate_geometries(static_cast<ComponentId>(99), hw, params),
                    std::invalid_argument);

    ParameterSet absurd = params;  // unclamped values signal a misconfiguration
    absurd.set(ParamId::BpGlobalInfoFactor, 1e9);
    CHECK_THROWS_AS(instantiate_geometries(ComponentId::BP, hw, absurd),
                    std::overflow_error);
}

TEST_CASE("cache events map to operations with access scaling") {
    HardwareConfig hw = mid_core();
    hw.dcache_icache_way = 4;
    EventCounts ev = zero_events();
    ev.icache_hits = 100;
    ev.icache_misses = 10;

    SUBCASE("each hit one read, each miss one read and one write") {
        auto ops = ops_map(ComponentId::ICache, hw, ev, default_parameter_set());
        CHECK(ops.at("tag").read_ops == 110.0);
        CHECK(ops.at("tag").write_ops == 10.0);
        CHECK(ops.at("data").read_ops == 110.0);  // Low Power: one way per access
        CHECK(ops.at("data").write_ops == 10.0);
    }
    SUBCASE("linear scaling applies before the mapping") {
        ParameterSet params = default_parameter_set();
        params.set(ParamId::IcacheAccessCoefficient, 2.0);
        params.set(ParamId::IcacheAccessBias, 5.0);
        auto ops = ops_map(ComponentId::ICache, hw, ev, params);
        CHECK(ops.at("tag").read_ops == 230.0);  // 205 effective hits + 25 misses
        CHECK(ops.at("tag").write_ops == 25.0);
    }
    SUBCASE("Low Latency reads every way in parallel") {
        ParameterSet params = default_parameter_set();
        params.set(ParamId::IcacheTableAccessType,
                   static_cast<double>(TableAccessType::LowLatency));
        auto ops = ops_map(ComponentId::ICache, hw, ev, params);
        CHECK(ops.at("data").read_ops == 440.0);
        CHECK(ops.at("tag").read_ops == 110.0);
    }
    SUBCASE("negative effective counts clamp to zero with a warning") {
        ParameterSet params = default_parameter_set();
        params.set(ParamId::IcacheAccessBias, -1e9);  // unclamped, implausible
        std::vector<std::string> warnings;
        auto ops = ops_map(ComponentId::ICache, hw, ev, params, &warnings);
        CHECK(ops.at("tag").read_ops == 0.0);
        CHECK(warnings.size() == 2);
    }
}

TEST_CASE("zero events produce all-zero operation counts") {
    HardwareConfig hw = mid_core();
    EventCounts ev = zero_events();
    ParameterSet defaults = default_parameter_set();
    for (ComponentId id : kAllComponents) {
        for (const auto& ops : events_to_ops(id, hw, ev, defaults)) {
            CHECK(ops.read_ops == 0.0);
            CHECK(ops.write_ops == 0.0);
            CHECK(ops.fu_ops == 0.0);
        }
    }
}

TEST_CASE("BP lookups read fewer tables under Low Power than Low Latency") {
    HardwareConfig hw = mid_core();
    EventCounts ev = zero_events();
    ev.bp_lookups = 1000;
    ev.bp_updates = 900;
    ev.bp_mispredictions = 50;

    auto low_power = ops_map(ComponentId::BP, hw, ev, default_parameter_set());
    CHECK(low_power.at("chooser").read_ops == 1000.0);
    CHECK(low_power.at("global").read_ops == 500.0);  // the selected table only
    CHECK(low_power.at("local").read_ops == 500.0);
    CHECK(low_power.at("global").write_ops == 900.0);
    CHECK(low_power.at("snapshot").read_ops == 50.0);

    ParameterSet parallel = default_parameter_set();
    parallel.set(ParamId::BpTableAccessType,
                 static_cast<double>(TableAccessType::LowLatency));
    auto low_latency = ops_map(ComponentId::BP, hw, ev, parallel);
    CHECK(low_latency.at("global").read_ops == 1000.0);
    CHECK(low_latency.at("local").read_ops == 1000.0);
}

TEST_CASE("array_dynamic_power_w reproduces the worked accumulation example") {
    TechProfile tech = generic_tech_profile();
    tech.e_bit_read_pj = 0.05;    // 4.0 pJ per read on a 256x64 array
    tech.e_bit_write_pj = 0.0625; // 5.0 pJ per write
    ArrayGeometry geom;
    geom.rows = 256;
    geom.width_bits = 64;
    StructureOps ops{"probe", 110.0, 10.0, 0.0};
    // (110 * 4 + 10 * 5) pJ over 1 us = 0.49 mW
    CHECK(array_dynamic_power_w(geom, ops, tech, 1.0, 1e-6) ==
          doctest::Approx(4.9e-4).epsilon(1e-15));
}

TEST_CASE("zero activity leaves only leakage") {
    HardwareConfig hw = mid_core();
    EventCounts ev = zero_events();
    ParameterSet defaults = default_parameter_set();
    TechProfile tech = generic_tech_profile();
    for (ComponentId id : kAllComponents) {
        ComponentPower p = estimate_component(id, hw, ev, defaults, tech);
        CHECK(p.dynamic_power_w == 0.0);
        CHECK(p.leakage_power_w > 0.0);
    }
}

TEST_CASE("FU power scales are exactly linear in the FU dynamic energy") {
    HardwareConfig hw = mid_core();
    EventCounts ev = zero_events();
    ev.int_alu_ops = 500'000;
    TechProfile tech = generic_tech_profile();

    ParameterSet one = default_parameter_set();
    ParameterSet two = one;
    two.set(ParamId::AluPowerScale, 2.0);
    ComponentPower p1 = estimate_component(ComponentId::FUPool, hw, ev, one, tech);
    ComponentPower p2 = estimate_component(ComponentId::FUPool, hw, ev, two, tech);
    CHECK(p2.dynamic_power_w == 2.0 * p1.dynamic_power_w);
    CHECK(p2.leakage_power_w == p1.leakage_power_w);
}

TEST_CASE("estimate_core sums components, is deterministic, halves with doubled cycles") {
    HardwareConfig hw = mid_core();
    EventCounts ev = busy_events();
    ParameterSet defaults = default_parameter_set();
    TechProfile tech = generic_tech_profile();

    PowerReport a = estimate_core(hw, ev, defaults, tech);
    PowerReport b = estimate_core(hw, ev, defaults, tech);

    double total = 0.0;
    for (const auto& cp : a.components) total += cp.dynamic_power_w + cp.leakage_power_w;
    CHECK(a.total_power_w == total);

    for (int i = 0; i < kComponentCount; ++i) {  // bit-identical reruns
        CHECK(a.components[i].dynamic_power_w == b.components[i].dynamic_power_w);
        CHECK(a.components[i].leakage_power_w == b.components[i].leakage_power_w);
    }

    EventCounts slower = ev;  // same events spread over twice the time
    slower.cycles *= 2;
    PowerReport halved = estimate_core(hw, slower, defaults, tech);
    for (int i = 0; i < kComponentCount; ++i) {
        CHECK(halved.components[i].dynamic_power_w ==
              doctest::Approx(0.5 * a.components[i].dynamic_power_w).epsilon(1e-12));
        CHECK(halved.components[i].leakage_power_w == a.components[i].leakage_power_w);
    }
}

TEST_CASE("default parameter set reproduces the base model bit-exactly") {
    ParameterSet defaults = default_parameter_set();
    TechProfile tech = generic_tech_profile();
    for (const char* id : {"B1", "B8", "X1", "X10"}) {
        HardwareConfig hw = bundled_config(id).hw;
        EventCounts ev = busy_events();
        PowerReport injected = estimate_core(hw, ev, defaults, tech);
        PowerReport base = test_oracle::base_estimate(hw, ev, tech);
        for (int i = 0; i < kComponentCount; ++i) {
            CHECK(injected.components[i].dynamic_power_w ==
                  base.components[i].dynamic_power_w);
            CHECK(injected.components[i].leakage_power_w ==
                  base.components[i].leakage_power_w);
        }
        CHECK(injected.total_power_w == base.total_power_w);
    }
}
