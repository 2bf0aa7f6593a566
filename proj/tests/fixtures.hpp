#ifndef COREPOWER_TESTS_FIXTURES_HPP
#define COREPOWER_TESTS_FIXTURES_HPP

#include "corepower/data_io.hpp"
#include "corepower/types.hpp"

namespace corepower::fixtures {

inline HardwareConfig mid_core() { return bundled_config("B8").hw; }
inline HardwareConfig small_core() { return bundled_config("B1").hw; }

/// A busy, plausible workload: every counter nonzero, activities below 1.
inline EventCounts busy_events() {
    EventCounts ev;
    ev.bp_lookups = 180'000;
    ev.bp_updates = 171'000;
    ev.bp_mispredictions = 8'000;
    ev.icache_hits = 140'000;
    ev.icache_misses = 1'400;
    ev.decoded_insts = 1'050'000;
    ev.renamed_insts = 1'018'000;
    ev.rob_reads = 1'050'000;
    ev.rob_writes = 1'018'000;
    ev.issue_window_reads = 1'020'000;
    ev.issue_window_writes = 967'000;
    ev.issue_window_wakeups = 1'140'000;
    ev.int_regfile_reads = 1'300'000;
    ev.int_regfile_writes = 760'000;
    ev.fp_regfile_reads = 95'000;
    ev.fp_regfile_writes = 47'000;
    ev.int_alu_ops = 620'000;
    ev.mul_ops = 15'000;
    ev.fpu_ops = 50'000;
    ev.loads = 190'000;
    ev.stores = 110'000;
    ev.dcache_hits = 290'000;
    ev.dcache_misses = 3'000;
    ev.cycles = 900'000;
    ev.clock_frequency_hz = 1e9;
    return ev;
}

inline EventCounts zero_events() {
    EventCounts ev;
    ev.cycles = 1'000'000;
    ev.clock_frequency_hz = 1e9;
    return ev;
}

}  // namespace corepower::fixtures

#endif
