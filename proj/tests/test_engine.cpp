#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "comet/engine.hpp"

using namespace comet;

namespace {

MemoryGeometry comet4b() {
    MemoryGeometry g;
    g.banks = 4;
    g.subarray_count = 4096;
    g.subarray_rows = 512;
    g.subarray_cols = 256;
    g.bits_per_cell = 4;
    return validate_geometry(g);
}

std::vector<TraceRequest> parse(const std::string& text) {
    std::istringstream in(text);
    return parse_trace(in);
}

} // namespace

TEST_CASE("parse_trace grammar") {
    auto t = parse("# warm-up\n"
                   "0 R 0x1000\n"
                   "10.5 W 2000 256\n"
                   "\n"
                   "20 R 0  # trailing comment\n");
    REQUIRE(t.size() == 3);
    CHECK(t[0].arrival_ns == 0.0);
    CHECK(t[0].op == TraceRequest::Op::Read);
    CHECK(t[0].address == 0x1000);
    CHECK(t[0].size_bytes == 0);
    CHECK(t[1].arrival_ns == 10.5);
    CHECK(t[1].op == TraceRequest::Op::Write);
    CHECK(t[1].address == 0x2000);
    CHECK(t[1].size_bytes == 256);
    CHECK(t[2].address == 0);
}

TEST_CASE("parse_trace errors carry the line number") {
    CHECK_THROWS_WITH_AS(parse("0 X 0x10\n"), doctest::Contains("line 1"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(parse("0 R 0x10\n5 R zz\n"), doctest::Contains("line 2"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(parse("abc R 0x10\n"), doctest::Contains("bad time"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(parse("0 R\n"), doctest::Contains("expected"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(parse("0 R 0x10 0\n"), doctest::Contains("bad size"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(parse("10 R 0x10\n5 R 0x20\n"),
                         doctest::Contains("regression"), std::runtime_error);
}

TEST_CASE("cold read latency") {
    EngineConfig cfg = default_engine_config(comet4b());
    auto s = simulate_comet(parse("0 R 0x0\n"), cfg);
    // switch + tune + read + 4-beat burst + interface.
    CHECK(s.avg_latency_ns == doctest::Approx(221.0));
    CHECK(s.max_latency_ns == doctest::Approx(221.0));
    CHECK(s.reads == 1);
    CHECK(s.decode_errors == 0);
}

TEST_CASE("warm read skips switch and tune under the open policy") {
    EngineConfig cfg = default_engine_config(comet4b());
    auto s = simulate_comet(parse("0 R 0x0\n300 R 0x0\n"), cfg);
    CHECK(s.max_latency_ns == doctest::Approx(221.0));
    CHECK(s.p50_latency_ns <= 221.0);
    // Second access: read + burst + interface only.
    CHECK(s.avg_latency_ns == doctest::Approx((221.0 + 119.0) / 2));

    cfg.policy = RowPolicy::Closed;
    auto c = simulate_comet(parse("0 R 0x0\n300 R 0x0\n"), cfg);
    CHECK(c.avg_latency_ns == doctest::Approx(221.0));
}

TEST_CASE("cold write latency and energy") {
    EngineConfig cfg = default_engine_config(comet4b());
    auto s = simulate_comet(parse("0 W 0x0\n"), cfg);
    // switch + tune + erase + farthest-level program + interface.
    CHECK(s.avg_latency_ns == doctest::Approx(587.0));
    uint64_t cells = cells_per_line(cfg.geometry, cfg.line_bytes);
    uint32_t far = cfg.levels.farthest_from_reset().level;
    TransitionCost unit = transition_cost(far, far, cfg.levels);
    CHECK(s.write_energy_pj == doctest::Approx(double(cells) * unit.energy_pj));
    CHECK(s.writes == 1);
}

TEST_CASE("selectable write level changes the program time") {
    EngineConfig cfg = default_engine_config(comet4b());
    cfg.write_level = 15; // nearest to reset: shortest ramp step
    auto s = simulate_comet(parse("0 W 0x0\n"), cfg);
    CHECK(cfg.levels.rows[15].program_latency_ns == doctest::Approx(10.0));
    CHECK(s.avg_latency_ns == doctest::Approx(100 + 2 + 210 + 10 + 105));
}

TEST_CASE("banks serve lines concurrently; same bank queues FIFO") {
    EngineConfig cfg = default_engine_config(comet4b());
    // Lines 0 and 1 hit banks 0 and 1: both finish in one service time.
    auto par = simulate_comet(parse("0 R 0x0\n0 R 0x80\n"), cfg);
    CHECK(par.max_latency_ns == doctest::Approx(221.0));
    // Same line twice back-to-back queues; second waits out the first,
    // then runs warm.
    auto ser = simulate_comet(parse("0 R 0x0\n0 R 0x0\n"), cfg);
    CHECK(ser.max_latency_ns == doctest::Approx(221.0 + 119.0));
}

TEST_CASE("multi-line request spans banks") {
    EngineConfig cfg = default_engine_config(comet4b());
    // 512 B = 4 lines across the 4 banks: all cold, all parallel.
    auto s = simulate_comet(parse("0 R 0x0 512\n"), cfg);
    CHECK(s.max_latency_ns == doctest::Approx(221.0));
    CHECK(s.total_bits == 512 * 8);
}

TEST_CASE("simulation is deterministic") {
    EngineConfig cfg = default_engine_config(comet4b());
    std::string text = "0 R 0x0\n50 W 0x1040\n120 R 0x20000\n400 R 0x0\n";
    auto a = simulate_comet(parse(text), cfg);
    auto b = simulate_comet(parse(text), cfg);
    CHECK(a.total_energy_pj() == b.total_energy_pj());
    CHECK(a.avg_latency_ns == b.avg_latency_ns);
    CHECK(a.bandwidth_bytes_per_s == b.bandwidth_bytes_per_s);
}

TEST_CASE("energy components add up and stay positive") {
    EngineConfig cfg = default_engine_config(comet4b());
    auto s = simulate_comet(parse("0 R 0x0\n300 W 0x0\n"), cfg);
    CHECK(s.laser_energy_pj > 0.0);
    CHECK(s.soa_energy_pj > 0.0);
    CHECK(s.eo_energy_pj > 0.0);
    CHECK(s.write_energy_pj > 0.0);
    CHECK(s.total_energy_pj() ==
          doctest::Approx(s.laser_energy_pj + s.soa_energy_pj + s.eo_energy_pj +
                          s.write_energy_pj)
              .epsilon(1e-12));
    CHECK(s.epb_pj_per_bit ==
          doctest::Approx(s.total_energy_pj() / double(s.total_bits)));
}

TEST_CASE("bandwidth is bytes over the active span") {
    EngineConfig cfg = default_engine_config(comet4b());
    auto s = simulate_comet(parse("0 R 0x0\n"), cfg);
    CHECK(s.bandwidth_bytes_per_s == doctest::Approx(128.0 / 221e-9));
    CHECK(s.span_ns == doctest::Approx(221.0));
}

TEST_CASE("no decode errors across a full subarray row sweep") {
    EngineConfig cfg = default_engine_config(comet4b());
    std::ostringstream trace;
    // Touch one line in every subarray row. One 128 B line fills a bank row,
    // so the row field starts right after offset(7) + bank(2) bits.
    for (int r = 0; r < 512; ++r)
        trace << r * 1000 << " R " << std::hex << (uint64_t(r) << 9) << std::dec
              << "\n";
    auto s = simulate_comet(parse(trace.str()), cfg);
    CHECK(s.reads == 512);
    CHECK(s.decode_errors == 0);
}

TEST_CASE("sweep keeps capacity and delivered bits fixed") {
    EngineConfig base = default_engine_config(comet4b());
    auto rows = sweep_bit_density(parse("0 R 0x0\n300 R 0x80\n600 W 0x100\n"), base);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].bits == 1);
    CHECK(rows[1].bits == 2);
    CHECK(rows[2].bits == 4);
    for (const auto& r : rows) {
        CHECK(r.geometry.capacity_bits == (1ull << 33));
        CHECK(r.line_bits == 1024);
        CHECK(r.stats.reads == 2);
        CHECK(r.stats.writes == 1);
    }
    // Denser cells program longer: write-heavy energy rises with b through
    // the blind reset cost, and latency never shrinks.
    CHECK(rows[2].stats.write_energy_pj > 0.0);
}

TEST_CASE("empty trace yields zeroed stats") {
    EngineConfig cfg = default_engine_config(comet4b());
    auto s = simulate_comet({}, cfg);
    CHECK(s.reads == 0);
    CHECK(s.writes == 0);
    CHECK(s.span_ns == 0.0);
    CHECK(s.bandwidth_bytes_per_s == 0.0);
}
