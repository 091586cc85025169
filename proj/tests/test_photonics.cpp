#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "comet/photonics.hpp"

using namespace comet;
using K = PathElement::Kind;

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

} // namespace

TEST_CASE("loss_chain_db sums the atoms") {
    LossParams p;
    CHECK(loss_chain_db({{K::Waveguide, 0.0}}, p) == 0.0);
    CHECK(loss_chain_db({{K::Coupler, 1}, {K::GstSwitch, 1}, {K::EoMrDrop, 1}}, p) ==
          doctest::Approx(2.8));
    CHECK(loss_chain_db({{K::EoMrThrough, 46}, {K::IntraSoa, 15.2}}, p) ==
          doctest::Approx(-0.02));
}

TEST_CASE("loss_chain_db is additive over concatenation") {
    LossParams p;
    PathDescriptor a{{K::Coupler, 1}, {K::Waveguide, 2.0}, {K::Bend, 4}};
    PathDescriptor b{{K::EoMrDrop, 1}, {K::IntraSoa, 15.2}, {K::PassiveMrThrough, 30}};
    PathDescriptor ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    CHECK(loss_chain_db(ab, p) ==
          doctest::Approx(loss_chain_db(a, p) + loss_chain_db(b, p)));
}

TEST_CASE("laser_power_w definitions") {
    LossParams loss;
    PowerParams power;
    // Lossless, 1 wavelength, crystalline mode: 1 mW / 20% = 5 mW.
    CHECK(laser_power_w(1, power.cell_power_crystalline_w, {{K::Waveguide, 0.0}},
                        loss, power) == doctest::Approx(5e-3));
    // 3 dB path.
    CHECK(laser_power_w(1, power.cell_power_crystalline_w, {{K::Attenuator, 3.0}},
                        loss, power) == doctest::Approx(9.976e-3).epsilon(1e-3));
    // Amorphous mode scales by 5.
    CHECK(laser_power_w(1, power.cell_power_amorphous_w, {{K::Attenuator, 3.0}},
                        loss, power) ==
          doctest::Approx(5 * 9.976e-3).epsilon(1e-3));
}

TEST_CASE("laser_power_w monotone in loss and wavelength count") {
    LossParams loss;
    PowerParams power;
    double base = laser_power_w(8, 1e-3, {{K::Attenuator, 2.0}}, loss, power);
    CHECK(laser_power_w(8, 1e-3, {{K::Attenuator, 2.5}}, loss, power) > base);
    CHECK(laser_power_w(16, 1e-3, {{K::Attenuator, 2.0}}, loss, power) > base);
}

TEST_CASE("laser_power_w flags runaway net gain") {
    LossParams loss;
    PowerParams power;
    PathDescriptor hot{{K::IntraSoa, 45.0}};
    CHECK_THROWS_WITH_AS(laser_power_w(1, 1e-3, hot, loss, power),
                         doctest::Contains("saturation"), std::runtime_error);
}

TEST_CASE("soa_count") {
    MemoryGeometry g = comet4b();
    CHECK(soa_count(g, 46) == 46684428); // ceil(2^31 / 46)
    MemoryGeometry tiny;
    tiny.banks = 1;
    tiny.subarray_count = 1;
    tiny.subarray_rows = 64;
    tiny.subarray_cols = 1;
    tiny.bits_per_cell = 1;
    tiny = validate_geometry(tiny);
    CHECK(soa_count(tiny, 64) == 1);
    CHECK(soa_count(tiny, 1) == 64);
}

TEST_CASE("active_soa_power_w") {
    MemoryGeometry g = comet4b();
    PowerParams p;
    CHECK(active_soa_power_w(g, 46, p) ==
          doctest::Approx(4.0 * 512 * 256 / 46.0 * 1.4e-3)); // ~15.96 W
    // Linear in column count.
    MemoryGeometry g2 = g;
    g2.subarray_cols = 512;
    g2.bits_per_cell = 2;
    g2 = validate_geometry(g2);
    CHECK(active_soa_power_w(g2, 46, p) ==
          doctest::Approx(2.0 * active_soa_power_w(g, 46, p)));
    // Only accessed subarrays are powered: bounded by the whole-chip count.
    CHECK(active_soa_power_w(g, 46, p) <=
          static_cast<double>(soa_count(g, 46)) * p.intra_soa_power_w);
}

TEST_CASE("eo_tuning_power_w") {
    MemoryGeometry g = comet4b();
    PowerParams p;
    CHECK(eo_tuning_power_w(g, p) == doctest::Approx(8.192e-3));
    p.tuning_shift_nm = 0.0;
    CHECK(eo_tuning_power_w(g, p) == 0.0);

    MemoryGeometry unit;
    unit.banks = 1;
    unit.subarray_count = 1;
    unit.subarray_rows = 1;
    unit.subarray_cols = 1;
    unit.bits_per_cell = 1;
    unit = validate_geometry(unit);
    PowerParams p1;
    CHECK(eo_tuning_power_w(unit, p1) == doctest::Approx(8e-6));
}

TEST_CASE("power_stack adds up") {
    MemoryGeometry g = comet4b();
    LossParams loss;
    PowerParams power;
    PathDescriptor path = default_comet_path(g, loss);
    PowerStack s = power_stack(g, path, loss, power, ProgramMode::CrystallineReset);
    CHECK(s.total_w() ==
          doctest::Approx(s.laser_w + s.soa_w + s.eo_tuning_w).epsilon(1e-9));
    CHECK(s.laser_w > 0.0);

    // Degenerate parameters: only the laser floor remains.
    LossParams no_loss;
    no_loss.coupling_db = no_loss.gst_switch_db = no_loss.propagation_db_per_cm = 0.0;
    no_loss.eo_mr_drop_db = no_loss.eo_mr_through_db = 0.0;
    no_loss.intra_soa_gain_db = 1e-12;
    PowerParams no_power = power;
    no_power.tuning_shift_nm = 0.0;
    no_power.intra_soa_power_w = 0.0;
    PowerStack floor = power_stack(g, default_comet_path(g, no_loss), no_loss,
                                   no_power, ProgramMode::CrystallineReset);
    CHECK(floor.total_w() == doctest::Approx(floor.laser_w));
    CHECK(floor.laser_w ==
          doctest::Approx(g.total_cols * 1e-3 / 0.2).epsilon(1e-6));
}

TEST_CASE("default path structure") {
    MemoryGeometry g = comet4b();
    LossParams loss;
    PathDescriptor path = default_comet_path(g, loss, 2.0, 46);
    // 512 rows = 11 full 46-row segments + 6 remaining throughs.
    int soas = 0;
    double throughs = 0;
    for (const auto& e : path) {
        if (e.kind == K::IntraSoa)
            ++soas;
        if (e.kind == K::EoMrThrough)
            throughs += e.amount;
    }
    CHECK(soas == 11);
    CHECK(throughs == 512);
}
