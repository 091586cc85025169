#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "comet/pcm_cell.hpp"

using namespace comet;

namespace {

// Independent bisection oracle for the mixing relation with real inputs:
// find eps solving (eps-1)/(eps+2) = target.
double mixing_oracle_real(double f_c, double eps_a, double eps_c) {
    auto ll = [](double e) { return (e - 1.0) / (e + 2.0); };
    double target = f_c * ll(eps_c) + (1.0 - f_c) * ll(eps_a);
    double lo = 1e-6, hi = 1e6;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (ll(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("effective_permittivity endpoints and midpoint") {
    CHECK(effective_permittivity(0.0, 4.0, 9.0).real() == doctest::Approx(4.0));
    CHECK(effective_permittivity(1.0, 4.0, 9.0).real() == doctest::Approx(9.0));

    double oracle = mixing_oracle_real(0.5, 4.0, 9.0);
    double got = effective_permittivity(0.5, 4.0, 9.0).real();
    CHECK(got == doctest::Approx(oracle).epsilon(1e-9));
    CHECK(got == doctest::Approx(5.765).epsilon(1e-3));
}

TEST_CASE("effective_permittivity rejects bad input") {
    CHECK_THROWS_AS(effective_permittivity(-0.1, 4.0, 9.0), std::domain_error);
    CHECK_THROWS_AS(effective_permittivity(1.1, 4.0, 9.0), std::domain_error);
    CHECK_THROWS_AS(effective_permittivity(0.5, -1.0, 9.0), std::domain_error);
}

TEST_CASE("effective index monotone in crystalline fraction") {
    std::complex<double> eps_a{4.0, 0.1}, eps_c{9.0, 1.5};
    double prev = refractive_index(effective_permittivity(0.0, eps_a, eps_c)).n;
    for (int i = 1; i <= 1000; ++i) {
        double f = i / 1000.0;
        double n = refractive_index(effective_permittivity(f, eps_a, eps_c)).n;
        CHECK(n > prev);
        prev = n;
    }
}

TEST_CASE("16-level ladder") {
    LevelTable t = build_level_table(4, ResetMode::Crystalline);
    REQUIRE(t.rows.size() == 16);
    CHECK(t.rows[0].transmission == doctest::Approx(0.95).epsilon(1e-15));
    CHECK(t.rows[15].transmission == doctest::Approx(0.05).epsilon(1e-12));
    for (size_t i = 0; i + 1 < t.rows.size(); ++i) {
        double gap = t.rows[i].transmission - t.rows[i + 1].transmission;
        CHECK(std::abs(gap - 0.06) < 1e-12);
    }
    CHECK(t.reset_energy_pj == 880.0);
    CHECK(build_level_table(4, ResetMode::Amorphous).reset_energy_pj == 280.0);
}

TEST_CASE("reduced-density tables take the extreme levels") {
    LevelTable t1 = build_level_table(1, ResetMode::Crystalline);
    REQUIRE(t1.rows.size() == 2);
    CHECK(t1.rows[0].transmission == doctest::Approx(0.95));
    CHECK(t1.rows[1].transmission == doctest::Approx(0.05));

    LevelTable t2 = build_level_table(2, ResetMode::Crystalline);
    REQUIRE(t2.rows.size() == 4);
    CHECK(t2.rows[1].transmission == doctest::Approx(0.65));
    CHECK(t2.rows[2].transmission == doctest::Approx(0.35));
}

TEST_CASE("default programming ramp respects the max write bound") {
    for (auto mode : {ResetMode::Crystalline, ResetMode::Amorphous}) {
        LevelTable t = build_level_table(4, mode);
        for (const auto& r : t.rows) {
            CHECK(r.program_latency_ns >= 10.0);
            CHECK(r.program_latency_ns <= 170.0);
        }
        CHECK(t.farthest_from_reset().program_latency_ns == 170.0);
    }
}

TEST_CASE("override table must match the level count") {
    std::vector<LevelOverride> wrong{{0, 0.9, 50.0, 100.0}};
    CHECK_THROWS_AS(build_level_table(4, ResetMode::Crystalline, &wrong),
                    std::invalid_argument);
    std::vector<LevelOverride> ok;
    for (uint32_t i = 0; i < 16; ++i)
        ok.push_back({i, 0.95 - 0.06 * i, 42.0, 84.0});
    LevelTable t = build_level_table(4, ResetMode::Crystalline, &ok);
    CHECK(t.rows[7].program_latency_ns == 42.0);
}

TEST_CASE("encode_symbol") {
    LevelTable t = build_level_table(4, ResetMode::Crystalline);
    CHECK(encode_symbol(0, t).transmission == doctest::Approx(0.95));
    CHECK(encode_symbol(15, t).transmission == doctest::Approx(0.05));
    CHECK_THROWS_AS(encode_symbol(16, t), std::domain_error);
}

TEST_CASE("decode_transmission boundaries and guard band") {
    LevelTable t = build_level_table(4, ResetMode::Crystalline);
    CHECK(decode_transmission(0.95, t).value == 0);
    CHECK_FALSE(decode_transmission(0.95, t).ambiguous);

    auto near_boundary = decode_transmission(0.93, t);
    CHECK(near_boundary.value == 0);
    CHECK_FALSE(near_boundary.ambiguous);

    auto on_boundary = decode_transmission(0.92, t);
    CHECK(on_boundary.ambiguous);
    CHECK(on_boundary.candidate_a == 0);
    CHECK(on_boundary.candidate_b == 1);

    CHECK_THROWS_AS(decode_transmission(1.2, t), std::domain_error);
}

TEST_CASE("encode/decode round trip under recoverable loss") {
    LevelTable t = build_level_table(4, ResetMode::Crystalline);
    // Any loss under half the level spacing survives gain restoration.
    for (double drop : {0.0, 0.01, 0.02, 0.029}) {
        for (uint32_t v = 0; v < 16; ++v) {
            double sent = encode_symbol(v, t).transmission;
            double received = sent * (1.0 - drop); // attenuate
            double restored = received / (1.0 - drop); // interface gain
            auto d = decode_transmission(restored, t, 1e-6);
            CHECK_FALSE(d.ambiguous);
            CHECK(d.value == v);
        }
    }
}

TEST_CASE("transition_cost is blind reset + program") {
    LevelTable t = build_level_table(4, ResetMode::Crystalline);
    TransitionCost c = transition_cost(3, 3, t);
    CHECK(c.energy_pj ==
          doctest::Approx(880.0 + t.rows[3].program_energy_pj));
    CHECK(c.latency_ns ==
          doctest::Approx(t.reset_latency_ns + t.rows[3].program_latency_ns));

    LevelTable ta = build_level_table(4, ResetMode::Amorphous);
    CHECK(transition_cost(0, 9, ta).energy_pj ==
          doctest::Approx(280.0 + ta.rows[9].program_energy_pj));
}

TEST_CASE("wavelength loss across the C-band") {
    CHECK(wavelength_loss_db_per_mm(1530.0) == doctest::Approx(0.073));
    CHECK(wavelength_loss_db_per_mm(1565.0) == doctest::Approx(0.067));
    CHECK(wavelength_loss_db_per_mm(1547.5) == doctest::Approx(0.070));
    CHECK_THROWS_AS(wavelength_loss_db_per_mm(1500.0), std::domain_error);
    CHECK_THROWS_AS(wavelength_loss_db_per_mm(1600.0), std::domain_error);

    // Low variation across the whole band.
    double lo = wavelength_loss_db_per_mm(1530.0);
    double hi = wavelength_loss_db_per_mm(1565.0);
    CHECK(std::abs(lo - hi) <= 0.006 + 1e-12);
}
