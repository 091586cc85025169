#ifndef COMET_PCM_CELL_HPP
#define COMET_PCM_CELL_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace comet {

struct ComplexIndex {
    double n = 1.0;     // real refractive index
    double kappa = 0.0; // extinction coefficient
};

// Lorentz-Lorenz effective-medium mixing for a partially crystallized cell:
//   (eps_eff - 1)/(eps_eff + 2) =
//       f_c (eps_c - 1)/(eps_c + 2) + (1 - f_c)(eps_a - 1)/(eps_a + 2)
// Solved in closed form. f_c outside [0,1] or a non-physical permittivity
// (Re <= 0) throws std::domain_error.
std::complex<double> effective_permittivity(double f_c,
                                            std::complex<double> eps_a,
                                            std::complex<double> eps_c);

// Principal-branch n + i*kappa from a complex permittivity.
ComplexIndex refractive_index(std::complex<double> eps);

enum class ResetMode { Crystalline, Amorphous };

struct LevelRow {
    uint32_t level = 0;
    double transmission = 0.0;
    double crystalline_fraction = 0.0;
    double program_latency_ns = 0.0;
    double program_energy_pj = 0.0;
};

struct LevelTable {
    uint32_t bits = 4;
    ResetMode mode = ResetMode::Crystalline;
    double reset_energy_pj = 0.0;
    double reset_latency_ns = 0.0;
    std::vector<LevelRow> rows; // 2^bits rows, transmission descending

    double level_spacing() const; // |T_i - T_{i+1}|, uniform by construction
    const LevelRow& farthest_from_reset() const;
};

struct LevelOverride {
    uint32_t level;
    double transmission;
    double latency_ns;
    double energy_pj;
};

// 2^b levels picked as the equally spaced subset of the 16-level ladder
// T_i = 0.95 - 0.06 i. Default program latencies ramp linearly from 10 ns
// (level nearest the reset state) to 170 ns (farthest); default energies
// are incident power x latency (1 mW crystalline-reset, 5 mW amorphous).
// An override table, when given, must have exactly 2^b rows.
LevelTable build_level_table(uint32_t bits, ResetMode mode,
                             const std::vector<LevelOverride>* overrides = nullptr);

struct CellState {
    uint32_t level = 0;
    double crystalline_fraction = 0.0;
    double transmission = 0.0;
};

CellState encode_symbol(uint32_t value, const LevelTable& table);

struct DecodeResult {
    bool ambiguous = false;
    uint32_t value = 0;       // nearest level (valid even when ambiguous)
    uint32_t candidate_a = 0; // the two contenders when ambiguous
    uint32_t candidate_b = 0;
};

// Nearest-level decode with decision boundaries at level midpoints.
// A readout within guard_band of a boundary is flagged ambiguous.
DecodeResult decode_transmission(double t_measured, const LevelTable& table,
                                 double guard_band = 0.01);

struct TransitionCost {
    double energy_pj = 0.0;
    double latency_ns = 0.0;
};

// Blind write: full reset plus programming the target level, regardless
// of the previous contents.
TransitionCost transition_cost(uint32_t from, uint32_t to, const LevelTable& table);

// GST cell loss across the C-band, linear between (1530 nm, 0.073 dB/mm)
// and (1565 nm, 0.067 dB/mm). Out-of-band wavelengths throw.
double wavelength_loss_db_per_mm(double lambda_nm);

} // namespace comet

#endif
