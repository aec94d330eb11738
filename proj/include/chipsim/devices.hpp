// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 The chipsim Authors

#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>

namespace chipsim::devices {

/// Phase-change-material coupler. The partially crystalline phase is
/// parameterized directly by the fraction `t` of input power sent to the
/// cross port. `cl_ratio` (amorphous / crystalline coupling length) is
/// carried as metadata only.
struct PcmcState {
    enum class Phase { crystalline, partial, amorphous };

    Phase phase = Phase::crystalline;
    double cross_fraction = 0.0;  // t; meaningful for Phase::partial
    double excess_loss_db = 0.0;
    double cl_ratio = 1.0;

    static PcmcState crystalline(double excess_loss_db = 0.0) { return {Phase::crystalline, 0.0, excess_loss_db}; }
    static PcmcState amorphous(double excess_loss_db = 0.0) { return {Phase::amorphous, 1.0, excess_loss_db}; }
    static PcmcState partial(double t, double excess_loss_db = 0.0) { return {Phase::partial, t, excess_loss_db}; }

    bool operator==(const PcmcState&) const = default;
};

struct PortSplit {
    double bar = 0.0;
    double cross = 0.0;
};

/// Device-level calibration constants. None of these values come from
/// measured silicon; the defaults are documented starting points.
struct DeviceParams {
    double coupler_loss_db = 1.0;
    double propagation_loss_db_per_mm = 0.1;
    double mr_through_loss_db = 0.005;
    double mr_drop_loss_db = 0.5;
    double splitter_excess_db = 0.1;
    double pd_sensitivity_dbm = -20.0;
    double laser_efficiency = 0.1;
    double mr_tuning_mw = 0.5;
    double modulator_energy_pj_per_bit = 0.5;
    double filter_pd_energy_pj_per_bit = 0.3;
    double gateway_elec_energy_pj_per_bit = 0.2;
    double dac_energy_pj = 1.0;
    double adc_energy_pj = 2.0;
    double pcm_transition_s = 1e-6;
    double group_velocity_mm_per_s = 7.5e10;  // c / 4

    /// Throws ConfigError if any field is out of range.
    void validate() const;
};

/// Link-budget view of one waveguide path from laser to the last reader.
struct OpticalPath {
    double length_mm = 0.0;
    std::uint64_t mrs_passed = 0;
    std::uint64_t drop_stages = 0;
    std::uint64_t split_fanout = 1;
    std::uint64_t couplers = 0;
};

/// Bar/cross power fractions; bar + cross = 10^(-excess_loss_db/10).
PortSplit pcmc_transfer(const PcmcState& state);

/// Coupler state whose lossless cross fraction equals `target_cross`.
/// Throws UsageError outside [0, 1].
PcmcState pcmc_for_split(double target_cross, double excess_loss_db = 0.0);

/// Total insertion loss (dB). Splitting uses an ideal 10*log10(fanout)
/// plus per-stage excess on a binary tree.
double path_insertion_loss(const OpticalPath& path, const DeviceParams& params);

/// Wall-plug laser power (W) to close every path's link budget at the
/// photodetector sensitivity on all `n_wavelengths`.
/// Throws UsageError on an empty path list or zero wavelengths.
double required_laser_power(std::span<const OpticalPath> paths, std::uint64_t n_wavelengths, const DeviceParams& params);

/// bits / (n_wavelengths * rate_bps), seconds.
double serialization_time(std::uint64_t bits, std::uint64_t n_wavelengths, double rate_bps);

/// Static EO tuning power (W) of `active_mrs` rings.
double mr_tuning_power(std::uint64_t active_mrs, const DeviceParams& params);

/// Electro-optic plus gateway conversion energy (J) for `bits`.
double conversion_energy(std::uint64_t bits, const DeviceParams& params);

inline double db_to_linear(double db) {
    return std::pow(10.0, db / 10.0);
}

}  // namespace chipsim::devices
