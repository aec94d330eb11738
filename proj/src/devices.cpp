// SPDX-License-Identifier: Apache-2.0
// SPDX-FileCopyrightText: © 2026 The chipsim Authors

#include "chipsim/devices.hpp"

#include <bit>
#include <cmath>

#include "chipsim/error.hpp"

namespace chipsim::devices {

void DeviceParams::validate() const {
    for (double loss : {coupler_loss_db, propagation_loss_db_per_mm, mr_through_loss_db, mr_drop_loss_db, splitter_excess_db})
        if (!(loss >= 0.0)) throw ConfigError("device losses must be >= 0 dB");
    if (!(laser_efficiency > 0.0 && laser_efficiency <= 1.0)) throw ConfigError("laser_efficiency must be in (0, 1]");
    for (double e : {mr_tuning_mw, modulator_energy_pj_per_bit, filter_pd_energy_pj_per_bit, gateway_elec_energy_pj_per_bit,
                     dac_energy_pj, adc_energy_pj, pcm_transition_s})
        if (!(e >= 0.0)) throw ConfigError("device energies and times must be >= 0");
    if (!(group_velocity_mm_per_s > 0.0)) throw ConfigError("group_velocity_mm_per_s must be > 0");
    if (!std::isfinite(pd_sensitivity_dbm)) throw ConfigError("pd_sensitivity_dbm must be finite");
}

PortSplit pcmc_transfer(const PcmcState& s) {
    const double kept = std::pow(10.0, -s.excess_loss_db / 10.0);
    switch (s.phase) {
        case PcmcState::Phase::crystalline:
            return {kept, 0.0};
        case PcmcState::Phase::amorphous:
            return {0.0, kept};
        case PcmcState::Phase::partial:
            break;
    }
    return {(1.0 - s.cross_fraction) * kept, s.cross_fraction * kept};
}

PcmcState pcmc_for_split(double target_cross, double excess_loss_db) {
    if (!(target_cross >= 0.0 && target_cross <= 1.0))
        throw UsageError("PCMC target cross fraction must be in [0, 1]");
    if (target_cross == 0.0) return PcmcState::crystalline(excess_loss_db);
    if (target_cross == 1.0) return PcmcState::amorphous(excess_loss_db);
    return PcmcState::partial(target_cross, excess_loss_db);
}

double path_insertion_loss(const OpticalPath& p, const DeviceParams& d) {
    double il = static_cast<double>(p.couplers) * d.coupler_loss_db + p.length_mm * d.propagation_loss_db_per_mm +
                static_cast<double>(p.mrs_passed) * d.mr_through_loss_db +
                static_cast<double>(p.drop_stages) * d.mr_drop_loss_db;
    if (p.split_fanout > 1) {
        const auto stages = static_cast<double>(std::bit_width(p.split_fanout - 1));  // ceil(log2(fanout))
        il += 10.0 * std::log10(static_cast<double>(p.split_fanout)) + stages * d.splitter_excess_db;
    }
    return il;
}

double required_laser_power(std::span<const OpticalPath> paths, std::uint64_t n_wavelengths, const DeviceParams& d) {
    if (paths.empty()) throw UsageError("required_laser_power: empty path list");
    if (n_wavelengths == 0) throw UsageError("required_laser_power: need at least one wavelength");
    double per_wavelength_mw = 0.0;
    for (const auto& p : paths) per_wavelength_mw += db_to_linear(d.pd_sensitivity_dbm + path_insertion_loss(p, d));
    const double optical_w = static_cast<double>(n_wavelengths) * per_wavelength_mw * 1e-3;
    return optical_w / d.laser_efficiency;
}

double serialization_time(std::uint64_t bits, std::uint64_t n_wavelengths, double rate_bps) {
    if (n_wavelengths == 0 || !(rate_bps > 0.0)) throw UsageError("serialization_time: need wavelengths >= 1 and rate > 0");
    return static_cast<double>(bits) / (static_cast<double>(n_wavelengths) * rate_bps);
}

double mr_tuning_power(std::uint64_t active_mrs, const DeviceParams& d) {
    return static_cast<double>(active_mrs) * d.mr_tuning_mw / 1000.0;
}

double conversion_energy(std::uint64_t bits, const DeviceParams& d) {
    const double pj = d.modulator_energy_pj_per_bit + d.filter_pd_energy_pj_per_bit + d.gateway_elec_energy_pj_per_bit;
    return static_cast<double>(bits) * pj * 1e-12;
}

}  // namespace chipsim::devices
