#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "rspdc/spdc/amplitude.hpp"
#include "rspdc/spdc/observables.hpp"

namespace rspdc::spdc {

/// Little-endian binary: u64 N_s, u64 N_i, f64 ws_first, ws_last, wi_first,
/// wi_last, then N_s * N_i interleaved (re, im) f64 values, row-major
/// (signal index outer).
void write_amplitude_binary(const TwoPhotonAmplitude& tpa, const std::string& path);

/// Sidecar metadata: normalization tag, w_p0, exact grid, warning flags and
/// caller-supplied provenance.
nlohmann::json amplitude_sidecar(const TwoPhotonAmplitude& tpa, const nlohmann::json& provenance);

/// Writes <base>.bin and <base>.json.
void write_amplitude(const TwoPhotonAmplitude& tpa, const std::string& base,
                     const nlohmann::json& provenance = nlohmann::json::object());
/// Reads <base>.bin and <base>.json back.
TwoPhotonAmplitude read_amplitude(const std::string& base);

/// Header: omega_s_rad_per_fs,omega_i_rad_per_fs,abs2
void write_intensity_csv(const TwoPhotonAmplitude& tpa, std::ostream& out);

/// Header: omega_rad_per_fs,value
void write_spectrum_csv(const SignalSpectrum& spectrum, std::ostream& out);

/// Header: omega_rad_per_fs,ratio
void write_relative_csv(const RelativeSpectrum& spectrum, std::ostream& out);

}  // namespace rspdc::spdc
