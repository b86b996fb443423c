#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "rspdc/optics/layer_stack.hpp"
#include "rspdc/optics/peaks.hpp"
#include "rspdc/optics/spectrum.hpp"

namespace rspdc::optics {

/// {lambda0_um, seed, layers: [{material, thickness_um}], ...provenance}.
/// Thicknesses carry 12 significant digits.
nlohmann::json stack_to_json(const LayerStack& stack);
LayerStack stack_from_json(const nlohmann::json& doc);

void write_stack(const LayerStack& stack, const std::string& path);
LayerStack read_stack(const std::string& path);

/// Header: omega_rad_per_fs,T,R,re_t,im_t
void write_spectrum_csv(const TransmissionSpectrum& spectrum, std::ostream& out);
/// Header: omega_c_rad_per_fs,fwhm_omega_rad_per_fs,fwhm_nm,t_max
void write_peaks_csv(const PeakList& peaks, std::ostream& out);

}  // namespace rspdc::optics
