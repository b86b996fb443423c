#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "rspdc/analysis/interferometry.hpp"
#include "rspdc/analysis/schmidt.hpp"
#include "rspdc/analysis/temporal.hpp"

namespace rspdc::analysis {

/// {weights, amplitudes, entropy_bits, cooperativity, rank, mode_files}.
/// Writes the leading `modes` mode pairs as <base>_mode<n>.csv with header
/// omega_s_rad_per_fs,re_fs,im_fs,omega_i_rad_per_fs,re_fi,im_fi
/// and returns the JSON document (also written to <base>.json).
nlohmann::json write_schmidt(const SchmidtResult& schmidt, const std::string& base,
                             std::size_t modes = 3);

/// Header: tau_fs,rate
void write_hom_csv(const HomPattern& pattern, std::ostream& out);
/// Header: tau_s_fs,tau_i_fs,rate
void write_franson_csv(const FransonPattern& pattern, std::ostream& out);
/// Header: t_s_fs,t_i_fs,abs2
void write_temporal_csv(const TemporalAmplitude& temporal, std::ostream& out, std::size_t stride = 1);
/// Header: t_fs,flux
void write_flux_csv(const FluxSeries& flux, std::ostream& out);

}  // namespace rspdc::analysis
