#pragma once

#include <cstddef>
#include <optional>

#include "rspdc/ensemble/search.hpp"
#include "rspdc/optics/peaks.hpp"
#include "rspdc/spdc/amplitude.hpp"

namespace rspdc::ensemble {

/// First collinear degenerate match whose peak-centre enhancement reaches
/// `min_enhancement`, scanning indices 0 .. budget-1.
std::optional<SearchMatch> select_degenerate(const GeneratorSpace& space, std::size_t budget,
                                             double min_enhancement = 100.0,
                                             std::size_t workers = 1);

/// First two-peak match (FWHM ratio 4 +- 50 %) whose covering grid needs at
/// most `max_samples` points per axis.
std::optional<SearchMatch> select_two_peak(const GeneratorSpace& space, std::size_t budget,
                                           std::size_t max_samples = 2048,
                                           std::size_t workers = 1);

/// Grid and pinhole spacing shared by the M = 2 and M = 8 states around one
/// degenerate peak: about `spacing_fwhm` widths, rounded to whole grid steps
/// so the copies shift exactly.
struct PinholeLayout {
  spdc::FrequencyGrid grid;
  double delta_omega = 0.0;
};

PinholeLayout pinhole_layout(const optics::Peak& peak, double spacing_fwhm = 4.0,
                             double half_width_fwhm = 8.0, std::size_t samples = 256);

}  // namespace rspdc::ensemble
