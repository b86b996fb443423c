#include <algorithm>
#include <cmath>
#include <iostream>
#include <memory>

#include "commands.hpp"
#include "rspdc/analysis/interferometry.hpp"
#include "rspdc/analysis/io.hpp"
#include "rspdc/analysis/schmidt.hpp"
#include "rspdc/analysis/temporal.hpp"
#include "rspdc/errors.hpp"
#include "rspdc/format.hpp"
#include "rspdc/spdc/amplitude.hpp"
#include "rspdc/spdc/io.hpp"
#include "rspdc/spdc/observables.hpp"
#include "rspdc/spdc/superposition.hpp"
#include "rspdc/units.hpp"

namespace rspdc::cli {

using nlohmann::json;

namespace {

json peak_json(const optics::Peak& p) {
  return {{"omega_c_rad_per_fs", p.omega_c},
          {"fwhm_omega_rad_per_fs", p.fwhm_omega},
          {"fwhm_nm", p.fwhm_nm},
          {"t_max", p.t_max}};
}

std::vector<std::string> amplitude_inputs(const std::string& base) {
  return {base + ".bin", base + ".json"};
}

json schmidt_summary(const analysis::SchmidtResult& s) {
  std::vector<double> top(s.weights.begin(),
                          s.weights.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(10, s.rank())));
  return {{"first_weight", s.weights.front()},
          {"weights", top},
          {"entropy_bits", analysis::entropy(s)},
          {"cooperativity", analysis::cooperativity(s)}};
}

void print_schmidt(const analysis::SchmidtResult& s) {
  print_value("first_weight", s.weights.front());
  print_value("entropy_bits", analysis::entropy(s));
  print_value("cooperativity", analysis::cooperativity(s));
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  return UniformAxis::linspace(lo, hi, n).values();
}

}  // namespace

void add_pairgen(CLI::App& app, Global& g) {
  struct Opts {
    StackSource src;
    PumpOptions pump;
    double theta_deg = 0.0;
    double psi_deg = 0.0;
    double area = 1.0e6;
    double omega_s = 0.0;
    double omega_i = 0.0;
    double margin = 8.0;
    double density = 5.0;
    std::size_t min_samples = 256;
    std::size_t max_samples = 4096;
    std::string normalization = "paper";
    bool relative = false;
    double filter_fwhm = 0.0;
    std::string name = "amplitude";
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand(
      "pairgen",
      "Two-photon spectral amplitude phi(w_s, w_i) (rad/fs axes) on a square grid around the "
      "chosen peaks; writes <name>.bin/.json, intensity.csv, signal/idler spectra and pairgen.json");
  o->src.add_options(*sub);
  o->pump.add_options(*sub);
  sub->add_option("--theta", o->theta_deg, "External signal angle (deg)");
  sub->add_option("--psi", o->psi_deg, "Common azimuth (deg)");
  sub->add_option("--area", o->area, "Transverse area B (um^2)");
  sub->add_option("--omega-s", o->omega_s, "Signal peak to use (rad/fs); 0 = tallest peak in band");
  sub->add_option("--omega-i", o->omega_i, "Idler peak (rad/fs); 0 = same peak as the signal");
  sub->add_option("--margin", o->margin, "Grid margin outside the peaks, in widths of the wider peak");
  sub->add_option("--density", o->density, "Samples per FWHM of the narrower peak");
  sub->add_option("--min-samples", o->min_samples, "Minimum samples per axis");
  sub->add_option("--max-samples", o->max_samples, "Refuse grids larger than this per axis");
  sub->add_option("--normalization", o->normalization, "paper or physical")
      ->check(CLI::IsMember({"paper", "physical"}));
  sub->add_flag("--relative", o->relative, "Also write relative_spectrum.csv (ratio to a phase-matched bulk slab)");
  sub->add_option("--filter-peaks", o->filter_fwhm,
                  "Keep only frequencies within this many FWHM of the chosen peaks (both photons); 0 = off");
  sub->add_option("--name", o->name, "Base name of the amplitude files");
  sub->callback([o, sub, &g] {
    const auto stack = o->src.load(g);
    const double theta = deg_to_rad(o->theta_deg);
    const auto ps = locate_peak(stack, theta, o->omega_s);
    const auto pi = o->omega_i > 0.0 ? locate_peak(stack, theta, o->omega_i) : ps;
    const auto grid = spdc::FrequencyGrid::covering(ps, pi, o->margin, o->density, o->min_samples);
    if (grid.signal.count > o->max_samples) {
      throw ValidationError("grid needs " + std::to_string(grid.signal.count) +
                            " samples per axis, above --max-samples");
    }
    const auto pump = o->pump.config(ps.omega_c + pi.omega_c);
    spdc::EmissionGeometry geo;
    geo.theta_s = theta;
    geo.psi = deg_to_rad(o->psi_deg);
    geo.transverse_area_um2 = o->area;

    auto tpa = spdc::two_photon_amplitude(stack, pump, geo, grid, spdc::Normalization::Physical);
    if (o->filter_fwhm > 0.0) {
      const std::vector<optics::Peak> chosen{ps, pi};
      tpa = spdc::bandpass_filter(tpa, spdc::peak_windows(chosen, o->filter_fwhm));
    }
    const double pairs = spdc::pair_number(tpa);
    spdc::RelativeSpectrum rel;
    if (o->relative) rel = spdc::relative_spectrum(tpa, stack, pump);
    if (o->normalization == "paper") spdc::normalize_paper(tpa);

    const auto prov = provenance(g, *sub, o->src.inputs());
    spdc::write_amplitude(tpa, output_path(g, o->name).string(), prov);
    write_text(output_path(g, "intensity.csv"), [&](std::ostream& out) { spdc::write_intensity_csv(tpa, out); });
    write_text(output_path(g, "signal_spectrum.csv"),
               [&](std::ostream& out) { spdc::write_spectrum_csv(spdc::signal_spectrum(tpa), out); });
    write_text(output_path(g, "idler_spectrum.csv"),
               [&](std::ostream& out) { spdc::write_spectrum_csv(spdc::idler_spectrum(tpa), out); });
    json summary{{"signal_peak", peak_json(ps)},
                 {"idler_peak", peak_json(pi)},
                 {"omega_p0_rad_per_fs", pump.omega_p0},
                 {"samples", grid.signal.count},
                 {"pair_number", pairs},
                 {"coarse_grid", tpa.coarse_grid},
                 {"normalization", o->normalization},
                 {"provenance", prov}};
    if (o->relative) {
      write_text(output_path(g, "relative_spectrum.csv"), [&](std::ostream& out) { spdc::write_relative_csv(rel, out); });
      const double mx = rel.ratio.empty() ? 0.0 : *std::max_element(rel.ratio.begin(), rel.ratio.end());
      summary["max_relative_spectrum"] = mx;
      print_value("max_relative_spectrum", mx);
    }
    write_json(output_path(g, "pairgen.json"), summary);
    print_value("omega_s_rad_per_fs", ps.omega_c);
    print_value("omega_i_rad_per_fs", pi.omega_c);
    print_value("samples", std::to_string(grid.signal.count));
    print_value("pair_number", pairs);
    if (tpa.coarse_grid) std::cout << "warning: grid resolves a feature with fewer than 5 samples\n";
    echo_provenance(prov);
  });
}

void add_analyze(CLI::App& app, Global& g) {
  struct Opts {
    std::string amplitude;
    std::size_t modes = 3;
    bool schmidt = true;
    bool temporal = false;
    bool flux = false;
    bool electron_volts = false;
    std::size_t fft_size = 0;
    std::size_t stride = 1;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand(
      "analyze",
      "Schmidt decomposition (weights, entropy in bits, K) and optional temporal amplitude "
      "(fs axes) and photon fluxes; writes schmidt.json, schmidt_mode<n>.csv, analysis.json");
  sub->add_option("--amplitude", o->amplitude, "Amplitude base path (without .bin/.json)")->required();
  sub->add_option("--modes", o->modes, "Mode pairs to export");
  sub->add_flag("--schmidt", o->schmidt, "Schmidt report (always written; accepted for scripts)");
  sub->add_flag("--temporal", o->temporal, "Write temporal.csv (t_s_fs,t_i_fs,abs2)");
  sub->add_flag("--flux", o->flux, "Write flux_signal.csv and flux_idler.csv (t_fs,flux)");
  sub->add_flag("--electron-volts", o->electron_volts, "Fluxes in eV (hbar in eV fs) instead of hbar = 1");
  sub->add_option("--fft-size", o->fft_size, "FFT length per axis; 0 = next power of two >= 2N");
  sub->add_option("--stride", o->stride, "Row/column stride of temporal.csv");
  sub->callback([o, sub, &g] {
    const auto tpa = spdc::read_amplitude(o->amplitude);
    const auto sch = analysis::schmidt_decompose(tpa);
    analysis::write_schmidt(sch, output_path(g, "schmidt").string(), o->modes);
    json report{{"schmidt", schmidt_summary(sch)}};
    print_schmidt(sch);
    if (o->temporal || o->flux) {
      analysis::TemporalOptions opts;
      opts.fft_size = o->fft_size;
      const auto tm = analysis::temporal_amplitude(tpa, opts);
      const double tn = analysis::squared_norm(tm);
      const double sn = analysis::weighted_spectral_norm(tpa, tm.omega_s0, tm.omega_i0);
      report["temporal"] = {{"omega_s0_rad_per_fs", tm.omega_s0},
                            {"omega_i0_rad_per_fs", tm.omega_i0},
                            {"temporal_norm", tn},
                            {"spectral_norm", sn},
                            {"sum_time_rms_fs", analysis::sum_time_rms(tm)},
                            {"aliasing", tm.aliasing}};
      print_value("sum_time_rms_fs", analysis::sum_time_rms(tm));
      if (tm.aliasing) std::cout << "warning: temporal window too small, energy at the edges\n";
      if (o->temporal) {
        write_text(output_path(g, "temporal.csv"),
                   [&](std::ostream& out) { analysis::write_temporal_csv(tm, out, o->stride); });
      }
      if (o->flux) {
        const auto fs = analysis::photon_flux(tm, analysis::Field::Signal, o->electron_volts);
        const auto fi = analysis::photon_flux(tm, analysis::Field::Idler, o->electron_volts);
        write_text(output_path(g, "flux_signal.csv"), [&](std::ostream& out) { analysis::write_flux_csv(fs, out); });
        write_text(output_path(g, "flux_idler.csv"), [&](std::ostream& out) { analysis::write_flux_csv(fi, out); });
        const auto ms = analysis::resolved_maxima(fs.flux).size();
        const auto mi = analysis::resolved_maxima(fi.flux).size();
        report["flux"] = {{"signal_maxima", ms}, {"idler_maxima", mi}};
        print_value("signal_flux_maxima", std::to_string(ms));
        print_value("idler_flux_maxima", std::to_string(mi));
      }
    }
    const auto prov = provenance(g, *sub, amplitude_inputs(o->amplitude));
    report["provenance"] = prov;
    write_json(output_path(g, "analysis.json"), report);
    echo_provenance(prov);
  });
}

void add_hom(CLI::App& app, Global& g) {
  struct Opts {
    std::string amplitude;
    double tau_min = -2000.0;
    double tau_max = 2000.0;
    std::size_t samples = 801;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand(
      "hom", "Hong-Ou-Mandel rate R_n^HOM(tau_l), tau in fs; needs a square grid; writes hom.csv (tau_fs,rate) and hom.json");
  sub->add_option("--amplitude", o->amplitude, "Amplitude base path")->required();
  sub->add_option("--tau-min", o->tau_min, "First delay (fs)");
  sub->add_option("--tau-max", o->tau_max, "Last delay (fs)");
  sub->add_option("--samples", o->samples, "Delay samples");
  sub->callback([o, sub, &g] {
    const auto tpa = spdc::read_amplitude(o->amplitude);
    const auto tau = linspace(o->tau_min, o->tau_max, o->samples);
    const auto pat = analysis::hom_rate(tpa, tau);
    write_text(output_path(g, "hom.csv"), [&](std::ostream& out) { analysis::write_hom_csv(pat, out); });
    const auto mn = std::min_element(pat.rate.begin(), pat.rate.end()) - pat.rate.begin();
    const double zero = analysis::hom_rate(tpa, std::vector<double>{0.0}).rate[0];
    json report{{"min_rate", pat.rate[static_cast<std::size_t>(mn)]},
                {"tau_at_min_fs", pat.tau[static_cast<std::size_t>(mn)]},
                {"rate_at_zero", zero}};
    try {
      const auto osc = analysis::hom_oscillation(tpa);
      report["oscillation"] = {{"delta_omega_rad_per_fs", osc.delta_omega},
                               {"period_fs", osc.period_fs},
                               {"relative_weight", osc.relative_weight}};
      print_value("oscillation_period_fs", osc.period_fs);
    } catch (const NumericalError&) {
      report["oscillation"] = nullptr;
    }
    print_value("rate_at_zero", zero);
    print_value("min_rate", pat.rate[static_cast<std::size_t>(mn)]);
    const auto prov = provenance(g, *sub, amplitude_inputs(o->amplitude));
    report["provenance"] = prov;
    write_json(output_path(g, "hom.json"), report);
    echo_provenance(prov);
  });
}

void add_franson(CLI::App& app, Global& g) {
  struct Opts {
    std::string amplitude;
    double ts_min = -2000.0, ts_max = 2000.0;
    double ti_min = -2000.0, ti_max = 2000.0;
    std::size_t ns = 129, ni = 129;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand(
      "franson",
      "Franson rate R_n^F(tau_s, tau_i), delays in fs; writes franson.csv "
      "(tau_s_fs,tau_i_fs,rate) and franson.json with the fringe orientation (deg)");
  sub->add_option("--amplitude", o->amplitude, "Amplitude base path")->required();
  sub->add_option("--tau-s-min", o->ts_min, "First signal delay (fs)");
  sub->add_option("--tau-s-max", o->ts_max, "Last signal delay (fs)");
  sub->add_option("--tau-i-min", o->ti_min, "First idler delay (fs)");
  sub->add_option("--tau-i-max", o->ti_max, "Last idler delay (fs)");
  sub->add_option("--samples-s", o->ns, "Signal delay samples");
  sub->add_option("--samples-i", o->ni, "Idler delay samples");
  sub->callback([o, sub, &g] {
    const auto tpa = spdc::read_amplitude(o->amplitude);
    const auto ts = UniformAxis::linspace(o->ts_min, o->ts_max, o->ns);
    const auto ti = UniformAxis::linspace(o->ti_min, o->ti_max, o->ni);
    ts.validate(4);
    ti.validate(4);
    const auto pat = analysis::franson_rate(tpa, ts.values(), ti.values());
    write_text(output_path(g, "franson.csv"), [&](std::ostream& out) { analysis::write_franson_csv(pat, out); });
    const auto fo = analysis::fringe_orientation(pat.rate, ts.step, ti.step);
    print_value("fringe_deg", fo.fringe_deg);
    print_value("fringe_wavevector_rad_per_fs", fo.magnitude);
    const auto prov = provenance(g, *sub, amplitude_inputs(o->amplitude));
    write_json(output_path(g, "franson.json"),
               {{"fringe_deg", fo.fringe_deg},
                {"wavevector_deg", fo.wavevector_deg},
                {"magnitude_rad_per_fs", fo.magnitude},
                {"min_rate", pat.rate.minCoeff()},
                {"max_rate", pat.rate.maxCoeff()},
                {"provenance", prov}});
    echo_provenance(prov);
  });
}

void add_superpose(CLI::App& app, Global& g) {
  struct Opts {
    std::string amplitude;
    std::size_t pinholes = 0;
    double delta_omega = 0.0;
    double delta_fwhm = 0.0;
    double phase_step = 0.0;
    StackSource src;
    PumpOptions pump;
    double theta_min = -1.0;
    double theta_max = -1.0;
    std::size_t angles = 32;
    double margin = 8.0;
    double density = 5.0;
    std::size_t min_samples = 256;
    std::string name = "superposed";
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand(
      "superpose",
      "Pinhole superposition (--amplitude with --pinholes) or angular-range superposition "
      "(--theta-min/--theta-max in deg); writes <name>.bin/.json and analysis.json with the Schmidt report");
  sub->add_option("--amplitude", o->amplitude, "Single-pinhole amplitude base path (pinhole mode)");
  sub->add_option("--pinholes", o->pinholes, "Number of pinholes M");
  sub->add_option("--delta-omega", o->delta_omega, "Frequency spacing of adjacent pinholes (rad/fs)");
  sub->add_option("--delta-fwhm", o->delta_fwhm, "Spacing in signal-spectrum FWHMs (used when --delta-omega is 0)");
  sub->add_option("--phase-step", o->phase_step, "Phase between adjacent pinholes (rad)");
  o->src.add_options(*sub);
  o->pump.add_options(*sub);
  sub->add_option("--theta-min", o->theta_min, "Angular mode: first signal angle (deg)");
  sub->add_option("--theta-max", o->theta_max, "Angular mode: last signal angle (deg)");
  sub->add_option("--angles", o->angles, "Angular mode: sampled angles (>= 32)");
  sub->add_option("--margin", o->margin, "Angular mode: grid margin in peak widths");
  sub->add_option("--density", o->density, "Angular mode: samples per peak FWHM");
  sub->add_option("--min-samples", o->min_samples, "Angular mode: minimum samples per axis");
  sub->add_option("--name", o->name, "Base name of the output amplitude");
  sub->callback([o, sub, &g] {
    spdc::TwoPhotonAmplitude result;
    std::vector<std::string> inputs;
    json extra = json::object();
    if (o->pinholes > 0) {
      if (o->amplitude.empty()) throw ValidationError("pinhole mode needs --amplitude");
      const auto tpa = spdc::read_amplitude(o->amplitude);
      double dw = o->delta_omega;
      if (dw <= 0.0 && o->delta_fwhm > 0.0) {
        const auto ss = spdc::signal_spectrum(tpa);
        dw = o->delta_fwhm * spdc::spectrum_fwhm(ss.omega, ss.value);
      }
      result = spdc::superpose_pinholes(tpa, {o->pinholes, dw, o->phase_step});
      inputs = amplitude_inputs(o->amplitude);
      extra = {{"mode", "pinholes"}, {"count", o->pinholes}, {"delta_omega_rad_per_fs", dw}, {"phase_step_rad", o->phase_step}};
    } else if (o->theta_min >= 0.0 && o->theta_max > o->theta_min) {
      const auto stack = o->src.load(g);
      const auto pa = locate_peak(stack, deg_to_rad(o->theta_min), 0.0);
      const auto pb = locate_peak(stack, deg_to_rad(o->theta_max), pa.omega_c);
      const auto grid = spdc::FrequencyGrid::covering(pa, pb, o->margin, o->density, o->min_samples);
      const auto pump = o->pump.config(pa.omega_c + pb.omega_c);
      spdc::AngularRangeSpec spec;
      spec.theta_min = deg_to_rad(o->theta_min);
      spec.theta_max = deg_to_rad(o->theta_max);
      spec.samples = o->angles;
      spec.omega_guess = pa.omega_c;
      const auto ang = spdc::superpose_angular_range(stack, pump, spec, grid);
      result = ang.amplitude;
      inputs = o->src.inputs();
      extra = {{"mode", "angular"},
               {"theta_min_deg", o->theta_min},
               {"theta_max_deg", o->theta_max},
               {"angles", o->angles},
               {"phase_slope_rad_per_rad", ang.phase_slope},
               {"peak_omega_first", ang.peak_omega.front()},
               {"peak_omega_last", ang.peak_omega.back()}};
    } else {
      throw ValidationError("superpose needs --pinholes M (with --amplitude) or --theta-min < --theta-max");
    }
    const auto prov = provenance(g, *sub, inputs);
    spdc::write_amplitude(result, output_path(g, o->name).string(), prov);
    const auto sch = analysis::schmidt_decompose(result, false);
    print_schmidt(sch);
    write_json(output_path(g, "analysis.json"),
               {{"superposition", extra}, {"schmidt", schmidt_summary(sch)}, {"provenance", prov}});
    echo_provenance(prov);
  });
}

}  // namespace rspdc::cli
