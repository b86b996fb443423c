#include <algorithm>
#include <cmath>
#include <iostream>
#include <memory>
#include <numbers>

#include "commands.hpp"
#include "rspdc/analysis/interferometry.hpp"
#include "rspdc/analysis/io.hpp"
#include "rspdc/analysis/schmidt.hpp"
#include "rspdc/analysis/temporal.hpp"
#include "rspdc/ensemble/campaign.hpp"
#include "rspdc/ensemble/io.hpp"
#include "rspdc/ensemble/selection.hpp"
#include "rspdc/errors.hpp"
#include "rspdc/format.hpp"
#include "rspdc/optics/io.hpp"
#include "rspdc/spdc/correlation_area.hpp"
#include "rspdc/spdc/io.hpp"
#include "rspdc/spdc/observables.hpp"
#include "rspdc/spdc/superposition.hpp"
#include "rspdc/units.hpp"

namespace rspdc::cli {

using nlohmann::json;

namespace {

struct FigureOpts {
  int id = 0;
  std::string stack;
  std::size_t budget = 400;
  double min_enhancement = 100.0;
  std::size_t count = 300;
  std::size_t stride = 2;
  double pump_duration = 250.0;
  double theta_max_deg = 1.0;
  std::size_t angles = 21;
  std::size_t samples = 201;
  double range_theta_deg = 10.0;
  double range_span_fwhm = 8.0;
};

struct Structure {
  optics::LayerStack stack;
  std::vector<optics::Peak> peaks;
  std::size_t index = 0;
  bool generated = false;
};

// Degenerate structure: the --stack file (tallest collinear peak) or the
// first search match with enough enhancement.
Structure degenerate_structure(const FigureOpts& o, const Global& g) {
  if (!o.stack.empty()) {
    auto stack = optics::read_stack(o.stack);
    auto peak = locate_peak(stack, 0.0, 0.0);
    return {std::move(stack), {peak}, 0, false};
  }
  ensemble::GeneratorSpace space;
  space.master_seed = g.seed;
  auto m = ensemble::select_degenerate(space, o.budget, o.min_enhancement, g.threads);
  if (!m) throw DomainError("no degenerate structure within the search budget; raise --budget");
  return {std::move(m->stack), std::move(m->peaks), m->index, true};
}

Structure two_peak_structure(const FigureOpts& o, const Global& g) {
  if (!o.stack.empty()) {
    auto stack = optics::read_stack(o.stack);
    ensemble::SearchCriteria crit;
    crit.mode = ensemble::SearchMode::TwoPeak;
    auto peaks = ensemble::match_structure(stack, stack.provenance().lambda0_um, crit);
    if (peaks.empty()) throw DomainError("the stack has no pair of peaks with a width ratio near 4");
    return {std::move(stack), std::move(peaks), 0, false};
  }
  ensemble::GeneratorSpace space;
  space.master_seed = g.seed;
  auto m = ensemble::select_two_peak(space, o.budget, 2048, g.threads);
  if (!m) throw DomainError("no two-peak structure within the search budget; raise --budget");
  return {std::move(m->stack), std::move(m->peaks), m->index, true};
}

spdc::PumpConfig pump_at(double omega_p0, double duration) {
  spdc::PumpConfig p;
  p.omega_p0 = omega_p0;
  p.duration_fwhm_fs = duration;
  p.validate();
  return p;
}

json structure_json(const Structure& s) {
  json peaks = json::array();
  for (const auto& p : s.peaks) {
    peaks.push_back({{"omega_c_rad_per_fs", p.omega_c}, {"fwhm_omega_rad_per_fs", p.fwhm_omega}, {"fwhm_nm", p.fwhm_nm}});
  }
  json j{{"peaks", peaks}};
  if (s.generated) j["search_index"] = s.index;
  return j;
}

spdc::TwoPhotonAmplitude degenerate_state(const Structure& s, double duration) {
  const auto& p = s.peaks.front();
  const auto layout = ensemble::pinhole_layout(p);
  return spdc::two_photon_amplitude(s.stack, pump_at(2.0 * p.omega_c, duration), {}, layout.grid);
}

void write_modes(const Global& g, const spdc::TwoPhotonAmplitude& tpa, const std::string& base, json& info) {
  const auto sch = analysis::schmidt_decompose(tpa);
  analysis::write_schmidt(sch, output_path(g, base).string(), 3);
  info["first_weight"] = sch.weights.front();
  info["entropy_bits"] = analysis::entropy(sch);
  info["cooperativity"] = analysis::cooperativity(sch);
  print_value("first_weight", sch.weights.front());
  print_value("cooperativity", analysis::cooperativity(sch));
}

void write_intensity(const Global& g, const spdc::TwoPhotonAmplitude& tpa, const std::string& name) {
  write_text(output_path(g, name), [&](std::ostream& out) { spdc::write_intensity_csv(tpa, out); });
}

void figure1(const FigureOpts& o, const Global& g, json& info) {
  ensemble::EnsembleConfig a;
  a.master_seed = g.seed;
  a.count = o.count;
  a.n_elem = {250, 500, 750};
  a.workers = g.threads;
  auto b = a;
  b.n_elem = {250};
  b.theta_rad = {0.0, deg_to_rad(30.0), deg_to_rad(60.0)};
  for (auto [cfg, name] : {std::pair{a, "fig1a_histogram.csv"}, std::pair{b, "fig1b_histogram.csv"}}) {
    const auto rep = ensemble::run_campaign(cfg);
    write_text(output_path(g, name), [&](std::ostream& out) { ensemble::write_histogram_csv(rep, out); });
    for (const auto& c : rep.cells) {
      info["cells"].push_back({{"n_elem", c.n_elem},
                               {"theta_deg", rad_to_deg(c.theta_rad)},
                               {"peaks", c.peaks},
                               {"median_fwhm_nm", c.median_fwhm_nm}});
      std::cout << "n_elem " << c.n_elem << " theta_deg " << format_fixed12(rad_to_deg(c.theta_rad))
                << " peaks " << c.peaks << " median_fwhm_nm " << format_fixed12(c.median_fwhm_nm) << '\n';
    }
  }
}

void figure2(const FigureOpts& o, const Global& g, json& info) {
  const auto s = degenerate_structure(o, g);
  info["structure"] = structure_json(s);
  const auto p0 = s.peaks.front();
  const double wp = 2.0 * p0.omega_c;
  const auto pump = pump_at(wp, o.pump_duration);
  const auto thetas = UniformAxis::linspace(0.0, deg_to_rad(o.theta_max_deg), std::max<std::size_t>(o.angles, 2));
  std::vector<optics::Peak> tracked;
  optics::Peak cur = p0;
  for (std::size_t a = 0; a < thetas.count; ++a) {
    if (a > 0) cur = locate_peak(s.stack, thetas.at(a), cur.omega_c);
    tracked.push_back(cur);
  }
  double lo = p0.omega_c, hi = p0.omega_c;
  for (const auto& t : tracked) {
    lo = std::min(lo, t.omega_c - 10.0 * t.fwhm_omega);
    hi = std::max(hi, t.omega_c + 10.0 * t.fwhm_omega);
  }
  const auto ws = UniformAxis::linspace(lo, hi, o.samples);
  double best = 0.0;
  write_text(output_path(g, "fig2_relative_spectrum.csv"), [&](std::ostream& out) {
    out << "x_2ws_over_wp0,theta_deg,relative\n";
    for (std::size_t a = 0; a < thetas.count; ++a) {
      spdc::EmissionGeometry geo;
      geo.theta_s = thetas.at(a);
      spdc::AmplitudeModel model(s.stack, pump, geo);
      const auto& t = tracked[a];
      const auto idler = spdc::peak_idler_samples(t.omega_c, t.fwhm_omega, o.pump_duration);
      for (std::size_t k = 0; k < ws.count; ++k) {
        const double w = ws.at(k);
        const double r = spdc::relative_spectrum_at(model, w, idler);
        best = std::max(best, r);
        out << format_fixed12(2.0 * w / wp) << ',' << format_fixed12(rad_to_deg(thetas.at(a))) << ','
            << format_fixed12(r) << '\n';
      }
    }
  });
  info["max_relative_spectrum"] = best;
  print_value("max_relative_spectrum", best);
}

void figure5(const FigureOpts& o, const Global& g, json& info) {
  const auto s = degenerate_structure(o, g);
  const double theta = deg_to_rad(26.3);
  const auto p = locate_peak(s.stack, theta, 0.0);
  info["structure"] = structure_json(s);
  info["peak_at_26_3_deg"] = {{"omega_c_rad_per_fs", p.omega_c}, {"fwhm_omega_rad_per_fs", p.fwhm_omega}};
  spdc::EmissionGeometry geo;
  geo.theta_s = theta;
  write_text(output_path(g, "fig5_correlation_area.csv"), [&](std::ostream& out) {
    out << "diameter_um,sigma_theta_rad,sigma_psi_rad\n";
    for (int k = 0; k < 13; ++k) {
      const double a = 30.0 * std::pow(1000.0 / 30.0, k / 12.0);
      auto pump = pump_at(2.0 * p.omega_c, o.pump_duration);
      pump.beam_diameter_um = a;
      const auto ca = spdc::correlation_area(s.stack, pump, geo);
      out << format_fixed12(a) << ',' << format_fixed12(ca.sigma_theta_rad) << ','
          << format_fixed12(ca.sigma_psi_rad) << '\n';
    }
  });
  const auto plane = spdc::correlation_area(s.stack, pump_at(2.0 * p.omega_c, o.pump_duration), geo);
  info["plane_wave"] = {{"sigma_theta_rad", plane.sigma_theta_rad}, {"sigma_psi_rad", plane.sigma_psi_rad}};
  print_value("plane_wave_sigma_theta_rad", plane.sigma_theta_rad);
  print_value("plane_wave_sigma_psi_rad", plane.sigma_psi_rad);
}

void pinhole_figures(int id, const FigureOpts& o, const Global& g, json& info) {
  const auto s = degenerate_structure(o, g);
  info["structure"] = structure_json(s);
  const auto& p = s.peaks.front();
  const auto layout = ensemble::pinhole_layout(p);
  const auto base = spdc::two_photon_amplitude(s.stack, pump_at(2.0 * p.omega_c, o.pump_duration), {}, layout.grid);
  const auto m2 = spdc::superpose_pinholes(base, {2, layout.delta_omega, 0.0});
  const auto m8 = spdc::superpose_pinholes(base, {8, layout.delta_omega, 0.0});
  info["delta_omega_rad_per_fs"] = layout.delta_omega;
  if (id == 6) write_intensity(g, m2, "fig6_intensity.csv");
  if (id == 7) write_modes(g, m2, "fig7_schmidt", info);
  if (id == 8) {
    for (auto [tpa, name] : {std::pair{&m2, "fig8a_temporal.csv"}, std::pair{&m8, "fig8b_temporal.csv"}}) {
      const auto tm = analysis::temporal_amplitude(*tpa);
      write_text(output_path(g, name), [&](std::ostream& out) { analysis::write_temporal_csv(tm, out, o.stride); });
      const double rms = analysis::sum_time_rms(tm);
      info[std::string(name) + "_sum_time_rms_fs"] = rms;
      print_value(std::string(name) + " sum_time_rms_fs", rms);
    }
  }
  if (id == 9) {
    // Far-delay window where the M = 8 array factor cancels the
    // single-photon terms and R(tau, tau).
    const double tau0 = kTwoPi / (8.0 * layout.delta_omega);
    const auto axis = UniformAxis::linspace(tau0 - 0.4 * 63.5, tau0 + 0.4 * 63.5, 128);
    const auto tau = axis.values();
    for (auto [tpa, name] : {std::pair{&base, "fig9a_franson.csv"}, std::pair{&m8, "fig9b_franson.csv"}}) {
      const auto pat = analysis::franson_rate(*tpa, tau, tau);
      write_text(output_path(g, name), [&](std::ostream& out) { analysis::write_franson_csv(pat, out); });
      const auto fo = analysis::fringe_orientation(pat.rate, axis.step, axis.step);
      info[std::string(name) + "_fringe_deg"] = fo.fringe_deg;
      print_value(std::string(name) + " fringe_deg", fo.fringe_deg);
    }
  }
}

void angular_figures(int id, const FigureOpts& o, const Global& g, json& info) {
  const auto s = degenerate_structure(o, g);
  info["structure"] = structure_json(s);
  const double th0 = deg_to_rad(o.range_theta_deg);
  const auto pa = locate_peak(s.stack, th0, s.peaks.front().omega_c);
  // Widen the range until the tracked peak has moved by the requested span.
  double th1 = th0;
  optics::Peak pb = pa;
  const double step = deg_to_rad(0.02);
  while (std::abs(pb.omega_c - pa.omega_c) < o.range_span_fwhm * pa.fwhm_omega) {
    th1 += step;
    if (th1 > th0 + deg_to_rad(10.0)) throw DomainError("tracked peak does not move enough within 10 deg");
    pb = locate_peak(s.stack, th1, pb.omega_c);
  }
  const auto grid = spdc::FrequencyGrid::covering(pa, pb);
  spdc::AngularRangeSpec spec;
  spec.theta_min = th0;
  spec.theta_max = th1;
  spec.samples = 32;
  spec.omega_guess = pa.omega_c;
  const auto ang = spdc::superpose_angular_range(s.stack, pump_at(pa.omega_c + pb.omega_c, o.pump_duration), spec, grid);
  info["theta_min_deg"] = rad_to_deg(th0);
  info["theta_max_deg"] = rad_to_deg(th1);
  info["phase_slope_rad_per_rad"] = ang.phase_slope;
  if (id == 10) write_intensity(g, ang.amplitude, "fig10_intensity.csv");
  if (id == 11) write_modes(g, ang.amplitude, "fig11_schmidt", info);
}

void two_peak_figures(int id, const FigureOpts& o, const Global& g, json& info) {
  const auto s = two_peak_structure(o, g);
  info["structure"] = structure_json(s);
  const auto& ps = s.peaks[0];
  const auto& pi = s.peaks[1];
  const auto grid = spdc::FrequencyGrid::covering(ps, pi);
  const auto raw = spdc::two_photon_amplitude(s.stack, pump_at(ps.omega_c + pi.omega_c, o.pump_duration), {}, grid);
  // Keep only pairs emitted into the two selected peaks.
  const auto tpa = spdc::bandpass_filter(raw, spdc::peak_windows(s.peaks));
  if (id == 12) {
    // Fluxes of the symmetric state used for HOM, plus the labelled fields
    // (signal in the wider peak, idler in the narrower one) for reference.
    const auto tm = analysis::temporal_amplitude(tpa);
    const auto fs = analysis::photon_flux(tm, analysis::Field::Signal);
    const auto fi = analysis::photon_flux(tm, analysis::Field::Idler);
    write_text(output_path(g, "fig12_flux_signal.csv"), [&](std::ostream& out) { analysis::write_flux_csv(fs, out); });
    write_text(output_path(g, "fig12_flux_idler.csv"), [&](std::ostream& out) { analysis::write_flux_csv(fi, out); });
    const auto ws = spdc::peak_windows(std::span(&ps, 1));
    const auto wi = spdc::peak_windows(std::span(&pi, 1));
    const auto tl = analysis::temporal_amplitude(spdc::bandpass_filter(raw, ws, wi));
    const auto ls = analysis::photon_flux(tl, analysis::Field::Signal);
    const auto li = analysis::photon_flux(tl, analysis::Field::Idler);
    write_text(output_path(g, "fig12_labelled_flux_signal.csv"), [&](std::ostream& out) { analysis::write_flux_csv(ls, out); });
    write_text(output_path(g, "fig12_labelled_flux_idler.csv"), [&](std::ostream& out) { analysis::write_flux_csv(li, out); });
    const auto ms = analysis::resolved_maxima(fs.flux).size();
    const auto mls = analysis::resolved_maxima(ls.flux).size();
    const auto mli = analysis::resolved_maxima(li.flux).size();
    info["signal_maxima"] = ms;
    info["labelled_signal_maxima"] = mls;
    info["labelled_idler_maxima"] = mli;
    print_value("signal_flux_maxima", std::to_string(ms));
    print_value("labelled_signal_flux_maxima", std::to_string(mls));
    print_value("labelled_idler_flux_maxima", std::to_string(mli));
  } else {
    const double expected = kTwoPi / std::abs(ps.omega_c - pi.omega_c);
    const auto tau = UniformAxis::linspace(-6.0 * expected, 6.0 * expected, 1201).values();
    const auto pat = analysis::hom_rate(tpa, tau);
    write_text(output_path(g, "fig13_hom.csv"), [&](std::ostream& out) { analysis::write_hom_csv(pat, out); });
    const auto osc = analysis::hom_oscillation(tpa);
    info["expected_period_fs"] = expected;
    info["oscillation_period_fs"] = osc.period_fs;
    print_value("expected_period_fs", expected);
    print_value("oscillation_period_fs", osc.period_fs);
  }
}

}  // namespace

void add_figure(CLI::App& app, Global& g) {
  auto o = std::make_shared<FigureOpts>();
  auto* sub = app.add_subcommand(
      "figure",
      "Export the data behind figure N (1-13) as fig<N>*.csv plus fig<N>.json. Structures come "
      "from --stack or from a seeded search; frequencies in rad/fs, times in fs, widths in nm");
  sub->add_option("--id", o->id, "Figure number")->required()->check(CLI::Range(1, 13));
  sub->add_option("--stack", o->stack, "Use this stack instead of searching");
  sub->add_option("--budget", o->budget, "Structures searched when no --stack is given");
  sub->add_option("--min-enhancement", o->min_enhancement, "Enhancement floor of the degenerate search");
  sub->add_option("--count", o->count, "Figure 1: structures per campaign cell");
  sub->add_option("--stride", o->stride, "Figure 8: row/column stride of the temporal CSVs");
  sub->add_option("--pump-duration", o->pump_duration, "Pump intensity FWHM (fs)");
  sub->add_option("--theta-max", o->theta_max_deg, "Figure 2: largest signal angle (deg)");
  sub->add_option("--angles", o->angles, "Figure 2: sampled angles");
  sub->add_option("--samples", o->samples, "Figure 2: signal-frequency samples");
  sub->add_option("--range-theta", o->range_theta_deg, "Figures 10-11: first angle of the range (deg)");
  sub->add_option("--range-span", o->range_span_fwhm, "Figures 10-11: peak shift across the range, in FWHM");
  sub->callback([o, sub, &g] {
    json info = json::object();
    const int id = o->id;
    if (id == 1) {
      figure1(*o, g, info);
    } else if (id == 2) {
      figure2(*o, g, info);
    } else if (id == 3 || id == 4) {
      const auto s = degenerate_structure(*o, g);
      info["structure"] = structure_json(s);
      const auto tpa = degenerate_state(s, o->pump_duration);
      if (id == 3) write_intensity(g, tpa, "fig3_intensity.csv");
      else write_modes(g, tpa, "fig4_schmidt", info);
    } else if (id == 5) {
      figure5(*o, g, info);
    } else if (id <= 9) {
      pinhole_figures(id, *o, g, info);
    } else if (id <= 11) {
      angular_figures(id, *o, g, info);
    } else {
      two_peak_figures(id, *o, g, info);
    }
    std::vector<std::string> inputs;
    if (!o->stack.empty()) inputs.push_back(o->stack);
    const auto prov = provenance(g, *sub, inputs);
    info["provenance"] = prov;
    write_json(output_path(g, "fig" + std::to_string(id) + ".json"), info);
    echo_provenance(prov);
  });
}

}  // namespace rspdc::cli
