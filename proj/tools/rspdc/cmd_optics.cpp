#include <cmath>
#include <iostream>
#include <memory>

#include "commands.hpp"
#include "rspdc/ensemble/seed.hpp"
#include "rspdc/errors.hpp"
#include "rspdc/format.hpp"
#include "rspdc/optics/generator.hpp"
#include "rspdc/optics/io.hpp"
#include "rspdc/optics/localization.hpp"
#include "rspdc/optics/peaks.hpp"
#include "rspdc/optics/spectrum.hpp"
#include "rspdc/units.hpp"

namespace rspdc::cli {

using nlohmann::json;

void add_generate(CLI::App& app, Global& g) {
  struct Opts {
    std::size_t n_elem = 250;
    double lambda0 = 1.0;
    double jitter = 0.025;
    std::string name = "stack.json";
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("generate", "Generate a random LiNbO3/SiO2 stack (JSON, thicknesses in um)");
  sub->add_option("--n-elem", o->n_elem, "Elementary quarter-wave slots");
  sub->add_option("--lambda0", o->lambda0, "Design wavelength (um)");
  sub->add_option("--jitter", o->jitter, "Boundary jitter, optical-length standard deviation (um)");
  sub->add_option("--name", o->name, "Output file name inside --out");
  sub->callback([o, sub, &g] {
    const auto stack = optics::generate_random_stack({o->lambda0, o->n_elem, o->jitter, g.seed});
    const auto path = output_path(g, o->name);
    optics::write_stack(stack, path.string());
    const double w0 = omega_from_wavelength(o->lambda0);
    print_value("stack", path.string());
    print_value("layers", std::to_string(stack.size()));
    print_value("boundaries", std::to_string(stack.boundary_count()));
    print_value("optical_length_um", stack.optical_length(w0));
    print_value("thickness_um", stack.total_thickness());
    print_value("resamples", std::to_string(stack.provenance().resamples));
    echo_provenance(provenance(g, *sub, {}));
  });
}

void add_spectrum(CLI::App& app, Global& g) {
  struct Opts {
    StackSource src;
    double theta_deg = 0.0;
    double band_lo = 0.95;
    double band_hi = 1.05;
    std::size_t samples = 2001;
    std::string incidence = "left";
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand(
      "spectrum",
      "TE transmission spectrum on a uniform grid; writes spectrum.csv "
      "(omega_rad_per_fs,T,R,re_t,im_t)");
  o->src.add_options(*sub);
  sub->add_option("--theta", o->theta_deg, "External angle (deg)");
  sub->add_option("--band-lo", o->band_lo, "Lower band edge as a fraction of 2 pi c / lambda0");
  sub->add_option("--band-hi", o->band_hi, "Upper band edge as a fraction of 2 pi c / lambda0");
  sub->add_option("--samples", o->samples, "Grid points");
  sub->add_option("--incidence", o->incidence, "left or right")->check(CLI::IsMember({"left", "right"}));
  sub->callback([o, sub, &g] {
    const auto stack = o->src.load(g);
    const double w0 = omega_from_wavelength(stack.provenance().lambda0_um);
    const auto axis = UniformAxis::linspace(w0 * o->band_lo, w0 * o->band_hi, o->samples);
    axis.validate();
    const auto spec = optics::transmission_spectrum(
        stack, axis, deg_to_rad(o->theta_deg),
        o->incidence == "left" ? optics::Incidence::Left : optics::Incidence::Right);
    const auto path = output_path(g, "spectrum.csv");
    write_text(path, [&](std::ostream& out) { optics::write_spectrum_csv(spec, out); });
    double tmax = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) tmax = std::max(tmax, spec.T(i));
    print_value("spectrum", path.string());
    print_value("t_max", tmax);
    echo_provenance(provenance(g, *sub, o->src.inputs()));
  });
}

void add_peaks(CLI::App& app, Global& g) {
  struct Opts {
    StackSource src;
    double theta_deg = 0.0;
    double band_lo = 0.95;
    double band_hi = 1.05;
    double floor = 0.01;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand(
      "peaks",
      "Adaptive transmission-peak scan; writes peaks.csv "
      "(omega_c_rad_per_fs,fwhm_omega_rad_per_fs,fwhm_nm,t_max)");
  o->src.add_options(*sub);
  sub->add_option("--theta", o->theta_deg, "External angle (deg)");
  sub->add_option("--band-lo", o->band_lo, "Lower band edge as a fraction of 2 pi c / lambda0");
  sub->add_option("--band-hi", o->band_hi, "Upper band edge as a fraction of 2 pi c / lambda0");
  sub->add_option("--floor", o->floor, "Peaks below floor * max(T) are ignored");
  sub->callback([o, sub, &g] {
    const auto stack = o->src.load(g);
    const double w0 = omega_from_wavelength(stack.provenance().lambda0_um);
    optics::ScanOptions opts;
    opts.floor_fraction = o->floor;
    const auto found = optics::scan_peaks(stack, w0 * o->band_lo, w0 * o->band_hi,
                                          deg_to_rad(o->theta_deg), opts);
    const auto path = output_path(g, "peaks.csv");
    write_text(path, [&](std::ostream& out) { optics::write_peaks_csv(found, out); });
    print_value("peaks", std::to_string(found.peaks.size()));
    print_value("dropped", std::to_string(found.dropped));
    print_value("file", path.string());
    echo_provenance(provenance(g, *sub, o->src.inputs()));
  });
}

void add_localization(CLI::App& app, Global& g) {
  struct Opts {
    std::size_t n_elem = 250;
    std::size_t count = 2000;
    std::vector<double> theta_deg{0.0};
    double lambda0 = 1.0;
    double jitter = 0.025;
    std::size_t bootstrap = 200;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand(
      "localization",
      "Optical localization length xi = -2 <L_opt> / <ln T> (um) over generated stacks; "
      "writes localization.json");
  sub->add_option("--n-elem", o->n_elem, "Elementary slots per stack");
  sub->add_option("--count", o->count, "Number of stacks (>= 100)");
  sub->add_option("--theta", o->theta_deg, "External angles (deg), one estimate each");
  sub->add_option("--lambda0", o->lambda0, "Design and probe wavelength (um)");
  sub->add_option("--jitter", o->jitter, "Boundary jitter (um)");
  sub->add_option("--bootstrap", o->bootstrap, "Bootstrap resamples for the error");
  sub->callback([o, sub, &g] {
    std::vector<optics::LayerStack> stacks;
    stacks.reserve(o->count);
    for (std::size_t i = 0; i < o->count; ++i) {
      stacks.push_back(optics::generate_random_stack(
          {o->lambda0, o->n_elem, o->jitter, ensemble::derive_seed(g.seed, i)}));
    }
    const double w0 = omega_from_wavelength(o->lambda0);
    json results = json::array();
    for (double th : o->theta_deg) {
      const auto est = optics::localization_length(stacks, w0, deg_to_rad(th), o->bootstrap, g.seed);
      results.push_back({{"theta_deg", th},
                         {"xi_um", est.xi_um},
                         {"stderr_um", est.stderr_um},
                         {"mean_ln_t", est.mean_ln_t},
                         {"mean_optical_length_um", est.mean_optical_length_um},
                         {"used", est.used},
                         {"excluded", est.excluded}});
      std::cout << "theta_deg " << format_fixed12(th) << " xi_um " << format_fixed12(est.xi_um)
                << " stderr_um " << format_fixed12(est.stderr_um) << '\n';
    }
    const auto prov = provenance(g, *sub, {});
    write_json(output_path(g, "localization.json"),
               {{"n_elem", o->n_elem}, {"count", o->count}, {"results", results}, {"provenance", prov}});
    echo_provenance(prov);
  });
}

}  // namespace rspdc::cli
