#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "rspdc/errors.hpp"
#include "rspdc/version.hpp"

int main(int argc, char** argv) {
  using namespace rspdc::cli;
  CLI::App app{"Photon pairs from random layered LiNbO3/SiO2 structures. Lengths in um, times in fs, "
               "angular frequencies in rad/fs.",
               "rspdc"};
  app.set_version_flag("--version", rspdc::kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  Global g;
  app.add_option("--config", g.config_path, "JSON file with option values for the sub-command");
  app.add_option("--out", g.out_dir, "Output directory");
  app.add_option("--seed", g.seed, "Master seed (u64)");
  app.add_option("--threads", g.threads, "Worker threads for ensemble and search")->check(CLI::PositiveNumber);

  add_generate(app, g);
  add_spectrum(app, g);
  add_peaks(app, g);
  add_localization(app, g);
  add_pairgen(app, g);
  add_analyze(app, g);
  add_hom(app, g);
  add_franson(app, g);
  add_superpose(app, g);
  add_ensemble(app, g);
  add_search(app, g);
  add_figure(app, g);

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = merge_config(app, args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const rspdc::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const rspdc::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const rspdc::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
