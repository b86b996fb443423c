#pragma once

#include <CLI11.hpp>

#include "common.hpp"

namespace rspdc::cli {

void add_generate(CLI::App& app, Global& g);
void add_spectrum(CLI::App& app, Global& g);
void add_peaks(CLI::App& app, Global& g);
void add_localization(CLI::App& app, Global& g);

void add_pairgen(CLI::App& app, Global& g);
void add_analyze(CLI::App& app, Global& g);
void add_hom(CLI::App& app, Global& g);
void add_franson(CLI::App& app, Global& g);
void add_superpose(CLI::App& app, Global& g);

void add_ensemble(CLI::App& app, Global& g);
void add_search(CLI::App& app, Global& g);

void add_figure(CLI::App& app, Global& g);

}  // namespace rspdc::cli
