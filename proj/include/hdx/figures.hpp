#pragma once

#include <string>
#include <vector>

#include "hdx/eval.hpp"

namespace hdx {

/// CSV + gnuplot script generation behind the `figure` and `table` CLI
/// commands. Returns the paths written. Defaults reproduce the published
/// configurations: a = 1e-5 m, K = 1e-10 m^2/s.
std::vector<std::string> run_figure(const std::string& id, const std::string& out_dir,
                                    double a = 1e-5, double K = 1e-10,
                                    const eval_config& cfg = {});

std::vector<std::string> export_table(const std::string& id, const std::string& out_dir,
                                      double alpha = 1.5, double beta = 0.5,
                                      double a = 1e-5);

std::vector<std::string> known_figures();
std::vector<std::string> known_tables();

/// "%.17g" rendering used in every CSV so analytic outputs are reproducible
/// and parse back to identical doubles.
std::string csv_num(double v);

} // namespace hdx
