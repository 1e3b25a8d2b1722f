#pragma once

// Subcommand bodies. Each returns the process exit code.

#include <filesystem>
#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "brre/app/batch.hpp"

namespace brre::app {

inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 2;
inline constexpr int exit_partial = 3;

/// "%.17g", with nan and inf spelled out.
std::string format_number(double v);

void write_classify_table(std::ostream& out, const std::vector<ResultRow>& rows);
void write_converge_table(std::ostream& out, const std::vector<ConvergeRow>& rows);
void write_average_table(std::ostream& out, const std::vector<AverageRow>& rows);

/// Circle export; `row.circle` must be set.
nlohmann::json circle_json(const ResultRow& row);

struct Figure2Report {
  double reference_mean = 1.266066;
  double computed_mean = 0.0;  ///< weighted Birkhoff average at N = 10^4
  double all_ones = 0.0;
  double weighted = 0.0;           ///< bump sampled at s = t/(n-1)
  double weighted_interior = 0.0;  ///< bump sampled at s = (t+1)/(n+1)
  double tuned = 0.0;
  bool pass = false;
};

Figure2Report figure2_report();

int run_classify(const RunConfig& config, std::ostream& out, std::ostream& log);
int run_converge(const RunConfig& config, std::ostream& out, std::ostream& log);
int run_average(const RunConfig& config, std::ostream& out, std::ostream& log);
int run_figure2(std::ostream& out);

}  // namespace brre::app
