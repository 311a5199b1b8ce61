#pragma once

// Plot-ready tables written by the tqkd command-line tool.
//
// CSV files are UTF-8 with LF line endings; floating values carry nine
// significant digits.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tqkd/tqkd.h"

namespace tqkd::report {

inline constexpr std::string_view kSweepHeader =
    "eve_t2,flavor,H_A,H_B,H_E,I_AB,I_AE,I_BE,K_DR,K_RR,err_I_AB,err_I_AE,err_I_BE";
inline constexpr std::string_view kVarianceHeader =
    "V,mean_photon,unc_I_AB,unc_I_BE,cov_I_AB,cov_I_BE,cov_K_RR";
inline constexpr std::string_view kOffsetHeader = "offset,r,degenerate";

/// printf "%.9g".
std::string fmt9(double value);

/// Inclusive grid "start:stop:steps" with `steps` equal intervals, i.e.
/// steps + 1 points; steps == 0 is the single point `start`.
struct Grid {
  double start = 0.0;
  double stop = 0.0;
  std::size_t steps = 0;

  /// Throws std::invalid_argument on malformed text.
  static Grid parse(std::string_view text);
  std::vector<double> points() const;
  std::string to_string() const;
};

const char* flavor_name(tqkd_flavor flavor);

/// One row of the sweep schema; errors may be null (reported as 0).
std::string sweep_row(double eve_t2, const tqkd_info_summary& s, const tqkd_info_errors* errors);

/// Splits LF-terminated comma-separated text into rows of fields.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

nlohmann::json to_json(const tqkd_info_summary& s);
nlohmann::json to_json(const tqkd_info_errors& e);

}  // namespace tqkd::report
