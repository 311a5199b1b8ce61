#include "report.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace tqkd::report {

namespace {

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::string fmt9(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

Grid Grid::parse(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
    throw std::invalid_argument("sweep must look like start:stop:steps");
  }
  Grid g;
  g.start = parse_double(text.substr(0, first));
  g.stop = parse_double(text.substr(first + 1, second - first - 1));
  const auto steps_text = text.substr(second + 1);
  const auto [ptr, ec] =
      std::from_chars(steps_text.data(), steps_text.data() + steps_text.size(), g.steps);
  if (ec != std::errc() || ptr != steps_text.data() + steps_text.size()) {
    throw std::invalid_argument("sweep steps must be a nonnegative integer");
  }
  if (g.stop < g.start) throw std::invalid_argument("sweep stop must not precede start");
  return g;
}

std::vector<double> Grid::points() const {
  if (steps == 0) return {start};
  std::vector<double> out;
  out.reserve(steps + 1);
  for (std::size_t i = 0; i < steps; ++i) {
    out.push_back(start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps));
  }
  out.push_back(stop);
  return out;
}

std::string Grid::to_string() const {
  return fmt9(start) + ":" + fmt9(stop) + ":" + std::to_string(steps);
}

const char* flavor_name(tqkd_flavor flavor) {
  return flavor == TQKD_SHANNON ? "shannon" : "von_neumann";
}

std::string sweep_row(double eve_t2, const tqkd_info_summary& s, const tqkd_info_errors* errors) {
  const tqkd_info_errors zero{};
  const tqkd_info_errors& e = errors ? *errors : zero;
  std::string row = fmt9(eve_t2);
  row += ',';
  row += flavor_name(s.flavor);
  for (double v : {s.H_A, s.H_B, s.H_E, s.I_AB, s.I_AE, s.I_BE, s.K_DR, s.K_RR, e.I_AB, e.I_AE,
                   e.I_BE}) {
    row += ',';
    row += fmt9(v);
  }
  return row;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(pos, end - pos);
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      fields.emplace_back(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(fields));
    pos = end + 1;
  }
  return rows;
}

nlohmann::json to_json(const tqkd_info_summary& s) {
  return {{"flavor", flavor_name(s.flavor)},
          {"H_A", s.H_A},
          {"H_B", s.H_B},
          {"H_E", s.H_E},
          {"I_AB", s.I_AB},
          {"I_AE", s.I_AE},
          {"I_BE", s.I_BE},
          {"I_AB_given_E", s.I_AB_given_E},
          {"K_DR", s.K_DR},
          {"K_RR", s.K_RR},
          {"lower_bound", s.lower_bound},
          {"upper_bound", s.upper_bound}};
}

nlohmann::json to_json(const tqkd_info_errors& e) {
  return {{"H_A", e.H_A},   {"H_B", e.H_B},   {"H_E", e.H_E},
          {"I_AB", e.I_AB}, {"I_AE", e.I_AE}, {"I_BE", e.I_BE},
          {"I_AB_given_E", e.I_AB_given_E},   {"K_DR", e.K_DR}, {"K_RR", e.K_RR}};
}

}  // namespace tqkd::report
