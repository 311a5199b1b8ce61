#include <doctest.h>

#include <stdexcept>
#include <string>

#include "report.hpp"

using namespace tqkd::report;

TEST_CASE("fmt9") {
  CHECK(fmt9(0.5) == "0.5");
  CHECK(fmt9(1.0 / 3.0) == "0.333333333");
  CHECK(fmt9(-2.0) == "-2");
  CHECK(fmt9(1e-12) == "1e-12");
}

TEST_CASE("Grid") {
  const auto g = Grid::parse("0:1:4");
  CHECK(g.points() == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(g.to_string() == "0:1:4");
  CHECK(Grid::parse("0.3:0.9:0").points() == std::vector<double>{0.3});
  CHECK(Grid::parse("1:1001:10").points().back() == 1001.0);

  CHECK_THROWS_AS(Grid::parse("0:1"), std::invalid_argument);
  CHECK_THROWS_AS(Grid::parse("0:1:2:3"), std::invalid_argument);
  CHECK_THROWS_AS(Grid::parse("a:1:2"), std::invalid_argument);
  CHECK_THROWS_AS(Grid::parse("0:1:-2"), std::invalid_argument);
  CHECK_THROWS_AS(Grid::parse("1:0:2"), std::invalid_argument);
}

TEST_CASE("sweep rows round-trip through the CSV reader") {
  tqkd_info_summary s{};
  s.H_A = 1.0;
  s.I_AB = 0.123456789012;
  s.K_RR = -0.25;
  s.flavor = TQKD_VON_NEUMANN;
  tqkd_info_errors e{};
  e.I_AB = 0.01;

  const std::string text = std::string(kSweepHeader) + "\n" + sweep_row(0.5, s, &e) + "\n" +
                           sweep_row(0.75, s, nullptr) + "\n";
  const auto rows = parse_csv(text);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].size() == 13);
  CHECK(rows[0][0] == "eve_t2");
  CHECK(rows[1].size() == 13);
  CHECK(rows[1][1] == "von_neumann");
  CHECK(std::stod(rows[1][5]) == doctest::Approx(0.123456789).epsilon(1e-9));
  CHECK(std::stod(rows[1][9]) == -0.25);
  CHECK(std::stod(rows[1][10]) == 0.01);
  CHECK(std::stod(rows[2][10]) == 0.0);
}

TEST_CASE("json views") {
  tqkd_info_summary s{};
  s.I_AB = 0.5;
  const auto j = to_json(s);
  CHECK(j.at("flavor") == "shannon");
  CHECK(j.at("I_AB").get<double>() == 0.5);
  tqkd_info_errors e{};
  e.K_RR = 0.1;
  CHECK(to_json(e).at("K_RR").get<double>() == 0.1);
}
