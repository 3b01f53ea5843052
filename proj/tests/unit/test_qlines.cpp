#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "tfbm/error.hpp"
#include "tfbm/qlines.hpp"
#include "tfbm/simulate.hpp"

using namespace tfbm;

TEST_CASE("constant paths give flat lines at the constant") {
  PathMatrix p = PathMatrix::Constant(150, 12, 7.0);
  const auto q = quantile_lines(p, default_probabilities());
  CHECK(q.lines.rows() == 5);
  CHECK(q.lines.cols() == 12);
  CHECK((q.lines.array() - 7.0).abs().maxCoeff() == 0.0);
  CHECK(q.paths == 150);
}

TEST_CASE("quantile lines are ordered by probability") {
  const auto b = simulate_process(make_spec(ProcessKind::TFBM_II, 0.7, 0.3), 100, 400,
                                  SimulationMethod::automatic, 1);
  const auto q = quantile_lines(b, default_probabilities());
  CHECK(q.spec == b.spec);
  CHECK(q.seed == 1);
  for (Eigen::Index j = 1; j < q.lines.rows(); ++j) {
    CHECK((q.lines.row(j) - q.lines.row(j - 1)).minCoeff() >= 0.0);
  }
}

TEST_CASE("column quantiles use linear interpolation") {
  PathMatrix p(100, 2);
  for (int k = 0; k < 100; ++k) {
    p(k, 0) = 100 - k;
    p(k, 1) = 2.0 * (k + 1);
  }
  const std::vector<double> probs = {0.025, 0.5, 0.975};
  const auto q = quantile_lines(p, probs);
  CHECK(q.lines(0, 0) == doctest::Approx(3.475));
  CHECK(q.lines(1, 0) == doctest::Approx(50.5));
  CHECK(q.lines(2, 1) == doctest::Approx(2 * 97.525));
}

TEST_CASE("Brownian quantile lines follow the normal quantiles") {
  const auto b = simulate_process(make_spec(ProcessKind::FBM, 0.5), 50, 20000,
                                  SimulationMethod::automatic, 3);
  const auto q = quantile_lines(b, default_probabilities());
  const double z95 = 1.6448536269514722;
  const double z75 = 0.6744897501960817;
  for (Eigen::Index i : {9, 24, 49}) {
    const double sd = std::sqrt(static_cast<double>(i + 1));
    // Standard error of a sample median is sd * sqrt(pi / (2 m)).
    CHECK(std::abs(q.lines(2, i)) < 3 * sd * std::sqrt(std::numbers::pi / 4e4));
    CHECK(q.lines(4, i) / sd == doctest::Approx(z95).epsilon(0.03));
    CHECK(q.lines(3, i) / sd == doctest::Approx(z75).epsilon(0.04));
    CHECK(q.lines(0, i) / sd == doctest::Approx(-z95).epsilon(0.03));
  }
}

TEST_CASE("kind I quantile lines flatten out") {
  const auto b = simulate_process(make_spec(ProcessKind::TFBM_I, 0.7, 2.0), 400, 4000,
                                  SimulationMethod::automatic, 4);
  const auto q = quantile_lines(b, default_probabilities());
  const double late = q.lines(4, 399) - q.lines(4, 299);
  CHECK(std::abs(late) < 0.1 * q.lines(4, 399));
}

TEST_CASE("invalid requests") {
  PathMatrix few = PathMatrix::Zero(99, 5);
  CHECK_THROWS_AS(quantile_lines(few, default_probabilities()), DomainError);
  PathMatrix ok = PathMatrix::Zero(100, 5);
  CHECK_NOTHROW(quantile_lines(ok, default_probabilities()));
  CHECK_THROWS_AS(validate_probabilities(std::vector<double>{}), DomainError);
  CHECK_THROWS_AS(validate_probabilities(std::vector<double>{0.0, 0.5}), DomainError);
  CHECK_THROWS_AS(validate_probabilities(std::vector<double>{0.5, 1.0}), DomainError);
  CHECK_THROWS_AS(validate_probabilities(std::vector<double>{0.5, 0.2}), DomainError);
}

TEST_CASE("quantile line output") {
  PathMatrix p = PathMatrix::Constant(100, 3, 1.5);
  const std::vector<double> probs = {0.25, 0.75};
  const auto q = quantile_lines(p, probs);
  std::ostringstream csv, svg;
  write_csv(csv, q);
  write_svg(svg, q);
  const std::string text = csv.str();
  CHECK(text.find("n,p,q\n") != std::string::npos);
  CHECK(text.find("\n3,0.75,1.5\n") != std::string::npos);
  CHECK(svg.str().find("<svg") != std::string::npos);
  CHECK(svg.str().find("</svg>") != std::string::npos);
}
