#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cumica/linalg.hpp"
#include "cumica/random.hpp"

namespace cumica {

enum class Family { Normal, Gamma, ExpPower, GaussMixture, Uniform };

/// A standardized (mean 0, variance 1) marginal source law.
///
/// Gamma and ExpPower use `shape`; GaussMixture is
/// pi * N(0, 1) + (1 - pi) * N(mu, 1) before standardization.
struct SourceSpec {
  Family family = Family::Normal;
  double shape = 0.0;
  double pi = 0.0;
  double mu = 0.0;

  static SourceSpec normal() { return {}; }
  static SourceSpec gamma(double shape) { return {Family::Gamma, shape, 0.0, 0.0}; }
  static SourceSpec exp_power(double shape) { return {Family::ExpPower, shape, 0.0, 0.0}; }
  static SourceSpec mixture(double pi, double mu) { return {Family::GaussMixture, 0.0, pi, mu}; }
  static SourceSpec uniform() { return {Family::Uniform, 0.0, 0.0, 0.0}; }

  friend bool operator==(const SourceSpec&, const SourceSpec&) = default;
};

/// Throws InvalidSpec for non-positive shapes, pi outside (0, 1) or mu == 0.
void validate(const SourceSpec& spec);

/// Parses "normal", "uniform", "exp", "gamma:<a>", "ep:<a>", "mix:<pi>:<mu>".
SourceSpec parse_source(std::string_view text);

/// Comma-separated list of source specs.
std::vector<SourceSpec> parse_source_list(std::string_view text);

std::string to_string(const SourceSpec& spec);

/// Moment sextet of a standardized source z:
/// gamma = E z^3, beta = E z^4, kappa = beta - 3, nu = beta - 1,
/// omega = E z^6 - gamma^2, eta = E z^5 - E z^3.
struct MomentProfile {
  double gamma = 0.0;
  double beta = 3.0;
  double kappa = 0.0;
  double nu = 2.0;
  double omega = 15.0;
  double eta = 0.0;

  /// Builds the profile from standardized raw moments E z^3 .. E z^6.
  static MomentProfile from_moments(double m3, double m4, double m5, double m6);
};

/// Exact analytic moments of the standardized law.
MomentProfile moment_profile(const SourceSpec& spec);

/// n i.i.d. draws, standardized with the family's analytic mean and
/// standard deviation.
Vector sample_source(const SourceSpec& spec, std::size_t n, RngStream& rng);

}  // namespace cumica
