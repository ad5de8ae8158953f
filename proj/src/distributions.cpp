#include "cumica/distributions.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "cumica/errors.hpp"

namespace cumica {

namespace {

double parse_number(std::string_view text, std::string_view context) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty())
    throw Error(ErrorKind::InvalidSpec, "cannot parse number '" + std::string(text) + "' in '" +
                                            std::string(context) + "'");
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// E|z|^r / (E z^2)^{r/2} for density proportional to exp(-|z|^a).
double exp_power_standardized_abs_moment(double shape, int r) {
  const double lg1 = std::lgamma(1.0 / shape);
  const double lg3 = std::lgamma(3.0 / shape);
  const double lgr = std::lgamma((r + 1.0) / shape);
  return std::exp(lgr - lg1 - 0.5 * r * (lg3 - lg1));
}

double exp_power_scale(double shape) {
  return std::exp(0.5 * (std::lgamma(3.0 / shape) - std::lgamma(1.0 / shape)));
}

double mixture_sd(double pi, double mu) { return std::sqrt(1.0 + pi * (1.0 - pi) * mu * mu); }

}  // namespace

void validate(const SourceSpec& spec) {
  switch (spec.family) {
    case Family::Normal:
    case Family::Uniform:
      return;
    case Family::Gamma:
    case Family::ExpPower:
      if (!(spec.shape > 0.0) || !std::isfinite(spec.shape))
        throw Error(ErrorKind::InvalidSpec, "shape parameter must be positive and finite");
      return;
    case Family::GaussMixture:
      if (!(spec.pi > 0.0 && spec.pi < 1.0)) throw Error(ErrorKind::InvalidSpec, "mixture weight must lie in (0, 1)");
      if (spec.mu == 0.0 || !std::isfinite(spec.mu))
        throw Error(ErrorKind::InvalidSpec, "mixture location must be finite and nonzero");
      return;
  }
}

SourceSpec parse_source(std::string_view text) {
  text = trim(text);
  const auto parts = split(text, ':');
  const std::string_view name = parts[0];
  auto expect = [&](std::size_t count) {
    if (parts.size() != count)
      throw Error(ErrorKind::InvalidSpec, "wrong number of parameters in source '" + std::string(text) + "'");
  };
  SourceSpec spec;
  if (name == "normal") {
    expect(1);
    spec = SourceSpec::normal();
  } else if (name == "uniform") {
    expect(1);
    spec = SourceSpec::uniform();
  } else if (name == "exp") {
    expect(1);
    spec = SourceSpec::gamma(1.0);
  } else if (name == "gamma") {
    expect(2);
    spec = SourceSpec::gamma(parse_number(parts[1], text));
  } else if (name == "ep") {
    expect(2);
    spec = SourceSpec::exp_power(parse_number(parts[1], text));
  } else if (name == "mix") {
    expect(3);
    spec = SourceSpec::mixture(parse_number(parts[1], text), parse_number(parts[2], text));
  } else {
    throw Error(ErrorKind::InvalidSpec, "unknown source family '" + std::string(name) + "'");
  }
  validate(spec);
  return spec;
}

std::vector<SourceSpec> parse_source_list(std::string_view text) {
  std::vector<SourceSpec> out;
  for (auto part : split(text, ',')) out.push_back(parse_source(part));
  return out;
}

std::string to_string(const SourceSpec& spec) {
  std::ostringstream os;
  os.precision(17);
  switch (spec.family) {
    case Family::Normal: os << "normal"; break;
    case Family::Uniform: os << "uniform"; break;
    case Family::Gamma: os << "gamma:" << spec.shape; break;
    case Family::ExpPower: os << "ep:" << spec.shape; break;
    case Family::GaussMixture: os << "mix:" << spec.pi << ':' << spec.mu; break;
  }
  return os.str();
}

MomentProfile MomentProfile::from_moments(double m3, double m4, double m5, double m6) {
  MomentProfile p;
  p.gamma = m3;
  p.beta = m4;
  p.kappa = m4 - 3.0;
  p.nu = m4 - 1.0;
  p.omega = m6 - m3 * m3;
  p.eta = m5 - m3;
  return p;
}

MomentProfile moment_profile(const SourceSpec& spec) {
  validate(spec);
  switch (spec.family) {
    case Family::Normal:
      return MomentProfile::from_moments(0.0, 3.0, 0.0, 15.0);
    case Family::Uniform:
      return MomentProfile::from_moments(0.0, 9.0 / 5.0, 0.0, 27.0 / 7.0);
    case Family::Gamma: {
      // Cumulants of Gamma(a, 1) are a (r-1)!; convert to central moments.
      const double a = spec.shape;
      const double k2 = a, k3 = 2.0 * a, k4 = 6.0 * a, k5 = 24.0 * a, k6 = 120.0 * a;
      const double c3 = k3;
      const double c4 = k4 + 3.0 * k2 * k2;
      const double c5 = k5 + 10.0 * k3 * k2;
      const double c6 = k6 + 15.0 * k4 * k2 + 10.0 * k3 * k3 + 15.0 * k2 * k2 * k2;
      return MomentProfile::from_moments(c3 / std::pow(a, 1.5), c4 / (a * a), c5 / std::pow(a, 2.5),
                                         c6 / (a * a * a));
    }
    case Family::ExpPower: {
      const double m4 = exp_power_standardized_abs_moment(spec.shape, 4);
      const double m6 = exp_power_standardized_abs_moment(spec.shape, 6);
      const double m8 = exp_power_standardized_abs_moment(spec.shape, 8);
      if (!std::isfinite(m4) || !std::isfinite(m6) || !std::isfinite(m8))
        throw Error(ErrorKind::InvalidSpec, "exponential power moments overflow for shape " + to_string(spec));
      return MomentProfile::from_moments(0.0, m4, 0.0, m6);
    }
    case Family::GaussMixture: {
      constexpr std::array<double, 7> normal_moments{1.0, 0.0, 1.0, 0.0, 3.0, 0.0, 15.0};
      constexpr std::array<std::array<double, 7>, 7> binom{{{1, 0, 0, 0, 0, 0, 0},
                                                            {1, 1, 0, 0, 0, 0, 0},
                                                            {1, 2, 1, 0, 0, 0, 0},
                                                            {1, 3, 3, 1, 0, 0, 0},
                                                            {1, 4, 6, 4, 1, 0, 0},
                                                            {1, 5, 10, 10, 5, 1, 0},
                                                            {1, 6, 15, 20, 15, 6, 1}}};
      const double mean = (1.0 - spec.pi) * spec.mu;
      const std::array<double, 2> weight{spec.pi, 1.0 - spec.pi};
      const std::array<double, 2> offset{-mean, spec.mu - mean};
      std::array<double, 7> central{};
      for (int r = 0; r <= 6; ++r) {
        for (int c = 0; c < 2; ++c) {
          double sum = 0.0;
          for (int j = 0; j <= r; ++j) sum += binom[r][j] * std::pow(offset[c], r - j) * normal_moments[j];
          central[r] += weight[c] * sum;
        }
      }
      const double sd = std::sqrt(central[2]);
      return MomentProfile::from_moments(central[3] / std::pow(sd, 3), central[4] / std::pow(sd, 4),
                                         central[5] / std::pow(sd, 5), central[6] / std::pow(sd, 6));
    }
  }
  throw Error(ErrorKind::InvalidSpec, "unknown family");
}

Vector sample_source(const SourceSpec& spec, std::size_t n, RngStream& rng) {
  validate(spec);
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "sample size must be at least 1");
  Vector out(static_cast<Eigen::Index>(n));
  switch (spec.family) {
    case Family::Normal: {
      std::normal_distribution<double> normal(0.0, 1.0);
      for (auto& v : out) v = normal(rng);
      break;
    }
    case Family::Uniform: {
      const double half_width = std::sqrt(3.0);
      std::uniform_real_distribution<double> uniform(-half_width, half_width);
      for (auto& v : out) v = uniform(rng);
      break;
    }
    case Family::Gamma: {
      std::gamma_distribution<double> gamma(spec.shape, 1.0);
      const double sd = std::sqrt(spec.shape);
      for (auto& v : out) v = (gamma(rng) - spec.shape) / sd;
      break;
    }
    case Family::ExpPower: {
      // |z|^a ~ Gamma(1/a) for density proportional to exp(-|z|^a).
      std::gamma_distribution<double> gamma(1.0 / spec.shape, 1.0);
      std::bernoulli_distribution coin(0.5);
      const double scale = exp_power_scale(spec.shape);
      for (auto& v : out) {
        const double magnitude = std::pow(gamma(rng), 1.0 / spec.shape);
        v = (coin(rng) ? magnitude : -magnitude) / scale;
      }
      break;
    }
    case Family::GaussMixture: {
      std::normal_distribution<double> normal(0.0, 1.0);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      const double mean = (1.0 - spec.pi) * spec.mu;
      const double sd = mixture_sd(spec.pi, spec.mu);
      for (auto& v : out) {
        const double shift = unit(rng) < spec.pi ? 0.0 : spec.mu;
        v = (shift + normal(rng) - mean) / sd;
      }
      break;
    }
  }
  return out;
}

}  // namespace cumica
