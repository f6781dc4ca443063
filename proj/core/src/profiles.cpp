#include "hartree/profiles.hpp"

#include <cmath>
#include <stdexcept>

namespace hartree::profiles {
namespace {
void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be positive");
}
}  // namespace

ComplexRadialField gaussian(GridPtr grid, double width, double amplitude, double envelope) {
  require_positive(width, "gaussian width");
  return ComplexRadialField::sample(std::move(grid), [=](double r) {
    return Complex(amplitude * std::pow(r, -envelope) * std::exp(-r * r / (2.0 * width * width)), 0.0);
  });
}

ComplexRadialField sech(GridPtr grid, double width, double amplitude, double envelope) {
  require_positive(width, "sech width");
  return ComplexRadialField::sample(std::move(grid), [=](double r) {
    return Complex(amplitude * std::pow(r, -envelope) / std::cosh(r / width), 0.0);
  });
}

ComplexRadialField shell(GridPtr grid, double center, double width, double amplitude, double envelope) {
  require_positive(width, "shell width");
  if (!(center >= 0.0)) throw std::invalid_argument("shell centre must be non-negative");
  return ComplexRadialField::sample(std::move(grid), [=](double r) {
    const double x = (r - center) / width;
    const double y = (r + center) / width;
    return Complex(amplitude * std::pow(r, -envelope) * (std::exp(-0.5 * x * x) + std::exp(-0.5 * y * y)), 0.0);
  });
}

ComplexRadialField random_smooth(GridPtr grid, std::mt19937_64& rng, const RandomFieldOptions& options) {
  if (options.min_terms < 1 || options.max_terms < options.min_terms) {
    throw std::invalid_argument("invalid random field term range");
  }
  std::uniform_int_distribution<int> terms_dist(options.min_terms, options.max_terms);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  struct Term {
    double center, width;
    Complex amplitude;
  };
  const int terms = terms_dist(rng);
  std::vector<Term> t(static_cast<std::size_t>(terms));
  for (auto& term : t) {
    term.center = options.max_center * unit(rng);
    term.width = options.min_width + (options.max_width - options.min_width) * unit(rng);
    const double mag = 0.2 + unit(rng);
    const double phase = options.complex_valued ? 2.0 * M_PI * unit(rng) : (unit(rng) < 0.2 ? M_PI : 0.0);
    term.amplitude = std::polar(mag, phase);
  }
  const double chirp = options.complex_valued ? 2.0 * (unit(rng) - 0.5) : 0.0;
  const double envelope = options.envelope;
  return ComplexRadialField::sample(std::move(grid), [=](double r) {
    Complex acc{0.0, 0.0};
    for (const auto& term : t) {
      const double x = (r - term.center) / term.width;
      const double y = (r + term.center) / term.width;
      acc += term.amplitude * (std::exp(-0.5 * x * x) + std::exp(-0.5 * y * y));
    }
    return acc * std::pow(r, -envelope) * std::polar(1.0, chirp * r * r / (1.0 + r * r));
  });
}

}  // namespace hartree::profiles
