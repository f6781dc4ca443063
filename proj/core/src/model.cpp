#include "hartree/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hartree {

double ModelParams::hardy_threshold() const {
  const double h = 0.5 * (d - 2);
  return h * h;
}

ModelParams make_params(int d, double a) {
  if (d < 3) {
    throw std::invalid_argument("dimension d must be at least 3, got " + std::to_string(d));
  }
  if (!std::isfinite(a)) throw std::invalid_argument("coupling a must be finite");
  const double h = 0.5 * (d - 2);
  if (!(a > -h * h)) {
    std::ostringstream msg;
    msg << "coupling a = " << a << " must satisfy a > " << -h * h << " for d = " << d;
    throw std::invalid_argument(msg.str());
  }
  ModelParams p;
  p.d = d;
  p.a = a;
  p.nu = std::sqrt(h * h + a);
  p.rho = h - p.nu;
  return p;
}

double sphere_area(int d) {
  const double half = 0.5 * d;
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

}  // namespace hartree
