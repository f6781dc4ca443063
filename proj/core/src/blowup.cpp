#include "hartree/blowup.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace hartree {
namespace {

struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double sse = 0.0;
};

// y = intercept + slope * x by least squares.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  f.intercept = my - f.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - f.intercept - f.slope * x[i];
    f.sse += r * r;
  }
  return f;
}

}  // namespace

BlowupFit fit_blowup(std::span<const double> t, std::span<const double> H, std::span<const double> gamma,
                     const BlowupFitOptions& options) {
  if (t.size() != H.size() || (!gamma.empty() && gamma.size() != t.size())) {
    throw std::invalid_argument("fit_blowup: series lengths differ");
  }
  const int n = static_cast<int>(t.size());
  if (n < options.min_samples) throw FitRejected("fit_blowup: fewer samples than required");
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(t[i]) || !std::isfinite(H[i]) || !(H[i] > 0.0)) {
      throw FitRejected("fit_blowup: non-finite or non-positive H sample");
    }
  }
  int first = n - 1;
  while (first > 0 && H[first - 1] < H[first] && t[first - 1] < t[first]) --first;
  const int m = n - first;
  if (m < options.min_samples) {
    throw FitRejected("fit_blowup: increasing tail of H has " + std::to_string(m) + " samples, need " +
                      std::to_string(options.min_samples));
  }
  std::vector<double> ts(t.begin() + first, t.end());
  std::vector<double> y(m);
  for (int i = 0; i < m; ++i) y[i] = std::log(H[first + i]);
  const double t_last = ts.back();
  const double span = t_last - ts.front();

  std::vector<double> x(m);
  auto sse_at = [&](double log_gap) {
    const double ts_star = t_last + std::exp(log_gap);
    for (int i = 0; i < m; ++i) x[i] = std::log(ts_star - ts[i]);
    return fit_line(x, y).sse;
  };

  // coarse scan over the gap T* - t_last, then Brent inside the best bracket
  const double lo = std::log(1e-8 * span);
  const double hi = std::log(100.0 * span);
  const int scan = 240;
  int best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= scan; ++k) {
    const double g = lo + (hi - lo) * k / scan;
    const double v = sse_at(g);
    if (v < best_val) {
      best_val = v;
      best = k;
    }
  }
  const double a = lo + (hi - lo) * std::max(best - 1, 0) / scan;
  const double b = lo + (hi - lo) * std::min(best + 1, scan) / scan;
  const auto found = boost::math::tools::brent_find_minima(sse_at, a, b, std::numeric_limits<double>::digits);

  double t_star = t_last + std::exp(found.first);
  for (int i = 0; i < m; ++i) x[i] = std::log(t_star - ts[i]);
  LineFit line = fit_line(x, y);
  double log_c = line.intercept;
  double p = -line.slope;

  // joint Gauss-Newton refinement of (log C, p, T*)
  auto residuals = [&](double lc, double pp, double tt, Eigen::VectorXd& r) {
    for (int i = 0; i < m; ++i) r(i) = y[i] - lc + pp * std::log(tt - ts[i]);
  };
  Eigen::VectorXd r(m);
  residuals(log_c, p, t_star, r);
  double cost = r.squaredNorm();
  for (int it = 0; it < 20; ++it) {
    Eigen::MatrixXd jac(m, 3);
    for (int i = 0; i < m; ++i) {
      jac(i, 0) = -1.0;
      jac(i, 1) = std::log(t_star - ts[i]);
      jac(i, 2) = p / (t_star - ts[i]);
    }
    const Eigen::Vector3d delta = jac.colPivHouseholderQr().solve(-r);
    double scale = 1.0;
    bool improved = false;
    for (int ls = 0; ls < 30; ++ls) {
      const double nt = t_star + scale * delta(2);
      if (nt > t_last) {
        Eigen::VectorXd nr(m);
        residuals(log_c + scale * delta(0), p + scale * delta(1), nt, nr);
        const double nc = nr.squaredNorm();
        if (nc < cost) {
          log_c += scale * delta(0);
          p += scale * delta(1);
          t_star = nt;
          r = nr;
          improved = cost - nc > 1e-15 * cost;
          cost = nc;
          break;
        }
      }
      scale *= 0.5;
    }
    if (!improved) break;
  }

  BlowupFit fit;
  fit.t_star = t_star;
  fit.exponent = p;
  fit.log_c = log_c;
  fit.log_rms = std::sqrt(cost / m);
  fit.decades = (y.back() - *std::min_element(y.begin(), y.end())) / std::log(10.0);
  fit.samples = m;
  fit.first = first;
  if (!gamma.empty()) {
    double num = 0.0;
    double den = 0.0;
    for (int i = 0; i < m; ++i) {
      const double tau2 = (t_star - ts[i]) * (t_star - ts[i]);
      num += gamma[first + i] * tau2;
      den += tau2 * tau2;
    }
    fit.gamma_coefficient = num / den;
    double acc = 0.0;
    for (int i = 0; i < m; ++i) {
      const double tau2 = (t_star - ts[i]) * (t_star - ts[i]);
      const double dev = gamma[first + i] / (fit.gamma_coefficient * tau2) - 1.0;
      acc += dev * dev;
    }
    fit.gamma_rms = std::sqrt(acc / m);
  }
  return fit;
}

BlowupFit fit_blowup(const Trajectory& trajectory, const BlowupFitOptions& options) {
  if (options.require_blowup_stop && trajectory.stop == StopReason::TEnd) {
    throw FitRejected("fit_blowup: trajectory reached t_end without a blow-up stop");
  }
  std::size_t count = trajectory.samples.size();
  if (options.drop_unresolved && trajectory.stop == StopReason::ResolutionLimit && count > 0) --count;
  if (trajectory.stop == StopReason::NonFinite) {
    while (count > 0 && !std::isfinite(trajectory.samples[count - 1].q.H)) --count;
  }
  std::vector<double> t(count);
  std::vector<double> H(count);
  std::vector<double> g(count);
  for (std::size_t i = 0; i < count; ++i) {
    t[i] = trajectory.samples[i].t;
    H[i] = trajectory.samples[i].q.H;
    g[i] = trajectory.samples[i].virial.gamma;
  }
  return fit_blowup(t, H, g, options);
}

}  // namespace hartree
