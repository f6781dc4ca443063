#include "hartree/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace hartree::quad {
namespace {

// Monic Jacobi recurrence p_{k+1} = (t - a_k) p_k - b_k p_{k-1}, with
// b_0 set to the weight's total mass.
struct Recurrence {
  std::vector<double> a;  // a_0 .. a_{n-1}
  std::vector<double> b;  // b_0 .. b_n
};

Recurrence jacobi_recurrence(int n, double alpha, double beta) {
  Recurrence rc;
  rc.a.resize(static_cast<std::size_t>(n));
  rc.b.resize(static_cast<std::size_t>(n) + 1);
  const double ab = alpha + beta;
  for (int k = 0; k < n; ++k) {
    if (k == 0) {
      rc.a[0] = (beta - alpha) / (ab + 2.0);
    } else {
      const double s = 2.0 * k + ab;
      rc.a[k] = (beta * beta - alpha * alpha) / (s * (s + 2.0));
    }
  }
  rc.b[0] = jacobi_mass(alpha, beta);
  for (int k = 1; k <= n; ++k) {
    if (k == 1) {
      // the general expression is 0/0 when alpha + beta = -1
      rc.b[1] = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      const double s = 2.0 * k + ab;
      rc.b[k] = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
  }
  return rc;
}

struct Evaluation {
  double p = 0.0;      // orthonormal polynomial of degree n
  double dp = 0.0;     // its derivative
  double sumsq = 0.0;  // sum of squares of degrees 0 .. n-1
};

Evaluation evaluate_orthonormal(const Recurrence& rc, int n, double t) {
  double p_prev = 0.0;
  double p = 1.0 / std::sqrt(rc.b[0]);
  double dp_prev = 0.0;
  double dp = 0.0;
  double sumsq = 0.0;
  for (int k = 0; k < n; ++k) {
    sumsq += p * p;
    const double sb_k = k == 0 ? 0.0 : std::sqrt(rc.b[k]);
    const double sb_next = std::sqrt(rc.b[k + 1]);
    const double p_next = ((t - rc.a[k]) * p - sb_k * p_prev) / sb_next;
    const double dp_next = (p + (t - rc.a[k]) * dp - sb_k * dp_prev) / sb_next;
    p_prev = p;
    p = p_next;
    dp_prev = dp;
    dp = dp_next;
  }
  return {p, dp, sumsq};
}

void check_exponents(double alpha, double beta) {
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw std::invalid_argument("Jacobi exponents must exceed -1");
  }
}

}  // namespace

double jacobi_mass(double alpha, double beta) {
  check_exponents(alpha, beta);
  return std::exp((alpha + beta + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                  std::lgamma(beta + 1.0) - std::lgamma(alpha + beta + 2.0));
}

Rule gauss_jacobi(int n, double alpha, double beta) {
  check_exponents(alpha, beta);
  if (n < 1) throw std::invalid_argument("quadrature rule needs at least one node");
  const Recurrence rc = jacobi_recurrence(n, alpha, beta);

  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) diag(k) = rc.a[k];
  for (int k = 1; k < n; ++k) sub(k - 1) = std::sqrt(rc.b[k]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);

  Rule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    double t = solver.eigenvalues()(k);
    for (int it = 0; it < 8; ++it) {
      const Evaluation ev = evaluate_orthonormal(rc, n, t);
      const double delta = ev.p / ev.dp;
      t -= delta;
      if (std::abs(delta) <= 1e-17 * (1.0 + std::abs(t))) break;
    }
    t = std::clamp(t, -1.0, 1.0);
    rule.nodes[k] = t;
    rule.weights[k] = 1.0 / evaluate_orthonormal(rc, n, t).sumsq;
  }
  std::vector<std::size_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return rule.nodes[i] < rule.nodes[j]; });
  Rule sorted;
  for (std::size_t i : order) {
    sorted.nodes.push_back(rule.nodes[i]);
    sorted.weights.push_back(rule.weights[i]);
  }
  return sorted;
}

Rule gauss_radau_jacobi(int n, double alpha, double beta) {
  check_exponents(alpha, beta);
  if (n < 2) throw std::invalid_argument("Radau rule needs at least two nodes");
  // Free nodes are the Gauss nodes of the modified weight (1-t)^(alpha+1)(1+t)^beta.
  Rule inner = gauss_jacobi(n - 1, alpha + 1.0, beta);
  for (std::size_t k = 0; k < inner.nodes.size(); ++k) {
    inner.weights[k] /= (1.0 - inner.nodes[k]);
  }
  // The fixed-node weight equals the Christoffel function of the original
  // weight at t = 1.
  const Recurrence rc = jacobi_recurrence(n, alpha, beta);
  const Evaluation ev = evaluate_orthonormal(rc, n, 1.0);
  inner.nodes.push_back(1.0);
  inner.weights.push_back(1.0 / ev.sumsq);
  return inner;
}

Rule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

}  // namespace hartree::quad
