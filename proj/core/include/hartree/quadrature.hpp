#pragma once

#include <vector>

namespace hartree::quad {

/// Nodes (ascending) and weights of a quadrature rule on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Total mass of the Jacobi weight (1-t)^alpha (1+t)^beta on [-1, 1].
double jacobi_mass(double alpha, double beta);

/// n-point Gauss-Jacobi rule for the weight (1-t)^alpha (1+t)^beta.
/// Nodes come from the Golub-Welsch eigenproblem and are refined by Newton
/// steps on the orthonormal three-term recurrence; weights use the
/// Christoffel function. Exact for polynomials of degree 2n-1.
Rule gauss_jacobi(int n, double alpha, double beta);

/// n-point Gauss-Radau-Jacobi rule with the fixed node at t = +1 (the last
/// node). Exact for polynomials of degree 2n-2.
Rule gauss_radau_jacobi(int n, double alpha, double beta);

/// n-point Gauss-Legendre rule.
Rule gauss_legendre(int n);

}  // namespace hartree::quad
