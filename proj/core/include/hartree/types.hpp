#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace hartree {

using Complex = std::complex<double>;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

/// Base class for failures raised by the numerical modules.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A field contains NaN or infinite samples.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

/// A field, plan or kernel was used with a grid or model it was not built for.
class MismatchError : public Error {
 public:
  using Error::Error;
};

}  // namespace hartree
