#pragma once

#include <span>

#include "hartree/evolution.hpp"

namespace hartree {

struct BlowupFitOptions {
  /// Minimum number of samples in the increasing tail of H.
  int min_samples = 10;
  /// Leave out the sample that triggered a resolution stop.
  bool drop_unresolved = true;
  /// Require a blow-up stop reason when fitting a trajectory.
  bool require_blowup_stop = true;
};

struct BlowupFit {
  double t_star = 0.0;
  /// p in H(t) = C (T* - t)^{-p}.
  double exponent = 0.0;
  double log_c = 0.0;
  /// Root-mean-square residual of log H.
  double log_rms = 0.0;
  /// log10(H_max / H_min) over the fitted samples.
  double decades = 0.0;
  int samples = 0;
  /// Index of the first fitted sample in the input series.
  int first = 0;
  /// c in Gamma(t) = c (T* - t)^2 and the relative rms deviation of
  /// Gamma / (c (T* - t)^2) from 1; zero when no Gamma series was given.
  double gamma_coefficient = 0.0;
  double gamma_rms = 0.0;
};

class FitRejected : public Error {
 public:
  using Error::Error;
};

/// Least-squares fit of H(t) = C (T* - t)^{-p} to the longest strictly
/// increasing tail of H, and of Gamma(t) = c (T* - t)^2 on the same samples
/// when `gamma` is non-empty. T* is located by a bracketed Brent search on
/// the variable-projection residual, then (log C, p, T*) are refined jointly by
/// Gauss-Newton. Throws FitRejected if the increasing tail is too short.
BlowupFit fit_blowup(std::span<const double> t, std::span<const double> H, std::span<const double> gamma = {},
                     const BlowupFitOptions& options = {});

BlowupFit fit_blowup(const Trajectory& trajectory, const BlowupFitOptions& options = {});

}  // namespace hartree
