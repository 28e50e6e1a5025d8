#pragma once

#include <Eigen/Dense>

#include "backbone/set_function.hpp"

namespace backbone {

/// Multivariate normal model; covariance must be symmetric positive
/// definite.
struct GaussianModel {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;

  int dimension() const { return static_cast<int>(mean.size()); }
  void validate() const;
};

/// -ln of the Gaussian density at `point`, in nats. May be negative:
/// densities can exceed 1.
double gaussian_local_entropy(const GaussianModel& model,
                              const Eigen::VectorXd& point);

/// Marginal model over the kept coordinates.
GaussianModel gaussian_marginal(const GaussianModel& model,
                                const SubsetMask& keep);

/// Loss set function h(x) - h(x^-a) over variable failures, in nats.
/// Differential entropy is not guaranteed monotone, so the resulting
/// spectrum can carry violations even under exact search.
SetFunction gaussian_entropy_loss(const GaussianModel& model,
                                  const Eigen::VectorXd& point);

}  // namespace backbone
