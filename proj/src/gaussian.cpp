#include "backbone/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace backbone {

void GaussianModel::validate() const {
  if (covariance.rows() != covariance.cols() ||
      covariance.rows() != mean.size())
    throw std::invalid_argument("mean/covariance dimensions disagree");
  if ((covariance - covariance.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::domain_error("covariance is not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(covariance);
  if (llt.info() != Eigen::Success)
    throw std::domain_error("covariance is not positive definite");
}

double gaussian_local_entropy(const GaussianModel& model,
                              const Eigen::VectorXd& point) {
  const int k = model.dimension();
  if (point.size() != k)
    throw std::invalid_argument("point dimension mismatch");
  if (k == 0) return 0.0;
  Eigen::LLT<Eigen::MatrixXd> llt(model.covariance);
  if (llt.info() != Eigen::Success)
    throw std::domain_error("covariance is not positive definite");
  double log_det = 0.0;
  const auto& L = llt.matrixL();
  for (int i = 0; i < k; ++i) log_det += 2.0 * std::log(L(i, i));
  const Eigen::VectorXd centered = point - model.mean;
  const double quad = centered.dot(llt.solve(centered));
  return 0.5 * (quad + k * std::log(2.0 * std::numbers::pi) + log_det);
}

GaussianModel gaussian_marginal(const GaussianModel& model,
                                const SubsetMask& keep) {
  const std::vector<int> idx = keep.indices();
  const int m = static_cast<int>(idx.size());
  GaussianModel out;
  out.mean.resize(m);
  out.covariance.resize(m, m);
  for (int i = 0; i < m; ++i) {
    out.mean(i) = model.mean(idx[static_cast<std::size_t>(i)]);
    for (int j = 0; j < m; ++j)
      out.covariance(i, j) = model.covariance(idx[static_cast<std::size_t>(i)],
                                              idx[static_cast<std::size_t>(j)]);
  }
  return out;
}

SetFunction gaussian_entropy_loss(const GaussianModel& model,
                                  const Eigen::VectorXd& point) {
  model.validate();
  const int k = model.dimension();
  const double h_full = gaussian_local_entropy(model, point);
  auto loss = [model, point, h_full](const SubsetMask& failed) {
    const SubsetMask keep = failed.complement();
    if (keep.empty()) return h_full;
    const GaussianModel marg = gaussian_marginal(model, keep);
    Eigen::VectorXd sub(static_cast<Eigen::Index>(keep.count()));
    int j = 0;
    for (int i : keep.indices()) sub(j++) = point(i);
    return h_full - gaussian_local_entropy(marg, sub);
  };
  return SetFunction::from_loss(k, std::move(loss), "gaussian-entropy");
}

}  // namespace backbone
