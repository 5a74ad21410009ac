#include "lorentz/linalg.hpp"

#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include "lorentz/errors.hpp"

namespace lorentz {

OrthonormalFrame indefinite_gram_schmidt(const Mat& candidates, const Mat& g, const Mat& riemannian,
                                         int want, double tol) {
  // Riemannian pass: orthonormal spanning set of the candidates' column space.
  std::vector<Vec> span;
  double scale = 0.0;
  for (int c = 0; c < candidates.cols(); ++c) {
    scale = std::max(scale, std::sqrt(std::max(0.0, candidates.col(c).dot(riemannian * candidates.col(c)))));
  }
  for (int c = 0; c < candidates.cols(); ++c) {
    Vec w = candidates.col(c);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& e : span) w -= e.dot(riemannian * w) * e;
    }
    const double n = std::sqrt(std::max(0.0, w.dot(riemannian * w)));
    if (n > 1e-10 * scale) span.push_back(w / n);
  }
  if (static_cast<int>(span.size()) < want) {
    throw DegeneratePlane("candidate vectors span only " + std::to_string(span.size()) +
                          " dimensions, need " + std::to_string(want));
  }

  OrthonormalFrame frame;
  frame.basis.resize(g.rows(), want);
  std::vector<Vec> pool = span;
  for (int k = 0; k < want; ++k) {
    int best = -1;
    double best_ratio = -1.0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const double r2 = pool[i].dot(riemannian * pool[i]);
      if (!(r2 > 0.0)) continue;
      const double ratio = std::abs(pool[i].dot(g * pool[i])) / r2;
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best = static_cast<int>(i);
      }
    }
    if (best < 0 || best_ratio < tol) {
      throw DegeneratePlane("no non-degenerate direction left while building an orthonormal frame");
    }
    Vec e = pool[static_cast<std::size_t>(best)];
    pool.erase(pool.begin() + best);
    const double q = e.dot(g * e);
    const int sign = q < 0.0 ? -1 : 1;
    e /= std::sqrt(std::abs(q));
    for (auto& w : pool) {
      for (int pass = 0; pass < 2; ++pass) w -= sign * e.dot(g * w) * e;
    }
    frame.basis.col(k) = e;
    frame.signs.push_back(sign);
  }
  return frame;
}

KernelResult kernel_direction(const Mat& op, const Mat& metric) {
  const int n = static_cast<int>(op.rows());
  if (n == 0 || op.cols() != n || metric.rows() != n || metric.cols() != n) {
    throw Error("kernel_direction: operator and metric must be square of equal size");
  }
  Eigen::LLT<Mat> llt(metric);
  if (llt.info() != Eigen::Success) throw Error("kernel_direction: metric is not positive definite");
  // metric = L L^T; in y = L^T x coordinates the operator is L^T op L^{-T}.
  const Mat L = llt.matrixL();
  const Mat Lt = L.transpose();
  const Mat Linv_t = Lt.triangularView<Eigen::Upper>().solve(Mat::Identity(n, n));
  const Mat B = Lt * op * Linv_t;

  KernelResult out;
  Eigen::JacobiSVD<Mat> svd(B, Eigen::ComputeFullV);
  const Vec sv = svd.singularValues();
  out.op_norm = sv(0);
  out.smallest_singular = sv(n - 1);
  const double skew = (B + B.transpose()).cwiseAbs().maxCoeff();
  out.skew_residual = out.op_norm > 1e-10 ? skew / out.op_norm : skew;
  if (out.skew_residual > 1e-6) {
    throw Error("kernel_direction: operator is not skew-adjoint (residual " +
                std::to_string(out.skew_residual) + ")");
  }

  Vec y = svd.matrixV().col(n - 1);
  // Deterministic orientation: largest component positive.
  Eigen::Index imax = 0;
  y.cwiseAbs().maxCoeff(&imax);
  if (y(imax) < 0.0) y = -y;
  out.residual = (B * y).norm();
  const double bound = out.op_norm > 1e-10 ? 1e-7 * out.op_norm : 1e-10;
  out.found = out.residual <= bound;
  out.direction = Linv_t * y;
  if (!out.found && n % 2 == 1) {
    throw KernelNotFound("odd-dimensional skew operator without a near-kernel direction (smallest singular value " +
                         std::to_string(out.smallest_singular) + ")");
  }
  return out;
}

KernelResult kernel_direction(const Mat& op) {
  return kernel_direction(op, Mat::Identity(op.rows(), op.rows()));
}

}  // namespace lorentz
