#include <qgauge/calculus.hpp>

#include <cmath>

namespace qgauge {

Jet2 Jet2::of_order(int order, int real_dim) {
  Jet2 j;
  j.order = order;
  j.grad = Eigen::VectorXd::Zero(real_dim);
  j.hess = Eigen::MatrixXd::Zero(real_dim, real_dim);
  return j;
}

Jet2 eval_jet(const ScalarField& f, const ComplexPoint& z, int order) {
  if (order < 0 || order > 2)
    fail(ErrorKind::EvaluationError,
         "jet order must be 0, 1 or 2, got " + std::to_string(order));
  return f.jet(z, order);
}

WirtingerGradient wirtinger_gradient(const Jet2& jet) {
  if (jet.order < 1)
    fail(ErrorKind::OrderTooLow,
         "wirtinger gradient needs a jet of order >= 1");
  const int n = static_cast<int>(jet.grad.size()) / 2;
  WirtingerGradient dz(n);
  for (int j = 0; j < n; ++j)
    dz[j] = Complex(0.5 * jet.grad[2 * j], -0.5 * jet.grad[2 * j + 1]);
  return dz;
}

LeviMatrix levi_from_real_hessian(const Eigen::MatrixXd& hess) {
  const int n = static_cast<int>(hess.rows()) / 2;
  LeviMatrix H(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const double re = hess(2 * j, 2 * k) + hess(2 * j + 1, 2 * k + 1);
      const double im = hess(2 * j, 2 * k + 1) - hess(2 * j + 1, 2 * k);
      H(j, k) = 0.25 * Complex(re, im);
    }
  }
  // exact Hermitian symmetry, whatever rounding the input carried
  LeviMatrix sym = 0.5 * (H + H.adjoint().eval());
  return sym;
}

LeviMatrix levi_form(const ScalarField& f, const ComplexPoint& z) {
  return levi_from_real_hessian(f.jet(z, 2).hess);
}

double min_eig_hermitian(const LeviMatrix& H) {
  if (H.rows() != H.cols())
    fail(ErrorKind::NotHermitian, "matrix is not square");
  if (H.rows() == 0) return std::numeric_limits<double>::infinity();
  const double norm = H.norm();
  const double dev = (H - H.adjoint().eval()).norm();
  if (dev > 1e-12 * std::max(1.0, norm))
    fail(ErrorKind::NotHermitian,
         "Hermitian deviation " + std::to_string(dev) + " above tolerance");
  Eigen::SelfAdjointEigenSolver<LeviMatrix> solver(H,
                                                   Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

Eigen::MatrixXcd complex_tangent_basis(const WirtingerGradient& dz) {
  const int n = static_cast<int>(dz.size());
  const double norm = dz.norm();
  if (!(norm > 1e-150))
    fail(ErrorKind::ZeroGradient,
         "holomorphic gradient vanishes; no regular tangent space");
  if (n == 1) return Eigen::MatrixXcd(1, 0);
  // v annihilates dz iff v is orthogonal to conj(dz) in the Hermitian
  // inner product; complete conj(dz) to a unitary frame and drop it.
  Eigen::VectorXcd w = dz.conjugate() / norm;
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(w);
  Eigen::MatrixXcd Q = qr.householderQ();
  Eigen::MatrixXcd basis = Q.rightCols(n - 1);
  return basis;
}

}  // namespace qgauge
