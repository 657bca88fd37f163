#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include <qgauge/core.hpp>
#include <qgauge/dual.hpp>

namespace qgauge {

/// Second-order jet of a real-valued function of 2n real variables.
/// Orders not requested are left as zeros and flagged through `order`.
struct Jet2 {
  int order = 0;  // 0, 1, or 2
  double value = 0.0;
  Eigen::VectorXd grad;  // size 2n, zero when order < 1
  Eigen::MatrixXd hess;  // 2n x 2n symmetric, zero when order < 2

  static Jet2 of_order(int order, int real_dim);
};

/// Holomorphic-coordinate gradient (∂f/∂z_1, ..., ∂f/∂z_n) of a real-valued
/// function; conjugation gives the anti-holomorphic half.
using WirtingerGradient = Eigen::VectorXcd;

/// Complex Hessian (∂²f/∂z_j ∂z̄_k), Hermitian for real-valued f.
using LeviMatrix = Eigen::MatrixXcd;

/// Real-valued function on C^n (seen as R^{2n}) evaluable at jet orders 0-2.
/// Implementations must be immutable and safe to evaluate concurrently.
class ScalarField {
 public:
  virtual ~ScalarField() = default;
  virtual int dim() const = 0;
  virtual Jet2 jet(const ComplexPoint& z, int order) const = 0;
  double value(const ComplexPoint& z) const { return jet(z, 0).value; }
};

/// Adapts a functor templated over the scalar kind (double / Dual1 / Dual2)
/// into a ScalarField; the functor receives the 2n coordinates as a vector.
template <class F>
class FunctorField final : public ScalarField {
 public:
  FunctorField(int n, F f) : n_(n), f_(std::move(f)) {}

  int dim() const override { return n_; }

  Jet2 jet(const ComplexPoint& z, int order) const override {
    if (z.dim() != n_)
      fail(ErrorKind::DimensionMismatch,
           "field of dimension " + std::to_string(n_) +
               " evaluated at a point of dimension " + std::to_string(z.dim()));
    const int m = 2 * n_;
    Jet2 out = Jet2::of_order(order, m);
    switch (order) {
      case 0: {
        std::vector<double> vars(z.coords().data(), z.coords().data() + m);
        out.value = f_(vars);
        break;
      }
      case 1: {
        std::vector<Dual1> vars;
        vars.reserve(m);
        for (int i = 0; i < m; ++i)
          vars.push_back(Dual1::variable(z.coords()[i], m, i));
        const Dual1 r = f_(vars);
        out.value = r.v;
        out.grad = r.g;
        break;
      }
      case 2: {
        std::vector<Dual2> vars;
        vars.reserve(m);
        for (int i = 0; i < m; ++i)
          vars.push_back(Dual2::variable(z.coords()[i], m, i));
        const Dual2 r = f_(vars);
        out.value = r.v;
        out.grad = r.g;
        out.hess = r.h;
        break;
      }
      default:
        fail(ErrorKind::EvaluationError,
             "jet order must be 0, 1 or 2, got " + std::to_string(order));
    }
    return out;
  }

 private:
  int n_;
  F f_;
};

template <class F>
std::shared_ptr<const ScalarField> make_field(int n, F f) {
  return std::make_shared<FunctorField<F>>(n, std::move(f));
}

/// Evaluates value / gradient / Hessian of f at z by forward-mode dual
/// arithmetic (no finite differencing).
Jet2 eval_jet(const ScalarField& f, const ComplexPoint& z, int order);

/// dz_j = (∂f/∂x_j − i ∂f/∂y_j) / 2 from a real jet of order >= 1.
WirtingerGradient wirtinger_gradient(const Jet2& jet);

/// Levi matrix from a full real Hessian:
/// H_jk = ((f_xj,xk + f_yj,yk) + i (f_xj,yk − f_yj,xk)) / 4,
/// symmetrized against its conjugate transpose.
LeviMatrix levi_from_real_hessian(const Eigen::MatrixXd& hess);

/// Levi matrix of f at z via an order-2 jet.
LeviMatrix levi_form(const ScalarField& f, const ComplexPoint& z);

/// Smallest eigenvalue of a Hermitian matrix. Rejects inputs whose deviation
/// from Hermitian symmetry exceeds 1e-12 relative.
double min_eig_hermitian(const LeviMatrix& H);

/// Orthonormal basis (columns) of {v : Σ_j dz_j v_j = 0}, the complex tangent
/// space at a regular boundary point; n-1 columns, Householder completion.
Eigen::MatrixXcd complex_tangent_basis(const WirtingerGradient& dz);

}  // namespace qgauge
