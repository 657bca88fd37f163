#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include <qgauge/calculus.hpp>
#include <qgauge/core.hpp>

namespace qgauge {

struct SolverOptions {
  double tol = 1e-12;  // relative bracket/step tolerance on the root t
  int max_iter = 200;
};

enum class SolveMethod { Bisection, Newton, Hybrid };

const char* to_string(SolveMethod m);

/// Outcome of one gauge solve. `residual` is |ψ(ξ)| at ξ = (1/h) • z.
struct GaugeResult {
  double h = 0.0;
  int iterations = 0;
  SolveMethod method = SolveMethod::Hybrid;
  double residual = 0.0;
};

/// One evaluation of the radial profile g(z, t) = ψ((1/t) • z) together with
/// its t-derivative dg/dt = -(1/t) Σ_j p_j (x_j ∂ψ/∂x_j + y_j ∂ψ/∂y_j)|_ξ,
/// the real chain rule applied through dξ_j/dt = -(p_j / t) ξ_j.
struct RadialProfile {
  ComplexPoint z;
  double t = 1.0;
  double g_value = 0.0;
  double dg_dt = 0.0;
};

/// A quasi-balanced domain: weights, defining function, bounding radius, and
/// solver configuration. Immutable and safe to share across threads; the
/// ψ-evaluation counter is the only mutable state and is atomic.
class DomainDefinition {
 public:
  /// Validates ψ(0) < 0, ψ > 0 on 64 directions at |z| = 2R, weight/dimension
  /// agreement, and solver_tol small enough for the second-derivative
  /// differencing scheme (tol <= 1e-12).
  static DomainDefinition create(std::string name, Weights weights,
                                 std::shared_ptr<const ScalarField> psi,
                                 double bounding_radius,
                                 SolverOptions solver = {},
                                 bool newton_enabled = true);

  /// Skips the construction spot checks. Test-only escape hatch for
  /// deliberately malformed domains (no boundary, flat boundary, ...).
  static DomainDefinition create_unchecked(
      std::string name, Weights weights,
      std::shared_ptr<const ScalarField> psi, double bounding_radius,
      SolverOptions solver = {}, bool newton_enabled = true);

  const std::string& name() const { return name_; }
  const Weights& weights() const { return weights_; }
  int dim() const { return psi_->dim(); }
  double bounding_radius() const { return radius_; }
  const SolverOptions& solver() const { return solver_; }
  bool newton_enabled() const { return newton_; }
  const ScalarField& psi() const { return *psi_; }

  /// Optional closed-form gauge used as an independent oracle.
  void set_oracle(std::function<double(const ComplexPoint&)> oracle);
  bool has_oracle() const { return static_cast<bool>(oracle_); }
  double oracle(const ComplexPoint& z) const;

  /// Jet of ψ; every call (any order) bumps the evaluation counter.
  Jet2 psi_jet(const ComplexPoint& z, int order) const;
  double psi_value(const ComplexPoint& z) const { return psi_jet(z, 0).value; }

  std::uint64_t eval_count() const { return evals_->load(); }
  void reset_eval_count() const { evals_->store(0); }

 private:
  DomainDefinition(std::string name, Weights weights,
                   std::shared_ptr<const ScalarField> psi, double radius,
                   SolverOptions solver, bool newton);

  std::string name_;
  Weights weights_;
  std::shared_ptr<const ScalarField> psi_;
  double radius_;
  SolverOptions solver_;
  bool newton_;
  std::function<double(const ComplexPoint&)> oracle_;
  std::shared_ptr<std::atomic<std::uint64_t>> evals_;
};

/// (1/t) • z, the point whose ψ-value is the radial profile g(z, t).
ComplexPoint radial_point(const DomainDefinition& dom, const ComplexPoint& z,
                          double t);

/// Membership predicate: ψ(z) < 0.
bool contains(const DomainDefinition& dom, const ComplexPoint& z);

/// g(z, t) and dg/dt from one order-1 jet of ψ.
RadialProfile radial_value(const DomainDefinition& dom, const ComplexPoint& z,
                           double t);

/// Sign-change bracket for g(z, ·): g(t_lo) >= 0 >= g(t_hi). Geometric
/// expansion from t = 1 with factor 2, at most 60 doublings each way.
std::pair<double, double> bracket_root(const DomainDefinition& dom,
                                       const ComplexPoint& z);

/// Minkowski function h_D(z): the unique positive root of g(z, ·); zero at
/// the origin. Safeguarded Newton inside the bracket when the domain allows
/// Newton, plain bisection otherwise.
GaugeResult gauge(const DomainDefinition& dom, const ComplexPoint& z);

/// Pure-bisection solve; the independent oracle for the hybrid path.
GaugeResult gauge_bisection(const DomainDefinition& dom,
                            const ComplexPoint& z);

/// Real gradient of h_D at z by the implicit-function formula
/// ∂h/∂u = -(∂g/∂u)/(∂g/∂t) at (z, h_D(z)). Refuses when the radial
/// derivative degenerates relative to its natural scale.
Eigen::VectorXd gauge_gradient(const DomainDefinition& dom,
                               const ComplexPoint& z);

/// ξ = (1/h_D(z)) • z, the radial projection onto the boundary.
ComplexPoint boundary_project(const DomainDefinition& dom,
                              const ComplexPoint& z);

/// r(z) = h_D(z) - 1: negative inside, zero on the boundary, positive outside.
double defining_r(const DomainDefinition& dom, const ComplexPoint& z);

/// Full real Hessian of h_D by Richardson-extrapolated central differences of
/// gauge_gradient; base step max(1e-4 |z|, 1e-5).
Eigen::MatrixXd gauge_real_hessian(const DomainDefinition& dom,
                                   const ComplexPoint& z);

/// Levi matrix of h_D assembled from the differenced real Hessian.
LeviMatrix gauge_levi(const DomainDefinition& dom, const ComplexPoint& z);

}  // namespace qgauge
