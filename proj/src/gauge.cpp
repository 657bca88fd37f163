#include <qgauge/gauge.hpp>

#include <cmath>
#include <limits>

#include <qgauge/rng.hpp>

namespace qgauge {

const char* to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::Bisection: return "bisection";
    case SolveMethod::Newton: return "newton";
    case SolveMethod::Hybrid: return "hybrid";
  }
  return "unknown";
}

DomainDefinition::DomainDefinition(std::string name, Weights weights,
                                   std::shared_ptr<const ScalarField> psi,
                                   double radius, SolverOptions solver,
                                   bool newton)
    : name_(std::move(name)),
      weights_(std::move(weights)),
      psi_(std::move(psi)),
      radius_(radius),
      solver_(solver),
      newton_(newton),
      evals_(std::make_shared<std::atomic<std::uint64_t>>(0)) {}

DomainDefinition DomainDefinition::create_unchecked(
    std::string name, Weights weights, std::shared_ptr<const ScalarField> psi,
    double bounding_radius, SolverOptions solver, bool newton_enabled) {
  if (!psi) fail(ErrorKind::BadParameters, "defining function is null");
  if (weights.size() != psi->dim())
    fail(ErrorKind::DimensionMismatch,
         "weight count " + std::to_string(weights.size()) +
             " does not match ψ dimension " + std::to_string(psi->dim()));
  if (!(bounding_radius > 0.0))
    fail(ErrorKind::BadParameters, "bounding radius must be positive");
  if (!(solver.tol > 0.0))
    fail(ErrorKind::BadParameters, "solver tolerance must be positive");
  if (solver.max_iter < 1)
    fail(ErrorKind::BadParameters, "max_iter must be at least 1");
  return DomainDefinition(std::move(name), std::move(weights), std::move(psi),
                          bounding_radius, solver, newton_enabled);
}

DomainDefinition DomainDefinition::create(
    std::string name, Weights weights, std::shared_ptr<const ScalarField> psi,
    double bounding_radius, SolverOptions solver, bool newton_enabled) {
  DomainDefinition dom =
      create_unchecked(std::move(name), std::move(weights), std::move(psi),
                       bounding_radius, solver, newton_enabled);
  // The Levi check of h_D differences gauge_gradient at base step 1e-4
  // (at |z| = 1); a solver tolerance above step^3 would dominate that noise.
  if (solver.tol > 1e-12)
    fail(ErrorKind::BadParameters,
         "solver tolerance must be <= 1e-12 to support second-derivative "
         "differencing");
  const int n = dom.dim();
  double at_origin;
  try {
    at_origin = dom.psi().value(ComplexPoint::zero(n));
  } catch (const Error&) {
    fail(ErrorKind::InvalidDomain, "ψ is not evaluable at the origin");
  }
  if (!(at_origin < 0.0))
    fail(ErrorKind::InvalidDomain,
         "ψ(0) = " + std::to_string(at_origin) +
             " but the origin must lie inside the domain");
  Rng rng(0x51ca7e5ull);
  for (int k = 0; k < 64; ++k) {
    Eigen::VectorXd dir = rng.unit_vector(2 * n);
    ComplexPoint far(2.0 * dom.bounding_radius() * dir);
    double v;
    try {
      v = dom.psi().value(far);
    } catch (const Error&) {
      fail(ErrorKind::InvalidDomain,
           "ψ is not evaluable at |z| = 2R; bounding radius invalid");
    }
    if (!(v > 0.0))
      fail(ErrorKind::InvalidDomain,
           "ψ <= 0 at |z| = 2R; bounding radius does not contain the domain");
  }
  return dom;
}

void DomainDefinition::set_oracle(
    std::function<double(const ComplexPoint&)> oracle) {
  oracle_ = std::move(oracle);
}

double DomainDefinition::oracle(const ComplexPoint& z) const {
  if (!oracle_) fail(ErrorKind::NoOracle, "domain has no analytic gauge");
  return oracle_(z);
}

Jet2 DomainDefinition::psi_jet(const ComplexPoint& z, int order) const {
  evals_->fetch_add(1, std::memory_order_relaxed);
  return psi_->jet(z, order);
}

ComplexPoint radial_point(const DomainDefinition& dom, const ComplexPoint& z,
                          double t) {
  return weighted_scale(1.0 / t, z, dom.weights());
}

bool contains(const DomainDefinition& dom, const ComplexPoint& z) {
  return dom.psi_value(z) < 0.0;
}

RadialProfile radial_value(const DomainDefinition& dom, const ComplexPoint& z,
                           double t) {
  if (!(t > 0.0))
    fail(ErrorKind::BadParameters, "radial parameter t must be positive");
  if (z.is_origin()) fail(ErrorKind::ZeroPoint, "radial profile needs z != 0");
  const ComplexPoint xi = radial_point(dom, z, t);
  const Jet2 jet = dom.psi_jet(xi, 1);
  double pairing = 0.0;
  for (int j = 0; j < dom.dim(); ++j)
    pairing += dom.weights()[j] * (xi.x(j) * jet.grad[2 * j] +
                                   xi.y(j) * jet.grad[2 * j + 1]);
  return {z, t, jet.value, -pairing / t};
}

namespace {

// ψ can overflow, signal a domain error, or go NaN far outside the safe
// region; for sign queries all of those count as "outside" (g > 0).
struct SignEval {
  bool clean;
  double value;
};

SignEval safe_g(const DomainDefinition& dom, const ComplexPoint& z, double t) {
  try {
    const double v = dom.psi_value(radial_point(dom, z, t));
    if (std::isnan(v)) return {false, 1.0};
    return {true, v};
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::EvaluationError ||
        e.kind() == ErrorKind::JetUndefined)
      return {false, 1.0};
    throw;
  }
}

GaugeResult solve_radial(const DomainDefinition& dom, const ComplexPoint& z,
                         bool allow_newton) {
  const SolveMethod method =
      allow_newton ? SolveMethod::Hybrid : SolveMethod::Bisection;
  if (z.is_origin()) return {0.0, 0, method, 0.0};

  auto [lo, hi] = bracket_root(dom, z);
  const double tol = 0.25 * dom.solver().tol;
  const int max_iter = dom.solver().max_iter;
  int iterations = 0;
  double root;

  if (lo == hi) {
    root = lo;
  } else {
    double t = 0.5 * (lo + hi);
    for (;;) {
      if (iterations++ >= max_iter)
        fail(ErrorKind::MaxIterations,
             "no convergence after " + std::to_string(max_iter) +
                 " iterations on domain " + dom.name());
      double g;
      double dgdt = 0.0;
      bool have_deriv = false;
      if (allow_newton) {
        try {
          const RadialProfile prof = radial_value(dom, z, t);
          g = std::isnan(prof.g_value) ? 1.0 : prof.g_value;
          if (std::isfinite(prof.g_value) && std::isfinite(prof.dg_dt)) {
            dgdt = prof.dg_dt;
            have_deriv = true;
          }
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::EvaluationError ||
              e.kind() == ErrorKind::JetUndefined) {
            g = 1.0;  // outside the safe region; fall back to bisection
          } else {
            throw;
          }
        }
      } else {
        g = safe_g(dom, z, t).value;
      }

      if (g > 0.0) {
        lo = t;
      } else if (g < 0.0) {
        hi = t;
      } else {
        root = t;
        break;
      }
      if (hi - lo < tol * std::max(1.0, hi)) {
        root = 0.5 * (lo + hi);
        break;
      }

      double next = 0.5 * (lo + hi);
      if (have_deriv && std::abs(dgdt) > 1e-300) {
        const double cand = t - g / dgdt;
        if (std::isfinite(cand)) {
          if (std::abs(cand - t) < tol * std::max(1.0, std::abs(cand)) &&
              cand >= lo && cand <= hi) {
            // Newton contraction below tolerance; the next correction
            // would be quadratically smaller.
            root = cand;
            break;
          }
          if (cand > lo && cand < hi) next = cand;
        }
      }
      t = next;
    }
  }

  const SignEval final_eval = safe_g(dom, z, root);
  const double residual = final_eval.clean
                              ? std::abs(final_eval.value)
                              : std::numeric_limits<double>::infinity();
  return {root, iterations, method, residual};
}

}  // namespace

std::pair<double, double> bracket_root(const DomainDefinition& dom,
                                       const ComplexPoint& z) {
  if (z.is_origin())
    fail(ErrorKind::ZeroPoint, "the gauge bracket needs z != 0");
  const SignEval at_one = safe_g(dom, z, 1.0);
  if (at_one.clean && at_one.value == 0.0) return {1.0, 1.0};
  if (at_one.value > 0.0) {
    double lo = 1.0;
    for (int k = 0; k < 60; ++k) {
      const double hi = lo * 2.0;
      if (safe_g(dom, z, hi).value <= 0.0) return {lo, hi};
      lo = hi;
    }
  } else {
    double hi = 1.0;
    for (int k = 0; k < 60; ++k) {
      const double lo = hi / 2.0;
      if (safe_g(dom, z, lo).value >= 0.0) return {lo, hi};
      hi = lo;
    }
  }
  fail(ErrorKind::BracketFailure,
       "no sign change of g(z, t) within t in [2^-60, 2^60]; the domain is "
       "unbounded along this ray or ψ is invalid");
}

GaugeResult gauge(const DomainDefinition& dom, const ComplexPoint& z) {
  return solve_radial(dom, z, dom.newton_enabled());
}

GaugeResult gauge_bisection(const DomainDefinition& dom,
                            const ComplexPoint& z) {
  return solve_radial(dom, z, false);
}

Eigen::VectorXd gauge_gradient(const DomainDefinition& dom,
                               const ComplexPoint& z) {
  if (z.is_origin())
    fail(ErrorKind::ZeroPoint, "the gauge is not differentiable at 0");
  const GaugeResult res = gauge(dom, z);
  const double t = res.h;
  const ComplexPoint xi = radial_point(dom, z, t);
  const Jet2 jet = dom.psi_jet(xi, 1);

  const int n = dom.dim();
  double pairing = 0.0;
  double orbit_sq = 0.0;
  for (int j = 0; j < n; ++j) {
    const double pj = dom.weights()[j];
    pairing += pj * (xi.x(j) * jet.grad[2 * j] + xi.y(j) * jet.grad[2 * j + 1]);
    orbit_sq += pj * pj * (xi.x(j) * xi.x(j) + xi.y(j) * xi.y(j));
  }
  const double dgdt = -pairing / t;
  const double scale = jet.grad.norm() * std::sqrt(orbit_sq) / t;
  if (!(std::abs(dgdt) >
        1e-12 * std::max(scale, std::numeric_limits<double>::min())))
    fail(ErrorKind::DegenerateRadialDerivative,
         "|dg/dt| = " + std::to_string(std::abs(dgdt)) +
             " degenerates against scale " + std::to_string(scale) +
             " at the root; the smoothness/pseudoconvexity hypotheses fail "
             "here");

  Eigen::VectorXd grad(2 * n);
  for (int j = 0; j < n; ++j) {
    const double f = pow_int(1.0 / t, dom.weights()[j]);
    grad[2 * j] = -(jet.grad[2 * j] * f) / dgdt;
    grad[2 * j + 1] = -(jet.grad[2 * j + 1] * f) / dgdt;
  }
  return grad;
}

ComplexPoint boundary_project(const DomainDefinition& dom,
                              const ComplexPoint& z) {
  if (z.is_origin())
    fail(ErrorKind::ZeroPoint, "cannot project the origin to the boundary");
  return radial_point(dom, z, gauge(dom, z).h);
}

double defining_r(const DomainDefinition& dom, const ComplexPoint& z) {
  if (z.is_origin())
    fail(ErrorKind::ZeroPoint, "defining function r is evaluated off 0");
  return gauge(dom, z).h - 1.0;
}

Eigen::MatrixXd gauge_real_hessian(const DomainDefinition& dom,
                                   const ComplexPoint& z) {
  const int m = z.real_dim();
  const double base = std::max(1e-4 * z.norm(), 1e-5);
  Eigen::MatrixXd hess(m, m);
  const auto column_diff = [&](int u, double step) {
    Eigen::VectorXd fwd = z.coords();
    Eigen::VectorXd bwd = z.coords();
    fwd[u] += step;
    bwd[u] -= step;
    return ((gauge_gradient(dom, ComplexPoint(fwd)) -
             gauge_gradient(dom, ComplexPoint(bwd))) /
            (2.0 * step))
        .eval();
  };
  for (int u = 0; u < m; ++u) {
    const Eigen::VectorXd full = column_diff(u, base);
    const Eigen::VectorXd half = column_diff(u, 0.5 * base);
    hess.col(u) = (4.0 * half - full) / 3.0;
  }
  return 0.5 * (hess + hess.transpose().eval());
}

LeviMatrix gauge_levi(const DomainDefinition& dom, const ComplexPoint& z) {
  return levi_from_real_hessian(gauge_real_hessian(dom, z));
}

}  // namespace qgauge
