#pragma once

// Shared helpers for the test suites: finite-difference oracles kept
// independent of the dual-number implementation they check, and a random
// expression generator for the parser round-trip law.

#include <cmath>
#include <string>
#include <vector>

#include <qgauge/calculus.hpp>
#include <qgauge/expr.hpp>
#include <qgauge/rng.hpp>

namespace qgauge::testing {

inline Eigen::VectorXd fd_gradient(const ScalarField& f, const ComplexPoint& z,
                                   double step) {
  const int m = z.real_dim();
  Eigen::VectorXd g(m);
  for (int u = 0; u < m; ++u) {
    Eigen::VectorXd fwd = z.coords();
    Eigen::VectorXd bwd = z.coords();
    fwd[u] += step;
    bwd[u] -= step;
    g[u] = (f.value(ComplexPoint(fwd)) - f.value(ComplexPoint(bwd))) /
           (2.0 * step);
  }
  return g;
}

inline Eigen::MatrixXd fd_hessian(const ScalarField& f, const ComplexPoint& z,
                                  double step) {
  const int m = z.real_dim();
  Eigen::MatrixXd h(m, m);
  const double f0 = f.value(z);
  for (int u = 0; u < m; ++u) {
    for (int v = u; v < m; ++v) {
      Eigen::VectorXd a = z.coords();
      if (u == v) {
        Eigen::VectorXd fwd = a, bwd = a;
        fwd[u] += step;
        bwd[u] -= step;
        h(u, u) = (f.value(ComplexPoint(fwd)) - 2.0 * f0 +
                   f.value(ComplexPoint(bwd))) /
                  (step * step);
      } else {
        Eigen::VectorXd pp = a, pm = a, mp = a, mm = a;
        pp[u] += step; pp[v] += step;
        pm[u] += step; pm[v] -= step;
        mp[u] -= step; mp[v] += step;
        mm[u] -= step; mm[v] -= step;
        const double mixed =
            (f.value(ComplexPoint(pp)) - f.value(ComplexPoint(pm)) -
             f.value(ComplexPoint(mp)) + f.value(ComplexPoint(mm))) /
            (4.0 * step * step);
        h(u, v) = mixed;
        h(v, u) = mixed;
      }
    }
  }
  return h;
}

/// Random expression tree over n variables, depth-bounded, avoiding division
/// and transcendentals of arbitrary subtrees so evaluation stays finite.
inline ExprPtr random_ast(Rng& rng, int n, int depth) {
  const double pick = rng.uniform();
  if (depth <= 0 || pick < 0.25) {
    if (rng.uniform() < 0.5) {
      static const double constants[] = {-2.5, -1.0, -0.5, 0.0,
                                         0.25, 1.0,  2.0,  3.5};
      return ExprNode::constant(
          constants[rng.next_u64() % (sizeof(constants) / sizeof(double))]);
    }
    const VarKind kind = static_cast<VarKind>(rng.next_u64() % 3);
    const int j = 1 + static_cast<int>(rng.next_u64() % n);
    return ExprNode::var(kind, j);
  }
  if (pick < 0.45)
    return ExprNode::binary(ExprNode::Tag::Add, random_ast(rng, n, depth - 1),
                            random_ast(rng, n, depth - 1));
  if (pick < 0.6)
    return ExprNode::binary(ExprNode::Tag::Sub, random_ast(rng, n, depth - 1),
                            random_ast(rng, n, depth - 1));
  if (pick < 0.75)
    return ExprNode::binary(ExprNode::Tag::Mul, random_ast(rng, n, depth - 1),
                            random_ast(rng, n, depth - 1));
  if (pick < 0.85)
    return ExprNode::binary(ExprNode::Tag::Div, random_ast(rng, n, depth - 1),
                            random_ast(rng, n, depth - 1));
  if (pick < 0.95) {
    const long long k =
        static_cast<long long>(rng.next_u64() % 7) - 2;  // -2 .. 4
    return ExprNode::pow(random_ast(rng, n, depth - 1), k);
  }
  return ExprNode::call(CallFn::Exp, random_ast(rng, n, depth - 1));
}

inline ComplexPoint random_point(Rng& rng, int n, double rmin, double rmax) {
  const double radius = rng.uniform(rmin, rmax);
  return ComplexPoint(Eigen::VectorXd(radius * rng.unit_vector(2 * n)));
}

inline std::string source_dir() { return QGAUGE_SOURCE_DIR; }

}  // namespace qgauge::testing
