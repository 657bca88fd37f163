#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

#include <qgauge/errors.hpp>

namespace qgauge {

using Complex = std::complex<double>;

/// Scalar of the circle/disc action. Plain complex number; each operation
/// states the modulus range it requires (|λ| ≤ 1, |λ| = 1, or arbitrary).
using UnitScalar = Complex;

/// Integer power by repeated squaring. Exact for small integer exponents and
/// free of branch-cut artifacts on the negative real axis.
Complex pow_int(Complex base, long long exponent);
double pow_int(double base, long long exponent);

/// Exponent tuple (p_1, ..., p_n) of the weighted circle action: positive,
/// relatively prime integers. Construct through validate_weights.
class Weights {
 public:
  int size() const { return static_cast<int>(p_.size()); }
  int operator[](int j) const { return p_[static_cast<std::size_t>(j)]; }
  const std::vector<int>& values() const { return p_; }
  int max_weight() const;
  bool all_ones() const;

  friend Weights validate_weights(const std::vector<int>& raw);

 private:
  explicit Weights(std::vector<int> p) : p_(std::move(p)) {}
  std::vector<int> p_;
};

/// Checks positivity and coprimality of the raw exponents.
Weights validate_weights(const std::vector<int>& raw);

/// Point of C^n stored as interleaved real coordinates (x1, y1, ..., xn, yn).
class ComplexPoint {
 public:
  explicit ComplexPoint(Eigen::VectorXd xy);
  static ComplexPoint zero(int n);
  static ComplexPoint from_complex(const Eigen::VectorXcd& z);
  /// Validating factory for external input: rejects non-finite entries.
  static ComplexPoint checked(Eigen::VectorXd xy);

  int dim() const { return static_cast<int>(xy_.size()) / 2; }
  int real_dim() const { return static_cast<int>(xy_.size()); }
  double x(int j) const { return xy_[2 * j]; }
  double y(int j) const { return xy_[2 * j + 1]; }
  Complex z(int j) const { return {xy_[2 * j], xy_[2 * j + 1]}; }
  const Eigen::VectorXd& coords() const { return xy_; }
  Eigen::VectorXcd to_complex() const;
  double norm() const { return xy_.norm(); }
  bool is_origin() const { return (xy_.array() == 0.0).all(); }

 private:
  Eigen::VectorXd xy_;
};

/// Weighted action λ • z = (λ^{p_1} z_1, ..., λ^{p_n} z_n).
ComplexPoint quasi_action(UnitScalar lambda, const ComplexPoint& z,
                          const Weights& p);

/// Action by a positive real scalar s: (s^{p_j} z_j). Same semantics as
/// quasi_action(s, z, p) but stays in real arithmetic.
ComplexPoint weighted_scale(double s, const ComplexPoint& z, const Weights& p);

/// Weighted degree Σ p_j α_j of the monomial z^α. Zero iff α = 0, so the
/// only S^1-invariant monomials are the constants.
long long weighted_degree(std::span<const int> alpha, const Weights& p);

}  // namespace qgauge
