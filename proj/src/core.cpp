#include <qgauge/core.hpp>

#include <cmath>
#include <numeric>

namespace qgauge {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyWeights: return "EmptyWeights";
    case ErrorKind::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::EvaluationError: return "EvaluationError";
    case ErrorKind::JetUndefined: return "JetUndefined";
    case ErrorKind::OrderTooLow: return "OrderTooLow";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::ZeroGradient: return "ZeroGradient";
    case ErrorKind::ZeroPoint: return "ZeroPoint";
    case ErrorKind::BracketFailure: return "BracketFailure";
    case ErrorKind::MaxIterations: return "MaxIterations";
    case ErrorKind::DegenerateRadialDerivative:
      return "DegenerateRadialDerivative";
    case ErrorKind::SamplingFailure: return "SamplingFailure";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::BareComplexVariable: return "BareComplexVariable";
    case ErrorKind::UnknownFamily: return "UnknownFamily";
    case ErrorKind::BadParameters: return "BadParameters";
    case ErrorKind::NoOracle: return "NoOracle";
    case ErrorKind::InvalidDomain: return "InvalidDomain";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::UsageError: return "UsageError";
  }
  return "UnknownError";
}

Complex pow_int(Complex base, long long exponent) {
  if (exponent < 0) return 1.0 / pow_int(base, -exponent);
  Complex result(1.0, 0.0);
  Complex square = base;
  long long e = exponent;
  while (e > 0) {
    if (e & 1) result *= square;
    square *= square;
    e >>= 1;
  }
  return result;
}

double pow_int(double base, long long exponent) {
  if (exponent < 0) return 1.0 / pow_int(base, -exponent);
  double result = 1.0;
  double square = base;
  long long e = exponent;
  while (e > 0) {
    if (e & 1) result *= square;
    square *= square;
    e >>= 1;
  }
  return result;
}

int Weights::max_weight() const {
  int m = 1;
  for (int v : p_) m = std::max(m, v);
  return m;
}

bool Weights::all_ones() const {
  for (int v : p_)
    if (v != 1) return false;
  return true;
}

Weights validate_weights(const std::vector<int>& raw) {
  if (raw.empty()) fail(ErrorKind::EmptyWeights, "weight list is empty");
  long long g = 0;
  for (int v : raw) {
    if (v < 1)
      fail(ErrorKind::NonPositiveWeight,
           "weight " + std::to_string(v) + " is not a positive integer");
    g = std::gcd(g, static_cast<long long>(v));
  }
  if (g != 1)
    fail(ErrorKind::NotCoprime,
         "weights have common divisor " + std::to_string(g));
  return Weights(raw);
}

ComplexPoint::ComplexPoint(Eigen::VectorXd xy) : xy_(std::move(xy)) {
  if (xy_.size() == 0 || xy_.size() % 2 != 0)
    fail(ErrorKind::DimensionMismatch,
         "point needs an even, positive number of real coordinates, got " +
             std::to_string(xy_.size()));
}

ComplexPoint ComplexPoint::zero(int n) {
  return ComplexPoint(Eigen::VectorXd::Zero(2 * n));
}

ComplexPoint ComplexPoint::from_complex(const Eigen::VectorXcd& z) {
  Eigen::VectorXd xy(2 * z.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    xy[2 * j] = z[j].real();
    xy[2 * j + 1] = z[j].imag();
  }
  return ComplexPoint(std::move(xy));
}

ComplexPoint ComplexPoint::checked(Eigen::VectorXd xy) {
  if (!xy.allFinite())
    fail(ErrorKind::EvaluationError, "point has non-finite coordinates");
  return ComplexPoint(std::move(xy));
}

Eigen::VectorXcd ComplexPoint::to_complex() const {
  Eigen::VectorXcd z(dim());
  for (int j = 0; j < dim(); ++j) z[j] = this->z(j);
  return z;
}

ComplexPoint quasi_action(UnitScalar lambda, const ComplexPoint& z,
                          const Weights& p) {
  if (z.dim() != p.size())
    fail(ErrorKind::DimensionMismatch,
         "point dimension " + std::to_string(z.dim()) +
             " does not match weight count " + std::to_string(p.size()));
  Eigen::VectorXd xy(z.real_dim());
  for (int j = 0; j < z.dim(); ++j) {
    const Complex w = pow_int(lambda, p[j]) * z.z(j);
    xy[2 * j] = w.real();
    xy[2 * j + 1] = w.imag();
  }
  return ComplexPoint(std::move(xy));
}

ComplexPoint weighted_scale(double s, const ComplexPoint& z,
                            const Weights& p) {
  if (z.dim() != p.size())
    fail(ErrorKind::DimensionMismatch,
         "point dimension does not match weight count");
  Eigen::VectorXd xy(z.real_dim());
  for (int j = 0; j < z.dim(); ++j) {
    const double f = pow_int(s, p[j]);
    xy[2 * j] = f * z.x(j);
    xy[2 * j + 1] = f * z.y(j);
  }
  return ComplexPoint(std::move(xy));
}

long long weighted_degree(std::span<const int> alpha, const Weights& p) {
  if (static_cast<int>(alpha.size()) != p.size())
    fail(ErrorKind::DimensionMismatch,
         "multi-index length " + std::to_string(alpha.size()) +
             " does not match weight count " + std::to_string(p.size()));
  long long acc = 0;
  for (int j = 0; j < p.size(); ++j)
    acc += static_cast<long long>(p[j]) * alpha[static_cast<std::size_t>(j)];
  return acc;
}

}  // namespace qgauge
