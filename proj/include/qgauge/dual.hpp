#pragma once

#include <Eigen/Dense>
#include <cmath>

#include <qgauge/core.hpp>
#include <qgauge/errors.hpp>

namespace qgauge {

// Forward-mode scalars over m real variables. Dual1 carries value + gradient,
// Dual2 additionally the full (symmetric) Hessian. Evaluating a function once
// with every input seeded yields the exact-to-rounding jet; no differencing.
//
// All binary operations assume both operands were seeded for the same m.
// Hessian updates are written so symmetry holds bit-for-bit.

struct Dual1 {
  double v = 0.0;
  Eigen::VectorXd g;

  static Dual1 constant(double c, int m) {
    return {c, Eigen::VectorXd::Zero(m)};
  }
  static Dual1 variable(double x, int m, int i) {
    Dual1 d = constant(x, m);
    d.g[i] = 1.0;
    return d;
  }
};

struct Dual2 {
  double v = 0.0;
  Eigen::VectorXd g;
  Eigen::MatrixXd h;

  static Dual2 constant(double c, int m) {
    return {c, Eigen::VectorXd::Zero(m), Eigen::MatrixXd::Zero(m, m)};
  }
  static Dual2 variable(double x, int m, int i) {
    Dual2 d = constant(x, m);
    d.g[i] = 1.0;
    return d;
  }
};

// ---- scalar-kind helpers -------------------------------------------------

template <class S>
inline S constant_like(const S& proto, double c);

template <>
inline double constant_like<double>(const double&, double c) {
  return c;
}
template <>
inline Dual1 constant_like<Dual1>(const Dual1& proto, double c) {
  return Dual1::constant(c, static_cast<int>(proto.g.size()));
}
template <>
inline Dual2 constant_like<Dual2>(const Dual2& proto, double c) {
  return Dual2::constant(c, static_cast<int>(proto.g.size()));
}

inline double value_of(double s) { return s; }
inline double value_of(const Dual1& s) { return s.v; }
inline double value_of(const Dual2& s) { return s.v; }

// ---- Dual1 arithmetic ----------------------------------------------------

inline Dual1 operator+(const Dual1& a, const Dual1& b) {
  return {a.v + b.v, a.g + b.g};
}
inline Dual1 operator-(const Dual1& a, const Dual1& b) {
  return {a.v - b.v, a.g - b.g};
}
inline Dual1 operator-(const Dual1& a) { return {-a.v, -a.g}; }
inline Dual1 operator*(const Dual1& a, const Dual1& b) {
  return {a.v * b.v, a.v * b.g + b.v * a.g};
}
inline Dual1 operator/(const Dual1& a, const Dual1& b) {
  const double q = a.v / b.v;
  return {q, (a.g - q * b.g) / b.v};
}

inline Dual1 operator+(const Dual1& a, double c) { return {a.v + c, a.g}; }
inline Dual1 operator+(double c, const Dual1& a) { return {c + a.v, a.g}; }
inline Dual1 operator-(const Dual1& a, double c) { return {a.v - c, a.g}; }
inline Dual1 operator-(double c, const Dual1& a) { return {c - a.v, -a.g}; }
inline Dual1 operator*(const Dual1& a, double c) { return {a.v * c, c * a.g}; }
inline Dual1 operator*(double c, const Dual1& a) { return {c * a.v, c * a.g}; }
inline Dual1 operator/(const Dual1& a, double c) { return {a.v / c, a.g / c}; }
inline Dual1 operator/(double c, const Dual1& a) {
  const double q = c / a.v;
  return {q, (-q / a.v) * a.g};
}

// ---- Dual2 arithmetic ----------------------------------------------------

inline Dual2 operator+(const Dual2& a, const Dual2& b) {
  return {a.v + b.v, a.g + b.g, a.h + b.h};
}
inline Dual2 operator-(const Dual2& a, const Dual2& b) {
  return {a.v - b.v, a.g - b.g, a.h - b.h};
}
inline Dual2 operator-(const Dual2& a) { return {-a.v, -a.g, -a.h}; }
inline Dual2 operator*(const Dual2& a, const Dual2& b) {
  Dual2 r;
  r.v = a.v * b.v;
  r.g = a.v * b.g + b.v * a.g;
  // outer products grouped so the (i,j)/(j,i) rounding agrees bit-for-bit
  r.h = a.v * b.h + b.v * a.h +
        (a.g * b.g.transpose() + b.g * a.g.transpose());
  return r;
}
inline Dual2 operator/(const Dual2& a, const Dual2& b) {
  Dual2 r;
  r.v = a.v / b.v;
  r.g = (a.g - r.v * b.g) / b.v;
  r.h = (a.h - r.v * b.h -
         (r.g * b.g.transpose() + b.g * r.g.transpose())) /
        b.v;
  return r;
}

inline Dual2 operator+(const Dual2& a, double c) { return {a.v + c, a.g, a.h}; }
inline Dual2 operator+(double c, const Dual2& a) { return {c + a.v, a.g, a.h}; }
inline Dual2 operator-(const Dual2& a, double c) { return {a.v - c, a.g, a.h}; }
inline Dual2 operator-(double c, const Dual2& a) {
  return {c - a.v, -a.g, -a.h};
}
inline Dual2 operator*(const Dual2& a, double c) {
  return {a.v * c, c * a.g, c * a.h};
}
inline Dual2 operator*(double c, const Dual2& a) {
  return {c * a.v, c * a.g, c * a.h};
}
inline Dual2 operator/(const Dual2& a, double c) {
  return {a.v / c, a.g / c, a.h / c};
}
inline Dual2 operator/(double c, const Dual2& a) {
  const double q = c / a.v;
  const double d1 = -q / a.v;
  const double d2 = 2.0 * q / (a.v * a.v);
  Dual2 r;
  r.v = q;
  r.g = d1 * a.g;
  // materialize the outer product before scaling; folding the scalar into
  // the product kernel rounds (i,j) and (j,i) differently
  const Eigen::MatrixXd outer = a.g * a.g.transpose();
  r.h = d1 * a.h + d2 * outer;
  return r;
}

// ---- unary chain rule ----------------------------------------------------

inline Dual1 chain(const Dual1& a, double f, double d1) {
  return {f, d1 * a.g};
}
inline Dual2 chain(const Dual2& a, double f, double d1, double d2) {
  Dual2 r;
  r.v = f;
  r.g = d1 * a.g;
  const Eigen::MatrixXd outer = a.g * a.g.transpose();
  r.h = d1 * a.h + d2 * outer;
  return r;
}

// ---- elementary functions (domain-checked) -------------------------------

inline double s_exp(double a) { return std::exp(a); }
inline Dual1 s_exp(const Dual1& a) {
  const double e = std::exp(a.v);
  return chain(a, e, e);
}
inline Dual2 s_exp(const Dual2& a) {
  const double e = std::exp(a.v);
  return chain(a, e, e, e);
}

inline void require_positive(double v, const char* what) {
  if (!(v > 0.0))
    fail(ErrorKind::EvaluationError,
         std::string(what) + " of non-positive argument");
}

inline double s_log(double a) {
  require_positive(a, "log");
  return std::log(a);
}
inline Dual1 s_log(const Dual1& a) {
  require_positive(a.v, "log");
  return chain(a, std::log(a.v), 1.0 / a.v);
}
inline Dual2 s_log(const Dual2& a) {
  require_positive(a.v, "log");
  return chain(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v));
}

inline double s_sqrt(double a) {
  if (a < 0.0) fail(ErrorKind::EvaluationError, "sqrt of negative argument");
  return std::sqrt(a);
}
inline Dual1 s_sqrt(const Dual1& a) {
  require_positive(a.v, "sqrt derivative");
  const double r = std::sqrt(a.v);
  return chain(a, r, 0.5 / r);
}
inline Dual2 s_sqrt(const Dual2& a) {
  require_positive(a.v, "sqrt derivative");
  const double r = std::sqrt(a.v);
  return chain(a, r, 0.5 / r, -0.25 / (r * a.v));
}

inline double s_pow_int(double a, long long k) {
  if (k < 0 && a == 0.0)
    fail(ErrorKind::EvaluationError, "negative power of zero");
  return pow_int(a, k);
}
inline Dual1 s_pow_int(const Dual1& a, long long k) {
  if (k < 0 && a.v == 0.0)
    fail(ErrorKind::EvaluationError, "negative power of zero");
  if (k == 0) return constant_like(a, 1.0);
  const double f = pow_int(a.v, k);
  const double d1 = static_cast<double>(k) * pow_int(a.v, k - 1);
  return chain(a, f, d1);
}
inline Dual2 s_pow_int(const Dual2& a, long long k) {
  if (k < 0 && a.v == 0.0)
    fail(ErrorKind::EvaluationError, "negative power of zero");
  if (k == 0) return constant_like(a, 1.0);
  const double f = pow_int(a.v, k);
  const double d1 = static_cast<double>(k) * pow_int(a.v, k - 1);
  const double d2 = (k == 1) ? 0.0
                             : static_cast<double>(k) *
                                   static_cast<double>(k - 1) *
                                   pow_int(a.v, k - 2);
  return chain(a, f, d1, d2);
}

// Pointwise maximum. Smooth wherever the branches separate; near a tie the
// jet does not exist and order >= 1 evaluation refuses.
inline void require_untied(double a, double b) {
  const double gap = std::abs(a - b);
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  if (gap <= 1e-12 * scale)
    throw Error(ErrorKind::JetUndefined,
                "max branches tie; derivative undefined at this point");
}

inline double s_max(double a, double b) { return a > b ? a : b; }
inline Dual1 s_max(const Dual1& a, const Dual1& b) {
  require_untied(a.v, b.v);
  return a.v > b.v ? a : b;
}
inline Dual2 s_max(const Dual2& a, const Dual2& b) {
  require_untied(a.v, b.v);
  return a.v > b.v ? a : b;
}

}  // namespace qgauge
