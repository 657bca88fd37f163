#include <qgauge/domains.hpp>

#include <cmath>

#include <qgauge/expr.hpp>

namespace qgauge {

namespace {

struct BallPsi {
  int n;
  template <class S>
  S operator()(const std::vector<S>& xy) const {
    S acc = xy[0] * xy[0] + xy[1] * xy[1];
    for (int j = 1; j < n; ++j)
      acc = acc + (xy[2 * j] * xy[2 * j] + xy[2 * j + 1] * xy[2 * j + 1]);
    return acc - 1.0;
  }
};

struct EggPsi {
  std::vector<int> m;
  std::vector<double> c;
  template <class S>
  S operator()(const std::vector<S>& xy) const {
    const int n = static_cast<int>(m.size());
    S acc = c[0] * s_pow_int(xy[0] * xy[0] + xy[1] * xy[1], m[0]);
    for (int j = 1; j < n; ++j) {
      const S a2 = xy[2 * j] * xy[2 * j] + xy[2 * j + 1] * xy[2 * j + 1];
      acc = acc + c[static_cast<std::size_t>(j)] *
                      s_pow_int(a2, m[static_cast<std::size_t>(j)]);
    }
    return acc - 1.0;
  }
};

struct ProductEggPsi {
  int m1, m2;
  double eps;
  template <class S>
  S operator()(const std::vector<S>& xy) const {
    const S a = xy[0] * xy[0] + xy[1] * xy[1];
    const S b = xy[2] * xy[2] + xy[3] * xy[3];
    return s_pow_int(a, m1) + s_pow_int(b, m2) + (eps * a) * b - 1.0;
  }
};

struct PolydiscPsi {
  int n;
  template <class S>
  S operator()(const std::vector<S>& xy) const {
    S best = xy[0] * xy[0] + xy[1] * xy[1];
    for (int j = 1; j < n; ++j)
      best = s_max(best,
                   xy[2 * j] * xy[2 * j] + xy[2 * j + 1] * xy[2 * j + 1]);
    return best - 1.0;
  }
};

struct OffcenterBallPsi {
  int n;
  template <class S>
  S operator()(const std::vector<S>& xy) const {
    const S dx = xy[0] - 0.5;
    S acc = dx * dx + xy[1] * xy[1];
    for (int j = 1; j < n; ++j)
      acc = acc + (xy[2 * j] * xy[2 * j] + xy[2 * j + 1] * xy[2 * j + 1]);
    return acc - 1.0;
  }
};

struct IndefiniteEggPsi {
  double cross;
  template <class S>
  S operator()(const std::vector<S>& xy) const {
    const S a = xy[0] * xy[0] + xy[1] * xy[1];
    const S b = xy[2] * xy[2] + xy[3] * xy[3];
    return s_pow_int(a, 2) - (cross * a) * b + s_pow_int(b, 2) - 1.0;
  }
};

Weights ones_weights(int n) { return validate_weights(std::vector<int>(n, 1)); }

std::string abs2_term(int j, int m, double c) {
  std::string term;
  if (c != 1.0) term += format_double(c) + "*";
  term += "abs2(z" + std::to_string(j) + ")";
  if (m != 1) term += "^" + std::to_string(m);
  return term;
}

}  // namespace

DomainDefinition make_unit_ball(int n, const Weights& p,
                                SolverOptions solver) {
  if (n < 1) fail(ErrorKind::BadParameters, "unit_ball needs n >= 1");
  if (p.size() != n)
    fail(ErrorKind::BadParameters, "unit_ball weights must have length n");
  DomainDefinition dom = DomainDefinition::create(
      "unit_ball", p, make_field(n, BallPsi{n}), 1.5, solver, true);
  if (p.all_ones())
    dom.set_oracle([](const ComplexPoint& z) { return z.norm(); });
  return dom;
}

DomainDefinition make_weighted_egg(const Weights& p, const std::vector<int>& m,
                                   const std::vector<double>& c,
                                   SolverOptions solver) {
  const int n = p.size();
  if (static_cast<int>(m.size()) != n || static_cast<int>(c.size()) != n)
    fail(ErrorKind::BadParameters,
         "weighted_egg needs m and c of the same length as the weights");
  for (int mj : m)
    if (mj < 1)
      fail(ErrorKind::BadParameters, "weighted_egg exponents must be >= 1");
  for (double cj : c)
    if (!(cj > 0.0))
      fail(ErrorKind::BadParameters,
           "weighted_egg coefficients must be positive");
  DomainDefinition dom = DomainDefinition::create(
      "weighted_egg", p, make_field(n, EggPsi{m, c}), 1.5, solver, true);
  // closed form exists exactly when p_j m_j is constant
  bool constant_k = true;
  const long long k = static_cast<long long>(p[0]) * m[0];
  for (int j = 1; j < n; ++j)
    if (static_cast<long long>(p[j]) * m[static_cast<std::size_t>(j)] != k)
      constant_k = false;
  if (constant_k) {
    std::vector<int> mm = m;
    std::vector<double> cc = c;
    dom.set_oracle([mm, cc, k](const ComplexPoint& z) {
      double acc = 0.0;
      for (int j = 0; j < z.dim(); ++j) {
        const double a2 = z.x(j) * z.x(j) + z.y(j) * z.y(j);
        acc += cc[static_cast<std::size_t>(j)] *
               pow_int(a2, mm[static_cast<std::size_t>(j)]);
      }
      return std::pow(acc, 1.0 / static_cast<double>(2 * k));
    });
  }
  return dom;
}

DomainDefinition make_product_egg(const Weights& p, int m1, int m2, double eps,
                                  SolverOptions solver) {
  if (p.size() != 2)
    fail(ErrorKind::BadParameters, "product_egg is a two-variable family");
  if (m1 < 1 || m2 < 1)
    fail(ErrorKind::BadParameters, "product_egg exponents must be >= 1");
  if (eps < 0.0)
    fail(ErrorKind::BadParameters, "product_egg cross term must be >= 0");
  return DomainDefinition::create("product_egg", p,
                                  make_field(2, ProductEggPsi{m1, m2, eps}),
                                  1.5, solver, true);
}

DomainDefinition make_polydisc_max(int n, const Weights& p,
                                   SolverOptions solver) {
  if (n < 1) fail(ErrorKind::BadParameters, "polydisc_max needs n >= 1");
  if (p.size() != n)
    fail(ErrorKind::BadParameters, "polydisc_max weights must have length n");
  DomainDefinition dom =
      DomainDefinition::create("polydisc_max", p, make_field(n, PolydiscPsi{n}),
                               1.5, solver, /*newton_enabled=*/false);
  if (p.all_ones())
    dom.set_oracle([](const ComplexPoint& z) {
      double best = 0.0;
      for (int j = 0; j < z.dim(); ++j) best = std::max(best, std::abs(z.z(j)));
      return best;
    });
  return dom;
}

DomainDefinition make_offcenter_ball(int n, SolverOptions solver) {
  if (n < 1) fail(ErrorKind::BadParameters, "offcenter_ball needs n >= 1");
  return DomainDefinition::create("offcenter_ball", ones_weights(n),
                                  make_field(n, OffcenterBallPsi{n}), 1.6,
                                  solver, true);
}

DomainDefinition make_indefinite_egg(double cross, SolverOptions solver) {
  if (!(cross > 0.0 && cross < 2.0))
    fail(ErrorKind::BadParameters,
         "indefinite_egg cross coefficient must lie in (0, 2)");
  return DomainDefinition::create("indefinite_egg", ones_weights(2),
                                  make_field(2, IndefiniteEggPsi{cross}), 1.8,
                                  solver, true);
}

DomainDefinition builtin(const std::string& family, int n, const Weights& p,
                         const BuiltinParams& params, SolverOptions solver) {
  if (family == "unit_ball") return make_unit_ball(n, p, solver);
  if (family == "weighted_egg") {
    if (!params.m || !params.c)
      fail(ErrorKind::BadParameters, "weighted_egg needs params m and c");
    return make_weighted_egg(p, *params.m, *params.c, solver);
  }
  if (family == "product_egg") {
    const std::vector<int> m = params.m.value_or(std::vector<int>{2, 2});
    if (m.size() != 2)
      fail(ErrorKind::BadParameters, "product_egg needs m of length 2");
    return make_product_egg(p, m[0], m[1], params.eps.value_or(0.5), solver);
  }
  if (family == "polydisc_max") return make_polydisc_max(n, p, solver);
  if (family == "offcenter_ball") {
    if (!p.all_ones())
      fail(ErrorKind::BadParameters, "offcenter_ball uses weights (1,...,1)");
    return make_offcenter_ball(n, solver);
  }
  if (family == "indefinite_egg") {
    if (n != 2 || !p.all_ones())
      fail(ErrorKind::BadParameters,
           "indefinite_egg is two-variable with weights (1,1)");
    return make_indefinite_egg(params.cross.value_or(1.0), solver);
  }
  fail(ErrorKind::UnknownFamily, "no builtin family named '" + family + "'");
}

double oracle_gauge(const CatalogEntry& entry, const ComplexPoint& z) {
  return entry.domain.oracle(z);
}

namespace {

std::string ball_expression(int n) {
  std::string e;
  for (int j = 1; j <= n; ++j)
    e += (j > 1 ? " + " : "") + abs2_term(j, 1, 1.0);
  return e + " - 1";
}

std::string egg_expression(const std::vector<int>& m,
                           const std::vector<double>& c) {
  std::string e;
  for (std::size_t j = 0; j < m.size(); ++j)
    e += (j ? " + " : "") +
         abs2_term(static_cast<int>(j) + 1, m[j], c[j]);
  return e + " - 1";
}

std::string offcenter_expression(int n) {
  std::string e = "(re(z1) - 0.5)^2 + im(z1)^2";
  for (int j = 2; j <= n; ++j) e += " + " + abs2_term(j, 1, 1.0);
  return e + " - 1";
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> entries;

  const auto w = [](std::initializer_list<int> v) {
    return validate_weights(std::vector<int>(v));
  };

  entries.push_back({"ball2",
                     "unit_ball",
                     {{"n", "2"}, {"p", "1,1"}},
                     {true, true, true},
                     ball_expression(2),
                     make_unit_ball(2, w({1, 1}))});
  entries.push_back({"ball3",
                     "unit_ball",
                     {{"n", "3"}, {"p", "1,1,1"}},
                     {true, true, true},
                     ball_expression(3),
                     make_unit_ball(3, w({1, 1, 1}))});
  // quasi-balanced for any weights; no closed-form oracle when p != (1,1)
  entries.push_back({"ball2_w12",
                     "unit_ball",
                     {{"n", "2"}, {"p", "1,2"}},
                     {true, true, true},
                     ball_expression(2),
                     make_unit_ball(2, w({1, 2}))});
  entries.push_back({"egg12",
                     "weighted_egg",
                     {{"p", "1,2"}, {"m", "2,1"}, {"c", "1,1"}},
                     {true, true, true},
                     egg_expression({2, 1}, {1.0, 1.0}),
                     make_weighted_egg(w({1, 2}), {2, 1}, {1.0, 1.0})});
  entries.push_back({"egg21",
                     "weighted_egg",
                     {{"p", "2,1"}, {"m", "1,2"}, {"c", "1,1"}},
                     {true, true, true},
                     egg_expression({1, 2}, {1.0, 1.0}),
                     make_weighted_egg(w({2, 1}), {1, 2}, {1.0, 1.0})});
  entries.push_back({"product_egg23",
                     "product_egg",
                     {{"p", "2,3"}, {"m", "2,2"}, {"eps", "0.5"}},
                     {true, true, true},
                     "abs2(z1)^2 + abs2(z2)^2 + 0.5*abs2(z1)*abs2(z2) - 1",
                     make_product_egg(w({2, 3}), 2, 2, 0.5)});
  entries.push_back({"polydisc2",
                     "polydisc_max",
                     {{"n", "2"}, {"p", "1,1"}},
                     {true, true, false},
                     std::nullopt,
                     make_polydisc_max(2, w({1, 1}))});
  entries.push_back({"offcenter2",
                     "offcenter_ball",
                     {{"n", "2"}},
                     {false, true, true},
                     offcenter_expression(2),
                     make_offcenter_ball(2)});
  entries.push_back({"indefinite_egg",
                     "indefinite_egg",
                     {{"cross", "1"}},
                     {true, false, true},
                     "abs2(z1)^2 - 1*abs2(z1)*abs2(z2) + abs2(z2)^2 - 1",
                     make_indefinite_egg(1.0)});
  return entries;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const CatalogEntry& e : catalog())
    if (e.name == name) return e;
  fail(ErrorKind::UnknownFamily, "no catalog entry named '" + name + "'");
}

}  // namespace qgauge
