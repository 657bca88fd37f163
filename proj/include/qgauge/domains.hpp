#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <qgauge/gauge.hpp>

namespace qgauge {

/// Ground-truth properties of a catalog entry, used to validate the
/// verification suite against known domains.
struct ExpectedFlags {
  bool quasi_balanced = true;
  bool pseudoconvex = true;
  bool smooth_boundary = true;
};

/// One builtin test domain. `expression` is the defining function in the
/// expression language where the family is expressible (the polydisc is not).
struct CatalogEntry {
  std::string name;
  std::string family;
  std::map<std::string, std::string> parameters;
  ExpectedFlags expected;
  std::optional<std::string> expression;
  DomainDefinition domain;
};

/// Loosely typed family parameters, as they arrive from a config file.
struct BuiltinParams {
  std::optional<std::vector<int>> m;      // weighted_egg / product_egg
  std::optional<std::vector<double>> c;   // weighted_egg coefficients
  std::optional<double> eps;              // product_egg cross term
  std::optional<double> cross;            // indefinite_egg cross coefficient
};

// Typed factories. Each validates its parameters and attaches the analytic
// gauge oracle when one exists.

/// ψ = Σ abs2(z_j) − 1. Oracle h = |z| when all weights are 1.
DomainDefinition make_unit_ball(int n, const Weights& p,
                                SolverOptions solver = {});

/// ψ = Σ c_j abs2(z_j)^{m_j} − 1, c_j > 0, m_j >= 1. Closed-form oracle
/// h = (Σ c_j |z_j|^{2 m_j})^{1/(2k)} exactly when p_j m_j = k for all j.
DomainDefinition make_weighted_egg(const Weights& p, const std::vector<int>& m,
                                   const std::vector<double>& c,
                                   SolverOptions solver = {});

/// ψ = abs2(z1)^{m1} + abs2(z2)^{m2} + eps·abs2(z1)·abs2(z2) − 1, eps >= 0.
/// Pseudoconvex as a sum of plurisubharmonic terms.
DomainDefinition make_product_egg(const Weights& p, int m1, int m2, double eps,
                                  SolverOptions solver = {});

/// ψ = max_j abs2(z_j) − 1. Non-smooth along coordinate-modulus ties; jets
/// refuse there and Newton is disabled. Oracle h = max_j |z_j| for unit
/// weights.
DomainDefinition make_polydisc_max(int n, const Weights& p,
                                   SolverOptions solver = {});

/// ψ = |z1 − 1/2|² + Σ_{j>=2} abs2(z_j) − 1. Smooth and pseudoconvex but not
/// quasi-balanced: the deliberate quasi-balancedness failure case.
DomainDefinition make_offcenter_ball(int n, SolverOptions solver = {});

/// ψ = abs2(z1)² − cross·abs2(z1)·abs2(z2) + abs2(z2)² − 1 with
/// 0 < cross < 2 and weights (1,1). Smooth, quasi-balanced, and not
/// pseudoconvex: the restricted Levi form is negative near the axes.
DomainDefinition make_indefinite_egg(double cross, SolverOptions solver = {});

/// Family dispatcher used by config ingestion. Families: unit_ball,
/// weighted_egg, product_egg, polydisc_max, offcenter_ball, indefinite_egg.
DomainDefinition builtin(const std::string& family, int n, const Weights& p,
                         const BuiltinParams& params,
                         SolverOptions solver = {});

/// Closed-form gauge of an entry; NoOracle when the entry has none.
double oracle_gauge(const CatalogEntry& entry, const ComplexPoint& z);

/// The fixed builtin catalog, including the deliberately failing entries.
const std::vector<CatalogEntry>& catalog();

/// Catalog entry by name (UnknownFamily when absent).
const CatalogEntry& catalog_entry(const std::string& name);

}  // namespace qgauge
