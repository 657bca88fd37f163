#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <qgauge/gauge.hpp>

namespace qgauge {

/// Pass thresholds for the verification checks. Serialized into every report
/// so results are self-describing; overridable from the CLI config.
struct Thresholds {
  double quasi_balanced = 1e-13;        // numerical floor on max ψ(λ•z)
  double pseudoconvex = 1e-8;           // -min eig relative to ‖restricted Levi‖
  double homogeneity = 1e-9;            // relative |h(λ•z) - |λ| h(z)|
  double transversality_margin = 1e-8;  // floor on the normalized margin τ
  double psh = 1e-6;                    // -min eig relative to max(1, ‖Levi(h)‖)
  double defining_residual_factor = 10.0;  // |r| <= factor · solver_tol
  double defining_grad_floor = 1e-8;       // ‖∇r‖ >= floor on the boundary
  double hopf_min = 0.0;                   // require c_hat > hopf_min
};

/// Worst-case sample exhibited by a check, with named scalars for context.
struct Witness {
  Eigen::VectorXd point;
  std::vector<std::pair<std::string, double>> values;
};

/// Outcome of one verification check. pass <=> worst_violation <= threshold;
/// a sample whose jet is undefined forces worst_violation to DBL_MAX and is
/// counted in jet_failures.
struct CheckReport {
  std::string check_name;
  int samples = 0;
  double worst_violation = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::optional<Witness> witness;
  std::uint64_t seed = 0;
  int jet_failures = 0;
};

/// Empirical Hopf ratio: c_hat = min |r(z)| / dist(z, ∂D) over interior
/// samples, distances measured against a boundary mesh (plus the radial
/// projection of each query, which keeps the estimate an over-estimate of
/// distance and hence c_hat conservative).
struct HopfEstimate {
  double c_hat = 0.0;
  int samples = 0;
  int boundary_mesh_size = 0;
  bool pass = false;
};

// Deterministic sampling: sample i of a check draws from a stream keyed by
// (seed, check tag, i). Boundary- and Levi-based checks prepend structured
// directions (coordinate axes, then the all-ones diagonal) ahead of the
// random stream so symmetric stress points — polydisc edges in particular —
// are always visited.

/// Directions probed before the random stream: n coordinate axes and the
/// normalized all-ones direction, as unit vectors of R^{2n}.
std::vector<Eigen::VectorXd> structured_directions(int n);

/// λ • z stays in D for |λ| <= 1: samples interior points and disc scalars,
/// violation = max ψ(λ•z).
CheckReport check_quasi_balanced(const DomainDefinition& dom, int n_samples,
                                 std::uint64_t seed,
                                 const Thresholds& thr = {});

/// Levi form of ψ restricted to the complex tangent space is positive
/// semidefinite at boundary samples.
CheckReport check_pseudoconvex(const DomainDefinition& dom, int n_samples,
                               std::uint64_t seed, const Thresholds& thr = {});

/// h(λ•z) = |λ| h(z) for 0.1 <= |λ| <= 10, relative violation.
CheckReport check_homogeneity(const DomainDefinition& dom, int n_samples,
                              std::uint64_t seed, const Thresholds& thr = {});

/// Normalized margin τ(ξ) = |Σ_j ∂ψ/∂z_j(ξ) p_j ξ_j| / (‖∂ψ/∂z‖ ‖p⊙ξ‖)
/// stays above the floor at boundary samples. Report convention:
/// worst_violation = -min τ against threshold = -floor.
CheckReport check_transversality(const DomainDefinition& dom, int n_samples,
                                 std::uint64_t seed,
                                 const Thresholds& thr = {});

/// Finite-difference Levi form of h_D is positive semidefinite (within
/// tolerance) at samples off the origin.
CheckReport check_plurisubharmonic_gauge(const DomainDefinition& dom,
                                         int n_samples, std::uint64_t seed,
                                         const Thresholds& thr = {});

/// r = h_D - 1 vanishes on boundary samples within the residual budget and
/// its gradient stays away from zero.
CheckReport check_defining_function(const DomainDefinition& dom, int n_samples,
                                    std::uint64_t seed,
                                    const Thresholds& thr = {});

HopfEstimate estimate_hopf_constant(const DomainDefinition& dom,
                                    int n_interior, int n_boundary_mesh,
                                    std::uint64_t seed,
                                    const Thresholds& thr = {});

}  // namespace qgauge
