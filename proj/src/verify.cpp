#include <qgauge/verify.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <qgauge/parallel.hpp>
#include <qgauge/rng.hpp>

namespace qgauge {

namespace {

constexpr std::uint64_t kTagQuasiBalanced = 0xA1;
constexpr std::uint64_t kTagPseudoconvex = 0xA2;
constexpr std::uint64_t kTagHomogeneity = 0xA3;
constexpr std::uint64_t kTagTransversality = 0xA4;
constexpr std::uint64_t kTagPsh = 0xA5;
constexpr std::uint64_t kTagDefining = 0xA6;
constexpr std::uint64_t kTagHopfMesh = 0xA7;
constexpr std::uint64_t kTagHopfInterior = 0xA8;

constexpr double kFailureSentinel = std::numeric_limits<double>::max();

struct SampleOutcome {
  double violation = 0.0;
  Witness witness;
};

bool is_per_sample_failure(ErrorKind kind) {
  return kind == ErrorKind::JetUndefined || kind == ErrorKind::ZeroGradient ||
         kind == ErrorKind::EvaluationError ||
         kind == ErrorKind::DegenerateRadialDerivative;
}

/// Runs sample_fn over all indices (in parallel), reduces to the worst
/// violation with smallest-index tie break, and recomputes that sample for
/// the witness. Jet failures carry the sentinel violation.
template <class Fn>
CheckReport run_check(const char* name, int n_samples, std::uint64_t seed,
                      double threshold, Fn&& sample_fn) {
  if (n_samples < 1)
    fail(ErrorKind::BadParameters, "checks need at least one sample");
  std::vector<double> violations(static_cast<std::size_t>(n_samples), 0.0);
  parallel_for(n_samples, [&](std::int64_t i) {
    double v = sample_fn(i).violation;
    if (std::isnan(v)) v = kFailureSentinel;
    violations[static_cast<std::size_t>(i)] = v;
  });

  int jet_failures = 0;
  std::int64_t worst = 0;
  for (std::int64_t i = 0; i < n_samples; ++i) {
    const double v = violations[static_cast<std::size_t>(i)];
    if (v >= kFailureSentinel) ++jet_failures;
    if (v > violations[static_cast<std::size_t>(worst)]) worst = i;
  }

  CheckReport report;
  report.check_name = name;
  report.samples = n_samples;
  report.seed = seed;
  report.threshold = threshold;
  report.worst_violation = violations[static_cast<std::size_t>(worst)];
  report.pass = report.worst_violation <= threshold;
  report.jet_failures = jet_failures;
  report.witness = sample_fn(worst).witness;
  return report;
}

Witness failure_witness(const ComplexPoint& z, const Error& e) {
  Witness w;
  w.point = z.coords();
  w.values.emplace_back("jet_failure", 1.0);
  w.values.emplace_back("error_kind", static_cast<double>(e.kind()));
  return w;
}

/// Direction i of a check: structured stress directions first, then the
/// seeded random stream.
Eigen::VectorXd direction_for(int n, std::uint64_t seed, std::uint64_t tag,
                              std::int64_t i) {
  const std::vector<Eigen::VectorXd> structured = structured_directions(n);
  if (i < static_cast<std::int64_t>(structured.size()))
    return structured[static_cast<std::size_t>(i)];
  Rng rng(mix_seed(seed, tag, static_cast<std::uint64_t>(i)));
  return rng.unit_vector(2 * n);
}

/// Uniform point of the bounding ball, rejected into the domain interior.
ComplexPoint sample_interior_rejection(const DomainDefinition& dom, Rng& rng) {
  const int m = 2 * dom.dim();
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const double radius =
        dom.bounding_radius() *
        std::pow(rng.uniform(), 1.0 / static_cast<double>(m));
    const ComplexPoint z(Eigen::VectorXd(radius * rng.unit_vector(m)));
    if (dom.psi_value(z) < 0.0) return z;
  }
  fail(ErrorKind::SamplingFailure,
       "no interior point found in 1000 rejection attempts; is the origin "
       "inside the domain?");
}

ComplexPoint sample_annulus(const DomainDefinition& dom, Rng& rng) {
  const double radius = rng.uniform(0.1, 2.0 * dom.bounding_radius());
  return ComplexPoint(Eigen::VectorXd(radius * rng.unit_vector(2 * dom.dim())));
}

Complex polar(double modulus, double angle) {
  return Complex(modulus * std::cos(angle), modulus * std::sin(angle));
}

}  // namespace

std::vector<Eigen::VectorXd> structured_directions(int n) {
  std::vector<Eigen::VectorXd> dirs;
  dirs.reserve(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(2 * n);
    e[2 * j] = 1.0;
    dirs.push_back(std::move(e));
  }
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(2 * n);
  for (int j = 0; j < n; ++j) diag[2 * j] = 1.0;
  dirs.push_back(diag / diag.norm());
  return dirs;
}

CheckReport check_quasi_balanced(const DomainDefinition& dom, int n_samples,
                                 std::uint64_t seed, const Thresholds& thr) {
  auto sample = [&](std::int64_t i) -> SampleOutcome {
    Rng rng(mix_seed(seed, kTagQuasiBalanced, static_cast<std::uint64_t>(i)));
    const ComplexPoint z = sample_interior_rejection(dom, rng);
    const double modulus = rng.uniform();
    const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const Complex lambda = polar(modulus, angle);
    const ComplexPoint moved = quasi_action(lambda, z, dom.weights());
    const double psi_moved = dom.psi_value(moved);

    SampleOutcome out;
    out.violation = std::max(0.0, psi_moved);
    out.witness.point = z.coords();
    out.witness.values = {{"lambda_re", lambda.real()},
                          {"lambda_im", lambda.imag()},
                          {"psi_at_action", psi_moved},
                          {"psi_at_z", dom.psi_value(z)}};
    return out;
  };
  return run_check("quasi_balanced", n_samples, seed, thr.quasi_balanced,
                   sample);
}

CheckReport check_pseudoconvex(const DomainDefinition& dom, int n_samples,
                               std::uint64_t seed, const Thresholds& thr) {
  auto sample = [&](std::int64_t i) -> SampleOutcome {
    const ComplexPoint dir(
        direction_for(dom.dim(), seed, kTagPseudoconvex, i));
    SampleOutcome out;
    try {
      const ComplexPoint xi = boundary_project(dom, dir);
      const Jet2 jet = dom.psi_jet(xi, 2);
      const WirtingerGradient dz = wirtinger_gradient(jet);
      const Eigen::MatrixXcd basis = complex_tangent_basis(dz);
      const LeviMatrix levi = levi_from_real_hessian(jet.hess);
      out.witness.point = xi.coords();
      if (basis.cols() == 0) {
        out.violation = 0.0;
        out.witness.values = {{"restricted_min_eig", 0.0}};
        return out;
      }
      const LeviMatrix restricted = basis.adjoint() * levi * basis;
      const double min_eig = min_eig_hermitian(restricted);
      const double scale = std::max(restricted.norm(), 1e-300);
      out.violation = std::max(0.0, -min_eig) / scale;
      out.witness.values = {{"restricted_min_eig", min_eig},
                            {"restricted_norm", restricted.norm()}};
    } catch (const Error& e) {
      if (!is_per_sample_failure(e.kind())) throw;
      out.violation = kFailureSentinel;
      out.witness = failure_witness(dir, e);
    }
    return out;
  };
  return run_check("pseudoconvex", n_samples, seed, thr.pseudoconvex, sample);
}

CheckReport check_homogeneity(const DomainDefinition& dom, int n_samples,
                              std::uint64_t seed, const Thresholds& thr) {
  auto sample = [&](std::int64_t i) -> SampleOutcome {
    Rng rng(mix_seed(seed, kTagHomogeneity, static_cast<std::uint64_t>(i)));
    const ComplexPoint z = sample_annulus(dom, rng);
    const Complex lambda = polar(rng.uniform(0.1, 10.0),
                                 rng.uniform(0.0, 2.0 * std::numbers::pi));
    const double h_z = gauge(dom, z).h;
    const double h_moved = gauge(dom, quasi_action(lambda, z, dom.weights())).h;
    const double expected = std::abs(lambda) * h_z;

    SampleOutcome out;
    out.violation = std::abs(h_moved - expected) / std::max(1.0, expected);
    out.witness.point = z.coords();
    out.witness.values = {{"lambda_re", lambda.real()},
                          {"lambda_im", lambda.imag()},
                          {"h_at_action", h_moved},
                          {"h_scaled", expected}};
    return out;
  };
  return run_check("homogeneity", n_samples, seed, thr.homogeneity, sample);
}

CheckReport check_transversality(const DomainDefinition& dom, int n_samples,
                                 std::uint64_t seed, const Thresholds& thr) {
  auto sample = [&](std::int64_t i) -> SampleOutcome {
    const ComplexPoint dir(
        direction_for(dom.dim(), seed, kTagTransversality, i));
    SampleOutcome out;
    try {
      const ComplexPoint xi = boundary_project(dom, dir);
      const Jet2 jet = dom.psi_jet(xi, 1);
      const WirtingerGradient dz = wirtinger_gradient(jet);
      if (dz.norm() < 1e-150)
        throw Error(ErrorKind::ZeroGradient,
                    "ψ gradient vanishes at a boundary sample");
      Complex pairing(0.0, 0.0);
      double orbit_sq = 0.0;
      for (int j = 0; j < dom.dim(); ++j) {
        const double pj = dom.weights()[j];
        pairing += dz[j] * (pj * xi.z(j));
        orbit_sq += pj * pj * std::norm(xi.z(j));
      }
      const double denom =
          std::max(dz.norm() * std::sqrt(orbit_sq), 1e-300);
      const double margin = std::abs(pairing) / denom;
      out.violation = -margin;  // pass while every margin >= floor
      out.witness.point = xi.coords();
      out.witness.values = {{"margin", margin},
                            {"pairing_re", pairing.real()},
                            {"pairing_im", pairing.imag()}};
    } catch (const Error& e) {
      if (!is_per_sample_failure(e.kind())) throw;
      out.violation = kFailureSentinel;
      out.witness = failure_witness(dir, e);
    }
    return out;
  };
  return run_check("transversality", n_samples, seed,
                   -thr.transversality_margin, sample);
}

CheckReport check_plurisubharmonic_gauge(const DomainDefinition& dom,
                                         int n_samples, std::uint64_t seed,
                                         const Thresholds& thr) {
  auto sample = [&](std::int64_t i) -> SampleOutcome {
    const std::vector<Eigen::VectorXd> structured =
        structured_directions(dom.dim());
    ComplexPoint z = ComplexPoint::zero(dom.dim());
    if (i < static_cast<std::int64_t>(structured.size())) {
      z = ComplexPoint(structured[static_cast<std::size_t>(i)]);
    } else {
      Rng rng(mix_seed(seed, kTagPsh, static_cast<std::uint64_t>(i)));
      z = sample_annulus(dom, rng);
    }
    SampleOutcome out;
    try {
      const LeviMatrix levi = gauge_levi(dom, z);
      const double min_eig = min_eig_hermitian(levi);
      const double scale = std::max(1.0, levi.norm());
      out.violation = std::max(0.0, -min_eig) / scale;
      out.witness.point = z.coords();
      out.witness.values = {{"levi_min_eig", min_eig},
                            {"levi_norm", levi.norm()}};
    } catch (const Error& e) {
      if (!is_per_sample_failure(e.kind())) throw;
      out.violation = kFailureSentinel;
      out.witness = failure_witness(z, e);
    }
    return out;
  };
  return run_check("psh", n_samples, seed, thr.psh, sample);
}

CheckReport check_defining_function(const DomainDefinition& dom, int n_samples,
                                    std::uint64_t seed, const Thresholds& thr) {
  const double residual_budget =
      thr.defining_residual_factor * dom.solver().tol;
  auto sample = [&](std::int64_t i) -> SampleOutcome {
    const ComplexPoint dir(direction_for(dom.dim(), seed, kTagDefining, i));
    SampleOutcome out;
    try {
      const ComplexPoint xi = boundary_project(dom, dir);
      const double r = defining_r(dom, xi);
      const double grad_norm = gauge_gradient(dom, xi).norm();
      out.violation = std::max(std::abs(r) - residual_budget,
                               thr.defining_grad_floor - grad_norm);
      out.witness.point = xi.coords();
      out.witness.values = {{"r", r}, {"grad_norm", grad_norm}};
    } catch (const Error& e) {
      if (!is_per_sample_failure(e.kind())) throw;
      out.violation = kFailureSentinel;
      out.witness = failure_witness(dir, e);
    }
    return out;
  };
  return run_check("defining", n_samples, seed, 0.0, sample);
}

HopfEstimate estimate_hopf_constant(const DomainDefinition& dom,
                                    int n_interior, int n_boundary_mesh,
                                    std::uint64_t seed, const Thresholds& thr) {
  if (n_interior < 1)
    fail(ErrorKind::BadParameters, "hopf estimate needs interior samples");
  if (n_boundary_mesh < 100)
    fail(ErrorKind::BadParameters, "hopf estimate needs a mesh of >= 100");

  const int m = 2 * dom.dim();
  Eigen::MatrixXd mesh(n_boundary_mesh, m);
  parallel_for(n_boundary_mesh, [&](std::int64_t i) {
    Rng rng(mix_seed(seed, kTagHopfMesh, static_cast<std::uint64_t>(i)));
    const ComplexPoint dir(rng.unit_vector(m));
    mesh.row(i) = boundary_project(dom, dir).coords();
  });

  std::vector<double> ratios(static_cast<std::size_t>(n_interior), 0.0);
  parallel_for(n_interior, [&](std::int64_t i) {
    Rng rng(mix_seed(seed, kTagHopfInterior, static_cast<std::uint64_t>(i)));
    // point at a prescribed gauge depth along a random ray
    const ComplexPoint dir(rng.unit_vector(m));
    const double h_dir = gauge(dom, dir).h;
    const double depth = rng.uniform(0.1, 0.9);
    const ComplexPoint z = weighted_scale(depth / h_dir, dir, dom.weights());

    const double r_abs = std::abs(gauge(dom, z).h - 1.0);
    const double mesh_dist =
        (mesh.rowwise() - z.coords().transpose()).rowwise().norm().minCoeff();
    const double radial_dist =
        (boundary_project(dom, z).coords() - z.coords()).norm();
    const double dist = std::min(mesh_dist, radial_dist);
    ratios[static_cast<std::size_t>(i)] =
        r_abs / std::max(dist, std::numeric_limits<double>::min());
  });

  HopfEstimate est;
  est.samples = n_interior;
  est.boundary_mesh_size = n_boundary_mesh;
  est.c_hat = *std::min_element(ratios.begin(), ratios.end());
  est.pass = est.c_hat > thr.hopf_min;
  return est;
}

}  // namespace qgauge
