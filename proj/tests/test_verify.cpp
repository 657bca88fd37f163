#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include <qgauge/domains.hpp>
#include <qgauge/report.hpp>
#include <qgauge/rng.hpp>
#include <qgauge/verify.hpp>

#include "support.hpp"

using namespace qgauge;

namespace {

const DomainDefinition& entry(const char* name) {
  return catalog_entry(name).domain;
}

nlohmann::json check_json(const CheckReport& r) { return check_to_json(r); }

}  // namespace

TEST_CASE("structured directions cover axes plus the diagonal") {
  const auto dirs = structured_directions(3);
  REQUIRE(dirs.size() == 4);
  for (const auto& d : dirs) {
    CHECK(d.size() == 6);
    CHECK(d.norm() == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(dirs[0][0] == 1.0);
  CHECK(dirs[3][0] == doctest::Approx(1.0 / std::sqrt(3.0)));
}

TEST_CASE("all checks pass on the unit ball") {
  const DomainDefinition& dom = entry("ball2");
  const std::uint64_t seed = 42;
  const CheckReport qb = check_quasi_balanced(dom, 300, seed);
  const CheckReport psc = check_pseudoconvex(dom, 300, seed);
  const CheckReport hom = check_homogeneity(dom, 300, seed);
  const CheckReport tv = check_transversality(dom, 300, seed);
  const CheckReport psh = check_plurisubharmonic_gauge(dom, 100, seed);
  const CheckReport def = check_defining_function(dom, 300, seed);
  for (const CheckReport* r : {&qb, &psc, &hom, &tv, &psh, &def}) {
    CAPTURE(r->check_name);
    CHECK(r->pass);
    CHECK(r->jet_failures == 0);
    CHECK(r->samples > 0);
    CHECK((r->worst_violation <= r->threshold) == r->pass);
    CHECK(r->witness.has_value());
  }
  // the ball margin is identically 1
  CHECK(tv.worst_violation == doctest::Approx(-1.0).epsilon(1e-10));

  const HopfEstimate hopf = estimate_hopf_constant(dom, 200, 1000, seed);
  CHECK(hopf.pass);
  CHECK(hopf.c_hat == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("off-center ball fails exactly the quasi-balanced side") {
  const DomainDefinition& dom = entry("offcenter2");
  const std::uint64_t seed = 42;

  const CheckReport qb = check_quasi_balanced(dom, 400, seed);
  CHECK(!qb.pass);
  REQUIRE(qb.witness.has_value());
  // the witness reproduces: ψ(λ • z) really is positive
  const Witness& w = *qb.witness;
  double lam_re = 0, lam_im = 0, psi_claimed = 0;
  for (const auto& [key, value] : w.values) {
    if (key == "lambda_re") lam_re = value;
    if (key == "lambda_im") lam_im = value;
    if (key == "psi_at_action") psi_claimed = value;
  }
  const ComplexPoint z(w.point);
  const double psi_recomputed =
      dom.psi_value(quasi_action(Complex(lam_re, lam_im), z, dom.weights()));
  CHECK(psi_recomputed == doctest::Approx(psi_claimed).epsilon(1e-14));
  CHECK(psi_recomputed > 0.0);

  CHECK(!check_homogeneity(dom, 300, seed).pass);
  // smooth pseudoconvex geometry is intact
  CHECK(check_pseudoconvex(dom, 200, seed).pass);
  CHECK(check_transversality(dom, 200, seed).pass);
  CHECK(check_plurisubharmonic_gauge(dom, 60, seed).pass);
  CHECK(check_defining_function(dom, 200, seed).pass);
}

TEST_CASE("indefinite egg fails pseudoconvexity and gauge psh") {
  const DomainDefinition& dom = entry("indefinite_egg");
  const std::uint64_t seed = 42;

  const CheckReport psc = check_pseudoconvex(dom, 200, seed);
  CHECK(!psc.pass);
  CHECK(psc.jet_failures == 0);
  REQUIRE(psc.witness.has_value());
  // the axis stress direction pins the worst violation at 1 (= c / c)
  CHECK(psc.worst_violation == doctest::Approx(1.0).epsilon(1e-9));

  const CheckReport psh = check_plurisubharmonic_gauge(dom, 80, seed);
  CHECK(!psh.pass);

  CHECK(check_quasi_balanced(dom, 300, seed).pass);
  CHECK(check_homogeneity(dom, 200, seed).pass);
}

TEST_CASE("polydisc reports jet failures at its edges") {
  const DomainDefinition& dom = entry("polydisc2");
  const std::uint64_t seed = 42;

  const CheckReport tv = check_transversality(dom, 150, seed);
  CHECK(!tv.pass);
  CHECK(tv.jet_failures >= 1);
  REQUIRE(tv.witness.has_value());
  bool flagged = false;
  for (const auto& [key, value] : tv.witness->values)
    if (key == "jet_failure" && value == 1.0) flagged = true;
  CHECK(flagged);

  CHECK(check_quasi_balanced(dom, 300, seed).pass);
  CHECK(check_homogeneity(dom, 200, seed).pass);
}

TEST_CASE("margin above the floor implies a usable implicit derivative") {
  const DomainDefinition& dom = entry("egg12");
  const Thresholds thr;
  Rng rng(90210);
  for (int it = 0; it < 100; ++it) {
    const ComplexPoint dir(rng.unit_vector(4));
    const ComplexPoint xi = boundary_project(dom, dir);
    const Jet2 jet = dom.psi_jet(xi, 1);
    const WirtingerGradient dz = wirtinger_gradient(jet);
    Complex pairing(0, 0);
    double orbit_sq = 0;
    for (int j = 0; j < 2; ++j) {
      pairing += dz[j] * (static_cast<double>(dom.weights()[j]) * xi.z(j));
      orbit_sq += dom.weights()[j] * dom.weights()[j] * std::norm(xi.z(j));
    }
    const double margin =
        std::abs(pairing) / (dz.norm() * std::sqrt(orbit_sq));
    if (margin >= thr.transversality_margin)
      CHECK_NOTHROW(gauge_gradient(dom, xi));
  }
}

TEST_CASE("hopf estimate stays positive on smooth pseudoconvex entries") {
  for (const char* name : {"egg12", "product_egg23"}) {
    const HopfEstimate est = estimate_hopf_constant(entry(name), 100, 400, 7);
    CAPTURE(name);
    CHECK(est.pass);
    CHECK(est.c_hat > 0.0);
    CHECK(est.samples == 100);
    CHECK(est.boundary_mesh_size == 400);
  }
}

TEST_CASE("interior sampling failure is reported") {
  const auto psi = make_field(1, [](const auto& xy) {
    return xy[0] * xy[0] + xy[1] * xy[1] + 1.0;  // never negative
  });
  const DomainDefinition empty = DomainDefinition::create_unchecked(
      "empty", validate_weights({1}), psi, 1.0);
  try {
    check_quasi_balanced(empty, 10, 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SamplingFailure);
  }
}

TEST_CASE("reports are bit-identical across reruns and thread counts") {
  const DomainDefinition& dom = entry("egg12");
  const auto snapshot = [&] {
    nlohmann::json all = nlohmann::json::array();
    all.push_back(check_json(check_quasi_balanced(dom, 120, 42)));
    all.push_back(check_json(check_pseudoconvex(dom, 120, 42)));
    all.push_back(check_json(check_homogeneity(dom, 120, 42)));
    all.push_back(check_json(check_transversality(dom, 120, 42)));
    all.push_back(check_json(check_plurisubharmonic_gauge(dom, 40, 42)));
    all.push_back(check_json(check_defining_function(dom, 120, 42)));
    return all.dump();
  };

  ::setenv("QGAUGE_THREADS", "1", 1);
  const std::string serial = snapshot();
  ::setenv("QGAUGE_THREADS", "4", 1);
  const std::string threaded = snapshot();
  const std::string threaded_again = snapshot();
  ::unsetenv("QGAUGE_THREADS");

  CHECK(serial == threaded);
  CHECK(threaded == threaded_again);
}

TEST_CASE("different seeds explore different samples") {
  const DomainDefinition& dom = entry("offcenter2");
  const CheckReport a = check_quasi_balanced(dom, 200, 42);
  const CheckReport b = check_quasi_balanced(dom, 200, 43);
  REQUIRE(a.witness.has_value());
  REQUIRE(b.witness.has_value());
  CHECK(a.witness->point != b.witness->point);
}

TEST_CASE("ball pseudoconvexity witnesses carry the restricted eigenvalue") {
  const CheckReport psc = check_pseudoconvex(entry("ball3"), 64, 11);
  CHECK(psc.pass);
  REQUIRE(psc.witness.has_value());
  bool has_eig = false;
  for (const auto& [key, value] : psc.witness->values)
    if (key == "restricted_min_eig") {
      has_eig = true;
      // restricted Levi of the ball is the identity
      CHECK(value == doctest::Approx(1.0).epsilon(1e-9));
    }
  CHECK(has_eig);
}
