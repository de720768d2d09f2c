#include <doctest.h>

#include "gauduchon/catalog.hpp"
#include "gauduchon/hermitian.hpp"

using namespace gauduchon;

namespace {

ManifoldSpec spec_of(int n, const StructureConstants& sc, const Eigen::MatrixXcd& g) {
  ManifoldSpec spec;
  spec.name = "test";
  spec.n = n;
  spec.sc = sc;
  spec.metric = g;
  return spec;
}

StructureConstants iwasawa_sc() {
  StructureConstants sc(3);
  sc.set_pp(2, 0, 1, -1.0);
  return sc;
}

// Structure equation, skew-Hermitian connection and (2,0) torsion, each checked directly.
void check_chern_properties(const ChernData& cd) {
  const int n = cd.n;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) CHECK(distance(cd.theta(i, k), -conjugate(cd.theta(k, i))) < 1e-13);
  for (int k = 0; k < n; ++k) {
    const Form& tau = cd.tau[static_cast<std::size_t>(k)];
    CHECK(distance(tau, tau.part(2, 0)) < 1e-13);
    Form rhs = tau;
    for (int i = 0; i < n; ++i) rhs -= wedge(cd.theta(i, k), Form::phi(i));
    CHECK(distance(cd.sc.d_phi(k), rhs) < 1e-13);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        CHECK(std::abs(cd.T(k, i, j) + cd.T(k, j, i)) == 0.0);
        if (i < j) CHECK(std::abs(tau.coefficient(holo_bit(i) | holo_bit(j)) - 2.0 * cd.T(k, i, j)) < 1e-14);
      }
  }
}

}  // namespace

TEST_CASE("unitarization of a diagonal metric") {
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(2, 2);
  g(0, 0) = 4.0;
  g(1, 1) = 1.0;
  const UnitaryStructure us = unitarize(spec_of(2, StructureConstants(2), g));
  CHECK(std::abs(us.frame_change(0, 0) - Complex{2.0}) < 1e-15);
  CHECK(std::abs(us.frame_change(1, 1) - Complex{1.0}) < 1e-15);
  CHECK(std::abs(us.frame_change(0, 1)) == 0.0);
  CHECK((us.frame_change.adjoint() * us.frame_change - g).norm() < 1e-14);
}

TEST_CASE("unitarization rescales Iwasawa structure constants") {
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(3, 3);
  g(2, 2) = 4.0;
  const UnitaryStructure us = unitarize(spec_of(3, iwasawa_sc(), g));
  // psi_3 = 2 phi_3 gives d psi_3 = -2 psi_1 ^ psi_2.
  CHECK(std::abs(us.sc_u.pp(2, 0, 1) - Complex{-2.0}) < 1e-14);
}

TEST_CASE("metric validation") {
  Eigen::MatrixXcd indefinite(2, 2);
  indefinite << 1.0, 2.0, 2.0, 1.0;
  CHECK_THROWS_AS(validate(spec_of(2, StructureConstants(2), indefinite)), SpecError);

  Eigen::MatrixXcd non_hermitian = Eigen::MatrixXcd::Identity(2, 2);
  non_hermitian(0, 1) = Complex{0.0, 0.5};
  CHECK_THROWS_AS(validate(spec_of(2, StructureConstants(2), non_hermitian)), SpecError);

  StructureConstants bad(2);  // d phi_1 = phi_2 ^ phibar_2, d phi_2 = phi_1 ^ phibar_1: d^2 phi_2 != 0
  bad.set_pq(0, 1, 1, 1.0);
  bad.set_pq(1, 0, 0, 1.0);
  CHECK_FALSE(check_integrability(bad).pass);
  CHECK_THROWS_AS(validate(spec_of(2, bad, Eigen::MatrixXcd::Identity(2, 2))), SpecError);
}

TEST_CASE("Chern connection of the Iwasawa manifold is flat with T^3_{12} = -1/2") {
  const ChernData cd = chern_data(builtin("iwasawa").spec);
  CHECK(cd.theta.max_norm() == 0.0);
  CHECK(std::abs(cd.T(2, 0, 1) - Complex{-0.5}) < 1e-15);
  const TorsionInvariants inv = torsion_invariants(cd);
  CHECK(inv.normT2 == doctest::Approx(0.5));
  CHECK(inv.normEta2 == 0.0);
  check_chern_properties(cd);
}

TEST_CASE("Kodaira surface torsion by hand") {
  // theta_{12} = phibar_1, theta_{21} = -phi_1, so tau_1 = -phi_1 ^ phi_2 and tau_2 = 0.
  const ChernData cd = chern_data(builtin("kodaira").spec);
  CHECK(std::abs(cd.T(0, 0, 1) - Complex{-0.5}) < 1e-15);
  CHECK(cd.tau[1].is_zero());
  const TorsionInvariants inv = torsion_invariants(cd);
  CHECK(std::abs(inv.eta[0]) < 1e-15);
  CHECK(std::abs(inv.eta[1] - Complex{-0.5}) < 1e-15);
  CHECK(inv.normT2 == doctest::Approx(0.5));
  CHECK(inv.normEta2 == doctest::Approx(0.25));
  check_chern_properties(cd);
}

TEST_CASE("Chern properties on random integrable specs with random metrics") {
  for (const ManifoldSpec& spec : random_family(3, "nilpotent3", 10)) check_chern_properties(chern_data(spec));
  for (const ManifoldSpec& spec : random_family(4, "metric_perturbed", 12)) check_chern_properties(chern_data(spec));
}

TEST_CASE("torsion scales like 1/sqrt(c) under g -> c g") {
  for (const ManifoldSpec& spec : random_family(8, "nilpotent3", 5)) {
    const double base = torsion_invariants(chern_data(spec)).normT2;
    for (double c : {0.25, 4.0}) CHECK(torsion_invariants(chern_data(rescaled(spec, c))).normT2 == doctest::Approx(base / c));
  }
}

TEST_CASE("spec JSON round trip") {
  for (const std::string& name : builtin_names()) {
    const ManifoldSpec spec = builtin(name).spec;
    const ManifoldSpec back = load_spec(dump_spec(spec));
    CHECK(back.name == spec.name);
    CHECK(back.n == spec.n);
    CHECK(back.sc == spec.sc);
    CHECK((back.metric - spec.metric).norm() == 0.0);
  }
}

TEST_CASE("spec loader rejects malformed documents") {
  CHECK_THROWS_AS(load_spec("not json"), SpecError);
  CHECK_THROWS_AS(load_spec(R"({"name":"x","n":2})"), SpecError);
  CHECK_THROWS_AS(load_spec(R"({"name":"x","n":9,"d_phi":[],"metric":[]})"), SpecError);
  CHECK_THROWS_AS(load_spec_file("/nonexistent/spec.json"), SpecError);
}

TEST_CASE("fundamental form data") {
  // Iwasawa is balanced: d omega^2 = 0, hence ddbar omega^2 = 0.
  const KahlerFormData kf = kahler_form_data(chern_data(builtin("iwasawa").spec));
  CHECK(kf.i_ddbar_omega.max_norm() < 1e-14);
  CHECK(kf.omega_top.size() == 1);
  // omega^3 = 3! i^3 (phi1 phibar1)(phi2 phibar2)(phi3 phibar3).
  CHECK(kf.omega_top.max_norm() == doctest::Approx(6.0));
}
