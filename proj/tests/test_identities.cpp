#include <doctest.h>

#include <random>

#include <json.hpp>

#include "gauduchon/catalog.hpp"
#include "gauduchon/identities.hpp"

using namespace gauduchon;

namespace {

bool all_pass(const std::vector<IdentityReport>& reps) {
  bool ok = true;
  for (const IdentityReport& rep : reps) {
    INFO(rep.id << " at " << rep.at << ": " << rep.residual << " " << rep.details);
    CHECK(rep.applicable);
    CHECK(rep.pass);
    ok = ok && rep.applicable && rep.pass;
  }
  return ok;
}

void check_not_applicable(const std::vector<IdentityReport>& reps) {
  for (const IdentityReport& rep : reps) {
    INFO(rep.id << " at " << rep.at);
    CHECK_FALSE(rep.applicable);
    CHECK(rep.details.find("hypothesis failed") != std::string::npos);
  }
}

// R(j,i,k,l) == -R(j,k,i,l) bit for bit.
bool exactly_skew(const Tensor4& t) {
  const int n = t.n();
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          if (t(j, i, k, l) != -t(j, k, i, l)) return false;
  return true;
}

}  // namespace

TEST_CASE("transfer identities on random specs") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<ManifoldSpec> specs = random_family(17, "nilpotent3", 8);
  for (const ManifoldSpec& spec : random_family(18, "metric_perturbed", 6)) specs.push_back(spec);
  for (const ManifoldSpec& spec : specs) {
    const ChernData cd = chern_data(spec);
    for (int k = 0; k < 3; ++k) all_pass(check_transfer(cd, u(rng), u(rng), 1e-10));
  }
}

TEST_CASE("residual tensors are exactly skew in (i, k)") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (const ManifoldSpec& spec : random_family(19, "nilpotent3", 4)) {
    const ChernData cd = chern_data(spec);
    const double r = u(rng), rp = u(rng), s = u(rng);
    CHECK(exactly_skew(residual::transfer_dbar(cd, r, rp)));
    CHECK(exactly_skew(residual::transfer_del(cd, r, rp)));
    CHECK(exactly_skew(residual::gauduchon_del(cd, r)));
    CHECK(exactly_skew(residual::gauduchon_cyclic(cd, r)));
    CHECK(exactly_skew(residual::gauduchon_dbar(cd, r)));
    CHECK(exactly_skew(residual::plane_cyclic_del(cd, r, s)));
    CHECK(exactly_skew(residual::plane_s_del(cd, r, s)));
    CHECK(exactly_skew(residual::plane_s_dbar_skew(cd, r, s)));
    CHECK(exactly_skew(residual::plane_dbar_mixed(cd, r, s)));
    CHECK(exactly_skew(residual::plane_dbar(cd, r, s)));
  }
}

TEST_CASE("torus: every conditional identity applies and holds") {
  const ChernData cd = chern_data(builtin("torus2").spec);
  all_pass(check_gauduchon_del(cd, -1.0));
  all_pass(check_gauduchon_dbar(cd, 0.3));
  CHECK(check_gauduchon_pair(cd, 0.2, 0.9).pass);
  CHECK(check_gauduchon_pair_del(cd, 0.2, 0.9).pass);
  all_pass(check_dual_pair(cd, 2.0));
  all_pass(check_plane(cd, 0.4, -1.5));
  all_pass(check_strominger_triple(cd));
  CHECK(check_balanced(cd).pass);
  CHECK(check_ddbar_omega(cd, 0.7).pass);
}

TEST_CASE("Iwasawa at the Chern connection") {
  const ChernData cd = chern_data(builtin("iwasawa").spec);
  all_pass(check_gauduchon_dbar(cd, 1.0));
  CHECK(check_ddbar_omega(cd, 1.0).pass);
  all_pass(check_plane(cd, 1.0, 0.0));
  check_not_applicable(check_gauduchon_del(cd, 1.0));  // excluded value r = 1
  check_not_applicable(check_gauduchon_dbar(cd, 0.0));
  check_not_applicable(check_strominger_triple(cd));
  check_not_applicable({check_balanced(cd)});
}

TEST_CASE("Hopf and Kodaira at the Strominger triple") {
  for (const char* name : {"hopf", "kodaira"}) {
    const ChernData cd = chern_data(builtin(name).spec);
    all_pass(check_gauduchon_del(cd, -1.0));
    all_pass(check_gauduchon_dbar(cd, -1.0));
    CHECK(check_ddbar_omega(cd, -1.0).pass);
    all_pass(check_plane(cd, -1.0, 0.0));
    all_pass(check_plane(cd, -1.0, 2.0));
    all_pass(check_plane(cd, 1.0 / 3.0, -2.0));
    all_pass(check_strominger_triple(cd));
    check_not_applicable(check_dual_pair(cd, -1.0));  // D^{1/3} is not Kähler-like
    check_not_applicable({check_gauduchon_pair_del(cd, -1.0, 2.0)});
  }
}

TEST_CASE("identities are not vacuous away from the locus") {
  // At a non Kähler-like point the same residuals are visibly nonzero.
  const ChernData hopf = chern_data(builtin("hopf").spec);
  CHECK(residual::gauduchon_dbar(hopf, 0.0).max_norm() > 1e-3);
  CHECK(residual::plane_dbar(hopf, 0.5, 0.5).max_norm() > 1e-3);
  const ChernData iwasawa = chern_data(builtin("iwasawa").spec);
  CHECK(residual::gauduchon_dbar(iwasawa, -1.0).max_norm() > 1e-3);
  CHECK(residual::gauduchon_del(chern_data(builtin("kodaira").spec), 0.0).max_norm() > 1e-3);
}

TEST_CASE("pair conditions never apply to two Gauduchon points on a non-Kähler metric") {
  for (const std::string& name : {"iwasawa", "kodaira", "hopf"}) {
    const ChernData cd = chern_data(builtin(name).spec);
    for (double r : {-1.0, 0.0, 1.0 / 3.0, 1.0})
      for (double rp : {-1.0, 0.0, 1.0 / 3.0, 1.0})
        if (r != rp) CHECK_FALSE(check_gauduchon_pair(cd, r, rp).applicable);
  }
}

TEST_CASE("verify suite on the corpus") {
  std::vector<ManifoldSpec> specs;
  for (const std::string& name : builtin_names()) specs.push_back(builtin(name).spec);
  for (const ManifoldSpec& spec : random_family(5, "nilpotent3", 5)) specs.push_back(spec);
  for (const ManifoldSpec& spec : specs) {
    const auto reps = verify_suite(chern_data(spec));
    CHECK(reps.size() > 50);
    for (const IdentityReport& rep : reps) {
      INFO(spec.name << " " << rep.id << " at " << rep.at << ": " << rep.details);
      if (rep.applicable) CHECK(rep.pass);
    }
  }
}

TEST_CASE("report serialization") {
  const ChernData cd = chern_data(builtin("iwasawa").spec);
  std::vector<IdentityReport> reps = check_gauduchon_dbar(cd, 1.0);
  reps.push_back(check_balanced(cd));
  const auto doc = nlohmann::json::parse(reports_to_json(reps));
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 4);
  CHECK(doc[0]["id"] == "gauduchon.dbar_torsion");
  CHECK(doc[0]["applicable"] == true);
  CHECK(doc[0]["pass"] == true);
  CHECK(doc[0]["residual"].is_number());
  CHECK(doc[3]["applicable"] == false);
  CHECK(doc[3]["residual"].is_null());
  CHECK(doc[3]["pass"].is_null());
}
