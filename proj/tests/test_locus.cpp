#include <doctest.h>

#include <cmath>
#include <random>

#include "gauduchon/catalog.hpp"
#include "gauduchon/locus.hpp"

using namespace gauduchon;

namespace {

double max_abs(const std::vector<Poly1>& ps, double r) {
  double m = 0.0;
  for (const Poly1& p : ps) m = std::max(m, std::abs(p(r)));
  return m;
}

double max_abs(const std::vector<Poly2>& ps, double t, double s) {
  double m = 0.0;
  for (const Poly2& p : ps) m = std::max(m, std::abs(p(t, s)));
  return m;
}

bool has_point(const LocusReport& rep, double r, double s) {
  for (const PlanePoint& p : rep.plane_points)
    if (std::abs(p.r - r) < 1e-8 && std::abs(p.s - s) < 1e-8) return true;
  return false;
}

}  // namespace

TEST_CASE("polynomial arithmetic and real roots") {
  const Poly1 a{{-1.0, 1.0}}, b{{2.0, 1.0}};
  const Poly1 ab = a * b;  // x^2 + x - 2
  CHECK(ab.degree() == 2);
  CHECK(ab(3.0) == 10.0);
  CHECK((a + b)(1.0) == 3.0);
  CHECK((a - b).degree() == 0);
  const auto roots = real_roots(ab);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == doctest::Approx(-2.0));
  CHECK(roots[1] == doctest::Approx(1.0));

  CHECK(real_roots(Poly1{{1.0, 0.0, 1.0}}).empty());  // x^2 + 1
  CHECK(real_roots(Poly1{{3.0}}).empty());
  const auto cubic = real_roots(ab * Poly1{{-0.5, 1.0}});
  REQUIRE(cubic.size() == 3);
  CHECK(cubic[1] == doctest::Approx(0.5));
  CHECK(Poly1{{0.0, 0.0}}.degree() == -1);
}

TEST_CASE("bivariate polynomial evaluation") {
  Poly2 p;
  p.c[1][0] = 2.0;  // 2t
  p.c[0][2] = -1.0; // -s^2
  p.c[2][1] = 0.5;  // t^2 s / 2
  CHECK(p(1.0, 2.0) == doctest::Approx(2.0 - 4.0 + 1.0));
  CHECK(p.t_coeff(0)(3.0) == -9.0);
  CHECK(p.t_coeff(2)(4.0) == 2.0);
  CHECK(p.max_coeff() == 2.0);
}

TEST_CASE("interpolated polynomials reproduce the obstructions") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<ChernData> corpus;
  for (const std::string& name : builtin_names()) corpus.push_back(chern_data(builtin(name).spec));
  for (const ManifoldSpec& spec : random_family(13, "nilpotent3", 5)) corpus.push_back(chern_data(spec));
  for (const ChernData& cd : corpus) {
    const auto line = gauduchon_polynomials(cd);
    const auto plane = plane_polynomials(cd);
    for (int k = 0; k < 5; ++k) {
      const double r = u(rng), s = u(rng);
      // Each polynomial is the real or imaginary part of one coefficient, so the
      // coefficient max sits between the polynomial max and sqrt(2) times it.
      const double obs_line = obstructions(cd, ConnectionParams::gauduchon(r)).max_norm();
      CHECK(max_abs(line, r) <= obs_line * (1 + 1e-9) + 1e-12);
      CHECK(obs_line <= std::sqrt(2.0) * max_abs(line, r) * (1 + 1e-9) + 1e-12);
      const ConnectionParams p(r, s);
      const double obs_plane = obstructions(cd, p).max_norm();
      CHECK(max_abs(plane, p.t(), s) <= obs_plane * (1 + 1e-9) + 1e-12);
      CHECK(obs_plane <= std::sqrt(2.0) * max_abs(plane, p.t(), s) * (1 + 1e-9) + 1e-12);
    }
  }
}

TEST_CASE("torus locus is everything") {
  const LocusReport rep = full_locus(chern_data(builtin("torus3").spec));
  CHECK(rep.entire_line);
  CHECK(rep.entire_plane);
}

TEST_CASE("Iwasawa locus is the Chern connection") {
  const LocusReport rep = full_locus(chern_data(builtin("iwasawa").spec));
  CHECK_FALSE(rep.entire_line);
  REQUIRE(rep.line_roots.size() == 1);
  CHECK(rep.line_roots[0].r == doctest::Approx(1.0));
  CHECK(rep.plane_solved);
  REQUIRE(rep.plane_points.size() == 1);
  CHECK(has_point(rep, 1.0, 0.0));
  CHECK(rep.branches.empty());
}

TEST_CASE("Kodaira and Hopf loci are the Strominger triple") {
  for (const char* name : {"kodaira", "hopf"}) {
    const LocusReport rep = full_locus(chern_data(builtin(name).spec));
    REQUIRE(rep.line_roots.size() == 1);
    CHECK(rep.line_roots[0].r == doctest::Approx(-1.0));
    CHECK(rep.plane_points.size() == 3);
    CHECK(has_point(rep, -1.0, 0.0));
    CHECK(has_point(rep, -1.0, 2.0));
    CHECK(has_point(rep, 1.0 / 3.0, -2.0));
  }
}

TEST_CASE("generic nilpotent spec has an empty locus") {
  const LocusReport rep = full_locus(chern_data(builtin("nilpotent3_generic").spec));
  CHECK(rep.line_roots.empty());
  CHECK(rep.plane_points.empty());
  CHECK(rep.branches.empty());
}

TEST_CASE("reported points are Kähler-like and random specs have at most one line root") {
  for (std::uint64_t seed : {7u, 8u}) {
    for (const ManifoldSpec& spec : random_family(seed, "nilpotent3", 15)) {
      const ChernData cd = chern_data(spec);
      const LocusReport rep = full_locus(cd);
      CHECK(rep.line_roots.size() <= 1);
      for (const LineRoot& root : rep.line_roots) CHECK(is_kahler_like(cd, ConnectionParams::gauduchon(root.r)).kahler_like);
      for (const PlanePoint& p : rep.plane_points) CHECK(is_kahler_like(cd, ConnectionParams(p.r, p.s)).kahler_like);
    }
  }
}

TEST_CASE("exceptional pairs") {
  CHECK(is_exceptional_pair(0, 1, 0, -1));
  CHECK(is_exceptional_pair(0, -1, 0, 1));
  CHECK(is_exceptional_pair(-1, 2, 1.0 / 3.0, -2));
  CHECK(is_exceptional_pair(-1, 2, -1, 0));
  CHECK(is_exceptional_pair(1.0 / 3.0, -2, -1, 0));
  CHECK_FALSE(is_exceptional_pair(1, 0, -1, 0));
  CHECK_FALSE(is_exceptional_pair(0, 0, 0, 1));
  CHECK_FALSE(is_exceptional_pair(-1, 2, -1, 2));
}
