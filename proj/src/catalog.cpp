#include "gauduchon/catalog.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace gauduchon {

namespace {

ManifoldSpec make_spec(std::string name, const StructureConstants& sc) {
  ManifoldSpec spec;
  spec.name = std::move(name);
  spec.n = sc.n();
  spec.sc = sc;
  spec.metric = Eigen::MatrixXcd::Identity(sc.n(), sc.n());
  validate(spec);
  return spec;
}

Complex disc_sample(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double radius = std::sqrt(unit(rng));
  const double angle = 2.0 * std::numbers::pi * unit(rng);
  return std::polar(radius, angle);
}

StructureConstants nilpotent3_sample(std::mt19937_64& rng) {
  StructureConstants sc(3);
  sc.set_pp(2, 0, 1, disc_sample(rng));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) sc.set_pq(2, i, j, disc_sample(rng));
  return sc;
}

// su(2) + u(1) with [x0,x1] = x2, [x1,x2] = x0, [x2,x0] = x1 and x3 central; the real
// basis is orthonormal, J x0 = x1, J x2 = x3.
StructureConstants hopf_structure() {
  std::vector<std::vector<std::vector<double>>> br(4, std::vector<std::vector<double>>(4, std::vector<double>(4, 0.0)));
  auto set = [&br](int a, int b, int c) {
    br[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)][static_cast<std::size_t>(c)] = 1.0;
    br[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)][static_cast<std::size_t>(c)] = -1.0;
  };
  set(0, 1, 2);
  set(1, 2, 0);
  set(2, 0, 1);
  const double h = 1.0 / std::sqrt(2.0);
  const Complex i_unit{0.0, 1.0};
  Eigen::MatrixXcd frame = Eigen::MatrixXcd::Zero(2, 4);
  frame(0, 0) = h;
  frame(0, 1) = -i_unit * h;
  frame(1, 2) = h;
  frame(1, 3) = -i_unit * h;
  return structure_from_lie_algebra(br, frame);
}

CatalogEntry make_entry(const std::string& name) {
  CatalogEntry entry;
  if (name == "torus2" || name == "torus3") {
    entry.spec = make_spec(name, StructureConstants(name == "torus2" ? 2 : 3));
    entry.provenance = "flat complex torus, abelian Lie algebra";
    for (const char* key : {"kahler", "chern_kahler_like", "strominger_kahler_like", "lichnerowicz_kahler_like",
                            "riemannian_kahler_like"})
      entry.expected[key] = true;
  } else if (name == "iwasawa") {
    StructureConstants sc(3);
    sc.set_pp(2, 0, 1, -1.0);
    entry.spec = make_spec(name, sc);
    entry.provenance = "Iwasawa manifold: quotient of the complex Heisenberg group, d phi_3 = -phi_1 ^ phi_2";
    entry.expected = {{"kahler", false},
                      {"chern_kahler_like", true},
                      {"strominger_kahler_like", false},
                      {"lichnerowicz_kahler_like", false}};
  } else if (name == "kodaira") {
    StructureConstants sc(2);
    sc.set_pq(1, 0, 0, 1.0);
    entry.spec = make_spec(name, sc);
    entry.provenance = "primary Kodaira surface: nilmanifold with d phi_2 = phi_1 ^ phibar_1";
    entry.expected = {{"kahler", false}};
  } else if (name == "hopf") {
    entry.spec = make_spec(name, hopf_structure());
    entry.provenance =
        "Hopf surface S^3 x S^1: su(2) + u(1) with bi-invariant metric, J pairing the first two su(2) "
        "directions and the third with the u(1) generator";
    entry.expected = {{"kahler", false},
                      {"strominger_kahler_like", true},
                      {"plus_kahler_like", true},
                      {"minus_kahler_like", true}};
  } else if (name == "nilpotent3_generic") {
    std::mt19937_64 rng(20210);
    entry.spec = make_spec(name, nilpotent3_sample(rng));
    entry.provenance = "fixed member of the nilpotent3 random family (seed 20210)";
    entry.expected = {{"kahler", false}};
  } else {
    throw std::invalid_argument("unknown catalog entry: " + name);
  }
  return entry;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"torus2", "torus3", "iwasawa", "kodaira", "hopf", "nilpotent3_generic"};
  return names;
}

CatalogEntry builtin(const std::string& name) { return make_entry(name); }

StructureConstants structure_from_lie_algebra(const std::vector<std::vector<std::vector<double>>>& brackets,
                                              const Eigen::MatrixXcd& frame) {
  const int n = static_cast<int>(frame.rows());
  const int m = static_cast<int>(frame.cols());
  if (m != 2 * n || static_cast<int>(brackets.size()) != m)
    throw std::invalid_argument("Lie algebra dimension must be twice the number of (1,0) vectors");

  Eigen::MatrixXcd F(m, m);  // rows: Z_1..Z_n, Zbar_1..Zbar_n in the real basis
  F.topRows(n) = frame;
  F.bottomRows(n) = frame.conjugate();
  const Eigen::MatrixXcd dual = F.transpose().inverse();  // coordinates of v in the complex frame

  auto bracket = [&](int a, int b) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(m);
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        const Complex w = F(a, j) * F(b, k);
        if (w == Complex{}) continue;
        for (int c = 0; c < m; ++c)
          out(c) += w * brackets[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)][static_cast<std::size_t>(c)];
      }
    return out;
  };
  auto bit = [n](int a) { return a < n ? holo_bit(a) : anti_bit(a - n); };

  std::vector<Form> d_phi(static_cast<std::size_t>(n), Form(2));
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      const Eigen::VectorXcd coords = dual * bracket(a, b);
      for (int c = 0; c < n; ++c) {
        const Complex v = -coords(c);
        if (std::abs(v) > 1e-14) d_phi[static_cast<std::size_t>(c)].accumulate(static_cast<Monomial>(bit(a) | bit(b)), v);
      }
    }
  return StructureConstants::from_differentials(d_phi, 1e-12);
}

std::vector<ManifoldSpec> random_family(std::uint64_t seed, const std::string& family, int count,
                                        const std::string& base) {
  if (count < 0) throw std::invalid_argument("count must be nonnegative");
  std::mt19937_64 rng(seed);
  std::vector<ManifoldSpec> out;
  if (family == "nilpotent3") {
    for (int k = 0; k < count; ++k)
      out.push_back(make_spec("nilpotent3-" + std::to_string(seed) + "-" + std::to_string(k), nilpotent3_sample(rng)));
  } else if (family == "metric_perturbed") {
    if (!base.empty()) builtin(base);  // reject unknown names before sampling
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int k = 0; k < count; ++k) {
      const std::string& name = base.empty() ? builtin_names()[static_cast<std::size_t>(k) % builtin_names().size()] : base;
      ManifoldSpec spec = builtin(name).spec;
      const int n = spec.n;
      Eigen::MatrixXcd H(n, n);
      for (int i = 0; i < n; ++i) {
        H(i, i) = unit(rng);
        for (int j = i + 1; j < n; ++j) {
          H(i, j) = disc_sample(rng);
          H(j, i) = std::conj(H(i, j));
        }
      }
      spec.metric = Eigen::MatrixXcd::Identity(n, n) + 0.1 * H;
      spec.name = name + "-perturbed-" + std::to_string(seed) + "-" + std::to_string(k);
      validate(spec);
      out.push_back(std::move(spec));
    }
  } else {
    throw std::invalid_argument("unknown random family: " + family + " (expected nilpotent3 or metric_perturbed)");
  }
  return out;
}

}  // namespace gauduchon
