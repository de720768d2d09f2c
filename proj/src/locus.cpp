#include "gauduchon/locus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

#include <Eigen/Dense>

namespace gauduchon {

// ---- univariate polynomials ----

double Poly1::operator()(double x) const {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int Poly1::degree(double tol) const {
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k)
    if (std::abs(c[static_cast<std::size_t>(k)]) > tol) return k;
  return -1;
}

double Poly1::max_coeff() const {
  double m = 0.0;
  for (double v : c) m = std::max(m, std::abs(v));
  return m;
}

Poly1 operator+(const Poly1& a, const Poly1& b) {
  Poly1 out{std::vector<double>(std::max(a.c.size(), b.c.size()), 0.0)};
  for (std::size_t k = 0; k < a.c.size(); ++k) out.c[k] += a.c[k];
  for (std::size_t k = 0; k < b.c.size(); ++k) out.c[k] += b.c[k];
  return out;
}

Poly1 operator-(const Poly1& a, const Poly1& b) {
  Poly1 neg = b;
  for (double& v : neg.c) v = -v;
  return a + neg;
}

Poly1 operator*(const Poly1& a, const Poly1& b) {
  if (a.c.empty() || b.c.empty()) return {};
  Poly1 out{std::vector<double>(a.c.size() + b.c.size() - 1, 0.0)};
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) out.c[i + j] += a.c[i] * b.c[j];
  return out;
}

std::vector<double> real_roots(const Poly1& p, double tol) {
  const double scale = p.max_coeff();
  std::vector<double> roots;
  if (scale == 0.0) return roots;
  const int deg = p.degree(1e-12 * scale);
  if (deg <= 0) return roots;
  std::vector<double> c(p.c.begin(), p.c.begin() + deg + 1);
  for (double& v : c) v /= scale;

  if (deg == 1) {
    roots.push_back(-c[0] / c[1]);
  } else if (deg == 2) {
    const double a = c[2], b = c[1], cc = c[0];
    const double disc = b * b - 4.0 * a * cc;
    // Near-double roots come out with a slightly negative discriminant; keep them as candidates.
    if (disc >= -tol) {
      const double sq = std::sqrt(std::max(disc, 0.0));
      const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
      if (q != 0.0) {
        roots.push_back(q / a);
        roots.push_back(cc / q);
      } else {
        roots.push_back(0.0);
      }
    }
  } else {
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
    for (int k = 1; k < deg; ++k) companion(k, k - 1) = 1.0;
    for (int k = 0; k < deg; ++k) companion(k, deg - 1) = -c[static_cast<std::size_t>(k)] / c[static_cast<std::size_t>(deg)];
    const Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
    for (int k = 0; k < deg; ++k) {
      const std::complex<double> z = es.eigenvalues()(k);
      if (std::abs(z.imag()) <= std::sqrt(tol) * (1.0 + std::abs(z.real()))) roots.push_back(z.real());
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// ---- bivariate polynomials ----

double Poly2::operator()(double t, double s) const {
  double acc = 0.0;
  for (int a = 2; a >= 0; --a) {
    const double inner = (c[a][2] * s + c[a][1]) * s + c[a][0];
    acc = acc * t + inner;
  }
  return acc;
}

Poly1 Poly2::t_coeff(int a) const { return Poly1{{c[a][0], c[a][1], c[a][2]}}; }

double Poly2::max_coeff() const {
  double m = 0.0;
  for (const auto& row : c)
    for (double v : row) m = std::max(m, std::abs(v));
  return m;
}

std::string Poly2::to_string() const {
  std::ostringstream out;
  out.precision(6);
  bool first = true;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const double v = c[a][b];
      if (std::abs(v) < 1e-12) continue;
      out << (first ? (v < 0 ? "-" : "") : (v < 0 ? " - " : " + ")) << std::abs(v);
      if (a > 0) out << "*t" << (a == 2 ? "^2" : "");
      if (b > 0) out << "*s" << (b == 2 ? "^2" : "");
      first = false;
    }
  return first ? "0" : out.str();
}

namespace {

using SlotKey = std::tuple<int, int, int, Monomial>;
using SlotMap = std::map<SlotKey, Complex>;

SlotMap slots(const Obstructions& ob) {
  SlotMap out;
  auto add_matrix = [&out](int tag, const FormMatrix& m) {
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        for (const auto& [mono, c] : m(i, j).terms()) out[{tag, i, j, mono}] = c;
  };
  add_matrix(0, ob.O2);
  add_matrix(1, ob.O20);
  for (std::size_t j = 0; j < ob.O11.size(); ++j)
    for (const auto& [mono, c] : ob.O11[j].terms()) out[{2, static_cast<int>(j), 0, mono}] = c;
  return out;
}

// Real and imaginary parts of every slot, sampled at each point; rows are slots.
std::vector<std::vector<double>> sample_slots(const std::vector<SlotMap>& samples) {
  std::map<SlotKey, std::size_t> keys;
  for (const auto& s : samples)
    for (const auto& kv : s) keys.emplace(kv.first, 0);
  std::vector<std::vector<double>> rows;
  for (const auto& kv : keys) {
    std::vector<double> re, im;
    for (const auto& s : samples) {
      const auto it = s.find(kv.first);
      const Complex v = it == s.end() ? Complex{} : it->second;
      re.push_back(v.real());
      im.push_back(v.imag());
    }
    rows.push_back(std::move(re));
    rows.push_back(std::move(im));
  }
  return rows;
}

// Coefficients (c0, c1, c2) of the quadratic through values at -1, 0, 1.
std::array<double, 3> interpolate3(double fm, double f0, double f1) {
  return {f0, 0.5 * (f1 - fm), 0.5 * (f1 + fm) - f0};
}

constexpr double kNodes[3] = {-1.0, 0.0, 1.0};

double zero_threshold(double tol) { return 1e-3 * tol; }

double point_residual(const ChernData& cd, const GammaTheta2& gt, double t, double s) {
  return obstructions_ts(cd, gt, t, s).max_norm();
}

// Pulls (t, s) back to (r, s); returns false at s = 1 unless it is the Levi-Civita point.
bool to_rs(double t, double s, double& r) {
  if (std::abs(1.0 - s) < 1e-9) {
    if (std::abs(t - 1.0) < 1e-7) {
      r = 0.0;
      return true;
    }
    return false;
  }
  r = (1.0 - t) / (1.0 - s);
  return true;
}

Poly1 determinant(std::vector<std::vector<Poly1>> m) {
  const std::size_t size = m.size();
  if (size == 1) return m[0][0];
  Poly1 acc{{0.0}};
  for (std::size_t col = 0; col < size; ++col) {
    if (m[0][col].max_coeff() == 0.0) continue;
    std::vector<std::vector<Poly1>> minor;
    for (std::size_t row = 1; row < size; ++row) {
      std::vector<Poly1> line;
      for (std::size_t c = 0; c < size; ++c)
        if (c != col) line.push_back(m[row][c]);
      minor.push_back(std::move(line));
    }
    const Poly1 term = m[0][col] * determinant(std::move(minor));
    acc = (col % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

int t_degree(const Poly2& p, double tol) {
  for (int a = 2; a >= 0; --a)
    if (p.t_coeff(a).max_coeff() > tol) return a;
  return -1;
}

// Resultant in t of two polynomials, as a polynomial in s (Sylvester determinant).
Poly1 resultant_t(const Poly2& A, const Poly2& B, double tol) {
  const int da = t_degree(A, tol), db = t_degree(B, tol);
  if (da <= 0) return A.t_coeff(0);
  if (db <= 0) return B.t_coeff(0);
  const int size = da + db;
  std::vector<std::vector<Poly1>> m(static_cast<std::size_t>(size),
                                    std::vector<Poly1>(static_cast<std::size_t>(size), Poly1{{0.0}}));
  for (int row = 0; row < db; ++row)
    for (int a = 0; a <= da; ++a) m[static_cast<std::size_t>(row)][static_cast<std::size_t>(row + da - a)] = A.t_coeff(a);
  for (int row = 0; row < da; ++row)
    for (int b = 0; b <= db; ++b)
      m[static_cast<std::size_t>(db + row)][static_cast<std::size_t>(row + db - b)] = B.t_coeff(b);
  return determinant(std::move(m));
}

Poly1 at_s(const Poly2& p, double s) { return Poly1{{p.t_coeff(0)(s), p.t_coeff(1)(s), p.t_coeff(2)(s)}}; }

// Gauss-Newton on the basis polynomials; converges (linearly) even at double roots.
void polish(const std::vector<Poly2>& basis, double& t, double& s) {
  for (int iter = 0; iter < 80; ++iter) {
    Eigen::MatrixXd J(static_cast<Eigen::Index>(basis.size()), 2);
    Eigen::VectorXd f(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const Poly2& p = basis[k];
      double dt = 0.0, ds = 0.0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          if (a > 0) dt += a * p.c[a][b] * std::pow(t, a - 1) * std::pow(s, b);
          if (b > 0) ds += b * p.c[a][b] * std::pow(t, a) * std::pow(s, b - 1);
        }
      f(static_cast<Eigen::Index>(k)) = p(t, s);
      J(static_cast<Eigen::Index>(k), 0) = dt;
      J(static_cast<Eigen::Index>(k), 1) = ds;
    }
    if (f.norm() < 1e-300) return;
    const Eigen::Vector2d step = J.completeOrthogonalDecomposition().solve(f);
    if (!step.allFinite() || step.norm() > 1e-3) return;
    t -= step(0);
    s -= step(1);
    if (step.norm() < 1e-17) return;
  }
}

void polish_line(const std::vector<Poly1>& polys, double& r) {
  for (int iter = 0; iter < 80; ++iter) {
    double num = 0.0, den = 0.0;
    for (const auto& p : polys) {
      const double scale = p.max_coeff();
      const double f = p(r) / scale;
      double df = 0.0;
      for (std::size_t k = 1; k < p.c.size(); ++k) df += static_cast<double>(k) * p.c[k] * std::pow(r, static_cast<double>(k - 1));
      df /= scale;
      num += df * f;
      den += df * df;
    }
    if (den == 0.0) return;
    const double step = num / den;
    if (!std::isfinite(step) || std::abs(step) > 1e-3) return;
    r -= step;
    if (std::abs(step) < 1e-17) return;
  }
}

double clean(double x) { return std::abs(x) < 1e-12 ? 0.0 : x; }

void add_point(LocusReport& report, double t, double s, double residual) {
  t = clean(t);
  s = clean(s);
  for (const auto& p : report.plane_points)
    if (std::abs(p.t - t) < 1e-6 && std::abs(p.s - s) < 1e-6) return;
  double r = 0.0;
  if (!to_rs(t, s, r)) {
    std::ostringstream note;
    note << "(t, s) = (" << t << ", " << s << ") solves the system but has no connection (s = 1)";
    report.notes.push_back(note.str());
    return;
  }
  report.plane_points.push_back({r, s, t, residual});
}

}  // namespace

std::vector<Poly1> gauduchon_polynomials(const ChernData& cd) {
  const GammaTheta2 gt = gamma_theta2(cd);
  std::vector<SlotMap> samples;
  for (double r : kNodes) samples.push_back(slots(obstructions_ts(cd, gt, 1.0 - r, 0.0)));
  std::vector<Poly1> out;
  for (const auto& row : sample_slots(samples)) {
    const auto c = interpolate3(row[0], row[1], row[2]);
    out.push_back(Poly1{{c[0], c[1], c[2]}});
  }
  return out;
}

std::vector<Poly2> plane_polynomials(const ChernData& cd) {
  const GammaTheta2 gt = gamma_theta2(cd);
  std::vector<SlotMap> samples;  // index 3 * is + it
  for (double s : kNodes)
    for (double t : kNodes) samples.push_back(slots(obstructions_ts(cd, gt, t, s)));
  std::vector<Poly2> out;
  for (const auto& row : sample_slots(samples)) {
    std::array<std::array<double, 3>, 3> by_s{};  // by_s[is] = t-coefficients at s node
    for (int is = 0; is < 3; ++is) {
      const std::size_t base = static_cast<std::size_t>(3 * is);
      by_s[static_cast<std::size_t>(is)] = interpolate3(row[base], row[base + 1], row[base + 2]);
    }
    Poly2 p;
    for (int a = 0; a < 3; ++a) {
      const auto cs = interpolate3(by_s[0][static_cast<std::size_t>(a)], by_s[1][static_cast<std::size_t>(a)],
                                   by_s[2][static_cast<std::size_t>(a)]);
      for (int b = 0; b < 3; ++b) p.c[a][b] = cs[static_cast<std::size_t>(b)];
    }
    out.push_back(p);
  }
  return out;
}

LocusReport gauduchon_locus(const ChernData& cd, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const double zero_tol = zero_threshold(tol);
  LocusReport report;
  std::vector<Poly1> nonzero;
  for (const auto& p : gauduchon_polynomials(cd))
    if (p.max_coeff() > zero_tol) nonzero.push_back(p);
  if (nonzero.empty()) {
    report.entire_line = true;
    return report;
  }

  std::vector<double> candidates;
  for (const auto& p : nonzero) {
    if (p.degree(zero_tol) == 0) return report;  // a nonzero constant obstruction rules out every r
    for (double r : real_roots(p)) candidates.push_back(r);
  }
  std::sort(candidates.begin(), candidates.end());

  const GammaTheta2 gt = gamma_theta2(cd);
  for (double r : candidates) {
    if (!report.line_roots.empty() && std::abs(report.line_roots.back().r - r) < 1e-7) continue;
    double rp = r;
    polish_line(nonzero, rp);
    double residual = point_residual(cd, gt, 1.0 - rp, 0.0);
    if (residual > point_residual(cd, gt, 1.0 - r, 0.0)) {
      rp = r;
      residual = point_residual(cd, gt, 1.0 - r, 0.0);
    }
    if (residual < tol) report.line_roots.push_back({clean(rp), residual});
  }
  return report;
}

LocusReport plane_locus(const ChernData& cd, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const double zero_tol = zero_threshold(tol);
  LocusReport report;
  report.plane_solved = true;

  // Orthonormal basis of the span of all obstruction polynomials.
  const std::vector<Poly2> polys = plane_polynomials(cd);
  Eigen::MatrixXd A(static_cast<Eigen::Index>(std::max<std::size_t>(polys.size(), 1)), 9);
  A.setZero();
  for (std::size_t k = 0; k < polys.size(); ++k)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) A(static_cast<Eigen::Index>(k), 3 * a + b) = polys[k].c[a][b];
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  std::vector<Poly2> basis;
  for (int k = 0; k < svd.singularValues().size(); ++k) {
    if (svd.singularValues()(k) <= zero_tol) break;
    Poly2 p;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) p.c[a][b] = svd.matrixV()(3 * a + b, k);
    basis.push_back(p);
  }
  if (basis.empty()) {
    report.entire_plane = true;
    return report;
  }

  const GammaTheta2 gt = gamma_theta2(cd);
  const double coeff_tol = 1e-9;  // basis polynomials have unit coefficient norm

  // Two generic combinations; their resultant in t vanishes at the s-coordinate of every
  // common zero. A fixed seed keeps the output reproducible.
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  Poly2 combo_a, combo_b;
  for (const auto& p : basis) {
    const double x = coef(rng), y = coef(rng);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        combo_a.c[a][b] += x * p.c[a][b];
        combo_b.c[a][b] += y * p.c[a][b];
      }
  }

  // Common t-roots of the basis at a fixed s; returns false if every basis element vanishes there.
  auto solve_at_s = [&](double s, std::vector<double>& ts) {
    const Poly2* best = nullptr;
    double best_norm = 0.0;
    for (const auto& p : basis) {
      const double norm = at_s(p, s).max_coeff();
      if (norm > best_norm) {
        best_norm = norm;
        best = &p;
      }
    }
    if (best_norm < coeff_tol) return false;
    ts = real_roots(at_s(*best, s));
    return true;
  };

  auto horizontal_branch = [&](double s) {
    // Whole line s = const in (t, s); confirm directly at three t values.
    double worst = 0.0;
    for (double t : {-1.3, 0.4, 2.1}) worst = std::max(worst, point_residual(cd, gt, t, s));
    if (worst >= tol) return false;
    for (const auto& b : report.branches)
      if (b.s_value && std::abs(*b.s_value - s) < 1e-6) return true;
    PlaneBranch branch;
    std::ostringstream desc;
    desc.precision(12);
    desc << "s = " << s;
    branch.description = desc.str();
    branch.s_value = s;
    for (double t : {-1.3, 0.4, 2.1}) {
      double r = 0.0;
      if (to_rs(t, s, r)) branch.samples.push_back({r, s, t, point_residual(cd, gt, t, s)});
    }
    report.branches.push_back(std::move(branch));
    return true;
  };

  auto examine_s = [&](double s) {
    std::vector<double> ts;
    if (!solve_at_s(s, ts)) {
      if (horizontal_branch(s)) return;
      report.notes.push_back("basis vanishes near s = " + std::to_string(s) + " but direct check fails");
      return;
    }
    for (double t : ts) {
      double tp = t, sp = s;
      polish(basis, tp, sp);
      double residual = point_residual(cd, gt, tp, sp);
      if (residual > point_residual(cd, gt, t, s)) {
        tp = t;
        sp = s;
        residual = point_residual(cd, gt, t, s);
      }
      if (residual < tol) add_point(report, tp, sp, residual);
    }
  };

  const Poly1 res = basis.size() >= 2 ? resultant_t(combo_a, combo_b, zero_tol) : Poly1{{0.0}};
  if (res.max_coeff() > coeff_tol) {
    if (res.degree(coeff_tol * res.max_coeff()) == 0) return report;  // no common zero
    for (double s : real_roots(res)) examine_s(s);
  } else {
    // A common factor survives: the zero set contains a curve (or the span is a single
    // polynomial). Trace it on a grid in s and add the discriminant and leading-coefficient
    // roots, where isolated real points and vertical asymptotes sit.
    const Poly2& P = basis.size() >= 2 ? combo_a : basis.front();
    std::vector<double> s_values;
    for (int k = -40; k <= 40; ++k) s_values.push_back(0.1 * k + 0.0123);
    const Poly1 a2 = P.t_coeff(2), a1 = P.t_coeff(1), a0 = P.t_coeff(0);
    const Poly1 disc = a1 * a1 - Poly1{{4.0}} * a2 * a0;
    for (double s : real_roots(disc)) s_values.push_back(s);
    for (double s : real_roots(a2)) s_values.push_back(s);
    for (double s : real_roots(a1)) s_values.push_back(s);

    std::vector<PlanePoint> traced;
    for (double s : s_values) {
      std::vector<double> ts;
      if (!solve_at_s(s, ts)) {
        horizontal_branch(s);
        continue;
      }
      for (double t : ts) {
        const double residual = point_residual(cd, gt, t, s);
        if (residual < tol) traced.push_back({0.0, s, t, residual});
      }
    }

    std::size_t grid_hits = 0;
    for (const auto& p : traced)
      if (std::abs(p.s - (0.1 * std::round((p.s - 0.0123) / 0.1) + 0.0123)) < 1e-12) ++grid_hits;
    if (grid_hits >= 5) {
      // Fit the implicit curve: the null vector of the monomial matrix over traced points.
      Eigen::MatrixXd V(static_cast<Eigen::Index>(traced.size()), 9);
      for (std::size_t k = 0; k < traced.size(); ++k)
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            V(static_cast<Eigen::Index>(k), 3 * a + b) = std::pow(traced[k].t, a) * std::pow(traced[k].s, b);
      const Eigen::JacobiSVD<Eigen::MatrixXd> fit(V, Eigen::ComputeFullV);
      Poly2 curve;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) curve.c[a][b] = fit.matrixV()(3 * a + b, 8);
      PlaneBranch branch;
      branch.description = "implicit: " + curve.to_string() + " = 0";
      for (const auto& p : traced) {
        double r = 0.0;
        if (std::abs(curve(p.t, p.s)) < 1e-6 && to_rs(p.t, p.s, r) && branch.samples.size() < 5)
          branch.samples.push_back({r, p.s, p.t, p.residual});
      }
      for (const auto& p : traced)
        if (std::abs(curve(p.t, p.s)) >= 1e-6) add_point(report, p.t, p.s, p.residual);
      report.branches.push_back(std::move(branch));
    } else {
      for (const auto& p : traced) add_point(report, p.t, p.s, p.residual);
    }
    report.notes.push_back("common factor in the obstruction system; points located by tracing");
  }

  std::sort(report.plane_points.begin(), report.plane_points.end(),
            [](const PlanePoint& a, const PlanePoint& b) { return std::tie(a.r, a.s) < std::tie(b.r, b.s); });
  return report;
}

LocusReport full_locus(const ChernData& cd, double tol) {
  LocusReport line = gauduchon_locus(cd, tol);
  LocusReport plane = plane_locus(cd, tol);
  plane.entire_line = line.entire_line;
  plane.line_roots = std::move(line.line_roots);
  return plane;
}

bool is_exceptional_pair(double r1, double s1, double r2, double s2, double tol) {
  struct P {
    double r, s;
  };
  static constexpr P lc{0.0, 1.0}, anti_lc{0.0, -1.0}, plus{-1.0, 2.0}, minus{1.0 / 3.0, -2.0}, strominger{-1.0, 0.0};
  static constexpr std::pair<P, P> pairs[] = {{lc, anti_lc}, {plus, minus}, {plus, strominger}, {minus, strominger}};
  auto same = [tol](double r, double s, const P& p) { return std::abs(r - p.r) < tol && std::abs(s - p.s) < tol; };
  for (const auto& [a, b] : pairs)
    if ((same(r1, s1, a) && same(r2, s2, b)) || (same(r1, s1, b) && same(r2, s2, a))) return true;
  return false;
}

}  // namespace gauduchon
