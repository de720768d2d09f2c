#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gauduchon/kahler_like.hpp"

namespace gauduchon {

/// Real polynomial in one variable, coefficients by ascending degree.
struct Poly1 {
  std::vector<double> c;

  double operator()(double x) const;
  int degree(double tol = 0.0) const;  // -1 for the zero polynomial
  double max_coeff() const;
};

Poly1 operator+(const Poly1& a, const Poly1& b);
Poly1 operator-(const Poly1& a, const Poly1& b);
Poly1 operator*(const Poly1& a, const Poly1& b);

/// Real roots of p (companion-matrix eigenvalues with small imaginary part), sorted.
std::vector<double> real_roots(const Poly1& p, double tol = 1e-9);

/// Bivariate polynomial sum_{a,b<=2} c[a][b] t^a s^b.
struct Poly2 {
  double c[3][3] = {};

  double operator()(double t, double s) const;
  /// Coefficient of t^a as a polynomial in s.
  Poly1 t_coeff(int a) const;
  double max_coeff() const;
  std::string to_string() const;
};

/// One polynomial per real or imaginary part of every obstruction coefficient slot.
struct ObstructionPolynomials {
  std::vector<Poly1> line;   // in r, along s = 0
  std::vector<Poly2> plane;  // in (t, s)
};

/// Line polynomials from samples at r in {0, 1, -1}.
std::vector<Poly1> gauduchon_polynomials(const ChernData& cd);
/// Plane polynomials from samples on the grid t, s in {-1, 0, 1}.
std::vector<Poly2> plane_polynomials(const ChernData& cd);

struct LineRoot {
  double r = 0.0;
  double residual = 0.0;
};

struct PlanePoint {
  double r = 0.0;
  double s = 0.0;
  double t = 0.0;
  double residual = 0.0;
};

/// A one-dimensional solution component.
struct PlaneBranch {
  std::string description;         // "s = <value>" or "implicit: <poly in t,s> = 0"
  std::optional<double> s_value;   // set for horizontal lines in the (r,s) plane
  std::vector<PlanePoint> samples; // verified points on the branch
};

struct LocusReport {
  bool entire_line = false;
  std::vector<LineRoot> line_roots;
  bool plane_solved = false;
  bool entire_plane = false;
  std::vector<PlanePoint> plane_points;
  std::vector<PlaneBranch> branches;
  std::vector<std::string> notes;
};

/// Kähler-like points D^r on the Gauduchon line; fills entire_line and line_roots.
LocusReport gauduchon_locus(const ChernData& cd, double tol = kKahlerLikeTol);

/// Kähler-like points on the whole (r,s) plane; fills the plane fields only.
LocusReport plane_locus(const ChernData& cd, double tol = kKahlerLikeTol);

/// Both line and plane results in one report.
LocusReport full_locus(const ChernData& cd, double tol = kKahlerLikeTol);

/// True when two parameter points form one of the four pairs that can be simultaneously
/// Kähler-like on a non-Kähler metric: {(0,1),(0,-1)}, {(-1,2),(1/3,-2)}, {(-1,2),(-1,0)},
/// {(1/3,-2),(-1,0)}.
bool is_exceptional_pair(double r1, double s1, double r2, double s2, double tol = 1e-6);

}  // namespace gauduchon
