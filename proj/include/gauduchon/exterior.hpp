#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gauduchon {

using Complex = std::complex<double>;

/// Largest supported complex dimension.
inline constexpr int kMaxDim = 6;

/// Default absolute tolerance for coefficient comparisons.
inline constexpr double kCoefficientTol = 1e-10;

/// A strictly ordered multi-index over the coframe {phi_1..phi_n, phibar_1..phibar_n}.
///
/// Bit i (0 <= i < kMaxDim) stands for phi_{i+1}, bit kMaxDim + i for phibar_{i+1}.
/// Increasing bit order is the canonical order: all holomorphic labels ascending,
/// then all antiholomorphic labels ascending.
using Monomial = std::uint16_t;

inline constexpr Monomial kHoloMask = (Monomial{1} << kMaxDim) - 1;
inline constexpr Monomial kAntiMask = static_cast<Monomial>(kHoloMask << kMaxDim);

constexpr Monomial holo_bit(int i) { return static_cast<Monomial>(Monomial{1} << i); }
constexpr Monomial anti_bit(int i) { return static_cast<Monomial>(Monomial{1} << (kMaxDim + i)); }

int monomial_degree(Monomial m);
int holo_degree(Monomial m);
int anti_degree(Monomial m);

/// Sign of a ^ b for canonical monomials; 0 when they share a label.
int wedge_sign(Monomial a, Monomial b);

/// Human-readable label list, e.g. "1 2 3b" (1-based, b marks a conjugate).
std::string monomial_to_string(Monomial m);

/// Complexified exterior form with constant coefficients on the invariant coframe.
///
/// Immutable in spirit: every operation returns a new value. Zero coefficients are
/// never stored and every stored monomial has exactly degree() labels.
class Form {
public:
  using Terms = std::map<Monomial, Complex>;

  explicit Form(int degree = 0);

  static Form scalar(Complex c);
  static Form phi(int i);     // phi_{i+1}
  static Form phibar(int i);  // conjugate of phi_{i+1}
  /// Single canonical monomial; labels may be given in any order, the sign is tracked.
  static Form monomial(std::span<const int> holo, std::span<const int> anti, Complex c = 1.0);

  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Complex coefficient(Monomial m) const;
  /// Max coefficient magnitude (0 for the zero form).
  double max_norm() const;

  /// Adds c to the coefficient of m; drops the term if it cancels exactly.
  void accumulate(Monomial m, Complex c);

  Form& operator+=(const Form& other);
  Form& operator-=(const Form& other);
  Form& operator*=(Complex c);

  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(Form a, Complex c) { return a *= c; }
  friend Form operator*(Complex c, Form a) { return a *= c; }
  Form operator-() const { return *this * Complex{-1.0}; }

  /// Drops terms whose magnitude is at most tol.
  Form pruned(double tol) const;

  /// (p,q) component.
  Form part(int p, int q) const;

  /// Evaluates a 1-form on the frame vector dual to the given coframe label.
  Complex on_holo(int i) const;
  Complex on_anti(int i) const;

  /// Largest label index used plus one (0 for constants).
  int span_dim() const;

private:
  int degree_;
  Terms terms_;
};

Form wedge(const Form& a, const Form& b);
Form conjugate(const Form& f);

/// Pure-type parts of a form, ordered by (p,q); empty for the zero form.
std::vector<std::pair<std::pair<int, int>, Form>> type_split(const Form& f);

/// Max coefficient magnitude of a - b. Degrees must agree unless one side is zero.
double distance(const Form& a, const Form& b);

std::string to_string(const Form& f);

/// Rectangular matrix of forms sharing one degree.
class FormMatrix {
public:
  FormMatrix() = default;
  FormMatrix(int rows, int cols, int degree);

  static FormMatrix column(std::vector<Form> entries);
  static FormMatrix row(std::vector<Form> entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int degree() const { return degree_; }

  const Form& operator()(int i, int j) const { return entries_[index(i, j)]; }
  /// Replaces an entry; its degree must match (zero forms of any degree are coerced).
  void set(int i, int j, Form f);
  void accumulate(int i, int j, const Form& f);

  double max_norm() const;

  FormMatrix& operator+=(const FormMatrix& other);
  FormMatrix& operator-=(const FormMatrix& other);
  FormMatrix& operator*=(Complex c);

  friend FormMatrix operator+(FormMatrix a, const FormMatrix& b) { return a += b; }
  friend FormMatrix operator-(FormMatrix a, const FormMatrix& b) { return a -= b; }
  friend FormMatrix operator*(FormMatrix a, Complex c) { return a *= c; }
  friend FormMatrix operator*(Complex c, FormMatrix a) { return a *= c; }

  FormMatrix transpose() const;
  FormMatrix conjugate() const;  // entrywise, no transpose
  FormMatrix part(int p, int q) const;

private:
  std::size_t index(int i, int j) const;

  int rows_ = 0;
  int cols_ = 0;
  int degree_ = 0;
  std::vector<Form> entries_;
};

/// Matrix product with wedge on entries.
FormMatrix wedge(const FormMatrix& a, const FormMatrix& b);

double distance(const FormMatrix& a, const FormMatrix& b);

/// Constant structure data of an invariant coframe.
///
/// pp(k,i,j), i<j: coefficient of phi_i ^ phi_j in d phi_k.
/// pq(k,i,j): coefficient of phi_i ^ phibar_j in d phi_k.
/// There is no (0,2) slot: an integrable complex structure never produces one.
class StructureConstants {
public:
  explicit StructureConstants(int n = 0);

  int n() const { return n_; }

  Complex pp(int k, int i, int j) const { return pp_[index(k, i, j)]; }
  Complex pq(int k, int i, int j) const { return pq_[index(k, i, j)]; }
  /// Stores the coefficient of phi_i ^ phi_j; i > j is folded with a sign flip.
  void set_pp(int k, int i, int j, Complex c);
  void set_pq(int k, int i, int j, Complex c);

  /// d phi_k as a 2-form.
  Form d_phi(int k) const;

  /// Reads constants back from a list of 2-forms d phi_k; throws if a (0,2) part is present.
  static StructureConstants from_differentials(std::span<const Form> d_phi, double tol = 0.0);

  bool operator==(const StructureConstants&) const = default;

private:
  std::size_t index(int k, int i, int j) const;

  int n_;
  std::vector<Complex> pp_;
  std::vector<Complex> pq_;
};

/// Exterior derivative on invariant forms, with d phi_k and d phibar_k cached.
class ExteriorDerivative {
public:
  explicit ExteriorDerivative(const StructureConstants& sc);

  int n() const { return n_; }
  Form operator()(const Form& f) const;
  FormMatrix operator()(const FormMatrix& m) const;

  /// The d-bar and d-partial operators: the (p,q+1) and (p+1,q) components of d.
  Form dbar(const Form& f) const;
  Form del(const Form& f) const;

private:
  int n_;
  std::vector<Form> d_label_;  // indexed by bit position
};

Form d(const Form& form, const StructureConstants& sc);

struct IntegrabilityResult {
  bool pass = false;
  double residual = 0.0;  // max coefficient of d(d phi_k) over k
};

IntegrabilityResult check_integrability(const StructureConstants& sc, double tol = kCoefficientTol);

/// Replaces every coframe label by a 1-form (holo images for phi_i, anti images for phibar_i).
Form substitute(const Form& f, std::span<const Form> holo_images, std::span<const Form> anti_images);

}  // namespace gauduchon
