#include "gauduchon/exterior.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace gauduchon {

int monomial_degree(Monomial m) { return std::popcount(static_cast<unsigned>(m)); }
int holo_degree(Monomial m) { return std::popcount(static_cast<unsigned>(m & kHoloMask)); }
int anti_degree(Monomial m) { return std::popcount(static_cast<unsigned>(m & kAntiMask)); }

int wedge_sign(Monomial a, Monomial b) {
  if ((a & b) != 0) return 0;
  // Count pairs (x in a, y in b) with x > y; each is one transposition.
  int inversions = 0;
  for (unsigned rest = b; rest != 0; rest &= rest - 1) {
    const int y = std::countr_zero(rest);
    const unsigned above = ~((2u << y) - 1u);
    inversions += std::popcount(static_cast<unsigned>(a) & above);
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

std::string monomial_to_string(Monomial m) {
  std::ostringstream out;
  bool first = true;
  for (int i = 0; i < 2 * kMaxDim; ++i) {
    if ((m >> i & 1u) == 0) continue;
    if (!first) out << ' ';
    first = false;
    if (i < kMaxDim) out << (i + 1);
    else out << (i - kMaxDim + 1) << 'b';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Form

Form::Form(int degree) : degree_(degree) {
  if (degree < 0 || degree > 2 * kMaxDim)
    throw std::invalid_argument("form degree out of range: " + std::to_string(degree));
}

Form Form::scalar(Complex c) {
  Form f(0);
  f.accumulate(0, c);
  return f;
}

namespace {
void check_label(int i) {
  if (i < 0 || i >= kMaxDim) throw std::out_of_range("coframe label out of range: " + std::to_string(i));
}
}  // namespace

Form Form::phi(int i) {
  check_label(i);
  Form f(1);
  f.accumulate(holo_bit(i), 1.0);
  return f;
}

Form Form::phibar(int i) {
  check_label(i);
  Form f(1);
  f.accumulate(anti_bit(i), 1.0);
  return f;
}

Form Form::monomial(std::span<const int> holo, std::span<const int> anti, Complex c) {
  Form out = scalar(c);
  for (int i : holo) out = wedge(out, phi(i));
  for (int i : anti) out = wedge(out, phibar(i));
  if (out.is_zero()) return Form(static_cast<int>(holo.size() + anti.size()));
  return out;
}

Complex Form::coefficient(Monomial m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Complex{} : it->second;
}

double Form::max_norm() const {
  double best = 0.0;
  for (const auto& [m, c] : terms_) best = std::max(best, std::abs(c));
  return best;
}

void Form::accumulate(Monomial m, Complex c) {
  if (c == Complex{}) return;
  if (monomial_degree(m) != degree_)
    throw std::invalid_argument("monomial degree does not match form degree");
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex{}) terms_.erase(it);
  }
}

namespace {
void check_compatible(const Form& a, const Form& b) {
  if (a.degree() != b.degree() && !a.is_zero() && !b.is_zero())
    throw std::invalid_argument("adding forms of degrees " + std::to_string(a.degree()) + " and " +
                                std::to_string(b.degree()));
}
}  // namespace

Form& Form::operator+=(const Form& other) {
  check_compatible(*this, other);
  if (is_zero()) degree_ = other.degree_;
  for (const auto& [m, c] : other.terms_) accumulate(m, c);
  return *this;
}

Form& Form::operator-=(const Form& other) {
  check_compatible(*this, other);
  if (is_zero()) degree_ = other.degree_;
  for (const auto& [m, c] : other.terms_) accumulate(m, -c);
  return *this;
}

Form& Form::operator*=(Complex c) {
  if (c == Complex{}) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Form Form::pruned(double tol) const {
  Form out(degree_);
  for (const auto& [m, c] : terms_)
    if (std::abs(c) > tol) out.terms_.emplace(m, c);
  return out;
}

Form Form::part(int p, int q) const {
  Form out(degree_);
  if (p + q != degree_) return out;
  for (const auto& [m, c] : terms_)
    if (holo_degree(m) == p) out.terms_.emplace(m, c);
  return out;
}

Complex Form::on_holo(int i) const {
  if (degree_ != 1) throw std::invalid_argument("frame evaluation needs a 1-form");
  return coefficient(holo_bit(i));
}

Complex Form::on_anti(int i) const {
  if (degree_ != 1) throw std::invalid_argument("frame evaluation needs a 1-form");
  return coefficient(anti_bit(i));
}

int Form::span_dim() const {
  int dim = 0;
  for (const auto& [m, c] : terms_) {
    const unsigned h = m & kHoloMask;
    const unsigned a = (m & kAntiMask) >> kMaxDim;
    dim = std::max({dim, h ? static_cast<int>(std::bit_width(h)) : 0, a ? static_cast<int>(std::bit_width(a)) : 0});
  }
  return dim;
}

Form wedge(const Form& a, const Form& b) {
  Form out(a.degree() + b.degree());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      const int sign = wedge_sign(ma, mb);
      if (sign != 0) out.accumulate(static_cast<Monomial>(ma | mb), static_cast<double>(sign) * ca * cb);
    }
  }
  return out;
}

Form conjugate(const Form& f) {
  Form out(f.degree());
  for (const auto& [m, c] : f.terms()) {
    const auto holo = static_cast<Monomial>(m & kHoloMask);
    const auto anti = static_cast<Monomial>((m & kAntiMask) >> kMaxDim);
    const auto swapped = static_cast<Monomial>(anti | (holo << kMaxDim));
    // phibar_A phi_B -> phi_B phibar_A costs |A||B| transpositions.
    const int sign = (monomial_degree(holo) * monomial_degree(anti)) % 2 == 0 ? 1 : -1;
    out.accumulate(swapped, static_cast<double>(sign) * std::conj(c));
  }
  return out;
}

std::vector<std::pair<std::pair<int, int>, Form>> type_split(const Form& f) {
  std::vector<std::pair<std::pair<int, int>, Form>> parts;
  for (int p = f.degree(); p >= 0; --p) {
    Form piece = f.part(p, f.degree() - p);
    if (!piece.is_zero()) parts.emplace_back(std::pair{p, f.degree() - p}, std::move(piece));
  }
  return parts;
}

double distance(const Form& a, const Form& b) { return (a - b).max_norm(); }

std::string to_string(const Form& f) {
  if (f.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    if (!first) out << " + ";
    first = false;
    out << '(' << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    if (m != 0) out << "[" << monomial_to_string(m) << "]";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// FormMatrix

FormMatrix::FormMatrix(int rows, int cols, int degree)
    : rows_(rows), cols_(cols), degree_(degree), entries_(static_cast<std::size_t>(rows * cols), Form(degree)) {
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("form matrix needs positive dimensions");
}

FormMatrix FormMatrix::column(std::vector<Form> entries) {
  FormMatrix m(static_cast<int>(entries.size()), 1, entries.empty() ? 0 : entries.front().degree());
  for (int i = 0; i < m.rows_; ++i) m.set(i, 0, std::move(entries[static_cast<std::size_t>(i)]));
  return m;
}

FormMatrix FormMatrix::row(std::vector<Form> entries) {
  FormMatrix m(1, static_cast<int>(entries.size()), entries.empty() ? 0 : entries.front().degree());
  for (int j = 0; j < m.cols_; ++j) m.set(0, j, std::move(entries[static_cast<std::size_t>(j)]));
  return m;
}

std::size_t FormMatrix::index(int i, int j) const {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw std::out_of_range("form matrix index");
  return static_cast<std::size_t>(i * cols_ + j);
}

void FormMatrix::set(int i, int j, Form f) {
  if (f.is_zero()) f = Form(degree_);
  if (f.degree() != degree_) throw std::invalid_argument("form matrix entries must share one degree");
  entries_[index(i, j)] = std::move(f);
}

void FormMatrix::accumulate(int i, int j, const Form& f) {
  if (!f.is_zero() && f.degree() != degree_)
    throw std::invalid_argument("form matrix entries must share one degree");
  entries_[index(i, j)] += f;
}

double FormMatrix::max_norm() const {
  double best = 0.0;
  for (const auto& f : entries_) best = std::max(best, f.max_norm());
  return best;
}

FormMatrix& FormMatrix::operator+=(const FormMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("form matrix shape mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

FormMatrix& FormMatrix::operator-=(const FormMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("form matrix shape mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

FormMatrix& FormMatrix::operator*=(Complex c) {
  for (auto& f : entries_) f *= c;
  return *this;
}

FormMatrix FormMatrix::transpose() const {
  FormMatrix out(cols_, rows_, degree_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.set(j, i, (*this)(i, j));
  return out;
}

FormMatrix FormMatrix::conjugate() const {
  FormMatrix out(rows_, cols_, degree_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.set(i, j, gauduchon::conjugate((*this)(i, j)));
  return out;
}

FormMatrix FormMatrix::part(int p, int q) const {
  FormMatrix out(rows_, cols_, degree_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.set(i, j, (*this)(i, j).part(p, q));
  return out;
}

FormMatrix wedge(const FormMatrix& a, const FormMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("form matrix product shape mismatch");
  FormMatrix out(a.rows(), b.cols(), a.degree() + b.degree());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j)
      for (int k = 0; k < a.cols(); ++k) out.accumulate(i, j, wedge(a(i, k), b(k, j)));
  return out;
}

double distance(const FormMatrix& a, const FormMatrix& b) { return (a - b).max_norm(); }

// ---------------------------------------------------------------------------
// StructureConstants

StructureConstants::StructureConstants(int n)
    : n_(n), pp_(static_cast<std::size_t>(n * n * n)), pq_(static_cast<std::size_t>(n * n * n)) {
  if (n < 0 || n > kMaxDim) throw std::invalid_argument("complex dimension out of range: " + std::to_string(n));
}

std::size_t StructureConstants::index(int k, int i, int j) const {
  if (k < 0 || k >= n_ || i < 0 || i >= n_ || j < 0 || j >= n_)
    throw std::out_of_range("structure constant index out of range");
  return static_cast<std::size_t>((k * n_ + i) * n_ + j);
}

void StructureConstants::set_pp(int k, int i, int j, Complex c) {
  if (i == j) {
    if (c != Complex{}) throw std::invalid_argument("phi_i ^ phi_i has no coefficient");
    return;
  }
  if (i > j) {
    std::swap(i, j);
    c = -c;
  }
  pp_[index(k, i, j)] = c;
}

void StructureConstants::set_pq(int k, int i, int j, Complex c) { pq_[index(k, i, j)] = c; }

Form StructureConstants::d_phi(int k) const {
  Form out(2);
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) out.accumulate(static_cast<Monomial>(holo_bit(i) | holo_bit(j)), pp(k, i, j));
    for (int j = 0; j < n_; ++j) out.accumulate(static_cast<Monomial>(holo_bit(i) | anti_bit(j)), pq(k, i, j));
  }
  return out;
}

StructureConstants StructureConstants::from_differentials(std::span<const Form> d_phi, double tol) {
  StructureConstants sc(static_cast<int>(d_phi.size()));
  for (int k = 0; k < sc.n_; ++k) {
    const Form& f = d_phi[static_cast<std::size_t>(k)];
    if (!f.is_zero() && f.degree() != 2) throw std::invalid_argument("d phi_k must be a 2-form");
    if (f.span_dim() > sc.n_) throw std::out_of_range("d phi_k uses a label beyond n");
    for (const auto& [m, c] : f.terms()) {
      if (std::abs(c) <= tol) continue;
      const unsigned h = m & kHoloMask;
      const unsigned a = (m & kAntiMask) >> kMaxDim;
      if (std::popcount(h) == 2) {
        const int i = std::countr_zero(h);
        const int j = std::countr_zero(h & (h - 1));
        sc.pp_[sc.index(k, i, j)] = c;
      } else if (std::popcount(h) == 1) {
        sc.pq_[sc.index(k, std::countr_zero(h), std::countr_zero(a))] = c;
      } else {
        throw std::invalid_argument("d phi_" + std::to_string(k + 1) +
                                    " has a (0,2) part; the complex structure is not integrable");
      }
    }
  }
  return sc;
}

// ---------------------------------------------------------------------------
// ExteriorDerivative

ExteriorDerivative::ExteriorDerivative(const StructureConstants& sc)
    : n_(sc.n()), d_label_(2 * kMaxDim, Form(2)) {
  for (int k = 0; k < n_; ++k) {
    d_label_[static_cast<std::size_t>(k)] = sc.d_phi(k);
    d_label_[static_cast<std::size_t>(kMaxDim + k)] = conjugate(sc.d_phi(k));
  }
}

Form ExteriorDerivative::operator()(const Form& f) const {
  if (f.span_dim() > n_)
    throw std::out_of_range("form uses a coframe label beyond n = " + std::to_string(n_));
  Form out(f.degree() + 1);
  if (f.degree() == 0) return out;
  for (const auto& [m, c] : f.terms()) {
    // d(a_1 ^ ... ^ a_p) = sum_s (-1)^s a_1 ^ .. ^ d a_s ^ .. ^ a_p
    int position = 0;
    for (unsigned rest = m; rest != 0; rest &= rest - 1, ++position) {
      const int label = std::countr_zero(rest);
      const auto bit = static_cast<Monomial>(1u << label);
      const auto before = static_cast<Monomial>(m & (bit - 1u));
      const auto after = static_cast<Monomial>(m & ~((bit << 1) - 1u));
      const double sign = (position % 2 == 0) ? 1.0 : -1.0;
      for (const auto& [md, cd] : d_label_[static_cast<std::size_t>(label)].terms()) {
        const int s1 = wedge_sign(before, md);
        if (s1 == 0) continue;
        const auto joined = static_cast<Monomial>(before | md);
        const int s2 = wedge_sign(joined, after);
        if (s2 == 0) continue;
        out.accumulate(static_cast<Monomial>(joined | after), sign * s1 * s2 * c * cd);
      }
    }
  }
  return out;
}

FormMatrix ExteriorDerivative::operator()(const FormMatrix& m) const {
  FormMatrix out(m.rows(), m.cols(), m.degree() + 1);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out.set(i, j, (*this)(m(i, j)));
  return out;
}

Form ExteriorDerivative::dbar(const Form& f) const {
  Form out(f.degree() + 1);
  for (const auto& [pq, piece] : type_split(f)) out += (*this)(piece).part(pq.first, pq.second + 1);
  return out;
}

Form ExteriorDerivative::del(const Form& f) const {
  Form out(f.degree() + 1);
  for (const auto& [pq, piece] : type_split(f)) out += (*this)(piece).part(pq.first + 1, pq.second);
  return out;
}

Form d(const Form& form, const StructureConstants& sc) { return ExteriorDerivative(sc)(form); }

IntegrabilityResult check_integrability(const StructureConstants& sc, double tol) {
  const ExteriorDerivative dd(sc);
  IntegrabilityResult result;
  for (int k = 0; k < sc.n(); ++k) {
    const Form first = sc.d_phi(k);
    result.residual = std::max(result.residual, dd(first).max_norm());
    result.residual = std::max(result.residual, dd(conjugate(first)).max_norm());
  }
  // StructureConstants has no (0,2) slot, so only d^2 = 0 remains to check.
  result.pass = result.residual <= tol;
  return result;
}

Form substitute(const Form& f, std::span<const Form> holo_images, std::span<const Form> anti_images) {
  Form out(f.degree());
  for (const auto& [m, c] : f.terms()) {
    Form term = Form::scalar(c);
    for (unsigned rest = m; rest != 0; rest &= rest - 1) {
      const int label = std::countr_zero(rest);
      const Form& image = label < kMaxDim ? holo_images[static_cast<std::size_t>(label)]
                                          : anti_images[static_cast<std::size_t>(label - kMaxDim)];
      term = wedge(term, image);
    }
    out += term;
  }
  return out;
}

}  // namespace gauduchon
