#include "gauduchon/identities.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <initializer_list>

#include <json.hpp>

#include "gauduchon/locus.hpp"

namespace gauduchon {

namespace {

constexpr double kParamEps = 1e-12;

bool same(double a, double b) { return std::abs(a - b) <= kParamEps; }

// Correctly rounded sum (Shewchuk partials with the final half-way correction). The result
// does not depend on the order of the inputs and negating every input negates it exactly,
// so cyclic sums of skew terms stay exactly skew.
double exact_sum(std::initializer_list<double> xs) {
  std::vector<double> partials;
  for (double x : xs) {
    std::size_t i = 0;
    for (double y : partials) {
      if (std::abs(x) < std::abs(y)) std::swap(x, y);
      const double hi = x + y;
      const double lo = y - (hi - x);
      if (lo != 0.0) partials[i++] = lo;
      x = hi;
    }
    partials.resize(i);
    partials.push_back(x);
  }
  if (partials.empty()) return 0.0;
  std::size_t m = partials.size();
  double hi = partials[--m];
  double lo = 0.0;
  while (m > 0) {
    const double x = hi;
    const double y = partials[--m];
    hi = x + y;
    lo = y - (hi - x);
    if (lo != 0.0) break;
  }
  if (m > 0 && ((lo < 0.0 && partials[m - 1] < 0.0) || (lo > 0.0 && partials[m - 1] > 0.0))) {
    const double y = lo * 2.0;
    const double x = hi + y;
    if (y == x - hi) hi = x;
  }
  return hi;
}

Complex exact_sum3(Complex a, Complex b, Complex c) {
  return {exact_sum({a.real(), b.real(), c.real()}), exact_sum({a.imag(), b.imag(), c.imag()})};
}

Tensor4 build(int n, const std::function<Complex(int, int, int, int)>& f) {
  Tensor4 out(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) out(a, b, c, d) = f(a, b, c, d);
  return out;
}

// Quadratic torsion contractions, all indexed (j, i, k, l).
struct Quadratics {
  Tensor4 w;    // sum_q T^q_{ik} conj(T^q_{jl})
  Tensor4 vji;  // sum_q T^j_{iq} conj(T^k_{lq})
  Tensor4 vjk;  // sum_q T^j_{kq} conj(T^i_{lq})
  Tensor4 vli;  // sum_q T^l_{iq} conj(T^k_{jq})
  Tensor4 vlk;  // sum_q T^l_{kq} conj(T^i_{jq})
  Tensor4 tt;   // sum_q T^q_{ik} T^j_{lq}
};

Quadratics quadratics(const ChernData& cd) {
  const int n = cd.n;
  const Tensor3& T = cd.T;
  auto sum = [n](auto term) {
    Complex acc{};
    for (int q = 0; q < n; ++q) acc += term(q);
    return acc;
  };
  Quadratics Q;
  Q.w = build(n, [&](int j, int i, int k, int l) { return sum([&](int q) { return T(q, i, k) * std::conj(T(q, j, l)); }); });
  Q.vji = build(n, [&](int j, int i, int k, int l) { return sum([&](int q) { return T(j, i, q) * std::conj(T(k, l, q)); }); });
  Q.vjk = build(n, [&](int j, int i, int k, int l) { return sum([&](int q) { return T(j, k, q) * std::conj(T(i, l, q)); }); });
  Q.vli = build(n, [&](int j, int i, int k, int l) { return sum([&](int q) { return T(l, i, q) * std::conj(T(k, j, q)); }); });
  Q.vlk = build(n, [&](int j, int i, int k, int l) { return sum([&](int q) { return T(l, k, q) * std::conj(T(i, j, q)); }); });
  Q.tt = build(n, [&](int j, int i, int k, int l) { return sum([&](int q) { return T(q, i, k) * T(j, l, q); }); });
  return Q;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x == 0.0 ? 0.0 : x);
  return buf;
}

std::string at_r(double r) { return "r=" + fmt(r); }
std::string at_pair(double r, double rp) { return "r=" + fmt(r) + ",r'=" + fmt(rp); }
std::string at_rs(double r, double s) { return "r=" + fmt(r) + ",s=" + fmt(s); }

template <std::size_t N>
std::string where(const std::array<int, N>& idx, const char* names) {
  std::string out = "max at (";
  out += names;
  out += ")=(";
  for (std::size_t a = 0; a < N; ++a) {
    if (a) out += ",";
    out += std::to_string(idx[a] + 1);
  }
  return out + ")";
}

struct Residual {
  double value = 0.0;
  std::string where;
};

Residual of(const Tensor4& t, const char* names = "j,i,k,l") { return {t.max_norm(), where(t.argmax(), names)}; }
Residual of(const Tensor2& t, const char* names = "k,l") { return {t.max_norm(), where(t.argmax(), names)}; }
Residual of(const Eigen::MatrixXcd& m) {
  Tensor2 t(static_cast<int>(m.rows()));
  for (int a = 0; a < m.rows(); ++a)
    for (int b = 0; b < m.cols(); ++b) t(a, b) = m(a, b);
  return of(t);
}
Residual of(Complex c) { return {std::abs(c), ""}; }

Residual worst(std::initializer_list<std::pair<const char*, Residual>> parts) {
  Residual out;
  std::string label;
  for (const auto& [name, res] : parts)
    if (res.value >= out.value) {
      out = res;
      label = name;
    }
  out.where = label + (out.where.empty() ? "" : " " + out.where);
  return out;
}

IdentityReport passed_through(std::string id, std::string anchor, std::string at, const Residual& res, double tol) {
  IdentityReport rep{std::move(id), std::move(anchor), std::move(at), true, res.value, res.value < tol, res.where};
  return rep;
}

IdentityReport skipped(std::string id, std::string anchor, std::string at, std::string why) {
  return {std::move(id), std::move(anchor), std::move(at), false, 0.0, false, std::move(why)};
}

struct Hypothesis {
  bool held = true;
  std::string why;
};

Hypothesis kahler_like_at(const ChernData& cd, double r, double s, double tol) {
  const KahlerLikeResult res = is_kahler_like(cd, ConnectionParams(r, s), tol);
  if (res.kahler_like) return {};
  return {false, "hypothesis failed: obstruction " + fmt(res.residual) + " at " + at_rs(r, s)};
}

Hypothesis require(bool ok, const std::string& why) { return ok ? Hypothesis{} : Hypothesis{false, "hypothesis failed: " + why}; }

Hypothesis both(const Hypothesis& a, const Hypothesis& b) { return a.held ? b : a; }

// Emits one report per (id, anchor, residual) entry, or marks them all not applicable.
std::vector<IdentityReport> emit(const Hypothesis& hyp, const std::string& at, double tol,
                                 const std::vector<std::pair<std::pair<const char*, const char*>, std::function<Residual()>>>& items) {
  std::vector<IdentityReport> out;
  for (const auto& [labels, compute] : items) {
    if (hyp.held)
      out.push_back(passed_through(labels.first, labels.second, at, compute(), tol));
    else
      out.push_back(skipped(labels.first, labels.second, at, hyp.why));
  }
  return out;
}

}  // namespace

namespace residual {

Tensor4 transfer_dbar(const ChernData& cd, double r, double rp) {
  const CovariantDerivatives a = covariant_derivative(cd, r), b = covariant_derivative(cd, rp);
  const Tensor3& T = cd.T;
  const int n = cd.n;
  return build(n, [&](int j, int i, int k, int l) {
    Complex x{};
    for (int q = 0; q < n; ++q)
      x += (T(j, q, k) * std::conj(T(i, q, l)) + T(j, i, q) * std::conj(T(k, q, l))) - T(q, i, k) * std::conj(T(q, j, l));
    return (b.dTbar(j, i, k, l) - a.dTbar(j, i, k, l)) - (r - rp) * x;
  });
}

Tensor4 transfer_del(const ChernData& cd, double r, double rp) {
  const CovariantDerivatives a = covariant_derivative(cd, r), b = covariant_derivative(cd, rp);
  const Tensor3& T = cd.T;
  const int n = cd.n;
  return build(n, [&](int j, int i, int k, int l) {
    Complex x{};
    for (int q = 0; q < n; ++q) x += exact_sum3(T(q, l, i) * T(j, k, q), T(q, k, l) * T(j, i, q), T(q, i, k) * T(j, l, q));
    return (b.dT(j, i, k, l) - a.dT(j, i, k, l)) - (rp - r) * x;
  });
}

Tensor4 gauduchon_del(const ChernData& cd, double r) {
  const CovariantDerivatives D = covariant_derivative(cd, r);
  const Tensor3& T = cd.T;
  const int n = cd.n;
  return build(n, [&](int l, int i, int k, int j) {
    Complex x{};
    for (int q = 0; q < n; ++q) x += T(q, i, k) * T(l, j, q);
    return D.dT(l, i, k, j) + (1.0 + r) * x;
  });
}

Tensor4 gauduchon_cyclic(const ChernData& cd, double r) {
  const Tensor3& T = cd.T;
  const int n = cd.n;
  return build(n, [&](int l, int i, int j, int k) {
    Complex x{};
    for (int q = 0; q < n; ++q) x += exact_sum3(T(q, i, j) * T(l, k, q), T(q, k, i) * T(l, j, q), T(q, j, k) * T(l, i, q));
    return r * x;
  });
}

Tensor4 gauduchon_dbar(const ChernData& cd, double r) {
  const CovariantDerivatives D = covariant_derivative(cd, r);
  const Quadratics Q = quadratics(cd);
  const double lhs = 4.0 * r * (2.0 * r - 1.0);
  const double cw = 4.0 * r * r * (r - 1.0), cj = (r - 1.0) * (5.0 * r * r - 1.0), cl = (r - 1.0) * (r - 1.0) * (r - 1.0);
  return build(cd.n, [&](int j, int i, int k, int l) {
    const Complex rhs = (cw * Q.w(j, i, k, l) + cj * (Q.vji(j, i, k, l) - Q.vjk(j, i, k, l))) -
                        cl * (Q.vli(j, i, k, l) - Q.vlk(j, i, k, l));
    return lhs * D.dTbar(j, i, k, l) - rhs;
  });
}

Tensor4 plane_cyclic_del(const ChernData& cd, double r, double s) {
  const double t = ConnectionParams(r, s).t();
  const CovariantDerivatives D = covariant_derivative(cd, 1.0 - t);
  const Quadratics Q = quadratics(cd);
  auto f = [&](int j, int i, int k, int l) { return D.dT(j, i, k, l) + (3.0 * t - 2.0) * Q.tt(j, i, k, l); };
  return build(cd.n, [&](int j, int i, int k, int l) { return exact_sum3(f(j, i, k, l), f(j, k, l, i), f(j, l, i, k)); });
}

Tensor4 plane_s_del(const ChernData& cd, double r, double s) {
  const double t = ConnectionParams(r, s).t();
  const CovariantDerivatives D = covariant_derivative(cd, 1.0 - t);
  const Quadratics Q = quadratics(cd);
  return build(cd.n, [&](int j, int i, int k, int l) { return s * (D.dT(j, i, k, l) + t * Q.tt(j, i, k, l)); });
}

Tensor4 plane_s_dbar_skew(const ChernData& cd, double r, double s) {
  const double t = ConnectionParams(r, s).t();
  const CovariantDerivatives D = covariant_derivative(cd, 1.0 - t);
  const Quadratics Q = quadratics(cd);
  return build(cd.n, [&](int j, int i, int k, int l) {
    return s * ((D.dTbar(j, i, k, l) - D.dTbar(l, i, k, j)) + 2.0 * (t - 1.0) * Q.w(j, i, k, l));
  });
}

Tensor4 plane_t_del(const ChernData& cd, double r, double s) {
  const double t = ConnectionParams(r, s).t();
  const CovariantDerivatives D = covariant_derivative(cd, 1.0 - t);
  const Tensor3& T = cd.T;
  const int n = cd.n;
  return build(n, [&](int j, int i, int k, int l) {
    Complex a{}, b{}, c{};
    for (int q = 0; q < n; ++q) {
      a += T(q, k, l) * T(j, i, q);
      b += T(q, i, k) * T(j, l, q);
      c += T(q, l, i) * T(j, k, q);
    }
    return t * (D.dT(j, i, k, l) - D.dT(j, i, l, k) + 2.0 * (t - 1.0) * a + t * b + t * c);
  });
}

Tensor4 plane_dbar_mixed(const ChernData& cd, double r, double s) {
  const double t = ConnectionParams(r, s).t();
  const CovariantDerivatives D = covariant_derivative(cd, 1.0 - t);
  const Quadratics Q = quadratics(cd);
  return build(cd.n, [&](int j, int i, int k, int l) {
    const Complex lhs = 2.0 * (t - 1.0) * D.dTbar(j, i, k, l) +
                        t * (std::conj(D.dTbar(i, j, l, k)) - std::conj(D.dTbar(k, j, l, i)));
    const Complex rhs = -2.0 * t * (t - 1.0) * (Q.w(j, i, k, l) + (Q.vji(j, i, k, l) - Q.vjk(j, i, k, l))) +
                        (t * t - s * s) * (Q.vli(j, i, k, l) - Q.vlk(j, i, k, l));
    return lhs - rhs;
  });
}

Tensor4 plane_dbar(const ChernData& cd, double r, double s) {
  const double t = ConnectionParams(r, s).t();
  const CovariantDerivatives D = covariant_derivative(cd, 1.0 - t);
  const Quadratics Q = quadratics(cd);
  const double lhs = 4.0 * (t - 1.0) * (2.0 * t - 1.0);
  const double cw = -4.0 * t * (t - 1.0) * (t - 1.0);
  const double cj = -t * (5.0 * t * t - 10.0 * t + 4.0 + s * s);
  const double cl = t * t * t - 3.0 * s * s * t + 2.0 * s * s;
  return build(cd.n, [&](int j, int i, int k, int l) {
    const Complex rhs = (cw * Q.w(j, i, k, l) + cj * (Q.vji(j, i, k, l) - Q.vjk(j, i, k, l))) +
                        cl * (Q.vli(j, i, k, l) - Q.vlk(j, i, k, l));
    return lhs * D.dTbar(j, i, k, l) - rhs;
  });
}

}  // namespace residual

std::vector<IdentityReport> check_transfer(const ChernData& cd, double r, double rp, double tol) {
  const std::string at = at_pair(r, rp);
  return emit(Hypothesis{}, at, tol,
              {{{"transfer.dbar_torsion",
                 "T^j_{ik|lbar} = T^j_{ik,lbar} + (r-r') sum_q {T^j_{qk} conj(T^i_{ql}) + T^j_{iq} conj(T^k_{ql}) - "
                 "T^q_{ik} conj(T^q_{jl})}"},
                [&] { return of(residual::transfer_dbar(cd, r, rp)); }},
               {{"transfer.dbar_eta", "eta_{k|lbar} = eta_{k,lbar} + (r'-r) conj(phi_l^k)"},
                [&] {
                  const CovariantDerivatives a = covariant_derivative(cd, r), b = covariant_derivative(cd, rp);
                  const TorsionInvariants inv = torsion_invariants(cd);
                  Tensor2 res(cd.n);
                  for (int k = 0; k < cd.n; ++k)
                    for (int l = 0; l < cd.n; ++l)
                      res(k, l) = b.dEtaBar(k, l) - a.dEtaBar(k, l) - (rp - r) * std::conj(inv.phi(l, k));
                  return of(res);
                }},
               {{"transfer.chi", "chi' = chi + (r'-r) |eta|^2"},
                [&] {
                  const CovariantDerivatives a = covariant_derivative(cd, r), b = covariant_derivative(cd, rp);
                  return of(b.chi - a.chi - (rp - r) * torsion_invariants(cd).normEta2);
                }},
               {{"transfer.del_torsion",
                 "T^j_{ik|l} = T^j_{ik,l} + (r'-r) sum_q {T^q_{li} T^j_{kq} + T^q_{kl} T^j_{iq} + T^q_{ik} T^j_{lq}}"},
                [&] { return of(residual::transfer_del(cd, r, rp)); }}});
}

std::vector<IdentityReport> check_gauduchon_del(const ChernData& cd, double r, double tol) {
  const Hypothesis hyp = both(require(!same(r, 1.0), "r = 1"), kahler_like_at(cd, r, 0.0, tol));
  return emit(hyp, at_r(r), tol,
              {{{"gauduchon.del_torsion", "T^l_{ik,j} = -(1+r) sum_q T^q_{ik} T^l_{jq}"},
                [&] { return of(residual::gauduchon_del(cd, r), "l,i,k,j"); }},
               {{"gauduchon.cyclic_torsion", "r sum_q {T^q_{ij} T^l_{kq} + T^q_{ki} T^l_{jq} + T^q_{jk} T^l_{iq}} = 0"},
                [&] { return of(residual::gauduchon_cyclic(cd, r), "l,i,j,k"); }}});
}

std::vector<IdentityReport> check_gauduchon_dbar(const ChernData& cd, double r, double tol) {
  const Hypothesis hyp = kahler_like_at(cd, r, 0.0, tol);
  return emit(
      hyp, at_r(r), tol,
      {{{"gauduchon.dbar_torsion",
         "4r(2r-1) T^j_{ik,lbar} = 4r^2(r-1) sum_q T^q_{ik} conj(T^q_{jl}) + (r-1)(5r^2-1) sum_q {T^j_{iq} "
         "conj(T^k_{lq}) - T^j_{kq} conj(T^i_{lq})} - (r-1)^3 sum_q {T^l_{iq} conj(T^k_{jq}) - T^l_{kq} conj(T^i_{jq})}"},
        [&] { return of(residual::gauduchon_dbar(cd, r)); }},
       {{"gauduchon.dbar_eta",
         "4r(2r-1) eta_{k,lbar} = 4r^2(r-1) A_{kl} + (r-1)(5r^2-1)(conj(phi_l^k) - A_{kl}) - (r-1)^3 (B_{kl} - phi_k^l)"},
        [&] {
          const CovariantDerivatives D = covariant_derivative(cd, r);
          const TorsionInvariants inv = torsion_invariants(cd);
          const double lhs = 4.0 * r * (2.0 * r - 1.0);
          const double ca = 4.0 * r * r * (r - 1.0), cp = (r - 1.0) * (5.0 * r * r - 1.0), cb = std::pow(r - 1.0, 3);
          Tensor2 res(cd.n);
          for (int k = 0; k < cd.n; ++k)
            for (int l = 0; l < cd.n; ++l)
              res(k, l) = lhs * D.dEtaBar(k, l) - (ca * inv.A(k, l) + cp * (std::conj(inv.phi(l, k)) - inv.A(k, l)) -
                                                   cb * (inv.B(k, l) - inv.phi(k, l)));
          return of(res);
        }},
       {{"gauduchon.chi", "2(2r-1) chi = (r-1)(3r-1)|eta|^2 - (r-1)^2 |T|^2"},
        [&] {
          const CovariantDerivatives D = covariant_derivative(cd, r);
          const TorsionInvariants inv = torsion_invariants(cd);
          return of(2.0 * (2.0 * r - 1.0) * D.chi -
                    ((r - 1.0) * (3.0 * r - 1.0) * inv.normEta2 - (r - 1.0) * (r - 1.0) * inv.normT2));
        }}});
}

IdentityReport check_gauduchon_pair(const ChernData& cd, double r, double rp, double tol) {
  const Hypothesis hyp =
      both(require(!same(r, rp), "r = r'"), both(kahler_like_at(cd, r, 0.0, tol), kahler_like_at(cd, rp, 0.0, tol)));
  return emit(hyp, at_pair(r, rp), tol,
              {{{"gauduchon.pair_norms", "(2rr'-r-r') {|eta|^2 + |T|^2} = 0"},
                [&] {
                  const TorsionInvariants inv = torsion_invariants(cd);
                  return of(Complex{(2.0 * r * rp - r - rp) * (inv.normEta2 + inv.normT2)});
                }}})
      .front();
}

IdentityReport check_gauduchon_pair_del(const ChernData& cd, double r, double rp, double tol) {
  const Hypothesis hyp =
      both(require(!same(r, 0.0) && !same(r, 1.0) && !same(rp, 1.0) && !same(r, rp), "r in {0,1}, r' = 1 or r = r'"),
           both(kahler_like_at(cd, r, 0.0, tol), kahler_like_at(cd, rp, 0.0, tol)));
  return emit(hyp, at_pair(r, rp), tol,
              {{{"gauduchon.pair_del_vanish", "T^j_{ik,l} = T^j_{ik|l} = sum_q T^q_{ik} T^j_{ql} = 0 and C = 0"},
                [&] {
                  const TorsionInvariants inv = torsion_invariants(cd);
                  Tensor4 tt(cd.n);
                  const Tensor3& T = cd.T;
                  for (int j = 0; j < cd.n; ++j)
                    for (int i = 0; i < cd.n; ++i)
                      for (int k = 0; k < cd.n; ++k)
                        for (int l = 0; l < cd.n; ++l)
                          for (int q = 0; q < cd.n; ++q) tt(j, i, k, l) += T(q, i, k) * T(j, q, l);
                  return worst({{"T_{,l}", of(covariant_derivative(cd, r).dT)},
                                {"T_{|l}", of(covariant_derivative(cd, rp).dT)},
                                {"TT", of(tt)},
                                {"C", of(inv.C)}});
                }}})
      .front();
}

std::vector<IdentityReport> check_dual_pair(const ChernData& cd, double r, double tol) {
  std::string at = at_r(r);
  Hypothesis hyp = require(!same(r, 0.5), "r = 1/2");
  double rp = 0.0;
  if (hyp.held) {
    rp = xi(r);
    at = at_pair(r, rp);
    hyp = both(require(!same(r, rp), "xi(r) = r"), both(kahler_like_at(cd, r, 0.0, tol), kahler_like_at(cd, rp, 0.0, tol)));
  }
  return emit(hyp, at, tol,
              {{{"dual_pair.a_equals_b", "A = B"},
                [&] {
                  const TorsionInvariants inv = torsion_invariants(cd);
                  return of(Eigen::MatrixXcd(inv.A - inv.B));
                }},
               {{"dual_pair.phi_hermitian", "phi = phi^*"},
                [&] {
                  const TorsionInvariants inv = torsion_invariants(cd);
                  return of(Eigen::MatrixXcd(inv.phi - inv.phi.adjoint()));
                }},
               {{"dual_pair.dbar_eta", "eta_{k,lbar} = (r-1)(3r-1)/(2(2r-1)) phi_k^l - (r-1)^2/(2(2r-1)) A_{kl}"},
                [&] {
                  const CovariantDerivatives D = covariant_derivative(cd, r);
                  const TorsionInvariants inv = torsion_invariants(cd);
                  const double den = 2.0 * (2.0 * r - 1.0);
                  const double cp = (r - 1.0) * (3.0 * r - 1.0) / den, ca = (r - 1.0) * (r - 1.0) / den;
                  Tensor2 res(cd.n);
                  for (int k = 0; k < cd.n; ++k)
                    for (int l = 0; l < cd.n; ++l) res(k, l) = D.dEtaBar(k, l) - (cp * inv.phi(k, l) - ca * inv.A(k, l));
                  return of(res);
                }}});
}

std::vector<IdentityReport> check_plane(const ChernData& cd, double r, double s, double tol) {
  const ConnectionParams params(r, s);
  const double t = params.t();
  const Hypothesis hyp = kahler_like_at(cd, r, s, tol);
  const bool half = std::abs(2.0 * t - 1.0) <= kParamEps;
  return emit(
      hyp, at_rs(r, s), tol,
      {{{"plane.cyclic_del", "cyclic_{ikl} {T^j_{ik,l} + (3t-2) sum_q T^q_{ik} T^j_{lq}} = 0"},
        [&] { return of(residual::plane_cyclic_del(cd, r, s)); }},
       {{"plane.s_del", "s {T^j_{ik,l} + t sum_q T^q_{ik} T^j_{lq}} = 0"}, [&] { return of(residual::plane_s_del(cd, r, s)); }},
       {{"plane.s_dbar_skew", "s {T^j_{ik,lbar} - T^l_{ik,jbar} + 2(t-1) sum_q T^q_{ik} conj(T^q_{jl})} = 0"},
        [&] { return of(residual::plane_s_dbar_skew(cd, r, s)); }},
       {{"plane.t_del",
         "t {T^j_{ik,l} - T^j_{il,k} + 2(t-1) sum_q T^q_{kl} T^j_{iq} + t sum_q T^q_{ik} T^j_{lq} + t sum_q T^q_{li} T^j_{kq}} = 0"},
        [&] { return of(residual::plane_t_del(cd, r, s)); }},
       {{"plane.dbar_mixed",
         "2(t-1) T^j_{ik,lbar} + t (conj(T^i_{jl,kbar}) - conj(T^k_{jl,ibar})) = -2t(t-1)(w + v^j_i - v^j_k) + "
         "(t^2-s^2)(v^l_i - v^l_k)"},
        [&] { return of(residual::plane_dbar_mixed(cd, r, s)); }},
       {{"plane.dbar_torsion",
         "4(t-1)(2t-1) T^j_{ik,lbar} = -4t(t-1)^2 w - t(5t^2-10t+4+s^2)(v^j_i - v^j_k) + (t^3-3s^2t+2s^2)(v^l_i - v^l_k)"},
        [&] { return of(residual::plane_dbar(cd, r, s)); }},
       {{"plane.torsion_norm_balance",
         half ? "sum_q |T^q_{ik}|^2 = (1/4+s^2) sum_q {2Re(T^i_{iq} conj(T^k_{kq})) - |T^i_{kq}|^2 - |T^k_{iq}|^2}"
              : "4s(t-1)^2 sum_q |T^q_{ik}|^2 = s(3t^2-2t-s^2) sum_q {2Re(T^i_{iq} conj(T^k_{kq})) - |T^i_{kq}|^2 - "
                "|T^k_{iq}|^2}"},
        [&] {
          const Tensor3& T = cd.T;
          Tensor2 res(cd.n);
          for (int i = 0; i < cd.n; ++i)
            for (int k = 0; k < cd.n; ++k) {
              double s1 = 0.0, s2 = 0.0;
              for (int q = 0; q < cd.n; ++q) {
                s1 += std::norm(T(q, i, k));
                s2 += 2.0 * std::real(T(i, i, q) * std::conj(T(k, k, q))) - std::norm(T(i, k, q)) - std::norm(T(k, i, q));
              }
              res(i, k) = half ? s1 - (0.25 + s * s) * s2
                               : 4.0 * s * (t - 1.0) * (t - 1.0) * s1 - s * (3.0 * t * t - 2.0 * t - s * s) * s2;
            }
          return of(res, "i,k");
        }}});
}

std::vector<IdentityReport> check_strominger_triple(const ChernData& cd, double tol) {
  const Hypothesis hyp = kahler_like_at(cd, -1.0, 2.0, tol);
  auto chern = [&cd] { return covariant_derivative(cd, 1.0); };
  return emit(
      hyp, at_rs(-1.0, 2.0), tol,
      {{{"strominger_triple.chern_del_torsion", "T^j_{ik,l} = 0"}, [&] { return of(chern().dT); }},
       {{"strominger_triple.cyclic_torsion", "sum_q {T^q_{ik} T^j_{lq} + T^q_{li} T^j_{kq} + T^q_{kl} T^j_{iq}} = 0"},
        [&] {
          const Tensor3& T = cd.T;
          return of(build(cd.n, [&](int j, int i, int k, int l) {
            Complex x{};
            for (int q = 0; q < cd.n; ++q)
              x += exact_sum3(T(q, i, k) * T(j, l, q), T(q, l, i) * T(j, k, q), T(q, k, l) * T(j, i, q));
            return x;
          }));
        }},
       {{"strominger_triple.dbar_skew", "T^j_{ik,lbar} - T^l_{ik,jbar} = 2w"},
        [&] {
          const CovariantDerivatives D = chern();
          const Quadratics Q = quadratics(cd);
          return of(build(cd.n, [&](int j, int i, int k, int l) {
            return (D.dTbar(j, i, k, l) - D.dTbar(l, i, k, j)) - 2.0 * Q.w(j, i, k, l);
          }));
        }},
       {{"strominger_triple.dbar_torsion", "T^j_{ik,lbar} = 2(v^l_i - v^l_k)"},
        [&] {
          const CovariantDerivatives D = chern();
          const Quadratics Q = quadratics(cd);
          return of(build(cd.n, [&](int j, int i, int k, int l) {
            return D.dTbar(j, i, k, l) - 2.0 * (Q.vli(j, i, k, l) - Q.vlk(j, i, k, l));
          }));
        }},
       {{"strominger_triple.w_v_balance", "w + v^j_i + v^l_k - v^l_i - v^j_k = 0"},
        [&] {
          const Quadratics Q = quadratics(cd);
          return of(build(cd.n, [&](int j, int i, int k, int l) {
            return Q.w(j, i, k, l) + (Q.vji(j, i, k, l) - Q.vjk(j, i, k, l)) + (Q.vlk(j, i, k, l) - Q.vli(j, i, k, l));
          }));
        }},
       {{"strominger_triple.strominger_dbar_parallel", "T^j_{ik|lbar} = 0 for the Strominger connection"},
        [&] { return of(covariant_derivative(cd, -1.0).dTbar); }}});
}

IdentityReport check_balanced(const ChernData& cd, double tol) {
  return emit(kahler_like_at(cd, 0.0, 0.0, tol), at_r(0.0), tol,
              {{{"lichnerowicz.balanced", "eta = 0, A = B, phi = phi^*"},
                [&] {
                  const TorsionInvariants inv = torsion_invariants(cd);
                  double eta_norm = 0.0;
                  for (const Complex& e : inv.eta) eta_norm = std::max(eta_norm, std::abs(e));
                  return worst({{"eta", Residual{eta_norm, ""}},
                                {"A-B", of(Eigen::MatrixXcd(inv.A - inv.B))},
                                {"phi-phi*", of(Eigen::MatrixXcd(inv.phi - inv.phi.adjoint()))}});
                }}})
      .front();
}

IdentityReport check_ddbar_omega(const ChernData& cd, double r, double tol) {
  return emit(kahler_like_at(cd, r, 0.0, tol), at_r(r), tol,
              {{{"gauduchon.ddbar_omega",
                 "n(2r-1) i ddbar omega^{n-1} = {(r-1)^2 |T|^2 + (r^2+6r-3) |eta|^2} omega^n"},
                [&] {
                  const KahlerFormData kf = kahler_form_data(cd);
                  const TorsionInvariants inv = torsion_invariants(cd);
                  const double c = (r - 1.0) * (r - 1.0) * inv.normT2 + (r * r + 6.0 * r - 3.0) * inv.normEta2;
                  const Form diff = Complex{cd.n * (2.0 * r - 1.0)} * kf.i_ddbar_omega - Complex{c} * kf.omega_top;
                  return Residual{diff.max_norm(), ""};
                }}})
      .front();
}

std::vector<IdentityReport> verify_suite(const ChernData& cd, double tol) {
  std::vector<IdentityReport> out;
  auto append = [&out](std::vector<IdentityReport> reps) {
    for (auto& rep : reps) out.push_back(std::move(rep));
  };
  for (const auto& [r, rp] : std::vector<std::pair<double, double>>{{1.0, -1.0}, {0.0, 1.0 / 3.0}, {-0.5, 2.0}})
    append(check_transfer(cd, r, rp, tol));

  std::vector<double> rs{-1.0, 0.0, 1.0 / 3.0, 1.0};
  const LocusReport locus = full_locus(cd);
  for (const LineRoot& root : locus.line_roots) {
    bool known = false;
    for (double r : rs) known = known || std::abs(r - root.r) < 1e-9;
    if (!known) rs.push_back(root.r);
  }
  for (double r : rs) {
    append(check_gauduchon_del(cd, r, tol));
    append(check_gauduchon_dbar(cd, r, tol));
    out.push_back(check_ddbar_omega(cd, r, tol));
    append(check_dual_pair(cd, r, tol));
  }
  for (std::size_t a = 0; a < rs.size(); ++a)
    for (std::size_t b = a + 1; b < rs.size(); ++b) {
      out.push_back(check_gauduchon_pair(cd, rs[a], rs[b], tol));
      out.push_back(check_gauduchon_pair_del(cd, rs[a], rs[b], tol));
    }

  std::vector<std::pair<double, double>> plane{{1.0, 0.0}, {-1.0, 0.0},  {0.0, 0.0},  {1.0 / 3.0, 0.0},
                                               {0.0, 1.0}, {0.0, -1.0}, {-1.0, 2.0}, {1.0 / 3.0, -2.0}};
  for (const PlanePoint& p : locus.plane_points) {
    bool known = false;
    for (const auto& [r, s] : plane) known = known || (std::abs(r - p.r) < 1e-9 && std::abs(s - p.s) < 1e-9);
    if (!known && !(p.s == 1.0 && p.r != 0.0)) plane.emplace_back(p.r, p.s);
  }
  for (const auto& [r, s] : plane) append(check_plane(cd, r, s, tol));

  append(check_strominger_triple(cd, tol));
  out.push_back(check_balanced(cd, tol));
  return out;
}

std::string reports_to_json(const std::vector<IdentityReport>& reports, int indent) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const IdentityReport& rep : reports) {
    nlohmann::ordered_json j;
    j["id"] = rep.id;
    j["anchor"] = rep.anchor;
    j["at"] = rep.at;
    j["applicable"] = rep.applicable;
    j["residual"] = rep.applicable ? nlohmann::ordered_json(rep.residual) : nlohmann::ordered_json(nullptr);
    j["pass"] = rep.applicable ? nlohmann::ordered_json(rep.pass) : nlohmann::ordered_json(nullptr);
    arr.push_back(std::move(j));
  }
  return arr.dump(indent);
}

}  // namespace gauduchon
