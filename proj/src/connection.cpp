#include "gauduchon/connection.hpp"

#include <cmath>
#include <sstream>

namespace gauduchon {

ConnectionParams::ConnectionParams(double r, double s) : r_(r), s_(s) {
  if (!std::isfinite(r) || !std::isfinite(s)) throw ParameterError("connection parameters must be finite");
  if (s == 1.0 && r != 0.0) {
    std::ostringstream msg;
    msg << "(r,s) = (" << r << ", 1) lies on the excluded line s = 1, r != 0; use (0, 1) for Levi-Civita";
    throw ParameterError(msg.str());
  }
}

GammaTheta2 gamma_theta2(const ChernData& cd) {
  const int n = cd.n;
  const Tensor3& T = cd.T;
  GammaTheta2 out{FormMatrix(n, n, 1), FormMatrix(n, n, 1), FormMatrix(n, n, 1), FormMatrix(n, n, 1)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Form g10(1), g01(1), t2(1);
      for (int k = 0; k < n; ++k) {
        g10.accumulate(holo_bit(k), T(j, i, k));
        g01.accumulate(anti_bit(k), -std::conj(T(i, j, k)));
        t2.accumulate(holo_bit(k), std::conj(T(k, i, j)));
      }
      out.gamma.set(i, j, g10 + g01);
      out.gamma10.set(i, j, std::move(g10));
      out.gamma01.set(i, j, std::move(g01));
      out.theta2.set(i, j, std::move(t2));
    }
  return out;
}

FormMatrix gauduchon_matrix(const ChernData& cd, double r) {
  return cd.theta + (1.0 - r) * gamma_theta2(cd).gamma;
}

FormMatrix gauduchon_curvature(const ChernData& cd, double r) {
  const FormMatrix th = gauduchon_matrix(cd, r);
  return cd.d(th) - wedge(th, th);
}

namespace {

FormMatrix block_matrix(const FormMatrix& a, const FormMatrix& b, const FormMatrix& c, const FormMatrix& e) {
  const int n = a.rows();
  FormMatrix out(2 * n, 2 * n, 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      out.set(i, j, a(i, j));
      out.set(i, n + j, b(i, j));
      out.set(n + i, j, c(i, j));
      out.set(n + i, n + j, e(i, j));
    }
  return out;
}

}  // namespace

ConnectionBlocks connection_blocks(const ChernData& cd, const ConnectionParams& params) {
  const GammaTheta2 gt = gamma_theta2(cd);
  const double s = params.s();
  ConnectionBlocks out;
  out.theta_t = cd.theta + params.t() * gt.gamma;
  out.full = block_matrix(out.theta_t, s * gt.theta2.conjugate(), s * gt.theta2, out.theta_t.conjugate());
  return out;
}

FormMatrix riemannian_matrix(const ChernData& cd) {
  const GammaTheta2 gt = gamma_theta2(cd);
  const FormMatrix theta1 = cd.theta + gt.gamma;
  return block_matrix(theta1, gt.theta2.conjugate(), gt.theta2, theta1.conjugate());
}

CurvatureBlocks curvature_blocks_ts(const ChernData& cd, const GammaTheta2& gt, double t, double s) {
  const FormMatrix th = cd.theta + t * gt.gamma;
  const FormMatrix th2bar = gt.theta2.conjugate();
  CurvatureBlocks out;
  out.Theta1 = cd.d(th) - wedge(th, th) - (s * s) * wedge(th2bar, gt.theta2);
  out.Theta2 = s * (cd.d(gt.theta2) - wedge(gt.theta2, th) - wedge(th.conjugate(), gt.theta2));
  return out;
}

CurvatureBlocks curvature_blocks(const ChernData& cd, const ConnectionParams& params) {
  return curvature_blocks_ts(cd, gamma_theta2(cd), params.t(), params.s());
}

CovariantDerivatives covariant_derivative(const ChernData& cd, double r) {
  const int n = cd.n;
  const Tensor3& T = cd.T;
  const FormMatrix th = gauduchon_matrix(cd, r);

  // hol(i,q,l) = theta^r_{iq}(e_l), anti(i,q,l) = theta^r_{iq}(ebar_l).
  Tensor3 hol(n), anti(n);
  for (int i = 0; i < n; ++i)
    for (int q = 0; q < n; ++q)
      for (int l = 0; l < n; ++l) {
        hol(i, q, l) = th(i, q).on_holo(l);
        anti(i, q, l) = th(i, q).on_anti(l);
      }

  // Components are constant in the invariant frame, so only the connection terms survive:
  // T^j_{ik;X} = -sum_q [T^j_{qk} th_{iq}(X) + T^j_{iq} th_{kq}(X) - T^q_{ik} th_{qj}(X)].
  auto contract = [&](const Tensor3& coeff, Tensor4& out) {
    out = Tensor4(n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            Complex acc{};
            for (int q = 0; q < n; ++q)
              acc -= (T(j, q, k) * coeff(i, q, l) + T(j, i, q) * coeff(k, q, l)) - T(q, i, k) * coeff(q, j, l);
            out(j, i, k, l) = acc;
          }
  };

  CovariantDerivatives cov;
  cov.r = r;
  contract(hol, cov.dT);
  contract(anti, cov.dTbar);
  cov.dEta = Tensor2(n);
  cov.dEtaBar = Tensor2(n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i) {
        cov.dEta(k, l) += cov.dT(i, i, k, l);
        cov.dEtaBar(k, l) += cov.dTbar(i, i, k, l);
      }
  for (int k = 0; k < n; ++k) cov.chi += cov.dEtaBar(k, k);
  return cov;
}

double xi(double r) {
  if (r == 0.5) throw ParameterError("xi is undefined at r = 1/2");
  return r / (2.0 * r - 1.0);
}

std::pair<double, double> psi(double r, double s) {
  if (s == 0.0 || s == 1.0 || s == -1.0) throw ParameterError("psi requires s not in {0, 1, -1}");
  return {(1.0 - s) / (1.0 + s) * r, -s};
}

}  // namespace gauduchon
