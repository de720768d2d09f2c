#include "gauduchon/hermitian.hpp"

#include <cmath>
#include <sstream>

namespace gauduchon {

void validate(const ManifoldSpec& spec, double tol) {
  if (spec.n < kMinSupportedDim || spec.n > kMaxDim)
    throw SpecError("complex dimension n = " + std::to_string(spec.n) + " outside supported range 2..6");
  if (spec.sc.n() != spec.n) throw SpecError("structure constants do not match n");
  if (spec.metric.rows() != spec.n || spec.metric.cols() != spec.n)
    throw SpecError("metric must be an n x n matrix");

  const double asym = (spec.metric - spec.metric.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol) {
    std::ostringstream msg;
    msg << "metric not Hermitian (max |g - g^*| = " << asym << ")";
    throw SpecError(msg.str());
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(spec.metric, Eigen::EigenvaluesOnly);
  const double min_eig = eig.eigenvalues().minCoeff();
  if (!(min_eig > tol)) {
    std::ostringstream msg;
    msg << "metric not positive definite (min eigenvalue " << min_eig << ")";
    throw SpecError(msg.str());
  }

  const auto integrable = check_integrability(spec.sc, tol);
  if (!integrable.pass) {
    std::ostringstream msg;
    msg << "structure constants fail integrability: max |d(d phi_k)| = " << integrable.residual;
    throw SpecError(msg.str());
  }
}

ManifoldSpec rescaled(const ManifoldSpec& spec, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("metric rescaling factor must be positive");
  ManifoldSpec out = spec;
  out.metric *= c;
  return out;
}

UnitaryStructure unitarize(const ManifoldSpec& spec) {
  const int n = spec.n;
  const Eigen::LLT<Eigen::MatrixXcd> llt(spec.metric);
  if (llt.info() != Eigen::Success) throw SpecError("Cholesky factorization failed: metric not positive definite");

  UnitaryStructure us;
  us.spec = spec;
  // g = L L^*, so P = L^* is upper triangular with g = P^* P.
  us.frame_change = llt.matrixL().toDenseMatrix().adjoint();
  const Eigen::MatrixXcd p_inv = us.frame_change.inverse();

  // phi_given = P^{-1} phi_unitary.
  std::vector<Form> holo(static_cast<std::size_t>(kMaxDim), Form(1));
  std::vector<Form> anti(static_cast<std::size_t>(kMaxDim), Form(1));
  for (int i = 0; i < n; ++i) {
    Form h(1), a(1);
    for (int c = 0; c < n; ++c) {
      h.accumulate(holo_bit(c), p_inv(i, c));
      a.accumulate(anti_bit(c), std::conj(p_inv(i, c)));
    }
    holo[static_cast<std::size_t>(i)] = h;
    anti[static_cast<std::size_t>(i)] = a;
  }

  std::vector<Form> d_unitary;
  for (int a = 0; a < n; ++a) {
    Form acc(2);
    for (int b = 0; b < n; ++b) acc += us.frame_change(a, b) * spec.sc.d_phi(b);
    d_unitary.push_back(substitute(acc, holo, anti));
  }
  us.sc_u = StructureConstants::from_differentials(d_unitary);
  return us;
}

FormMatrix ChernData::phi_column() const {
  FormMatrix col(n, 1, 1);
  for (int i = 0; i < n; ++i) col.set(i, 0, Form::phi(i));
  return col;
}

ChernData solve_chern(const UnitaryStructure& us) {
  const int n = us.sc_u.n();
  ChernData cd;
  cd.n = n;
  cd.sc = us.sc_u;
  cd.d = ExteriorDerivative(cd.sc);

  // (1,1) part of d phi_k is sum F^k_{ij} phi_i ^ phibar_j; the (0,1) part of theta
  // must absorb it: theta^{0,1}_{ik} = sum_j F^k_{ij} phibar_j.
  FormMatrix theta01(n, n, 1);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      Form entry(1);
      for (int j = 0; j < n; ++j) entry.accumulate(anti_bit(j), cd.sc.pq(k, i, j));
      theta01.set(i, k, entry);
    }
  // Skew-Hermitian: theta^{1,0}_{ik} = -conj(theta^{0,1}_{ki}).
  cd.theta = FormMatrix(n, n, 1);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) cd.theta.set(i, k, theta01(i, k) - conjugate(theta01(k, i)));

  // tau = d phi + theta^t ^ phi, which is of pure type (2,0).
  cd.T = Tensor3(n);
  for (int k = 0; k < n; ++k) {
    Form tau = cd.sc.d_phi(k);
    for (int i = 0; i < n; ++i) tau += wedge(cd.theta(i, k), Form::phi(i));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const Complex c = tau.coefficient(static_cast<Monomial>(holo_bit(i) | holo_bit(j))) / 2.0;
        cd.T(k, i, j) = c;
        cd.T(k, j, i) = -c;
      }
    cd.tau.push_back(std::move(tau));
  }
  return cd;
}

ChernData chern_data(const ManifoldSpec& spec) { return solve_chern(unitarize(spec)); }

double torsion_norm(const ChernData& cd) { return cd.T.max_norm(); }

TorsionInvariants torsion_invariants(const ChernData& cd) {
  const int n = cd.n;
  const Tensor3& T = cd.T;
  TorsionInvariants inv;
  inv.eta.assign(static_cast<std::size_t>(n), Complex{});
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) inv.eta[static_cast<std::size_t>(k)] += T(i, i, k);

  inv.A = Eigen::MatrixXcd::Zero(n, n);
  inv.B = Eigen::MatrixXcd::Zero(n, n);
  inv.phi = Eigen::MatrixXcd::Zero(n, n);
  inv.C = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i) {
        inv.phi(k, l) += T(l, k, i) * std::conj(inv.eta[static_cast<std::size_t>(i)]);
        for (int j = 0; j < n; ++j) {
          inv.A(k, l) += T(i, j, k) * std::conj(T(i, j, l));
          inv.B(k, l) += T(l, i, j) * std::conj(T(k, i, j));
          inv.C(k, l) += T(i, j, k) * T(j, i, l);
        }
      }
  for (const auto& v : T.data()) inv.normT2 += std::norm(v);
  for (const auto& e : inv.eta) inv.normEta2 += std::norm(e);
  return inv;
}

KahlerFormData kahler_form_data(const ChernData& cd) {
  const int n = cd.n;
  const Complex i_unit{0.0, 1.0};
  KahlerFormData out;
  out.omega = Form(2);
  for (int k = 0; k < n; ++k) out.omega += i_unit * wedge(Form::phi(k), Form::phibar(k));
  out.omega_pow = Form::scalar(1.0);
  for (int p = 0; p < n - 1; ++p) out.omega_pow = wedge(out.omega_pow, out.omega);
  out.omega_top = wedge(out.omega_pow, out.omega);
  out.i_ddbar_omega = i_unit * cd.d.del(cd.d.dbar(out.omega_pow));
  return out;
}

}  // namespace gauduchon
