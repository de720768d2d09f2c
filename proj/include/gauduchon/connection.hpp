#pragma once

#include <stdexcept>
#include <utility>

#include "gauduchon/hermitian.hpp"

namespace gauduchon {

/// Raised when a parameter lies outside the domain of an operation.
class ParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A point of the canonical connection plane D^r_s = (1-s) D^r + s * Levi-Civita.
///
/// The line s = 1 collapses to the Levi-Civita connection for every r, so it is
/// represented only by (0, 1); other points with s = 1 are rejected.
class ConnectionParams {
public:
  ConnectionParams(double r, double s);
  static ConnectionParams gauduchon(double r) { return {r, 0.0}; }

  double r() const { return r_; }
  double s() const { return s_; }
  double t() const { return 1.0 - r_ + r_ * s_; }

private:
  double r_;
  double s_;
};

/// gamma = D^0 - Chern and theta2 (the off-diagonal Levi-Civita block) in the unitary frame.
struct GammaTheta2 {
  FormMatrix gamma;
  FormMatrix gamma10;
  FormMatrix gamma01;
  FormMatrix theta2;
};

GammaTheta2 gamma_theta2(const ChernData& cd);

/// Connection matrix of the Gauduchon connection D^r: theta + (1 - r) gamma.
FormMatrix gauduchon_matrix(const ChernData& cd, double r);
/// Its curvature d theta^r - theta^r ^ theta^r, computed directly.
FormMatrix gauduchon_curvature(const ChernData& cd, double r);

struct ConnectionBlocks {
  FormMatrix theta_t;  // theta + t gamma
  FormMatrix full;     // 2n x 2n matrix on the frame (e, ebar)
};

ConnectionBlocks connection_blocks(const ChernData& cd, const ConnectionParams& params);

/// Levi-Civita connection matrix in block form [[theta1, conj(theta2)], [theta2, conj(theta1)]].
FormMatrix riemannian_matrix(const ChernData& cd);

struct CurvatureBlocks {
  FormMatrix Theta1;
  FormMatrix Theta2;
};

CurvatureBlocks curvature_blocks(const ChernData& cd, const ConnectionParams& params);
/// Curvature blocks as functions of (t, s) directly; valid for any real pair.
CurvatureBlocks curvature_blocks_ts(const ChernData& cd, const GammaTheta2& gt, double t, double s);

/// Covariant derivatives of the Chern torsion with respect to D^r in the invariant frame.
///
/// dT(j,i,k,l) = T^j_{ik,l} and dTbar(j,i,k,l) = T^j_{ik,lbar}; dEta(k,l) = eta_{k,l},
/// dEtaBar(k,l) = eta_{k,lbar}; chi = sum_k eta_{k,kbar}.
struct CovariantDerivatives {
  double r = 0.0;
  Tensor4 dT;
  Tensor4 dTbar;
  Tensor2 dEta;
  Tensor2 dEtaBar;
  Complex chi;
};

CovariantDerivatives covariant_derivative(const ChernData& cd, double r);

/// Duality on the Gauduchon line, r -> r / (2r - 1); undefined at 1/2.
double xi(double r);

/// Duality on the plane, (r, s) -> ((1-s)/(1+s) r, -s); defined for s not in {0, 1, -1}.
std::pair<double, double> psi(double r, double s);

}  // namespace gauduchon
