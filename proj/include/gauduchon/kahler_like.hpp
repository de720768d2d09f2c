#pragma once

#include <vector>

#include "gauduchon/connection.hpp"

namespace gauduchon {

/// Default tolerance on the max obstruction norm for the Kähler-like boolean.
inline constexpr double kKahlerLikeTol = 1e-8;

/// The three residual tensors whose joint vanishing characterizes Kähler-likeness of D^r_s.
struct Obstructions {
  FormMatrix O2;          // Theta2
  FormMatrix O20;         // (Theta1)^{2,0}
  std::vector<Form> O11;  // (phi^t ^ (Theta1)^{1,1})_j = sum_i phi_i ^ (Theta1)^{1,1}_{ij}
  double norm_O2 = 0.0;
  double norm_O20 = 0.0;
  double norm_O11 = 0.0;

  double max_norm() const;
};

Obstructions obstructions(const ChernData& cd, const ConnectionParams& params);
/// Obstructions at raw plane coordinates (t, s); polynomial in both.
Obstructions obstructions_ts(const ChernData& cd, const GammaTheta2& gt, double t, double s);

struct KahlerLikeResult {
  bool kahler_like = false;
  double residual = 0.0;
};

KahlerLikeResult is_kahler_like(const ChernData& cd, const ConnectionParams& params, double tol = kKahlerLikeTol);

/// Residuals of the defining symmetries of the real curvature tensor.
struct RealCurvatureCheck {
  bool kahler_like = false;
  double bianchi = 0.0;     // max |R(x,y,z,w) + R(y,z,x,w) + R(z,x,y,w)|
  double j_first = 0.0;     // max |R(Jx,Jy,z,w) - R(x,y,z,w)|
  double j_last = 0.0;      // max |R(x,y,Jz,Jw) - R(x,y,z,w)|
  double imaginary = 0.0;   // max |Im R| on the real frame; nonzero signals a convention error
  double scale = 0.0;       // max |R|
};

/// Independent check: builds the full 2n x 2n curvature d theta^D - theta^D ^ theta^D,
/// lowers an index with the metric, moves to the real frame {u_k, v_k = J u_k} and tests
/// the first Bianchi symmetry and both J-invariances directly.
RealCurvatureCheck real_curvature_oracle(const ChernData& cd, const ConnectionParams& params,
                                         double tol = kKahlerLikeTol);

}  // namespace gauduchon
