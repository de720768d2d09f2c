#pragma once

#include <string>
#include <vector>

#include "gauduchon/kahler_like.hpp"

namespace gauduchon {

inline constexpr double kIdentityTol = 1e-9;

/// Outcome of one pointwise identity. When the hypothesis fails the identity is reported as
/// not applicable: residual and pass carry no meaning and serialize as null.
struct IdentityReport {
  std::string id;      // stable identifier, e.g. "gauduchon.dbar_torsion"
  std::string anchor;  // the identity as a formula
  std::string at;      // evaluation point, e.g. "r=-1" or "r=-1,s=2"
  bool applicable = false;
  double residual = 0.0;
  bool pass = false;
  std::string details;  // worst index tuple, or why the hypothesis failed
};

/// Residual tensors of the identities indexed (j, i, k, l) as in T^j_{ik} with derivative
/// direction l. Each is computed without any precondition so it can be inspected directly.
namespace residual {

/// Change of the antiholomorphic derivative of T between D^r and D^rp.
Tensor4 transfer_dbar(const ChernData& cd, double r, double rp);
/// Change of the holomorphic derivative of T between D^r and D^rp.
Tensor4 transfer_del(const ChernData& cd, double r, double rp);
/// T^l_{ik,j} + (1+r) sum_q T^q_{ik} T^l_{jq}, indexed (l, i, k, j).
Tensor4 gauduchon_del(const ChernData& cd, double r);
/// r * cyclic_{ijk} sum_q T^q_{ij} T^l_{kq}, indexed (l, i, j, k).
Tensor4 gauduchon_cyclic(const ChernData& cd, double r);
Tensor4 gauduchon_dbar(const ChernData& cd, double r);
Tensor4 plane_cyclic_del(const ChernData& cd, double r, double s);
Tensor4 plane_s_del(const ChernData& cd, double r, double s);
Tensor4 plane_s_dbar_skew(const ChernData& cd, double r, double s);
/// Not skew in (i, k): it mixes T^j_{ik,l} with T^j_{il,k}.
Tensor4 plane_t_del(const ChernData& cd, double r, double s);
Tensor4 plane_dbar_mixed(const ChernData& cd, double r, double s);
Tensor4 plane_dbar(const ChernData& cd, double r, double s);

}  // namespace residual

/// Unconditional: changes of T_{,l}, T_{,lbar}, eta_{,lbar} and chi between D^r and D^rp.
std::vector<IdentityReport> check_transfer(const ChernData& cd, double r, double rp, double tol = kIdentityTol);

/// Hypothesis: D^r Kähler-like, r != 1.
std::vector<IdentityReport> check_gauduchon_del(const ChernData& cd, double r, double tol = kIdentityTol);

/// Hypothesis: D^r Kähler-like. Formulas for T_{,lbar}, eta_{,lbar} and chi.
std::vector<IdentityReport> check_gauduchon_dbar(const ChernData& cd, double r, double tol = kIdentityTol);

/// Hypothesis: D^r and D^rp Kähler-like, r != rp.
IdentityReport check_gauduchon_pair(const ChernData& cd, double r, double rp, double tol = kIdentityTol);

/// Hypothesis: D^r and D^rp Kähler-like with r not in {0, 1}, rp != 1, r != rp.
/// Never applicable on a non-Kähler metric since two Kähler-like Gauduchon points force T = 0.
IdentityReport check_gauduchon_pair_del(const ChernData& cd, double r, double rp, double tol = kIdentityTol);

/// Hypothesis: D^r and D^xi(r) Kähler-like, r != 1/2, xi(r) != r.
std::vector<IdentityReport> check_dual_pair(const ChernData& cd, double r, double tol = kIdentityTol);

/// Hypothesis: D^r_s Kähler-like; derivatives with respect to D^{1-t}.
std::vector<IdentityReport> check_plane(const ChernData& cd, double r, double s, double tol = kIdentityTol);

/// Hypothesis: D^{-1}_2 Kähler-like; derivatives with respect to the Chern connection,
/// plus parallelism of T under the Strominger connection in antiholomorphic directions.
std::vector<IdentityReport> check_strominger_triple(const ChernData& cd, double tol = kIdentityTol);

/// Hypothesis: D^0 Kähler-like. Conclusion: eta = 0, A = B, phi = phi^*.
IdentityReport check_balanced(const ChernData& cd, double tol = kIdentityTol);

/// Hypothesis: D^r Kähler-like. n(2r-1) i ddbar omega^{n-1} = {(r-1)^2|T|^2 + (r^2+6r-3)|eta|^2} omega^n.
IdentityReport check_ddbar_omega(const ChernData& cd, double r, double tol = kIdentityTol);

/// Runs every check at the standard evaluation points plus the Kähler-like points found
/// by the locus solver.
std::vector<IdentityReport> verify_suite(const ChernData& cd, double tol = kIdentityTol);

/// JSON array of {id, anchor, at, applicable, residual, pass}.
std::string reports_to_json(const std::vector<IdentityReport>& reports, int indent = 2);

}  // namespace gauduchon
