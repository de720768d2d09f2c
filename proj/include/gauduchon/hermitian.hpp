#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gauduchon/exterior.hpp"
#include "gauduchon/tensor.hpp"

namespace gauduchon {

/// Raised for malformed or invalid manifold input (bad schema, non-integrable, bad metric).
class SpecError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMinSupportedDim = 2;

/// A homogeneous Hermitian manifold: structure constants in some coframe plus a
/// constant Hermitian metric. The metric matrix g acts on frame coordinates, so a
/// vector with coordinates x (x_i = phi_i(X)) has squared length x^* g x.
struct ManifoldSpec {
  std::string name;
  int n = 0;
  StructureConstants sc;
  Eigen::MatrixXcd metric;
};

/// Checks metric and integrability; throws SpecError with the offending quantity.
void validate(const ManifoldSpec& spec, double tol = kCoefficientTol);

/// Parses the JSON manifold document and validates it.
ManifoldSpec load_spec(const std::string& document);
ManifoldSpec load_spec_file(const std::string& path);
std::string dump_spec(const ManifoldSpec& spec);

/// Same structure with metric multiplied by c > 0.
ManifoldSpec rescaled(const ManifoldSpec& spec, double c);

struct UnitaryStructure {
  ManifoldSpec spec;
  Eigen::MatrixXcd frame_change;  // P: phi_unitary = P phi_given, g = P^* P, P upper triangular
  StructureConstants sc_u;
};

UnitaryStructure unitarize(const ManifoldSpec& spec);

/// Chern connection in the unitary coframe: dphi = -theta^t ^ phi + tau,
/// tau_k = sum_{i,j} T(k,i,j) phi_i ^ phi_j with T(k,i,j) = -T(k,j,i).
struct ChernData {
  int n = 0;
  StructureConstants sc;
  ExteriorDerivative d{StructureConstants(0)};
  FormMatrix theta;
  Tensor3 T;  // T(k,i,j) = T^k_{ij}
  std::vector<Form> tau;

  /// Coframe column (phi_1..phi_n)^t.
  FormMatrix phi_column() const;
};

ChernData solve_chern(const UnitaryStructure& us);
ChernData chern_data(const ManifoldSpec& spec);

struct TorsionInvariants {
  std::vector<Complex> eta;  // eta_k = sum_i T^i_{ik}
  Eigen::MatrixXcd A;        // A(k,l) = sum_{ij} T^i_{jk} conj(T^i_{jl})
  Eigen::MatrixXcd B;        // B(k,l) = sum_{ij} T^l_{ij} conj(T^k_{ij})
  Eigen::MatrixXcd phi;      // phi(k,l) = phi_k^l = sum_i T^l_{ki} conj(eta_i)
  Eigen::MatrixXcd C;        // C(i,j) = sum_{q,s} T^q_{si} T^s_{qj}
  double normT2 = 0.0;
  double normEta2 = 0.0;
};

TorsionInvariants torsion_invariants(const ChernData& cd);

/// Exterior data of the fundamental form omega = sqrt(-1) sum_k phi_k ^ phibar_k.
struct KahlerFormData {
  Form omega;
  Form omega_pow;        // omega^{n-1}
  Form i_ddbar_omega;    // sqrt(-1) del dbar omega^{n-1}
  Form omega_top;        // omega^n
};

KahlerFormData kahler_form_data(const ChernData& cd);

/// Max torsion magnitude; zero means Kähler.
double torsion_norm(const ChernData& cd);

}  // namespace gauduchon
