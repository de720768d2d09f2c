#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gauduchon/hermitian.hpp"

namespace gauduchon {

struct CatalogEntry {
  ManifoldSpec spec;
  std::string provenance;
  /// Known facts such as "chern_kahler_like"; tests re-derive each one with the engine.
  std::map<std::string, bool> expected;
};

/// Names accepted by builtin(), in catalog order.
const std::vector<std::string>& builtin_names();

/// Throws std::invalid_argument for an unknown name.
CatalogEntry builtin(const std::string& name);

/// Complex structure constants of a real Lie algebra with a left-invariant complex structure.
///
/// brackets[a][b] holds the coordinates of [x_a, x_b] in the real basis x_0..x_{2n-1};
/// frame has one row per (1,0) vector Z_k, expressed in the real basis. Returns d phi_k
/// for the coframe dual to (Z, Zbar), using d phi(X, Y) = -phi([X, Y]).
StructureConstants structure_from_lie_algebra(const std::vector<std::vector<std::vector<double>>>& brackets,
                                              const Eigen::MatrixXcd& frame);

/// Seeded families: "nilpotent3" or "metric_perturbed". For metric_perturbed, base names
/// the catalog entry to perturb; an empty base cycles through the catalog.
std::vector<ManifoldSpec> random_family(std::uint64_t seed, const std::string& family, int count,
                                        const std::string& base = "");

}  // namespace gauduchon
