#pragma once

// Motzkin chain Hamiltonians: open H^0_n = sum_j Pi_{j,j+1}(t), pinned
// H_n = H^0_n + |d><d|_1 + |u><u|_n, and their imbalance-sector blocks.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "motzkin/sector_basis.hpp"
#include "motzkin/walks.hpp"

namespace motzkin {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Explicit storage is assembled up to this dimension; larger operators are matrix-free.
inline constexpr std::size_t kExplicitDimensionCap = 20000;

struct LocalProjectorSet {
  double t = 0.0;
  Eigen::Matrix<double, 9, 1> up, down, phi;  // |U(t)>, |D(t)>, |phi(t)>
  Eigen::Matrix<double, 9, 9> sum() const;

  static LocalProjectorSet make(double t);
};

struct OperatorHandle {
  std::size_t dimension = 0;
  std::function<void(std::span<const double>, std::span<double>)> apply;
  std::optional<SparseMatrix> matrix;

  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const;
  /// Dense copy; throws ResourceError above 8000.
  Eigen::MatrixXd dense() const;
};

/// Bonds (i,i+1) for first_bond <= i <= last_bond on an n-site chain, full space.
OperatorHandle build_bond_sum(int n, double t, int first_bond, int last_bond);

OperatorHandle build_open(int n, double t, std::optional<Imbalance> sector = std::nullopt);
OperatorHandle build_pinned(int n, double t, std::optional<Imbalance> sector = std::nullopt);
/// Open Hamiltonian of a 2k-site block.
OperatorHandle build_knabe_block(int k, double t);

/// Sector block of the open (or pinned) Hamiltonian over an existing basis.
SparseMatrix sector_matrix(const SectorBasis& basis, Imbalance pq, double t, bool pinned);

}  // namespace motzkin
