#pragma once

// Symmetric Lanczos eigensolvers used by the criterion module.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace motzkin {

using ApplyFn = std::function<void(std::span<const double>, std::span<double>)>;

struct LanczosOptions {
  double tol = 1e-10;        // residual bound, relative to max(1, |theta|)
  int max_iterations = 100000;
  std::uint64_t perturbation_seed = 0x4d6f747a6b696eULL;
};

enum class Extremum { Smallest, Largest };

struct EigenEstimate {
  double value = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool restarted = false;  // perturbed start vector was needed
};

/// Extremal eigenvalue of a symmetric operator on the orthogonal complement of
/// `deflate` (orthonormal vectors). Full reorthogonalization; deterministic
/// all-ones start, with a fixed-seed perturbation fallback on stagnation.
/// Throws SolverError if the tolerance is not met.
EigenEstimate lanczos_extremal(const ApplyFn& apply, std::size_t dimension, Extremum which,
                               std::span<const Eigen::VectorXd> deflate = {},
                               const LanczosOptions& options = {});

struct SectorEigen {
  double value = 0.0;     // largest eigenvalue inside the sector (0 if inactive)
  double residual = 0.0;
  int iterations = 0;
  bool active = false;    // start vector had a nonzero component in the sector
};

/// Largest eigenvalue of a block-diagonal symmetric operator in every block at
/// once. `labels[i]` is the block of component i; the operator must not couple
/// blocks. Each block runs its own three-term Lanczos recurrence with block-local
/// inner products; `start` supplies the block start vectors.
std::vector<SectorEigen> sectorwise_largest(const ApplyFn& apply, std::span<const std::uint16_t> labels,
                                            int blocks, std::vector<double> start,
                                            const LanczosOptions& options = {});

/// Fixed-seed uniform(-1,1) vector, reproducible across runs.
std::vector<double> deterministic_perturbation(std::size_t dimension, std::uint64_t seed);

}  // namespace motzkin
