#pragma once

// Data-parallel kernels on full 3^n state vectors.
//
// Each kernel has a serial reference (scatter form, straightforward loops) and
// an OpenMP version (gather form / independent outer blocks, race free). The
// serial versions are kept for cross-checking in tests and for the benchmark.

#include <array>
#include <span>

#include "motzkin/segment_states.hpp"

namespace motzkin::kernels {

/// Two-site projector Pi(t) in the basis index 3*a + b (a,b digit values 0=flat, 1=up, 2=down).
/// Each two-site state couples to at most one partner.
struct BondTable {
  std::array<double, 9> diag{};
  std::array<int, 9> partner{};       // -1 if none
  std::array<double, 9> offdiag{};

  static BondTable make(double t);
};

/// Bonds (i, i+1) for i in [first_bond, last_bond], 1-based sites on an n-site chain.
struct BondSum {
  int n = 0;
  double t = 0.0;
  int first_bond = 1;
  int last_bond = 0;
  bool pinned = false;  // add |d><d|_1 + |u><u|_n
};

/// y = H x (y overwritten).
void apply_bonds_serial(const BondSum& h, std::span<const double> x, std::span<double> y);
void apply_bonds_parallel(const BondSum& h, std::span<const double> x, std::span<double> y);

/// y = (G_[a,b] (x) 1) x, where G_[a,b] projects onto the ground space of the
/// segment [a,b] (1-based, inclusive); segment.length must equal b - a + 1.
void project_interval_serial(int n, int a, int b, const SegmentGroundStates& segment,
                             std::span<const double> x, std::span<double> y);
void project_interval_parallel(int n, int a, int b, const SegmentGroundStates& segment,
                               std::span<const double> x, std::span<double> y);

double dot(std::span<const double> x, std::span<const double> y);

}  // namespace motzkin::kernels
