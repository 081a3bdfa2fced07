#pragma once

#include <vector>

#include "motzkin/walks.hpp"

namespace motzkin {

/// Normalized ground states |GS_{p,q}> of an open segment of the given length,
/// stored sparsely: for every class the member codes (ascending) and amplitudes
/// t^{A(w)}/sqrt(N). Every code of the segment belongs to exactly one class.
struct SegmentGroundStates {
  int length = 0;
  double t = 0.0;
  std::vector<std::vector<Code>> codes;       // indexed by sector_id(length, pq)
  std::vector<std::vector<double>> amplitudes;
  std::vector<double> norms;                  // N_{p,q} (unnormalized squared norm)

  static SegmentGroundStates build(int length, double t);
};

}  // namespace motzkin
