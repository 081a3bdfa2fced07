#pragma once

// Combinatorial ground spaces: exact ground vectors t^{A(w)}|w> per class,
// interval projectors G_[a,b] acting on full-chain states, the difference
// projector E_k = G_[1,2k] - G_[1,3k], and the approximate ground states
// built from concatenated segments.

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "motzkin/segment_states.hpp"
#include "motzkin/walks.hpp"

namespace motzkin {

/// Full-space vectors are limited to 3^14 components.
inline constexpr int kStateLengthCap = 14;

struct GroundStateVector {
  int n = 0;
  Imbalance pq;
  double t = 0.0;
  double norm2 = 0.0;         // squared norm of the unnormalized form, = N_{p,q}
  Eigen::VectorXd amplitudes;  // normalized, length 3^n
};

/// Throws DomainError for an invalid class, ResourceError above kStateLengthCap.
GroundStateVector ground_vector(int n, Imbalance pq, double t);

/// Unnormalized class amplitudes t^{area2/2} with their codes (ascending).
struct ClassAmplitudes {
  std::vector<Code> codes;
  std::vector<double> values;
};
ClassAmplitudes class_amplitudes(int length, Imbalance pq, double t);

class IntervalProjector {
public:
  /// G_[a,b] (x) 1 on an n-site chain, 1 <= a <= b <= n.
  IntervalProjector(int n, int a, int b, double t);

  int n() const { return n_; }
  int a() const { return a_; }
  int b() const { return b_; }
  std::size_t dimension() const;

  void apply(std::span<const double> x, std::span<double> y) const;
  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const;

private:
  int n_, a_, b_;
  SegmentGroundStates segment_;
};

/// E_k = G_[1,2k] - G_[1,3k] on the 3k-site chain.
class DifferenceProjector {
public:
  DifferenceProjector(int k, double t);
  int k() const { return k_; }
  std::size_t dimension() const { return inner_.dimension(); }
  void apply(std::span<const double> x, std::span<double> y) const;

private:
  int k_;
  IntervalProjector inner_, full_;
};

/// Throws DomainError if state.size() != 3^{3k}.
Eigen::VectorXd apply_Ek(int k, double t, const Eigen::VectorXd& state);

// ------------------------------------------------------- approximate states

enum class ApproxKind { ATGS, PGSLeft, PGSRight, FGS };

struct ApproxStateSpec {
  ApproxKind kind = ApproxKind::ATGS;
  /// Segment lengths left to right: two for ATGS/PGS, three for FGS.
  std::vector<int> segments;
  Imbalance pq;
  int cutoff = 0;  // ATGS/FGS: intermediate heights r < cutoff; 0 means no truncation
};

/// Unit-norm approximate state on the full chain. Throws DomainError if the
/// geometry is invalid or the truncated sum is empty.
Eigen::VectorXd approx_vector(const ApproxStateSpec& spec, double t);

struct OverlapDefect {
  double defect = 0.0;   // 1 - |<exact|approx>|^2
  bool at_noise_floor = false;
};
OverlapDefect overlap_defect(const Eigen::VectorXd& exact, const Eigen::VectorXd& approx);

}  // namespace motzkin
