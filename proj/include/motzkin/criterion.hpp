#pragma once

// Finite-size gap criterion for the Motzkin chain:
//   z_k     = || G_[k+1,3k] E_k ||, E_k = G_[1,2k] - G_[1,3k], on 3k sites
//   gamma_k = gap of the open 2k-site block
//   open bound   gamma_k (1/2 - z_k) when z_k < 1/2
//   pinned bound max_eps eps c2 - eps^2/(c1 - eps), c1 = open bound, c2 = boundary penalty

#include <optional>
#include <vector>

#include "motzkin/lanczos.hpp"
#include "motzkin/walks.hpp"

namespace motzkin {

/// Rejects t outside (0,1) with DomainError.
void check_certificate_t(double t);

struct SectorValue {
  Imbalance pq;
  double value = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool active = false;  // false: the operator vanishes on this sector
};

struct ZkResult {
  int k = 0;
  double t = 0.0;
  double value = 0.0;  // z_k
  Imbalance argmax;
  int iterations = 0;  // Lanczos steps (shared across sectors)
  double max_residual = 0.0;
  std::vector<SectorValue> sectors;  // per-sector sqrt(lambda_max(E G E))
};

/// Largest k accepted by compute_zk (3k sites held as full vectors).
inline constexpr int kZkMaxK = 4;

ZkResult compute_zk(int k, double t, const LanczosOptions& options = {});

struct GammaResult {
  int k = 0;
  double t = 0.0;
  double value = 0.0;  // gamma_k
  Imbalance argmin;
  int iterations = 0;
  double max_residual = 0.0;
  std::vector<SectorValue> sectors;  // per-sector lowest nonzero eigenvalue
};

/// Largest k accepted by compute_gamma_k (2k-site block, sector-wise).
inline constexpr int kGammaMaxK = 7;

GammaResult compute_gamma_k(int k, double t, const LanczosOptions& options = {});

/// gamma (1/2 - z) if z < 1/2, otherwise empty.
std::optional<double> open_gap_bound(double gamma, double z);

struct SectorPenalty {
  Imbalance pq;
  double expectation = 0.0;  // <GS_{p,q}| (|d><d|_1 + |u><u|_n) |GS_{p,q}>
};

struct PenaltyReport {
  int n = 0;
  double t = 0.0;
  std::vector<SectorPenalty> sectors;  // every (p,q) != (0,0); empty beyond the enumeration cap
  double minimum = 0.0;
  Imbalance argmin;
  double ratio = 0.0;         // N^{n-1}_{0,0} / N^n_{1,0}
  double t_times_ratio = 0.0;  // the (1,0)-sector expectation under the trapezoid area convention
};

/// Exact per-sector expectations for n <= kEnumerationCap, plus the norm-table ratio for any n >= 2.
PenaltyReport boundary_penalty(int n, double t);

/// Ratio N^{n-1}_{0,0} / N^n_{1,0} for n = 2..n_max from one norm table.
std::vector<double> penalty_ratio_series(int n_max, double t);

/// f(eps) = eps c2 - eps^2 / (c1 - eps).
double projection_objective(double eps, double c1, double c2);

struct EpsilonChoice {
  double epsilon = 0.0;
  double value = 0.0;
};
/// Golden-section maximization of f on (0, min(1, c1)); empty if c1 <= 0 or c2 <= 0.
std::optional<EpsilonChoice> maximize_projection_bound(double c1, double c2, double tol = 1e-10);

struct GapCertificate {
  double t = 0.0;
  int k = 0;
  double gamma_k = 0.0;
  double z_k = 0.0;
  Imbalance z_sector;
  std::optional<double> open_bound;
  double c2 = 0.0;  // empirical: min of the boundary-penalty minimum over n in c2 range
  int c2_n_lo = 0, c2_n_hi = 0;
  std::optional<double> epsilon;
  std::optional<double> final_bound;
  double solver_tol = 0.0;
  int gamma_iterations = 0;
  int z_iterations = 0;

  bool conclusive() const { return final_bound.has_value() && *final_bound > 0.0; }
};

inline constexpr int kDefaultPenaltyN = 10;

/// c2 = min over n in [2, n_penalty] of boundary_penalty(n, t).minimum.
double empirical_c2(double t, int n_penalty);

GapCertificate pinned_gap_bound(int k, double t, int n_penalty = kDefaultPenaltyN,
                                const LanczosOptions& options = {});

}  // namespace motzkin
