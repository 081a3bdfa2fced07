#pragma once

// Area-weighted class sums N^k_{p,q} = sum over class (p,q) walks of length k
// of t^{area2}, their ratio tables, and the equilibration diagnostics built on
// top of them.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "motzkin/scalar.hpp"

namespace motzkin {

enum class ScalarMode { Float64, ExactPoly };

/// Largest kMax accepted in ExactPoly mode (int64 coefficients stay exact well beyond this).
inline constexpr int kExactPolyMaxK = 24;

/// Offset of entry (k,p,q), p+q <= k, in a k-major triangular layout starting at k = 1.
std::size_t cone_offset(int k, int p, int q);
inline std::size_t cone_size(int k_max) { return cone_offset(k_max + 1, 0, 0); }

class NormTable {
public:
  int k_max() const { return k_max_; }
  ScalarMode mode() const { return mode_; }
  const Rational& t() const { return t_; }

  /// N^k_{p,q} as a scaled double; 0 outside the cone p,q >= 0, p+q <= k.
  ScaledDouble value(int k, int p, int q) const;
  /// Same, converted to double (may flush to 0 past the underflow horizon).
  double value_double(int k, int p, int q) const { return value(k, p, q).to_double(); }
  /// Exact polynomial entry; ExactPoly mode only.
  const Poly& polynomial(int k, int p, int q) const;

  /// Set when some entry lies outside the normal double range, i.e. plain
  /// doubles would have under/overflowed. Values stay accurate (ScaledDouble).
  bool underflow_warning() const { return underflow_warning_; }

  friend NormTable build_recursive(int k_max, ScalarMode mode, const Rational& t);

private:
  int k_max_ = 0;
  ScalarMode mode_ = ScalarMode::Float64;
  Rational t_;
  bool underflow_warning_ = false;
  std::vector<ScaledDouble> values_;
  std::vector<Poly> polys_;
};

/// Seeds k = 1 (N=1, t, t) and advances with the two-line spatial recursion.
NormTable build_recursive(int k_max, ScalarMode mode, const Rational& t);

/// k at which t^(k^2) (the all-up entry) leaves the normal double range.
int double_underflow_horizon(double t);

/// Sum of t^{area2} over enumerate_class(n, p, q); n <= 14.
double brute_force(int n, int p, int q, double t);
/// Exact brute-force polynomial; n <= 14.
Poly brute_force_poly(int n, int p, int q);

inline constexpr int kBruteForceCap = 14;

// ------------------------------------------------------------------ ratios

struct RatioTable {
  int k_max = 0;
  double t = 0.0;
  /// pi^k_{p,q} = N^k_{p,q}/N^k_{p,0}, indexed with cone_offset; 0 off-cone.
  std::vector<ScaledDouble> pi;
  /// rho^k_{p,q} = t N^k_{p,q+1}/N^k_{p,q}; 0 for q >= k-p.
  std::vector<ScaledDouble> rho;
  /// pi^K_{0,q} at K = limit_k, for q = 0..K.
  std::vector<ScaledDouble> pi_limit;
  int limit_k = 0;

  ScaledDouble pi_at(int k, int p, int q) const;
  ScaledDouble rho_at(int k, int p, int q) const;
};

RatioTable ratios(const NormTable& table);

/// F(x,y,z) = t^2 y (x + 1 + 1/y) / (y + 1 + 1/z); z may be +inf (1/inf = 0).
/// Throws DomainError for y <= 0 or negative arguments.
double eval_F(double x, double y, double z, double t);

struct RhoRecursionReport {
  double max_relative_residual = 0.0;
  int checked = 0;
  int worst_k = 0, worst_p = 0, worst_q = 0;
};

/// Verifies rho^{k+1} = F(rho^k_{q+1}, rho^k_q, rho^k_{q-1}) on 1 <= q <= k-p
/// and the q = 0 line with third argument t^{-2k-2} rho^k_{0,p-1}.
RhoRecursionReport check_rho_recursion(const RatioTable& ratios);

// -------------------------------------------------------------- split sums

inline constexpr int kNoCutoff = std::numeric_limits<int>::max();

/// sum_{r < cutoff} N^{left_len}_{p,r} N^{right_len}_{r,q}.
ScaledDouble split_norm(const NormTable& left, int left_len, const NormTable& right,
                        int right_len, int p, int q, int cutoff = kNoCutoff);

// ------------------------------------------------------------- convergence

struct DefectPoint {
  int k = 0;
  int kminus = 0;  // k - p - q
  double defect = 0.0;
};

/// 1 - pi^k_{p,q} / pi_limit[q] for k in [k_lo, k_hi] (clamped to the cone and table).
std::vector<DefectPoint> convergence_series(const RatioTable& ratios, int p, int q, int k_lo,
                                            int k_hi);

inline constexpr double kDefectNoiseFloor = 1e-13;

struct FitWindow {
  double lo = kDefectNoiseFloor;  // inclusive
  double hi = 1.0;                // exclusive
};

struct ConvergenceFit {
  double slope = 0.0;  // d log(defect) / d(k-p-q)
  double intercept = 0.0;
  double r_squared = 0.0;
  int kminus_lo = 0, kminus_hi = 0;
  int points = 0;
  std::optional<double> c0_hat;
  std::optional<double> c1_hat;
};

/// Least-squares fit of log(defect) on k-p-q over defects inside the window.
/// Throws DomainError with fewer than 4 usable points.
ConvergenceFit fit_rate(const std::vector<DefectPoint>& series, FitWindow window = {});

struct DecayConstants {
  /// max over the table of pi_{p,q+1} / (t^{2q} pi_{p,q})
  double c0_hat = 0.0;
  /// min over the table of pi_{0,q+1} / (t^{2q} pi_{0,q}), q+1 <= k
  double c1_hat = 0.0;
};

DecayConstants decay_constants(const RatioTable& ratios);

}  // namespace motzkin
