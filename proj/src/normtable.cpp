#include "motzkin/normtable.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "motzkin/errors.hpp"
#include "motzkin/walks.hpp"

namespace motzkin {

std::size_t cone_offset(int k, int p, int q) {
  const auto kk = static_cast<std::size_t>(k);
  const std::size_t base = kk * (kk + 1) * (kk + 2) / 6 - 1;
  const auto pp = static_cast<std::size_t>(p);
  return base + pp * (kk + 1) - pp * (pp - (p > 0 ? 1 : 0)) / 2 + static_cast<std::size_t>(q);
}

namespace {

bool in_cone(int k, int p, int q) { return p >= 0 && q >= 0 && p + q <= k; }

// One step of the spatial recursion; Scalar supplies add and multiply-by-t^m.
template <class Scalar, class TimesTPow>
void advance(std::vector<Scalar>& cells, int k, TimesTPow times_tpow) {
  auto get = [&](int p, int q) -> Scalar {
    return in_cone(k, p, q) ? cells[cone_offset(k, p, q)] : Scalar{};
  };
  for (int p = 0; p <= k + 1; ++p) {
    for (int q = 0; p + q <= k + 1; ++q) {
      Scalar v;
      if (q == 0) {
        v = times_tpow(get(p, 1), 1) + get(p, 0) + times_tpow(get(p - 1, 0), 2 * k + 1);
      } else {
        v = times_tpow(get(p, q + 1), 2 * q + 1) + times_tpow(get(p, q), 2 * q) +
            times_tpow(get(p, q - 1), 2 * q - 1);
      }
      cells[cone_offset(k + 1, p, q)] = v;
    }
  }
}

void check_t(const Rational& t) {
  if (t.num <= 0 || t.den <= 0) throw DomainError("area weight t must be positive");
}

}  // namespace

int double_underflow_horizon(double t) {
  if (t >= 1.0) return std::numeric_limits<int>::max();
  // t^(k^2) < DBL_MIN  <=>  k^2 log t < log DBL_MIN
  const double lim = std::log(std::numeric_limits<double>::min()) / std::log(t);
  return static_cast<int>(std::floor(std::sqrt(lim)));
}

NormTable build_recursive(int k_max, ScalarMode mode, const Rational& t) {
  if (k_max < 1) throw DomainError("kMax must be >= 1");
  check_t(t);
  if (mode == ScalarMode::ExactPoly && k_max > kExactPolyMaxK) {
    throw ResourceError("ExactPoly tables are limited to kMax <= " + std::to_string(kExactPolyMaxK));
  }
  NormTable table;
  table.k_max_ = k_max;
  table.mode_ = mode;
  table.t_ = t;
  const std::size_t total = cone_size(k_max);

  if (mode == ScalarMode::ExactPoly) {
    table.polys_.assign(total, Poly{});
    table.polys_[cone_offset(1, 0, 0)] = Poly::monomial(1, 0);
    table.polys_[cone_offset(1, 0, 1)] = Poly::monomial(1, 1);
    table.polys_[cone_offset(1, 1, 0)] = Poly::monomial(1, 1);
    for (int k = 1; k < k_max; ++k) {
      advance(table.polys_, k, [](const Poly& a, int m) { return a.shifted(m); });
    }
    const BigRational tr = t.exact();
    table.values_.resize(total);
    for (std::size_t i = 0; i < total; ++i) {
      // exact value, rounded once; scaled to keep tiny entries representable
      BigRational v = table.polys_[i].evaluate(tr);
      if (v == 0) continue;
      auto num = boost::multiprecision::numerator(v);
      auto den = boost::multiprecision::denominator(v);
      const long nb = static_cast<long>(boost::multiprecision::msb(num));
      const long db = static_cast<long>(boost::multiprecision::msb(den));
      const long shift = nb - db;
      BigRational scaled = shift >= 0 ? v / BigRational(boost::multiprecision::cpp_int(1) << shift)
                                      : v * BigRational(boost::multiprecision::cpp_int(1) << -shift);
      table.values_[i] = ScaledDouble::from_parts(static_cast<double>(scaled), shift);
    }
  } else {
    const double td = t.to_double();
    std::vector<ScaledDouble> tpow(static_cast<std::size_t>(2 * k_max + 2));
    for (std::size_t m = 0; m < tpow.size(); ++m) tpow[m] = ScaledDouble::pow(td, static_cast<std::int64_t>(m));
    table.values_.assign(total, ScaledDouble{});
    table.values_[cone_offset(1, 0, 0)] = ScaledDouble(1.0);
    table.values_[cone_offset(1, 0, 1)] = ScaledDouble(td);
    table.values_[cone_offset(1, 1, 0)] = ScaledDouble(td);
    for (int k = 1; k < k_max; ++k) {
      advance(table.values_, k, [&](const ScaledDouble& a, int m) {
        return a * tpow[static_cast<std::size_t>(m)];
      });
    }
  }
  for (const auto& v : table.values_) {
    if (!v.fits_double()) {
      table.underflow_warning_ = true;
      break;
    }
  }
  return table;
}

ScaledDouble NormTable::value(int k, int p, int q) const {
  if (k < 1 || k > k_max_) throw DomainError("k outside table range");
  if (!in_cone(k, p, q)) return {};
  return values_[cone_offset(k, p, q)];
}

const Poly& NormTable::polynomial(int k, int p, int q) const {
  if (mode_ != ScalarMode::ExactPoly) throw DomainError("table was not built in ExactPoly mode");
  if (k < 1 || k > k_max_) throw DomainError("k outside table range");
  static const Poly zero;
  if (!in_cone(k, p, q)) return zero;
  return polys_[cone_offset(k, p, q)];
}

Poly brute_force_poly(int n, int p, int q) {
  if (n > kBruteForceCap) throw ResourceError("brute force capped at n <= 14");
  std::vector<std::int64_t> coef;
  for (Code c : class_codes(n, {p, q})) {
    const auto a = static_cast<std::size_t>(area2_code(c, n));
    if (coef.size() <= a) coef.resize(a + 1, 0);
    ++coef[a];
  }
  return Poly(std::move(coef));
}

double brute_force(int n, int p, int q, double t) {
  if (n > kBruteForceCap) throw ResourceError("brute force capped at n <= 14");
  double sum = 0.0;
  for (Code c : class_codes(n, {p, q})) sum += std::pow(t, area2_code(c, n));
  return sum;
}

// ------------------------------------------------------------------ ratios

ScaledDouble RatioTable::pi_at(int k, int p, int q) const {
  if (k < 1 || k > k_max) throw DomainError("k outside ratio table range");
  if (!in_cone(k, p, q)) return {};
  return pi[cone_offset(k, p, q)];
}

ScaledDouble RatioTable::rho_at(int k, int p, int q) const {
  if (k < 1 || k > k_max) throw DomainError("k outside ratio table range");
  if (!in_cone(k, p, q)) return {};
  return rho[cone_offset(k, p, q)];
}

RatioTable ratios(const NormTable& table) {
  RatioTable r;
  r.k_max = table.k_max();
  r.t = table.t().to_double();
  const std::size_t total = cone_size(r.k_max);
  r.pi.assign(total, {});
  r.rho.assign(total, {});
  const ScaledDouble t(r.t);
  for (int k = 1; k <= r.k_max; ++k) {
    for (int p = 0; p <= k; ++p) {
      const ScaledDouble base = table.value(k, p, 0);
      for (int q = 0; p + q <= k; ++q) {
        const ScaledDouble n = table.value(k, p, q);
        r.pi[cone_offset(k, p, q)] = q == 0 ? ScaledDouble(1.0) : n / base;
        r.rho[cone_offset(k, p, q)] = t * table.value(k, p, q + 1) / n;
      }
    }
  }
  r.limit_k = r.k_max;
  r.pi_limit.resize(static_cast<std::size_t>(r.k_max) + 1);
  for (int q = 0; q <= r.k_max; ++q) r.pi_limit[static_cast<std::size_t>(q)] = r.pi_at(r.k_max, 0, q);
  return r;
}

double eval_F(double x, double y, double z, double t) {
  if (!(y > 0.0)) throw DomainError("F(x,y,z) requires y > 0");
  if (x < 0.0 || z < 0.0) throw DomainError("F(x,y,z) requires non-negative arguments");
  const double inv_z = std::isinf(z) ? 0.0 : 1.0 / z;
  return t * t * y * (x + 1.0 + 1.0 / y) / (y + 1.0 + inv_z);
}

namespace {

// t^2 (xy + y + 1) / (y + 1 + 1/z), the y -> 0 continuous extension of F.
ScaledDouble F_extended(ScaledDouble x, ScaledDouble y, ScaledDouble inv_z, ScaledDouble t2) {
  const ScaledDouble one(1.0);
  return t2 * (x * y + y + one) / (y + one + inv_z);
}

}  // namespace

RhoRecursionReport check_rho_recursion(const RatioTable& r) {
  RhoRecursionReport rep;
  const ScaledDouble t2(r.t * r.t);
  auto record = [&](int k1, int p, int q, ScaledDouble lhs, ScaledDouble rhs) {
    const double rel = std::fabs(((lhs - rhs) / lhs).to_double());
    ++rep.checked;
    if (rel > rep.max_relative_residual || rep.checked == 1) {
      rep.max_relative_residual = std::max(rep.max_relative_residual, rel);
      rep.worst_k = k1;
      rep.worst_p = p;
      rep.worst_q = q;
    }
  };
  for (int k = 1; k < r.k_max; ++k) {
    for (int p = 0; p <= k; ++p) {
      for (int q = 1; q <= k - p; ++q) {
        const auto rhs = F_extended(r.rho_at(k, p, q + 1), r.rho_at(k, p, q),
                                    ScaledDouble(1.0) / r.rho_at(k, p, q - 1), t2);
        record(k + 1, p, q, r.rho_at(k + 1, p, q), rhs);
      }
      ScaledDouble inv_z;
      if (p >= 1) {
        inv_z = ScaledDouble::pow(r.t, 2 * k + 2) / r.rho_at(k, 0, p - 1);
      }
      const auto rhs = F_extended(r.rho_at(k, p, 1), r.rho_at(k, p, 0), inv_z, t2);
      record(k + 1, p, 0, r.rho_at(k + 1, p, 0), rhs);
    }
  }
  return rep;
}

// -------------------------------------------------------------- split sums

ScaledDouble split_norm(const NormTable& left, int left_len, const NormTable& right,
                        int right_len, int p, int q, int cutoff) {
  if (cutoff < 1) throw DomainError("split_norm cutoff must be >= 1");
  ScaledDouble sum;
  const int r_max = std::min({left_len - p, right_len - q, cutoff == kNoCutoff ? left_len : cutoff - 1});
  for (int r = 0; r <= r_max; ++r) {
    sum += left.value(left_len, p, r) * right.value(right_len, r, q);
  }
  return sum;
}

// ------------------------------------------------------------- convergence

std::vector<DefectPoint> convergence_series(const RatioTable& r, int p, int q, int k_lo, int k_hi) {
  if (p < 0 || q < 0) throw DomainError("negative imbalance");
  std::vector<DefectPoint> out;
  const int lo = std::max({k_lo, p + q, 1});
  const int hi = std::min(k_hi, r.k_max);
  if (q > r.limit_k) return out;
  const ScaledDouble lim = r.pi_limit[static_cast<std::size_t>(q)];
  for (int k = lo; k <= hi; ++k) {
    const double ratio = (r.pi_at(k, p, q) / lim).to_double();
    out.push_back({k, k - p - q, 1.0 - ratio});
  }
  return out;
}

ConvergenceFit fit_rate(const std::vector<DefectPoint>& series, FitWindow window) {
  std::vector<double> xs, ys;
  for (const auto& pt : series) {
    if (pt.defect >= window.lo && pt.defect < window.hi) {
      xs.push_back(pt.kminus);
      ys.push_back(std::log(pt.defect));
    }
  }
  if (xs.size() < 4) {
    throw DomainError("fit_rate needs at least 4 defects inside the window, got " +
                      std::to_string(xs.size()));
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  ConvergenceFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  fit.kminus_lo = static_cast<int>(*std::min_element(xs.begin(), xs.end()));
  fit.kminus_hi = static_cast<int>(*std::max_element(xs.begin(), xs.end()));
  fit.points = static_cast<int>(xs.size());
  return fit;
}

DecayConstants decay_constants(const RatioTable& r) {
  DecayConstants d;
  d.c1_hat = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= r.k_max; ++k) {
    for (int p = 0; p <= k; ++p) {
      for (int q = 0; q + 1 <= k - p; ++q) {
        const double ratio =
            (r.pi_at(k, p, q + 1) / (ScaledDouble::pow(r.t, 2 * q) * r.pi_at(k, p, q))).to_double();
        d.c0_hat = std::max(d.c0_hat, ratio);
        if (p == 0) d.c1_hat = std::min(d.c1_hat, ratio);
      }
    }
  }
  return d;
}

}  // namespace motzkin
