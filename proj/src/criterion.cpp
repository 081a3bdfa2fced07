#include "motzkin/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "motzkin/errors.hpp"
#include "motzkin/groundspace.hpp"
#include "motzkin/hamiltonian.hpp"
#include "motzkin/normtable.hpp"

namespace motzkin {

void check_certificate_t(double t) {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("certificate operations need 0 < t < 1");
}

// ----------------------------------------------------------------------- z_k

ZkResult compute_zk(int k, double t, const LanczosOptions& options) {
  check_certificate_t(t);
  if (k < 1 || k > kZkMaxK) throw ResourceError("compute_zk supports 1 <= k <= " + std::to_string(kZkMaxK));
  const int n = 3 * k;
  const SectorBasis basis(n);
  const auto& labels = basis.labels();
  const std::size_t dim = basis.full_dimension();
  const int sectors = basis.sectors();

  auto e = std::make_shared<DifferenceProjector>(k, t);
  auto g = std::make_shared<IntervalProjector>(n, k + 1, n, t);
  auto tmp = std::make_shared<std::vector<double>>(dim);
  // x -> E G E x
  ApplyFn apply = [e, g, tmp](std::span<const double> x, std::span<double> y) {
    e->apply(x, y);
    g->apply(y, *tmp);
    e->apply(*tmp, y);
  };

  // start: E 1 inside each sector, E (fixed perturbation) where that vanishes
  std::vector<double> ones(dim, 1.0), start(dim), alt(dim);
  e->apply(ones, start);
  e->apply(deterministic_perturbation(dim, options.perturbation_seed), alt);
  std::vector<double> n_start(static_cast<std::size_t>(sectors), 0.0), n_alt(n_start);
  for (std::size_t i = 0; i < dim; ++i) {
    n_start[labels[i]] += start[i] * start[i];
    n_alt[labels[i]] += alt[i] * alt[i];
  }
  for (int s = 0; s < sectors; ++s) {
    const auto su = static_cast<std::size_t>(s);
    const double floor = 1e-20 * static_cast<double>(basis.codes(s).size());
    n_start[su] = n_start[su] > floor ? 1.0 : (n_alt[su] > floor ? 2.0 : 0.0);
  }
  for (std::size_t i = 0; i < dim; ++i) {
    const double mode = n_start[labels[i]];
    start[i] = mode == 1.0 ? start[i] : (mode == 2.0 ? alt[i] : 0.0);
  }

  const auto eig = sectorwise_largest(apply, labels, sectors, std::move(start), options);
  ZkResult r;
  r.k = k;
  r.t = t;
  for (int s = 0; s < sectors; ++s) {
    const auto& ev = eig[static_cast<std::size_t>(s)];
    SectorValue sv;
    sv.pq = sector_pair(n, s);
    sv.active = ev.active;
    sv.value = ev.active ? std::sqrt(std::clamp(ev.value, 0.0, 1.0)) : 0.0;
    sv.residual = ev.residual;
    sv.iterations = ev.iterations;
    r.iterations = std::max(r.iterations, ev.iterations);
    r.max_residual = std::max(r.max_residual, ev.residual);
    // mirror sectors tie; keep the first within rounding so the argmax is stable
    if (sv.value > r.value * (1.0 + 1e-12)) {
      r.value = sv.value;
      r.argmax = sv.pq;
    }
    r.sectors.push_back(sv);
  }
  return r;
}

// ------------------------------------------------------------------- gamma_k

GammaResult compute_gamma_k(int k, double t, const LanczosOptions& options) {
  if (!(t > 0.0)) throw DomainError("area weight t must be positive");
  if (k < 1 || k > kGammaMaxK) throw ResourceError("compute_gamma_k supports 1 <= k <= " + std::to_string(kGammaMaxK));
  const int n = 2 * k;
  const SectorBasis basis(n);
  GammaResult r;
  r.k = k;
  r.t = t;
  r.value = std::numeric_limits<double>::infinity();
  const double root_t = std::sqrt(t);
  for (int s = 0; s < basis.sectors(); ++s) {
    const auto& codes = basis.codes(s);
    SectorValue sv;
    sv.pq = sector_pair(n, s);
    if (codes.size() > 1) {
      const auto h = std::make_shared<SparseMatrix>(sector_matrix(basis, sv.pq, t, false));
      Eigen::VectorXd gs(static_cast<Eigen::Index>(codes.size()));
      for (std::size_t i = 0; i < codes.size(); ++i) gs(static_cast<Eigen::Index>(i)) = std::pow(root_t, area2_code(codes[i], n));
      gs.normalize();
      ApplyFn apply = [h](std::span<const double> x, std::span<double> y) {
        Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
        Eigen::Map<Eigen::VectorXd> yv(y.data(), static_cast<Eigen::Index>(y.size()));
        yv.noalias() = *h * xv;
      };
      const std::vector<Eigen::VectorXd> deflate{gs};
      const auto est = lanczos_extremal(apply, codes.size(), Extremum::Smallest, deflate, options);
      sv.active = true;
      sv.value = est.value;
      sv.residual = est.residual;
      sv.iterations = est.iterations;
      r.iterations += est.iterations;
      r.max_residual = std::max(r.max_residual, est.residual);
      if (sv.value < r.value * (1.0 - 1e-12)) {
        r.value = sv.value;
        r.argmin = sv.pq;
      }
    }
    r.sectors.push_back(sv);
  }
  return r;
}

std::optional<double> open_gap_bound(double gamma, double z) {
  if (!(z < 0.5)) return std::nullopt;
  return gamma * (0.5 - z);
}

// ---------------------------------------------------------- boundary penalty

std::vector<double> penalty_ratio_series(int n_max, double t) {
  if (n_max < 2) throw DomainError("penalty ratio needs n >= 2");
  if (!(t > 0.0)) throw DomainError("area weight t must be positive");
  const auto table = build_recursive(n_max, ScalarMode::Float64, Rational::from_double(t));
  std::vector<double> out;
  for (int n = 2; n <= n_max; ++n) out.push_back((table.value(n - 1, 0, 0) / table.value(n, 1, 0)).to_double());
  return out;
}

PenaltyReport boundary_penalty(int n, double t) {
  if (n < 2) throw DomainError("boundary penalty needs n >= 2");
  if (!(t > 0.0)) throw DomainError("area weight t must be positive");
  PenaltyReport rep;
  rep.n = n;
  rep.t = t;
  rep.ratio = penalty_ratio_series(n, t).back();
  rep.t_times_ratio = t * rep.ratio;
  if (n > kEnumerationCap) return rep;

  // Pi_bdry is diagonal in the string basis and classes partition the strings,
  // so its compression onto the ground space is diagonal in the GS_{p,q} basis.
  const auto sectors = static_cast<std::size_t>(sector_count(n));
  std::vector<double> weight(sectors, 0.0), fired(sectors, 0.0);
  const double root_t = std::sqrt(t);
  const Code dim = pow3(n);
  const Code first_digit = pow3(n - 1);
  for (Code c = 0; c < dim; ++c) {
    const auto id = static_cast<std::size_t>(sector_id(n, classify_code(c, n)));
    const double a = std::pow(root_t, area2_code(c, n));
    const double w = a * a;
    weight[id] += w;
    int hits = 0;
    if (c / first_digit == static_cast<Code>(Step::Down)) ++hits;
    if (c % 3 == static_cast<Code>(Step::Up)) ++hits;
    fired[id] += hits * w;
  }
  rep.minimum = std::numeric_limits<double>::infinity();
  for (std::size_t id = 1; id < sectors; ++id) {
    SectorPenalty sp{sector_pair(n, static_cast<int>(id)), fired[id] / weight[id]};
    if (sp.expectation < rep.minimum * (1.0 - 1e-12)) {
      rep.minimum = sp.expectation;
      rep.argmin = sp.pq;
    }
    rep.sectors.push_back(sp);
  }
  return rep;
}

// ------------------------------------------------------ projection step: open gap + boundary penalty -> pinned gap

double projection_objective(double eps, double c1, double c2) {
  if (eps >= c1) return -std::numeric_limits<double>::infinity();
  return eps * c2 - eps * eps / (c1 - eps);
}

std::optional<EpsilonChoice> maximize_projection_bound(double c1, double c2, double tol) {
  if (!(c1 > 0.0) || !(c2 > 0.0)) return std::nullopt;
  // f is concave on (0, c1): a linear term minus a convex one
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0, hi = std::min(1.0, c1);
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = projection_objective(x1, c1, c2), f2 = projection_objective(x2, c1, c2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = projection_objective(x2, c1, c2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = projection_objective(x1, c1, c2);
    }
  }
  EpsilonChoice best;
  best.epsilon = 0.5 * (lo + hi);
  best.value = projection_objective(best.epsilon, c1, c2);
  return best;
}

double empirical_c2(double t, int n_penalty) {
  if (n_penalty < 2 || n_penalty > kEnumerationCap) {
    throw DomainError("penalty range must satisfy 2 <= n <= " + std::to_string(kEnumerationCap));
  }
  double c2 = std::numeric_limits<double>::infinity();
  for (int n = 2; n <= n_penalty; ++n) c2 = std::min(c2, boundary_penalty(n, t).minimum);
  return c2;
}

GapCertificate pinned_gap_bound(int k, double t, int n_penalty, const LanczosOptions& options) {
  check_certificate_t(t);
  GapCertificate c;
  c.t = t;
  c.k = k;
  c.solver_tol = options.tol;
  const auto gamma = compute_gamma_k(k, t, options);
  const auto z = compute_zk(k, t, options);
  c.gamma_k = gamma.value;
  c.gamma_iterations = gamma.iterations;
  c.z_k = z.value;
  c.z_sector = z.argmax;
  c.z_iterations = z.iterations;
  c.open_bound = open_gap_bound(c.gamma_k, c.z_k);
  c.c2 = empirical_c2(t, n_penalty);
  c.c2_n_lo = 2;
  c.c2_n_hi = n_penalty;
  if (c.open_bound) {
    if (auto best = maximize_projection_bound(*c.open_bound, c.c2)) {
      c.epsilon = best->epsilon;
      c.final_bound = best->value;
    }
  }
  return c;
}

}  // namespace motzkin
