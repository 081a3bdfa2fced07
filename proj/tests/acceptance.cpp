// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "motzkin/criterion.hpp"
#include "motzkin/groundspace.hpp"
#include "motzkin/hamiltonian.hpp"
#include "motzkin/normtable.hpp"
#include "motzkin/sector_basis.hpp"
#include "oracles.hpp"

using namespace motzkin;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

const double kTGrid[] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

void initial_data(Outcome& o) {
  const auto table = build_recursive(3, ScalarMode::ExactPoly, Rational{1, 2});
  struct Row {
    int k, p, q;
    const char* poly;
  };
  const Row rows[] = {
      {1, 0, 0, "1"},          {1, 0, 1, "t"},              {1, 1, 0, "t"},
      {2, 0, 0, "1+t^2"},      {2, 0, 1, "t+t^3"},          {2, 0, 2, "t^4"},         {2, 1, 1, "t^2"},
      {2, 1, 0, "t+t^3"},      {2, 2, 0, "t^4"},
      {3, 0, 0, "1+2t^2+t^4"}, {3, 0, 1, "t+2t^3+t^5+t^7"}, {3, 0, 2, "t^4+t^6+t^8"}, {3, 0, 3, "t^9"},
      {3, 1, 1, "t^2+2t^4"},   {3, 1, 2, "t^5"},             {3, 1, 0, "t+2t^3+t^5+t^7"},
      {3, 2, 0, "t^4+t^6+t^8"}, {3, 2, 1, "t^5"},            {3, 3, 0, "t^9"},
  };
  for (const auto& r : rows) {
    o.require(table.polynomial(r.k, r.p, r.q) == Poly::parse(r.poly),
              "N(" + std::to_string(r.k) + "," + std::to_string(r.p) + "," + std::to_string(r.q) + ")");
  }
  o.detail << std::size(rows) << " entries exact";
}

void oracle_equivalence(Outcome& o) {
  double worst = 0.0;
  for (const char* ts : {"0.3", "0.6", "0.9"}) {
    const auto t = Rational::parse(ts);
    const auto table = build_recursive(10, ScalarMode::Float64, t);
    for (int n = 1; n <= 10; ++n) {
      for (int p = 0; p <= n; ++p) {
        for (int q = 0; p + q <= n; ++q) {
          const double bf = brute_force(n, p, q, t.to_double());
          worst = std::max(worst, std::fabs(table.value_double(n, p, q) / bf - 1.0));
        }
      }
    }
  }
  o.require(worst <= 1e-12, "relative error above 1e-12");
  o.detail << "max relative error " << worst;
}

void degeneracy(Outcome& o) {
  double worst_overlap = 1.0;
  for (int n = 4; n <= 8; ++n) {
    for (double t : {0.3, 0.7}) {
      const auto open = oracle::exact_gap(n, t, false);
      o.require(open.kernel_dim == sector_count(n), "open kernel dimension at n=" + std::to_string(n));
      const auto pinned = oracle::exact_gap(n, t, true);
      o.require(pinned.kernel_dim == 1, "pinned kernel dimension at n=" + std::to_string(n));
      // kernel vector lives in the balanced sector; compare with the combinatorial state
      const SectorBasis basis(n);
      const Eigen::MatrixXd h = Eigen::MatrixXd(sector_matrix(basis, {0, 0}, t, true));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
      const auto amp = class_amplitudes(n, {0, 0}, t);
      Eigen::VectorXd gs(static_cast<Eigen::Index>(amp.values.size()));
      for (std::size_t i = 0; i < amp.codes.size(); ++i) gs(basis.index_of(amp.codes[i])) = amp.values[i];
      gs.normalize();
      const double ov = std::pow(es.eigenvectors().col(0).dot(gs), 2);
      worst_overlap = std::min(worst_overlap, ov);
      o.require(ov >= 1 - 1e-10, "pinned ground-state overlap at n=" + std::to_string(n));
    }
  }
  o.detail << "kernels (n+1)(n+2)/2 and 1 for n=4..8; min pinned overlap " << worst_overlap;
}

void boundary_penalty_check(Outcome& o) {
  double worst_margin = HUGE_VAL, worst_var = 0.0, min_exact = HUGE_VAL;
  for (double t : kTGrid) {
    const auto series = penalty_ratio_series(200, t);
    for (double r : series) worst_margin = std::min(worst_margin, r - (1 - t));
    double prev = 0.0;
    for (int n = 2; n <= 10; ++n) {
      const double m = boundary_penalty(n, t).minimum;
      o.require(m > 0.0, "exact compression not positive");
      min_exact = std::min(min_exact, m);
      if (n == 10) worst_var = std::max(worst_var, std::fabs(m - prev) / prev);
      prev = m;
    }
  }
  o.require(worst_margin >= 0.0, "ratio below 1-t");
  o.require(worst_var < 0.01, "n=9 -> 10 variation above 1%");
  o.detail << "min(ratio-(1-t)) " << worst_margin << ", min exact " << min_exact << ", max n=9->10 change "
           << worst_var;
}

void pi_properties(Outcome& o) {
  double worst_stability = 0.0, min_c1 = HUGE_VAL;
  for (const char* ts : {"0.3", "0.5", "0.7", "0.9"}) {
    const auto r = ratios(build_recursive(60, ScalarMode::Float64, Rational::parse(ts)));
    const double t = r.t;
    const auto c = decay_constants(r);
    for (int k = 1; k <= 60; ++k) {
      for (int p = 0; p <= k; ++p) {
        for (int q = 0; p + q <= k; ++q) {
          const auto pi = r.pi_at(k, p, q);
          if (k < 60) o.require(pi <= r.pi_at(k + 1, p, q) * ScaledDouble(1 + 1e-12), "monotone in k");
          if (p + q < k) o.require(r.pi_at(k, p + 1, q) <= pi * ScaledDouble(1 + 1e-12), "antitone in p");
          if (p + q < k) {
            o.require(r.pi_at(k, p, q + 1) <= pi * ScaledDouble::pow(t, 2 * q) * ScaledDouble(c.c0_hat * (1 + 1e-12)),
                      "decay in q");
          }
        }
      }
    }
    const auto c40 = decay_constants(ratios(build_recursive(40, ScalarMode::Float64, Rational::parse(ts))));
    o.require(std::isfinite(c.c0_hat), "C0hat finite");
    o.require(c.c1_hat > 0.0, "C1hat positive");
    const double stab = std::fabs(c.c0_hat / c40.c0_hat - 1.0);
    o.require(stab <= 1e-6, "C0hat stable between kMax 40 and 60");
    worst_stability = std::max(worst_stability, stab);
    min_c1 = std::min(min_c1, c.c1_hat);
  }
  o.detail << "C0hat kMax 40->60 change " << worst_stability << ", min C1hat " << min_c1;
}

void defect_fits(Outcome& o) {
  const auto r = ratios(build_recursive(60, ScalarMode::Float64, Rational::parse("0.7")));
  double p0_slope = 0.0, lo = HUGE_VAL, hi = -HUGE_VAL, min_r2 = 1.0;
  for (auto [p, q] : {std::pair{0, 1}, std::pair{1, 1}, std::pair{2, 1}, std::pair{1, 2}, std::pair{2, 2}}) {
    const auto fit = fit_rate(convergence_series(r, p, q, p + q, 60), {1e-10, 1e-2});
    min_r2 = std::min(min_r2, fit.r_squared);
    o.require(fit.r_squared >= 0.98, "R^2 at (" + std::to_string(p) + "," + std::to_string(q) + ")");
    if (p == 0) {
      p0_slope = fit.slope;
    } else {
      lo = std::min(lo, fit.slope);
      hi = std::max(hi, fit.slope);
    }
  }
  // slopes are negative: lo is the steepest p >= 1 slope
  const double spread = (hi - lo) / std::fabs(hi);
  o.require(spread <= 0.10, "p >= 1 slopes differ by more than 10%");
  o.require(p0_slope < lo, "p = 0 slope not steeper");
  o.detail << "min R^2 " << min_r2 << ", p>=1 slopes [" << lo << ", " << hi << "], p=0 slope " << p0_slope;
}

void criterion_scale(Outcome& o) {
  double worst_oracle = 0.0;
  double max_conclusive_t = 0.0;
  for (double t : kTGrid) {
    const double z2 = compute_zk(2, t).value, z3 = compute_zk(3, t).value;
    worst_oracle = std::max(worst_oracle, std::fabs(z2 - oracle::dense_zk(2, t)));
    o.require(z3 <= z2, "z_3 <= z_2");
    if (t <= 0.5) {
      o.require(std::min(z2, z3) < 0.5, "conclusive for t <= 0.5");
      o.require(pinned_gap_bound(2, t).conclusive(), "pinned certificate at t <= 0.5");
    }
    if (std::min(z2, z3) < 0.5) max_conclusive_t = t;
  }
  o.require(worst_oracle <= 1e-8, "dense oracle agreement at k=2");
  const double z4 = compute_zk(4, 0.5).value;
  o.require(z4 <= compute_zk(3, 0.5).value, "z_4 <= z_3 at t=0.5");
  o.detail << "max |z_2 - dense| " << worst_oracle << ", conclusive up to t=" << max_conclusive_t
           << " (k<=3), z_4(0.5)=" << z4;
}

void soundness(Outcome& o) {
  for (double t : {0.3, 0.5}) {
    const auto cert = pinned_gap_bound(2, t);
    o.require(cert.conclusive(), "certificate conclusive");
    if (!cert.conclusive()) continue;
    for (int n : {6, 8}) {
      const double open = oracle::exact_gap(n, t, false).gap, pinned = oracle::exact_gap(n, t, true).gap;
      o.require(open >= *cert.open_bound, "open gap >= open bound");
      o.require(pinned >= *cert.final_bound, "pinned gap >= pinned bound");
      o.detail << "t=" << t << " n=" << n << ": " << open << ">=" << *cert.open_bound << ", " << pinned
               << ">=" << *cert.final_bound << "; ";
    }
  }
}

void approximation_proxies(Outcome& o) {
  for (double t : {0.3, 0.5, 0.7, 0.9}) {
    double prev[3] = {2.0, 2.0, 2.0};
    for (int n : {8, 10, 12, 14}) {
      const int h = n / 2, cut = (n + 7) / 8;
      const ApproxStateSpec specs[3] = {{ApproxKind::ATGS, {h, h}, {1, 1}, cut},
                                        {ApproxKind::PGSRight, {h, h}, {0, n - 2}, 0},
                                        {ApproxKind::PGSLeft, {h, h}, {n - 2, 0}, 0}};
      for (int i = 0; i < 3; ++i) {
        const double d =
            overlap_defect(ground_vector(n, specs[i].pq, t).amplitudes, approx_vector(specs[i], t)).defect;
        o.require(d < prev[i], "defect decreases (kind " + std::to_string(i) + ", t=" + std::to_string(t) +
                                   ", n=" + std::to_string(n) + ")");
        if (i == 0) {
          const auto norms = build_recursive(n, ScalarMode::Float64, Rational::from_double(t));
          const double identity = 1.0 - (split_norm(norms, h, norms, h, 1, 1, cut) / norms.value(n, 1, 1)).to_double();
          o.require(std::fabs(d - identity) <= 1e-10 * std::max(1.0, identity), "ATGS defect identity");
        }
        prev[i] = d;
      }
    }
    o.detail << "t=" << t << " n=14: atgs " << prev[0] << ", pgs " << prev[1] << "; ";
  }
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Outcome&)>> criteria[] = {
      {"initial data exactness", initial_data},
      {"recursion vs brute force", oracle_equivalence},
      {"ground-space degeneracy", degeneracy},
      {"boundary penalty", boundary_penalty_check},
      {"pi-ratio monotonicity and decay", pi_properties},
      {"defect fits at t=0.7", defect_fits},
      {"criterion at desk scale", criterion_scale},
      {"certificate soundness", soundness},
      {"approximate ground states", approximation_proxies},
  };
  int failed = 0, index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      check(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d: %s (%s; %.1f s) %s\n", index, o.pass ? "PASS" : "FAIL", name, secs,
                o.detail.str().c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
