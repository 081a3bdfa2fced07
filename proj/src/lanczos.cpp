#include "motzkin/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "motzkin/errors.hpp"

namespace motzkin {

std::vector<double> deterministic_perturbation(std::size_t dimension, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(dimension);
  for (auto& x : v) x = dist(gen);
  return v;
}

namespace {

constexpr int kKrylovCap = 400;

void orthogonalize(Eigen::VectorXd& w, std::span<const Eigen::VectorXd> deflate) {
  for (const auto& d : deflate) w -= d.dot(w) * d;
}

struct Ritz {
  double value;
  double residual;
  Eigen::VectorXd vector;  // in the Krylov basis
};

Ritz extremal_ritz(const std::vector<double>& alpha, const std::vector<double>& beta, Extremum which) {
  const auto m = static_cast<Eigen::Index>(alpha.size());
  Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
  Eigen::VectorXd sub(std::max<Eigen::Index>(m - 1, 0));
  for (Eigen::Index i = 0; i + 1 < m; ++i) sub(i) = beta[static_cast<std::size_t>(i)];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  const Eigen::Index idx = which == Extremum::Largest ? m - 1 : 0;
  Ritz r;
  r.value = es.eigenvalues()(idx);
  r.vector = es.eigenvectors().col(idx);
  const double last_beta = beta.size() >= alpha.size() ? beta[alpha.size() - 1] : 0.0;
  r.residual = std::fabs(last_beta * r.vector(m - 1));
  return r;
}

}  // namespace

EigenEstimate lanczos_extremal(const ApplyFn& apply, std::size_t dimension, Extremum which,
                               std::span<const Eigen::VectorXd> deflate, const LanczosOptions& options) {
  const auto dim = static_cast<Eigen::Index>(dimension);
  if (dimension <= deflate.size()) throw DomainError("nothing left after deflation");
  const auto available = static_cast<Eigen::Index>(dimension - deflate.size());

  EigenEstimate est;
  std::uint64_t seed = options.perturbation_seed;
  auto fresh_vector = [&](const Eigen::MatrixXd& basis, Eigen::Index used) {
    auto p = deterministic_perturbation(dimension, seed++);
    Eigen::VectorXd v = Eigen::Map<Eigen::VectorXd>(p.data(), dim);
    for (int pass = 0; pass < 2; ++pass) {
      orthogonalize(v, deflate);
      if (used > 0) v -= basis.leftCols(used) * (basis.leftCols(used).transpose() * v);
    }
    est.restarted = true;
    return Eigen::VectorXd(v / v.norm());
  };

  Eigen::VectorXd start = Eigen::VectorXd::Ones(dim);
  orthogonalize(start, deflate);
  orthogonalize(start, deflate);
  const Eigen::Index cap = std::min<Eigen::Index>(available, kKrylovCap);
  Eigen::MatrixXd basis(dim, cap);
  if (start.norm() < 1e-8 * std::sqrt(static_cast<double>(dimension))) {
    start = fresh_vector(basis, 0);
  } else {
    start.normalize();
  }

  Eigen::VectorXd w(dim);
  double best_residual = HUGE_VAL;
  int stagnant_cycles = 0;
  while (est.iterations < options.max_iterations) {
    std::vector<double> alpha, beta;
    basis.col(0) = start;
    Eigen::Index m = 0;
    Ritz ritz{0.0, HUGE_VAL, {}};
    bool exact = false;
    while (true) {
      apply(std::span<const double>(basis.col(m).data(), dimension), std::span<double>(w.data(), dimension));
      ++est.iterations;
      orthogonalize(w, deflate);
      const double a = basis.col(m).dot(w);
      alpha.push_back(a);
      for (int pass = 0; pass < 2; ++pass) {
        w -= basis.leftCols(m + 1) * (basis.leftCols(m + 1).transpose() * w);
        orthogonalize(w, deflate);
      }
      double b = w.norm();
      ++m;
      const bool full = m == available;
      const bool breakdown = b < 1e-12 * std::max(1.0, std::fabs(a));
      beta.push_back(full ? 0.0 : b);
      if (full || m == cap || breakdown || m % 5 == 0 || est.iterations >= options.max_iterations) {
        ritz = extremal_ritz(alpha, beta, which);
        if (full) {
          exact = true;
          ritz.residual = 0.0;
          break;
        }
        if (!breakdown && ritz.residual <= options.tol * std::max(1.0, std::fabs(ritz.value))) break;
        if (m == cap || est.iterations >= options.max_iterations) break;
      }
      if (breakdown) {
        // invariant subspace: continue with a fresh direction orthogonal to it
        beta.back() = 0.0;
        basis.col(m) = fresh_vector(basis, m);
        continue;
      }
      basis.col(m) = w / b;
    }
    est.value = ritz.value;
    est.residual = ritz.residual;
    if (exact || ritz.residual <= options.tol * std::max(1.0, std::fabs(ritz.value))) return est;
    // explicit restart from the current Ritz vector
    start = basis.leftCols(m) * ritz.vector;
    start.normalize();
    if (ritz.residual < 0.5 * best_residual) {
      best_residual = ritz.residual;
      stagnant_cycles = 0;
    } else if (++stagnant_cycles >= 3) {
      start = (start + 1e-3 * fresh_vector(basis, 0)).normalized();
      stagnant_cycles = 0;
    }
  }
  throw SolverError("Lanczos did not converge (residual " + std::to_string(est.residual) + ")",
                    est.residual, est.iterations);
}

std::vector<SectorEigen> sectorwise_largest(const ApplyFn& apply, std::span<const std::uint16_t> labels,
                                            int blocks, std::vector<double> start,
                                            const LanczosOptions& options) {
  const std::size_t dim = labels.size();
  if (start.size() != dim) throw DomainError("start vector dimension mismatch");
  const auto nb = static_cast<std::size_t>(blocks);
  std::vector<SectorEigen> out(nb);
  std::vector<std::vector<double>> alpha(nb), beta(nb);
  std::vector<char> running(nb, 0);

  auto block_sums = [&](const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> s(nb, 0.0);
    for (std::size_t i = 0; i < dim; ++i) s[labels[i]] += x[i] * y[i];
    return s;
  };

  std::vector<double> v = std::move(start), v_prev(dim, 0.0), w(dim, 0.0);
  {
    const auto norms = block_sums(v, v);
    std::vector<double> scale(nb, 0.0);
    for (std::size_t b = 0; b < nb; ++b) {
      if (norms[b] > 1e-24) {
        scale[b] = 1.0 / std::sqrt(norms[b]);
        running[b] = 1;
        out[b].active = true;
      }
    }
    for (std::size_t i = 0; i < dim; ++i) v[i] *= scale[labels[i]];
  }

  auto any_running = [&] { return std::any_of(running.begin(), running.end(), [](char c) { return c != 0; }); };
  int iteration = 0;
  while (any_running() && iteration < options.max_iterations) {
    ++iteration;
    apply(v, w);
    const auto a = block_sums(v, w);
    std::vector<double> prev_beta(nb, 0.0);
    for (std::size_t b = 0; b < nb; ++b) {
      if (!beta[b].empty()) prev_beta[b] = beta[b].back();
    }
    for (std::size_t i = 0; i < dim; ++i) {
      const auto b = labels[i];
      w[i] = running[b] ? w[i] - a[b] * v[i] - prev_beta[b] * v_prev[i] : 0.0;
    }
    // one local reorthogonalization pass against v keeps alpha accurate
    const auto c = block_sums(v, w);
    for (std::size_t i = 0; i < dim; ++i) w[i] -= c[labels[i]] * v[i];
    const auto bn = block_sums(w, w);

    std::vector<double> scale(nb, 0.0);
    for (std::size_t b = 0; b < nb; ++b) {
      if (!running[b]) continue;
      alpha[b].push_back(a[b] + c[b]);
      const double bb = std::sqrt(std::max(bn[b], 0.0));
      const bool breakdown = bb < 1e-13 * std::max(1.0, std::fabs(a[b]));
      beta[b].push_back(breakdown ? 0.0 : bb);
      out[b].iterations = static_cast<int>(alpha[b].size());
      if (breakdown || alpha[b].size() % 5 == 0 || iteration >= options.max_iterations) {
        const auto r = extremal_ritz(alpha[b], beta[b], Extremum::Largest);
        out[b].value = r.value;
        out[b].residual = breakdown ? 0.0 : r.residual;
        if (breakdown || r.residual <= options.tol * std::max(1.0, std::fabs(r.value))) {
          running[b] = 0;
          continue;
        }
      }
      scale[b] = 1.0 / bb;
    }
    for (std::size_t i = 0; i < dim; ++i) {
      const auto b = labels[i];
      v_prev[i] = running[b] ? v[i] : 0.0;
      v[i] = running[b] ? w[i] * scale[b] : 0.0;
    }
  }
  for (std::size_t b = 0; b < nb; ++b) {
    if (running[b]) {
      throw SolverError("sector Lanczos did not converge in block " + std::to_string(b),
                        out[b].residual, out[b].iterations);
    }
  }
  return out;
}

}  // namespace motzkin
