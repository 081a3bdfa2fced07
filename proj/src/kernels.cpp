#include "motzkin/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "motzkin/errors.hpp"

namespace motzkin::kernels {

namespace {

constexpr int kPairFlatUp = 0 * 3 + 1, kPairUpFlat = 1 * 3 + 0;
constexpr int kPairFlatDown = 0 * 3 + 2, kPairDownFlat = 2 * 3 + 0;
constexpr int kPairUpDown = 1 * 3 + 2, kPairFlatFlat = 0;

void check_sizes(std::size_t dim, std::span<const double> x, std::span<double> y) {
  if (x.size() != dim || y.size() != dim) throw DomainError("state dimension mismatch");
}

std::vector<Code> site_weights(int n) {
  std::vector<Code> w(static_cast<std::size_t>(n) + 1);
  for (int i = 1; i <= n; ++i) w[static_cast<std::size_t>(i)] = pow3(n - i);
  return w;
}

}  // namespace

BondTable BondTable::make(double t) {
  BondTable b;
  b.partner.fill(-1);
  const double s = 1.0 + t * t;
  auto block = [&](int hi_weight, int lo_weight) {
    // rank-1 projector onto (t|hi> - |lo>)/sqrt(1+t^2), hi gets t^2/(1+t^2)
    b.diag[static_cast<std::size_t>(hi_weight)] = t * t / s;
    b.diag[static_cast<std::size_t>(lo_weight)] = 1.0 / s;
    b.partner[static_cast<std::size_t>(hi_weight)] = lo_weight;
    b.partner[static_cast<std::size_t>(lo_weight)] = hi_weight;
    b.offdiag[static_cast<std::size_t>(hi_weight)] = -t / s;
    b.offdiag[static_cast<std::size_t>(lo_weight)] = -t / s;
  };
  block(kPairFlatUp, kPairUpFlat);      // |U> = (t|0u> - |u0>)/sqrt(1+t^2)
  block(kPairDownFlat, kPairFlatDown);  // |D> = (|0d> - t|d0>)/sqrt(1+t^2)
  block(kPairFlatFlat, kPairUpDown);    // |phi> = (|ud> - t|00>)/sqrt(1+t^2)
  return b;
}

void apply_bonds_serial(const BondSum& h, std::span<const double> x, std::span<double> y) {
  const Code dim = pow3(h.n);
  check_sizes(dim, x, y);
  const BondTable table = BondTable::make(h.t);
  const auto w = site_weights(h.n);
  std::fill(y.begin(), y.end(), 0.0);
  std::vector<int> d(static_cast<std::size_t>(h.n) + 1);
  for (Code c = 0; c < dim; ++c) {
    Code rest = c;
    for (int i = h.n; i >= 1; --i) {
      d[static_cast<std::size_t>(i)] = static_cast<int>(rest % 3);
      rest /= 3;
    }
    const double xc = x[c];
    for (int i = h.first_bond; i <= h.last_bond; ++i) {
      const int a = d[static_cast<std::size_t>(i)], b = d[static_cast<std::size_t>(i) + 1];
      const int s = 3 * a + b;
      y[c] += table.diag[static_cast<std::size_t>(s)] * xc;
      const int s2 = table.partner[static_cast<std::size_t>(s)];
      if (s2 >= 0) {
        const Code c2 = c - static_cast<Code>(a) * w[static_cast<std::size_t>(i)] -
                        static_cast<Code>(b) * w[static_cast<std::size_t>(i) + 1] +
                        static_cast<Code>(s2 / 3) * w[static_cast<std::size_t>(i)] +
                        static_cast<Code>(s2 % 3) * w[static_cast<std::size_t>(i) + 1];
        y[c2] += table.offdiag[static_cast<std::size_t>(s)] * xc;
      }
    }
    if (h.pinned) {
      if (d[1] == 2) y[c] += xc;
      if (d[static_cast<std::size_t>(h.n)] == 1) y[c] += xc;
    }
  }
}

void apply_bonds_parallel(const BondSum& h, std::span<const double> x, std::span<double> y) {
  const Code dim = pow3(h.n);
  check_sizes(dim, x, y);
  const BondTable table = BondTable::make(h.t);
  const auto w = site_weights(h.n);
  const auto n = static_cast<std::size_t>(h.n);
  const std::int64_t total = static_cast<std::int64_t>(dim);
#pragma omp parallel
  {
    std::vector<int> d(n + 1);
#pragma omp for schedule(static)
    for (std::int64_t ci = 0; ci < total; ++ci) {
      const Code c = static_cast<Code>(ci);
      Code rest = c;
      for (std::size_t i = n; i >= 1; --i) {
        d[i] = static_cast<int>(rest % 3);
        rest /= 3;
      }
      double acc = 0.0;
      for (int i = h.first_bond; i <= h.last_bond; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        const int s = 3 * d[iu] + d[iu + 1];
        acc += table.diag[static_cast<std::size_t>(s)] * x[c];
        const int s2 = table.partner[static_cast<std::size_t>(s)];
        if (s2 >= 0) {
          const Code c2 = c + static_cast<Code>(s2 / 3) * w[iu] + static_cast<Code>(s2 % 3) * w[iu + 1] -
                          static_cast<Code>(d[iu]) * w[iu] - static_cast<Code>(d[iu + 1]) * w[iu + 1];
          acc += table.offdiag[static_cast<std::size_t>(s)] * x[c2];
        }
      }
      if (h.pinned) {
        if (d[1] == 2) acc += x[c];
        if (d[n] == 1) acc += x[c];
      }
      y[c] = acc;
    }
  }
}

namespace {

struct IntervalLayout {
  Code left_count, right_count, left_stride, inner_stride;
};

IntervalLayout layout(int n, int a, int b, const SegmentGroundStates& seg) {
  if (a < 1 || b > n || a > b) throw DomainError("interval must satisfy 1 <= a <= b <= n");
  if (seg.length != b - a + 1) throw DomainError("segment ground states built for a different length");
  return {pow3(a - 1), pow3(n - b), pow3(n - a + 1), pow3(n - b)};
}

inline void project_block(const SegmentGroundStates& seg, Code base, Code stride,
                          std::span<const double> x, std::span<double> y) {
  for (std::size_t s = 0; s < seg.codes.size(); ++s) {
    const auto& codes = seg.codes[s];
    const auto& amps = seg.amplitudes[s];
    double overlap = 0.0;
    for (std::size_t i = 0; i < codes.size(); ++i) overlap += amps[i] * x[base + codes[i] * stride];
    for (std::size_t i = 0; i < codes.size(); ++i) y[base + codes[i] * stride] = overlap * amps[i];
  }
}

}  // namespace

void project_interval_serial(int n, int a, int b, const SegmentGroundStates& seg,
                             std::span<const double> x, std::span<double> y) {
  const auto lay = layout(n, a, b, seg);
  check_sizes(pow3(n), x, y);
  for (Code l = 0; l < lay.left_count; ++l) {
    for (Code r = 0; r < lay.right_count; ++r) {
      project_block(seg, l * lay.left_stride + r, lay.inner_stride, x, y);
    }
  }
}

void project_interval_parallel(int n, int a, int b, const SegmentGroundStates& seg,
                               std::span<const double> x, std::span<double> y) {
  const auto lay = layout(n, a, b, seg);
  check_sizes(pow3(n), x, y);
  const std::int64_t outer = static_cast<std::int64_t>(lay.left_count * lay.right_count);
#pragma omp parallel for schedule(static)
  for (std::int64_t o = 0; o < outer; ++o) {
    const Code l = static_cast<Code>(o) / lay.right_count;
    const Code r = static_cast<Code>(o) % lay.right_count;
    project_block(seg, l * lay.left_stride + r, lay.inner_stride, x, y);
  }
}

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("dot: dimension mismatch");
  double s = 0.0;
  const std::int64_t n = static_cast<std::int64_t>(x.size());
#pragma omp parallel for reduction(+ : s) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) s += x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
  return s;
}

}  // namespace motzkin::kernels
