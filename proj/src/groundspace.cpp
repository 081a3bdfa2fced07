#include "motzkin/groundspace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "motzkin/errors.hpp"
#include "motzkin/kernels.hpp"

namespace motzkin {

SegmentGroundStates SegmentGroundStates::build(int length, double t) {
  if (length < 1 || length > kEnumerationCap) {
    throw ResourceError("segment ground states support lengths 1.." + std::to_string(kEnumerationCap));
  }
  if (!(t > 0.0)) throw DomainError("area weight t must be positive");
  SegmentGroundStates s;
  s.length = length;
  s.t = t;
  const auto sectors = static_cast<std::size_t>(sector_count(length));
  s.codes.resize(sectors);
  s.amplitudes.resize(sectors);
  s.norms.assign(sectors, 0.0);
  const double root_t = std::sqrt(t);
  const Code dim = pow3(length);
  for (Code c = 0; c < dim; ++c) {
    const auto id = static_cast<std::size_t>(sector_id(length, classify_code(c, length)));
    const double amp = std::pow(root_t, area2_code(c, length));
    s.codes[id].push_back(c);
    s.amplitudes[id].push_back(amp);
    s.norms[id] += amp * amp;
  }
  for (std::size_t id = 0; id < sectors; ++id) {
    const double inv = 1.0 / std::sqrt(s.norms[id]);
    for (auto& a : s.amplitudes[id]) a *= inv;
  }
  return s;
}

namespace {

void check_state_length(int n) {
  if (n < 1) throw DomainError("chain length must be >= 1");
  if (n > kStateLengthCap) {
    throw ResourceError("full-space states are limited to n <= " + std::to_string(kStateLengthCap));
  }
}

void check_class(int n, Imbalance pq) {
  if (pq.p < 0 || pq.q < 0 || pq.p + pq.q > n) throw DomainError("invalid class (p,q) for this length");
}

}  // namespace

ClassAmplitudes class_amplitudes(int length, Imbalance pq, double t) {
  check_class(length, pq);
  if (!(t > 0.0)) throw DomainError("area weight t must be positive");
  ClassAmplitudes out;
  out.codes = class_codes(length, pq);
  out.values.reserve(out.codes.size());
  const double root_t = std::sqrt(t);
  for (Code c : out.codes) out.values.push_back(std::pow(root_t, area2_code(c, length)));
  return out;
}

GroundStateVector ground_vector(int n, Imbalance pq, double t) {
  check_state_length(n);
  const auto cls = class_amplitudes(n, pq, t);
  GroundStateVector g;
  g.n = n;
  g.pq = pq;
  g.t = t;
  g.amplitudes = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(pow3(n)));
  for (std::size_t i = 0; i < cls.codes.size(); ++i) {
    g.amplitudes(static_cast<Eigen::Index>(cls.codes[i])) = cls.values[i];
    g.norm2 += cls.values[i] * cls.values[i];
  }
  g.amplitudes /= std::sqrt(g.norm2);
  return g;
}

// --------------------------------------------------------------- projectors

IntervalProjector::IntervalProjector(int n, int a, int b, double t) : n_(n), a_(a), b_(b) {
  check_state_length(n);
  if (a < 1 || b > n || a > b) throw DomainError("interval must satisfy 1 <= a <= b <= n");
  segment_ = SegmentGroundStates::build(b - a + 1, t);
}

std::size_t IntervalProjector::dimension() const { return static_cast<std::size_t>(pow3(n_)); }

void IntervalProjector::apply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != dimension() || y.size() != dimension()) throw DomainError("state dimension mismatch");
  kernels::project_interval_parallel(n_, a_, b_, segment_, x, y);
}

Eigen::VectorXd IntervalProjector::operator()(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y(x.size());
  apply(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())),
        std::span<double>(y.data(), static_cast<std::size_t>(y.size())));
  return y;
}

DifferenceProjector::DifferenceProjector(int k, double t)
    : k_(k), inner_(3 * k, 1, 2 * k, t), full_(3 * k, 1, 3 * k, t) {
  if (k < 1) throw DomainError("block parameter k must be >= 1");
}

void DifferenceProjector::apply(std::span<const double> x, std::span<double> y) const {
  std::vector<double> tmp(x.size());
  inner_.apply(x, y);
  full_.apply(x, tmp);
  const auto n = static_cast<std::int64_t>(y.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] -= tmp[static_cast<std::size_t>(i)];
}

Eigen::VectorXd apply_Ek(int k, double t, const Eigen::VectorXd& state) {
  if (k < 1) throw DomainError("block parameter k must be >= 1");
  check_state_length(3 * k);
  if (static_cast<Code>(state.size()) != pow3(3 * k)) throw DomainError("apply_Ek needs a 3k-site state");
  DifferenceProjector e(k, t);
  Eigen::VectorXd y(state.size());
  e.apply(std::span<const double>(state.data(), static_cast<std::size_t>(state.size())),
          std::span<double>(y.data(), static_cast<std::size_t>(y.size())));
  return y;
}

// ------------------------------------------------------- approximate states

namespace {

// out += a (x) b, with b on the last `b_len` sites.
void add_product(Eigen::VectorXd& out, const ClassAmplitudes& a, const ClassAmplitudes& b, int b_len) {
  const Code stride = pow3(b_len);
  for (std::size_t i = 0; i < a.codes.size(); ++i) {
    for (std::size_t j = 0; j < b.codes.size(); ++j) {
      out(static_cast<Eigen::Index>(a.codes[i] * stride + b.codes[j])) += a.values[i] * b.values[j];
    }
  }
}

ClassAmplitudes concat(const ClassAmplitudes& a, const ClassAmplitudes& b, int b_len) {
  ClassAmplitudes out;
  const Code stride = pow3(b_len);
  for (std::size_t i = 0; i < a.codes.size(); ++i) {
    for (std::size_t j = 0; j < b.codes.size(); ++j) {
      out.codes.push_back(a.codes[i] * stride + b.codes[j]);
      out.values.push_back(a.values[i] * b.values[j]);
    }
  }
  return out;
}

// The single walk of `len` equal steps as a class-amplitude list with unit weight.
ClassAmplitudes constant_walk(int len, Step s) {
  Code c = 0;
  for (int i = 0; i < len; ++i) c = 3 * c + static_cast<Code>(s);
  return {{c}, {1.0}};
}

bool valid(int len, int p, int q) { return p >= 0 && q >= 0 && p + q <= len; }

}  // namespace

Eigen::VectorXd approx_vector(const ApproxStateSpec& spec, double t) {
  const auto& seg = spec.segments;
  const std::size_t want = spec.kind == ApproxKind::FGS ? 3 : 2;
  if (seg.size() != want) throw DomainError("wrong number of segments for this approximation");
  int n = 0;
  for (int len : seg) {
    if (len < 1) throw DomainError("segment lengths must be >= 1");
    n += len;
  }
  check_state_length(n);
  check_class(n, spec.pq);
  if (spec.cutoff < 0) throw DomainError("cutoff must be >= 1 (or 0 for none)");
  const int cutoff = spec.cutoff == 0 ? n + 1 : spec.cutoff;
  const int p = spec.pq.p, q = spec.pq.q;

  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(pow3(n)));
  switch (spec.kind) {
    case ApproxKind::ATGS: {
      const int L = seg[0], R = seg[1];
      for (int r = 0; r < cutoff; ++r) {
        if (!valid(L, p, r) || !valid(R, r, q)) continue;
        add_product(v, class_amplitudes(L, {p, r}, t), class_amplitudes(R, {r, q}, t), R);
      }
      break;
    }
    case ApproxKind::FGS: {
      const int A = seg[0], B = seg[1], C = seg[2];
      for (int r = 0; r < cutoff; ++r) {
        if (!valid(A, p, r)) continue;
        const auto left = class_amplitudes(A, {p, r}, t);
        for (int s = 0; s < cutoff; ++s) {
          if (!valid(B, r, s) || !valid(C, s, q)) continue;
          add_product(v, concat(left, class_amplitudes(B, {r, s}, t), B), class_amplitudes(C, {s, q}, t), C);
        }
      }
      break;
    }
    case ApproxKind::PGSRight: {
      const int L = seg[0], R = seg[1];
      if (q < R || !valid(L, p, q - R)) throw DomainError("PGS-right needs q >= |R| and a valid left class");
      add_product(v, class_amplitudes(L, {p, q - R}, t), constant_walk(R, Step::Up), R);
      break;
    }
    case ApproxKind::PGSLeft: {
      const int L = seg[0], R = seg[1];
      if (p < L || !valid(R, p - L, q)) throw DomainError("PGS-left needs p >= |L| and a valid right class");
      add_product(v, constant_walk(L, Step::Down), class_amplitudes(R, {p - L, q}, t), R);
      break;
    }
  }
  const double norm = v.norm();
  if (norm == 0.0) throw DomainError("approximate state is empty (no admissible terms below the cutoff)");
  return v / norm;
}

OverlapDefect overlap_defect(const Eigen::VectorXd& exact, const Eigen::VectorXd& approx) {
  if (exact.size() != approx.size()) throw DomainError("state dimension mismatch");
  const double ov = exact.dot(approx);
  OverlapDefect d;
  d.defect = std::max(0.0, 1.0 - ov * ov);
  d.at_noise_floor = d.defect < 1e-13;
  return d;
}

}  // namespace motzkin
