#include "motzkin/hamiltonian.hpp"

#include <cmath>
#include <memory>
#include <string>

#include "motzkin/errors.hpp"
#include "motzkin/kernels.hpp"

namespace motzkin {

SectorBasis::SectorBasis(int n) : n_(n) {
  if (n < 1 || n > kSectorBasisCap) {
    throw ResourceError("sector basis supports 1 <= n <= " + std::to_string(kSectorBasisCap));
  }
  const Code dim = pow3(n);
  codes_.resize(static_cast<std::size_t>(sector_count(n)));
  sector_of_.resize(dim);
  index_of_.resize(dim);
  for (Code c = 0; c < dim; ++c) {
    const int s = sector_id(n, classify_code(c, n));
    auto& bucket = codes_[static_cast<std::size_t>(s)];
    sector_of_[c] = static_cast<std::uint16_t>(s);
    index_of_[c] = static_cast<std::uint32_t>(bucket.size());
    bucket.push_back(c);
  }
}

LocalProjectorSet LocalProjectorSet::make(double t) {
  LocalProjectorSet s;
  s.t = t;
  const double norm = 1.0 / std::sqrt(1.0 + t * t);
  s.up.setZero();
  s.down.setZero();
  s.phi.setZero();
  s.up(0 * 3 + 1) = t * norm;   // |0u>
  s.up(1 * 3 + 0) = -norm;      // |u0>
  s.down(0 * 3 + 2) = norm;     // |0d>
  s.down(2 * 3 + 0) = -t * norm;  // |d0>
  s.phi(1 * 3 + 2) = norm;      // |ud>
  s.phi(0) = -t * norm;         // |00>
  return s;
}

Eigen::Matrix<double, 9, 9> LocalProjectorSet::sum() const {
  return up * up.transpose() + down * down.transpose() + phi * phi.transpose();
}

Eigen::VectorXd OperatorHandle::operator()(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y(static_cast<Eigen::Index>(dimension));
  apply(std::span<const double>(x.data(), dimension), std::span<double>(y.data(), dimension));
  return y;
}

Eigen::MatrixXd OperatorHandle::dense() const {
  if (dimension > 8000) throw ResourceError("dense copy limited to dimension 8000");
  if (matrix) return Eigen::MatrixXd(*matrix);
  const auto d = static_cast<Eigen::Index>(dimension);
  Eigen::MatrixXd m(d, d);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    e(j) = 1.0;
    m.col(j) = (*this)(e);
    e(j) = 0.0;
  }
  return m;
}

namespace {

void check_args(int n, double t) {
  if (n < 2) throw DomainError("chain length must be >= 2");
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("area weight t must be positive");
}

// Row-wise assembly over a list of codes; `local` maps a code to its column.
template <class CodeList, class LocalIndex>
SparseMatrix assemble(int n, double t, int first_bond, int last_bond, bool pinned,
                      const CodeList& codes, LocalIndex local) {
  const auto table = kernels::BondTable::make(t);
  std::vector<Eigen::Triplet<double>> trips;
  const auto dim = static_cast<Eigen::Index>(codes.size());
  std::vector<Code> w(static_cast<std::size_t>(n) + 1);
  for (int i = 1; i <= n; ++i) w[static_cast<std::size_t>(i)] = pow3(n - i);
  std::vector<int> d(static_cast<std::size_t>(n) + 1);
  for (Eigen::Index row = 0; row < dim; ++row) {
    const Code c = codes[static_cast<std::size_t>(row)];
    Code rest = c;
    for (int i = n; i >= 1; --i) {
      d[static_cast<std::size_t>(i)] = static_cast<int>(rest % 3);
      rest /= 3;
    }
    double diag = 0.0;
    for (int i = first_bond; i <= last_bond; ++i) {
      const auto iu = static_cast<std::size_t>(i);
      const int s = 3 * d[iu] + d[iu + 1];
      diag += table.diag[static_cast<std::size_t>(s)];
      const int s2 = table.partner[static_cast<std::size_t>(s)];
      if (s2 >= 0) {
        const Code c2 = c + static_cast<Code>(s2 / 3) * w[iu] + static_cast<Code>(s2 % 3) * w[iu + 1] -
                        static_cast<Code>(d[iu]) * w[iu] - static_cast<Code>(d[iu + 1]) * w[iu + 1];
        trips.emplace_back(row, static_cast<Eigen::Index>(local(c2)), table.offdiag[static_cast<std::size_t>(s)]);
      }
    }
    if (pinned) {
      if (d[1] == 2) diag += 1.0;
      if (d[static_cast<std::size_t>(n)] == 1) diag += 1.0;
    }
    if (diag != 0.0) trips.emplace_back(row, row, diag);
  }
  SparseMatrix m(dim, dim);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

struct CodeRange {
  Code count;
  std::size_t size() const { return static_cast<std::size_t>(count); }
  Code operator[](std::size_t i) const { return static_cast<Code>(i); }
};

OperatorHandle from_matrix(SparseMatrix m) {
  OperatorHandle h;
  h.dimension = static_cast<std::size_t>(m.rows());
  auto shared = std::make_shared<SparseMatrix>(std::move(m));
  h.matrix = *shared;
  h.apply = [shared](std::span<const double> x, std::span<double> y) {
    Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
    Eigen::Map<Eigen::VectorXd> yv(y.data(), static_cast<Eigen::Index>(y.size()));
    yv.noalias() = *shared * xv;
  };
  return h;
}

OperatorHandle full_space(int n, double t, int first_bond, int last_bond, bool pinned) {
  const Code dim = pow3(n);
  if (dim <= kExplicitDimensionCap) {
    return from_matrix(assemble(n, t, first_bond, last_bond, pinned, CodeRange{dim},
                                [](Code c) { return c; }));
  }
  OperatorHandle h;
  h.dimension = static_cast<std::size_t>(dim);
  const kernels::BondSum sum{n, t, first_bond, last_bond, pinned};
  h.apply = [sum](std::span<const double> x, std::span<double> y) {
    kernels::apply_bonds_parallel(sum, x, y);
  };
  return h;
}

OperatorHandle sector_operator(int n, double t, Imbalance pq, bool pinned) {
  if (pq.p < 0 || pq.q < 0 || pq.p + pq.q > n) throw DomainError("invalid sector (p,q)");
  auto basis = std::make_shared<SectorBasis>(n);
  const auto& codes = basis->codes(pq);
  if (codes.size() <= kExplicitDimensionCap) return from_matrix(sector_matrix(*basis, pq, t, pinned));
  OperatorHandle h;
  h.dimension = codes.size();
  h.apply = [basis, pq, t, pinned, n](std::span<const double> x, std::span<double> y) {
    const auto table = kernels::BondTable::make(t);
    const auto& list = basis->codes(pq);
    const std::int64_t dim = static_cast<std::int64_t>(list.size());
#pragma omp parallel
    {
      std::vector<int> d(static_cast<std::size_t>(n) + 1);
      std::vector<Code> w(static_cast<std::size_t>(n) + 1);
      for (int i = 1; i <= n; ++i) w[static_cast<std::size_t>(i)] = pow3(n - i);
#pragma omp for schedule(static)
      for (std::int64_t row = 0; row < dim; ++row) {
        const Code c = list[static_cast<std::size_t>(row)];
        Code rest = c;
        for (int i = n; i >= 1; --i) {
          d[static_cast<std::size_t>(i)] = static_cast<int>(rest % 3);
          rest /= 3;
        }
        double acc = 0.0;
        for (int i = 1; i < n; ++i) {
          const auto iu = static_cast<std::size_t>(i);
          const int s = 3 * d[iu] + d[iu + 1];
          acc += table.diag[static_cast<std::size_t>(s)] * x[static_cast<std::size_t>(row)];
          const int s2 = table.partner[static_cast<std::size_t>(s)];
          if (s2 >= 0) {
            const Code c2 = c + static_cast<Code>(s2 / 3) * w[iu] + static_cast<Code>(s2 % 3) * w[iu + 1] -
                            static_cast<Code>(d[iu]) * w[iu] - static_cast<Code>(d[iu + 1]) * w[iu + 1];
            acc += table.offdiag[static_cast<std::size_t>(s)] * x[basis->index_of(c2)];
          }
        }
        if (pinned) {
          if (d[1] == 2) acc += x[static_cast<std::size_t>(row)];
          if (d[static_cast<std::size_t>(n)] == 1) acc += x[static_cast<std::size_t>(row)];
        }
        y[static_cast<std::size_t>(row)] = acc;
      }
    }
  };
  return h;
}

}  // namespace

SparseMatrix sector_matrix(const SectorBasis& basis, Imbalance pq, double t, bool pinned) {
  const int n = basis.length();
  check_args(n, t);
  return assemble(n, t, 1, n - 1, pinned, basis.codes(pq),
                  [&basis](Code c) { return basis.index_of(c); });
}

OperatorHandle build_bond_sum(int n, double t, int first_bond, int last_bond) {
  check_args(n, t);
  if (first_bond < 1 || last_bond > n - 1 || first_bond > last_bond) {
    throw DomainError("bond range must satisfy 1 <= first <= last <= n-1");
  }
  return full_space(n, t, first_bond, last_bond, false);
}

OperatorHandle build_open(int n, double t, std::optional<Imbalance> sector) {
  check_args(n, t);
  if (sector) return sector_operator(n, t, *sector, false);
  return full_space(n, t, 1, n - 1, false);
}

OperatorHandle build_pinned(int n, double t, std::optional<Imbalance> sector) {
  check_args(n, t);
  if (sector) return sector_operator(n, t, *sector, true);
  return full_space(n, t, 1, n - 1, true);
}

OperatorHandle build_knabe_block(int k, double t) {
  if (k < 1) throw DomainError("block parameter k must be >= 1");
  return build_open(2 * k, t);
}

}  // namespace motzkin
