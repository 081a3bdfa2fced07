#include <algorithm>
#include <random>

#include "doctest.h"
#include "motzkin/errors.hpp"
#include "motzkin/groundspace.hpp"
#include "motzkin/hamiltonian.hpp"
#include "oracles.hpp"

using namespace motzkin;

namespace {

Eigen::VectorXd random_state(Eigen::Index n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = u(rng);
  return v;
}

}  // namespace

TEST_SUITE("hamiltonian") {

TEST_CASE("local projector is an orthogonal rank-3 projector") {
  for (double t : {0.1, 0.5, 0.9, 1.0}) {
    const auto lp = LocalProjectorSet::make(t);
    const Eigen::Matrix<double, 9, 9> p = lp.sum();
    CHECK((p * p - p).norm() <= 1e-14);
    CHECK((p - p.transpose()).norm() <= 1e-14);
    CHECK(p.trace() == doctest::Approx(3.0));
    CHECK((p - oracle::two_site_projector(t)).norm() <= 1e-14);
    CHECK(lp.up.dot(lp.down) == doctest::Approx(0.0));
    CHECK(lp.up.dot(lp.phi) == doctest::Approx(0.0));
  }
}

TEST_CASE("two sites: spectrum is 0 (x6) and 1 (x3)") {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(build_open(2, 0.4).dense());
  for (int i = 0; i < 6; ++i) CHECK(std::fabs(es.eigenvalues()(i)) <= 1e-13);
  for (int i = 6; i < 9; ++i) CHECK(es.eigenvalues()(i) == doctest::Approx(1.0));
}

TEST_CASE("assembled operators equal the dense Kronecker oracle") {
  for (int n : {3, 5, 6}) {
    for (double t : {0.3, 0.8}) {
      CHECK((build_open(n, t).dense() - oracle::dense_bond_sum(n, t, 1, n - 1)).norm() <= 1e-12);
      CHECK((build_pinned(n, t).dense() - oracle::dense_bond_sum(n, t, 1, n - 1) - oracle::dense_boundary(n)).norm() <= 1e-12);
    }
  }
  CHECK((build_bond_sum(6, 0.5, 2, 4).dense() - oracle::dense_bond_sum(6, 0.5, 2, 4)).norm() <= 1e-12);
}

TEST_CASE("sector blocks reassemble the full operator") {
  const int n = 10;
  const double t = 0.6;
  const auto full = build_open(n, t);
  CHECK_FALSE(full.matrix.has_value());  // 3^10 is above the explicit cap
  const SectorBasis basis(n);
  const auto x = random_state(static_cast<Eigen::Index>(full.dimension), 4);
  const Eigen::VectorXd y = full(x);
  Eigen::VectorXd y2 = Eigen::VectorXd::Zero(y.size());
  for (int s = 0; s < basis.sectors(); ++s) {
    const auto& codes = basis.codes(s);
    const auto block = build_open(n, t, sector_pair(n, s));
    Eigen::VectorXd xs(static_cast<Eigen::Index>(codes.size()));
    for (std::size_t i = 0; i < codes.size(); ++i) xs(static_cast<Eigen::Index>(i)) = x(static_cast<Eigen::Index>(codes[i]));
    const Eigen::VectorXd ys = block(xs);
    for (std::size_t i = 0; i < codes.size(); ++i) y2(static_cast<Eigen::Index>(codes[i])) = ys(static_cast<Eigen::Index>(i));
  }
  CHECK((y - y2).norm() <= 1e-12 * y.norm());
}

TEST_CASE("operators preserve imbalance sectors") {
  const int n = 7;
  const SectorBasis basis(n);
  const auto h = build_pinned(n, 0.5);
  REQUIRE(h.matrix.has_value());
  const auto& m = *h.matrix;
  for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
      if (it.value() != 0.0) CHECK(basis.sector_of(static_cast<Code>(it.row())) == basis.sector_of(static_cast<Code>(it.col())));
    }
  }
}

TEST_CASE("combinatorial ground states are annihilated") {
  const int n = 9;
  const double t = 0.7;
  const auto h = build_open(n, t);
  for (Imbalance pq : {Imbalance{0, 0}, Imbalance{2, 3}, Imbalance{0, 9}, Imbalance{4, 1}}) {
    const auto gs = ground_vector(n, pq, t);
    CHECK(h(gs.amplitudes).norm() <= 1e-12);
  }
  const auto pinned = build_pinned(n, t);
  CHECK(pinned(ground_vector(n, {0, 0}, t).amplitudes).norm() <= 1e-12);
  CHECK(pinned(ground_vector(n, {1, 0}, t).amplitudes).norm() > 1e-3);
}

TEST_CASE("random probes: symmetric and positive semidefinite") {
  const auto h = build_pinned(8, 0.45);
  for (unsigned s = 0; s < 5; ++s) {
    const auto x = random_state(static_cast<Eigen::Index>(h.dimension), s);
    const auto y = random_state(static_cast<Eigen::Index>(h.dimension), s + 100);
    CHECK(x.dot(h(y)) == doctest::Approx(y.dot(h(x))).epsilon(1e-12));
    CHECK(x.dot(h(x)) >= 0.0);
  }
}

TEST_CASE("ground-space degeneracy of the open chain") {
  for (int n : {4, 5, 6}) {
    for (double t : {0.3, 0.7}) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(build_open(n, t).dense(), Eigen::EigenvaluesOnly);
      int zeros = 0;
      while (zeros < es.eigenvalues().size() && es.eigenvalues()(zeros) < 1e-10) ++zeros;
      CHECK(zeros == sector_count(n));
    }
  }
}

TEST_CASE("pinned chain has a unique ground state") {
  const int n = 6;
  const double t = 0.5;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(build_pinned(n, t).dense());
  CHECK(std::fabs(es.eigenvalues()(0)) <= 1e-10);
  CHECK(es.eigenvalues()(1) > 1e-4);
  const double ov = es.eigenvectors().col(0).dot(ground_vector(n, {0, 0}, t).amplitudes);
  CHECK(ov * ov >= 1 - 1e-10);
}

TEST_CASE("boundary terms act on the all-up string") {
  const int n = 4;
  const auto open = build_open(n, 0.5), pinned = build_pinned(n, 0.5);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(open.dimension));
  const Code uuuu = WalkString::parse("uuuu").encode();
  e(static_cast<Eigen::Index>(uuuu)) = 1.0;
  const Eigen::VectorXd diff = pinned(e) - open(e);
  CHECK(diff(static_cast<Eigen::Index>(uuuu)) == doctest::Approx(1.0));
  CHECK(diff.norm() == doctest::Approx(1.0));
  const Code dddd = WalkString::parse("dddd").encode(), dud0 = WalkString::parse("dud0").encode();
  e.setZero();
  e(static_cast<Eigen::Index>(dddd)) = 1.0;
  CHECK((pinned(e) - open(e))(static_cast<Eigen::Index>(dddd)) == doctest::Approx(1.0));
  e.setZero();
  e(static_cast<Eigen::Index>(dud0)) = 1.0;
  CHECK((pinned(e) - open(e))(static_cast<Eigen::Index>(dud0)) == doctest::Approx(1.0));
}

TEST_CASE("Knabe block is the open chain of length 2k") {
  const auto block = build_knabe_block(3, 0.6);
  CHECK(block.dimension == pow3(6));
  CHECK((block.dense() - build_open(6, 0.6).dense()).norm() <= 1e-13);
}

TEST_CASE("bond sums are translation covariant") {
  // bonds 1..2 on sites 1..3 and bonds 3..4 on sites 3..5 are the same operator shifted by two sites
  const auto left = build_bond_sum(6, 0.55, 1, 2).dense();
  const auto right = build_bond_sum(6, 0.55, 3, 4).dense();
  const Eigen::Index d = left.rows();
  Eigen::MatrixXd perm = Eigen::MatrixXd::Zero(d, d);
  for (Code c = 0; c < pow3(6); ++c) {
    // cyclic shift of the digit string by two sites: s1..s6 -> s5 s6 s1..s4
    const auto w = WalkString::decode(c, 6);
    std::vector<Step> st(w.steps().begin(), w.steps().end());
    std::rotate(st.begin(), st.begin() + 4, st.end());
    perm(static_cast<Eigen::Index>(WalkString(st).encode()), static_cast<Eigen::Index>(c)) = 1.0;
  }
  CHECK((perm * left * perm.transpose() - right).norm() <= 1e-13);
}

TEST_CASE("sector blocks have the expected kernels") {
  const int n = 8;
  const SectorBasis basis(n);
  for (int s = 0; s < basis.sectors(); ++s) {
    const Imbalance pq = sector_pair(n, s);
    const Eigen::MatrixXd open = Eigen::MatrixXd(sector_matrix(basis, pq, 0.4, false));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(open, Eigen::EigenvaluesOnly);
    CHECK(std::fabs(es.eigenvalues()(0)) <= 1e-10);
    if (open.rows() > 1) CHECK(es.eigenvalues()(1) > 1e-10);
    if (pq.p + pq.q > 0) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ep(Eigen::MatrixXd(sector_matrix(basis, pq, 0.4, true)), Eigen::EigenvaluesOnly);
      CHECK(ep.eigenvalues()(0) > 1e-10);
    }
  }
}

TEST_CASE("invalid arguments") {
  CHECK_THROWS_AS(build_open(1, 0.5), DomainError);
  CHECK_THROWS_AS(build_open(4, 0.0), DomainError);
  CHECK_THROWS_AS(build_open(4, 0.5, Imbalance{3, 2}), DomainError);
  CHECK_THROWS_AS(build_bond_sum(5, 0.5, 0, 3), DomainError);
  CHECK_THROWS_AS(build_bond_sum(5, 0.5, 2, 5), DomainError);
  CHECK_THROWS_AS(build_knabe_block(0, 0.5), DomainError);
  CHECK_THROWS_AS(build_open(9, 0.5).dense(), ResourceError);
  CHECK_THROWS_AS(build_open(kSectorBasisCap + 1, 0.5, Imbalance{0, 0}), ResourceError);
}

}
