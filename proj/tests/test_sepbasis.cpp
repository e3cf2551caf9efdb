#include "oracles.hpp"
#include "symfam/errors.hpp"
#include "symfam/sepbasis.hpp"

#include <doctest.h>

#include <numbers>

using namespace symfam;

namespace {

// Expansion of |e><e|^{(x)N} built from a brute-force symmetrized vector.
CMatrix coherent_projector(int n, const BlochPoint& p) {
  const CVector v = oracle::symmetrize(std::vector<BlochPoint>(std::size_t(n), p));
  return v * v.adjoint();
}

CMatrix expand(int n, const Eigen::VectorXd& f) {
  const auto idx = operator_indices(n);
  CMatrix m = CMatrix::Zero(n + 1, n + 1);
  for (std::size_t l = 0; l < idx.size(); ++l) m += f[Eigen::Index(l)] * sigma_matrix(n, idx[l]);
  return m;
}

}  // namespace

TEST_CASE("operator indices") {
  for (int n = 1; n <= 6; ++n) CHECK(operator_indices(n).size() == std::size_t((n + 1) * (n + 1)));
  const auto i2 = operator_indices(2);
  CHECK(i2[0] == OperatorIndex{OperatorKind::diagonal, 0, 0});
  CHECK(i2[3] == OperatorIndex{OperatorKind::real_offdiag, 0, 1});
  CHECK(i2[5] == OperatorIndex{OperatorKind::real_offdiag, 1, 2});
  CHECK(i2[6] == OperatorIndex{OperatorKind::imag_offdiag, 0, 1});
}

TEST_CASE("sigma matrices") {
  CMatrix d(2, 2), r(2, 2), i(2, 2);
  d << 1, 0, 0, 0;
  r << 0, 1, 1, 0;
  i << 0, Complex(0, 1), Complex(0, -1), 0;
  CHECK(sigma_matrix(1, {OperatorKind::diagonal, 0, 0}) == d);
  CHECK(sigma_matrix(1, {OperatorKind::real_offdiag, 0, 1}) == r);
  CHECK(sigma_matrix(1, {OperatorKind::imag_offdiag, 0, 1}) == i);
  CHECK_THROWS_AS(sigma_matrix(1, {OperatorKind::real_offdiag, 1, 0}), DomainError);
  CHECK_THROWS_AS(sigma_matrix(1, {OperatorKind::diagonal, 2, 2}), DomainError);
  CHECK_THROWS_AS(sigma_matrix(2, {OperatorKind::imag_offdiag, 1, 1}), DomainError);
}

TEST_CASE("sigma basis spans the Hermitian operators") {
  for (int n = 1; n <= 6; ++n) {
    const auto idx = operator_indices(n);
    const int dim = (n + 1) * (n + 1);
    Eigen::MatrixXd vecs(2 * dim, dim);
    for (int l = 0; l < dim; ++l) {
      const CMatrix m = sigma_matrix(n, idx[std::size_t(l)]);
      CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() == 0.0);
      const Eigen::Map<const CVector> flat(m.data(), m.size());
      vecs.col(l) << flat.real(), flat.imag();
    }
    CHECK(Eigen::FullPivLU<Eigen::MatrixXd>(vecs).rank() == dim);
  }
}

TEST_CASE("f coefficients examples") {
  for (int n = 1; n <= 5; ++n) {
    const Eigen::VectorXd north = f_coeffs(n, BlochPoint::make(0, 0));
    CHECK(north[0] == doctest::Approx(1.0));
    CHECK(north.cwiseAbs().sum() == doctest::Approx(1.0));
    const Eigen::VectorXd south = f_coeffs(n, BlochPoint::make(std::numbers::pi, 0));
    CHECK(south[n] == doctest::Approx(1.0));
    CHECK(south.cwiseAbs().sum() == doctest::Approx(1.0));
  }
  const Eigen::VectorXd eq = f_coeffs(1, BlochPoint::make(std::numbers::pi / 2, 0));
  CHECK(eq[0] == doctest::Approx(0.5));
  CHECK(eq[1] == doctest::Approx(0.5));
  CHECK(eq[2] == doctest::Approx(0.5));
  CHECK(std::abs(eq[3]) < 1e-15);
}

TEST_CASE("f coefficients reproduce coherent projectors") {
  for (int n = 1; n <= 6; ++n)
    for (int t = 0; t < 100; ++t) {
      KeyedRng rng(31, std::uint64_t(n), std::uint64_t(t));
      const BlochPoint p = rng.sphere_point();
      CHECK((expand(n, f_coeffs(n, p)) - coherent_projector(n, p)).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((hermitian_coordinates(coherent_projector(n, p)) - f_coeffs(n, p)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("f coefficient derivatives") {
  for (int n = 1; n <= 4; ++n) {
    KeyedRng rng(32, std::uint64_t(n), 0);
    const BlochPoint p = rng.sphere_point();
    Eigen::VectorXd dt, dp;
    f_coeffs(n, p, dt, dp);
    const double h = 1e-6;
    const Eigen::VectorXd fdt =
        (f_coeffs(n, {p.theta + h, p.phi}) - f_coeffs(n, {p.theta - h, p.phi})) / (2 * h);
    const Eigen::VectorXd fdp =
        (f_coeffs(n, {p.theta, p.phi + h}) - f_coeffs(n, {p.theta, p.phi - h})) / (2 * h);
    CHECK((dt - fdt).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((dp - fdp).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("choose_points and build") {
  for (int n = 1; n <= 6; ++n) {
    const auto pts = choose_points(n, 0);
    CHECK(pts.size() == std::size_t((n + 1) * (n + 1)));
    const auto b = SeparableBasis::build(n, pts);
    CHECK(b.condition_number() < kDefaultConditionThreshold);
    CHECK(choose_points(n, 0) == pts);
  }
  CHECK_THROWS_AS(choose_points(4, 0, 1.5, 3), ConditioningError);
  try {
    choose_points(4, 0, 1.5, 3);
  } catch (const ConditioningError& e) {
    CHECK(std::isfinite(e.best_condition()));
    CHECK(e.best_condition() > 1.5);
  }
  CHECK_THROWS_AS(choose_points(4, 0, 0.5, 3), DomainError);

  auto pts = choose_points(4, 1);
  auto short_pts = pts;
  short_pts.pop_back();
  CHECK_THROWS_AS(SeparableBasis::build(4, short_pts), DomainError);
  pts[1] = pts[0];
  CHECK_THROWS_AS(SeparableBasis::build(4, pts), DomainError);
}

TEST_CASE("decompose and reconstruct") {
  for (int n = 1; n <= 6; ++n) {
    const auto b = SeparableBasis::build(n, choose_points(n, 2));
    for (std::size_t i : {std::size_t(0), std::size_t(n)}) {
      const Eigen::VectorXd x = b.decompose(b.projector(i));
      Eigen::VectorXd unit = Eigen::VectorXd::Zero(x.size());
      unit[Eigen::Index(i)] = 1.0;
      CHECK((x - unit).cwiseAbs().maxCoeff() < 1e-8);
      CHECK((b.reconstruct(unit) - b.projector(i)).cwiseAbs().maxCoeff() < 1e-14);
    }
    for (int t = 0; t < 100; ++t) {
      KeyedRng rng(33, std::uint64_t(n), std::uint64_t(t));
      const auto rho = SymmetricDensityMatrix::from_entries(n, oracle::random_density(rng, n));
      const Eigen::VectorXd x = b.decompose(rho);
      CHECK(std::abs(x.sum() - 1.0) < 1e-10);
      CHECK((b.reconstruct(x) - rho.entries()).cwiseAbs().maxCoeff() < 1e-9);
    }
    CHECK(b.reconstruct(Eigen::VectorXd::Zero((n + 1) * (n + 1))).cwiseAbs().maxCoeff() == 0.0);
  }
  const auto b4 = SeparableBasis::build(4, choose_points(4, 0));
  CHECK(b4.decompose(projector(ghz(4))).minCoeff() < 0.0);
  CHECK_THROWS_AS(b4.decompose(SymmetricDensityMatrix::maximally_mixed(3)), DomainError);
}

TEST_CASE("spread bases contain a ball around the barycenter") {
  for (int n = 1; n <= 6; ++n) {
    const auto b = SeparableBasis::build(n, spread_points(n, choose_points(n, 0)));
    CHECK(b.condition_number() < 1e3);
    const Eigen::Index m = (n + 1) * (n + 1);
    CMatrix bary = CMatrix::Zero(n + 1, n + 1);
    for (Eigen::Index i = 0; i < m; ++i) bary += b.projector(std::size_t(i)) / double(m);
    CHECK(b.decompose(bary).minCoeff() > 0.0);
    for (int t = 0; t < 20; ++t) {
      KeyedRng rng(34, std::uint64_t(n), std::uint64_t(t));
      CMatrix h(n + 1, n + 1);
      for (Eigen::Index i = 0; i <= n; ++i)
        for (Eigen::Index j = 0; j <= n; ++j) h(i, j) = Complex(rng.normal(), rng.normal());
      h = (0.5 * (h + h.adjoint())).eval();
      h -= (h.trace() / double(n + 1)) * CMatrix::Identity(n + 1, n + 1);
      h *= 1e-3 / h.norm();
      const Eigen::VectorXd x = b.decompose(CMatrix(bary + h));
      CHECK(x.minCoeff() > 0.0);
      CHECK(std::abs(x.sum() - 1.0) < 1e-10);
    }
  }
}
