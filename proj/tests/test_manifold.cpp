#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "cfmimo/manifold.hpp"
#include "cfmimo/rng.hpp"

using namespace cfmimo;
using namespace cfmimo::manifold;

namespace {

Eigen::MatrixXcd random_matrix(int r, int c, Rng& rng) {
  Eigen::MatrixXcd m(r, c);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < c; ++k) m(i, k) = rng.cgaussian();
  return m;
}

}  // namespace

TEST_CASE("retraction lands on the unit-modulus manifold") {
  Rng rng(4);
  const Eigen::MatrixXcd X = random_point(4, 6, rng);
  const Eigen::MatrixXcd Z = random_matrix(4, 6, rng);
  const Eigen::MatrixXcd Y = retract(X, Z);
  CHECK((Y.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-14);
  // zero step is the identity
  CHECK((retract(X, Eigen::MatrixXcd::Zero(4, 6)) - X).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("retraction hand value: 1 stepped by j gives (1+j)/sqrt(2)") {
  Eigen::MatrixXcd X(1, 1), Z(1, 1);
  X(0, 0) = 1.0;
  Z(0, 0) = std::complex<double>(0.0, 1.0);
  const std::complex<double> want(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
  CHECK(std::abs(retract(X, Z)(0, 0) - want) < 1e-15);
}

TEST_CASE("retraction matches the exponential map to second order") {
  // along a tangent direction jtX, retract(X, t*jX) = e^{j atan t} X while the
  // exponential map gives e^{jt} X; both agree to O(t^3) in angle.
  Eigen::MatrixXcd X(1, 1);
  X(0, 0) = std::polar(1.0, 0.7);
  double prev_err = -1.0;
  for (const double t : {1e-2, 5e-3, 2.5e-3}) {
    Eigen::MatrixXcd Z = std::complex<double>(0.0, t) * X;
    const std::complex<double> exact = std::polar(1.0, 0.7 + t);
    const double err = std::abs(retract(X, Z)(0, 0) - exact);
    CHECK(err < t * t * t);
    if (prev_err > 0.0) CHECK(err < prev_err);
    prev_err = err;
  }
}

TEST_CASE("retraction rejects a cancelled entry") {
  Eigen::MatrixXcd X(1, 2), Z(1, 2);
  X.setOnes();
  Z(0, 0) = 0.0;
  Z(0, 1) = -1.0; // X + Z vanishes in this slot
  CHECK_THROWS_AS(retract(X, Z), std::domain_error);
}

TEST_CASE("tangent projection is idempotent and kills the radial part") {
  Rng rng(8);
  const Eigen::MatrixXcd X = random_point(5, 3, rng);
  const Eigen::MatrixXcd U = random_matrix(5, 3, rng);
  const Eigen::MatrixXcd P = project_tangent(X, U);
  CHECK((project_tangent(X, P) - P).cwiseAbs().maxCoeff() < 1e-12);
  // the radial direction X itself projects to zero
  CHECK(project_tangent(X, X).cwiseAbs().maxCoeff() < 1e-14);
  // jX is already tangent
  const Eigen::MatrixXcd T = std::complex<double>(0.0, 1.0) * X;
  CHECK((project_tangent(X, T) - T).cwiseAbs().maxCoeff() < 1e-14);
  // tangency: every entry of conj(X) o P has vanishing real part
  CHECK((X.conjugate().cwiseProduct(P)).real().cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("the removed component is metric-orthogonal to every tangent vector") {
  Rng rng(15);
  const Eigen::MatrixXcd X = random_point(3, 4, rng);
  const Eigen::MatrixXcd U = random_matrix(3, 4, rng);
  const Eigen::MatrixXcd V = project_tangent(X, random_matrix(3, 4, rng));
  const Eigen::MatrixXcd R = U - project_tangent(X, U);
  CHECK(std::abs(metric(R, V)) < 1e-12);
}

TEST_CASE("metric is a real inner product") {
  Rng rng(21);
  const Eigen::MatrixXcd U = random_matrix(4, 4, rng);
  const Eigen::MatrixXcd V = random_matrix(4, 4, rng);
  CHECK(metric(U, V) == doctest::Approx(metric(V, U)).epsilon(1e-12));
  CHECK(metric(U, U) == doctest::Approx(U.squaredNorm()).epsilon(1e-12));
  CHECK(metric(U, U) > 0.0);
  // single entry: <j, j> = 1, <1, j> = 0
  Eigen::MatrixXcd a(1, 1), b(1, 1);
  a(0, 0) = std::complex<double>(0.0, 1.0);
  b(0, 0) = 1.0;
  CHECK(metric(a, a) == doctest::Approx(1.0));
  CHECK(metric(b, a) == doctest::Approx(0.0));
  // linearity in the second slot
  const Eigen::MatrixXcd W = random_matrix(4, 4, rng);
  CHECK(metric(U, V + W) == doctest::Approx(metric(U, V) + metric(U, W)).epsilon(1e-12));
}

TEST_CASE("random points sit on the manifold and replay under the seed") {
  Rng r1(33), r2(33);
  const Eigen::MatrixXcd X = random_point(6, 7, r1);
  CHECK((X.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-14);
  CHECK((random_point(6, 7, r2) - X).cwiseAbs().maxCoeff() == 0.0);
}
