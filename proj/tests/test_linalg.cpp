#include <cmath>
#include <random>

#include "carma/error.hpp"
#include "carma/linalg.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace carma;
using doctest::Approx;

namespace {

RealMatrix mat(std::size_t n, std::initializer_list<double> v) {
  RealMatrix m(n, n);
  std::copy(v.begin(), v.end(), m.data().begin());
  return m;
}

double max_diff(const RealMatrix& a, const RealMatrix& b) { return max_abs(a - b); }

// Plain Taylor series, fine for small ||A t||.
RealMatrix taylor_exp(const RealMatrix& a, double t) {
  RealMatrix term = RealMatrix::identity(a.rows()), sum = term;
  for (int k = 1; k < 40; ++k) {
    term = term * a * (t / k);
    sum += term;
  }
  return sum;
}

}  // namespace

TEST_CASE("companion matrix layout") {
  CHECK(companion(std::vector<double>{2.0}) == mat(1, {-2.0}));
  CHECK(companion(std::vector<double>{1.0, 2.0}) == mat(2, {0, 1, -2, -1}));
  CHECK(companion(std::vector<double>{0.0}) == mat(1, {0.0}));
  const RealMatrix c3 = companion(std::vector<double>{1.0, 2.0, 3.0});
  CHECK(c3 == mat(3, {0, 1, 0, 0, 0, 1, -3, -2, -1}));
}

TEST_CASE("matrix exponential") {
  SUBCASE("zero matrix gives identity") {
    CHECK(mat_exp(RealMatrix(3, 3), 7.5) == RealMatrix::identity(3));
  }
  SUBCASE("scalar") { CHECK(mat_exp(mat(1, {-2.0}), 1.0)(0, 0) == Approx(std::exp(-2.0)).epsilon(1e-14)); }
  SUBCASE("nilpotent") {
    const RealMatrix e = mat_exp(mat(2, {0, 1, 0, 0}), 3.0);
    CHECK(max_diff(e, mat(2, {1, 3, 0, 1})) < 1e-14);
  }
  SUBCASE("large norm decays without overflow") {
    CHECK(mat_exp(mat(1, {-50.0}), 1.0)(0, 0) == Approx(std::exp(-50.0)).epsilon(1e-12));
  }
  SUBCASE("rotation") {
    const RealMatrix e = mat_exp(mat(2, {0, 1, -1, 0}), 2.0);
    CHECK(max_diff(e, mat(2, {std::cos(2.0), std::sin(2.0), -std::sin(2.0), std::cos(2.0)})) <
          1e-13);
  }
  SUBCASE("repeated eigenvalue (Jordan block)") {
    // (z + 1)^2: e^{At} = e^{-t} [[1 + t, t], [-t, 1 - t]]
    const RealMatrix e = mat_exp(companion(std::vector<double>{2.0, 1.0}), 1.5);
    const double f = std::exp(-1.5);
    CHECK(max_diff(e, mat(2, {f * 2.5, f * 1.5, -f * 1.5, -f * 0.5})) < 1e-14);
  }
  SUBCASE("semigroup and Taylor agreement on random companions") {
    std::mt19937_64 gen(11);
    for (int i = 0; i < 50; ++i) {
      const CarmaSpec s = testing::random_spec(gen);
      const RealMatrix& a = s.state_matrix();
      CHECK(max_diff(mat_exp(a, 0.3) * mat_exp(a, 0.9), mat_exp(a, 1.2)) < 1e-12);
      CHECK(max_diff(mat_exp(a, 0.05), taylor_exp(a, 0.05)) < 1e-13);
    }
  }
}

TEST_CASE("linear solves") {
  const RealMatrix a = mat(2, {4, 1, 2, 3});
  RealMatrix b(2, 1);
  b(0, 0) = 1;
  b(1, 0) = 2;
  const RealMatrix x = solve(a, b);
  CHECK(x(0, 0) == Approx(0.1));
  CHECK(x(1, 0) == Approx(0.6));
  CHECK_THROWS_AS(solve(mat(2, {1, 2, 2, 4}), b), NumericalError);
  CHECK_THROWS_AS(solve(to_complex(mat(2, {1, 2, 2, 4})), to_complex(b)), NumericalError);
}

TEST_CASE("polynomial roots") {
  auto sorted = [](std::vector<Complex> r) {
    std::sort(r.begin(), r.end(), [](Complex x, Complex y) {
      return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    return r;
  };
  SUBCASE("linear") {
    const auto r = poly_roots(std::vector<double>{1.0, 2.0});
    REQUIRE(r.size() == 1);
    CHECK(std::abs(r[0] - Complex(-2.0, 0.0)) < 1e-12);
  }
  SUBCASE("z^2 + z + 2") {
    const auto r = sorted(poly_roots(std::vector<double>{1.0, 1.0, 2.0}));
    CHECK(std::abs(r[0] - Complex(-0.5, -1.3228756555322954)) < 1e-12);
    CHECK(std::abs(r[1] - Complex(-0.5, 1.3228756555322954)) < 1e-12);
  }
  SUBCASE("z^2 - z + 1") {
    const auto r = sorted(poly_roots(std::vector<double>{1.0, -1.0, 1.0}));
    CHECK(std::abs(r[0] - Complex(0.5, -0.8660254037844386)) < 1e-12);
    CHECK(std::abs(r[1] - Complex(0.5, 0.8660254037844386)) < 1e-12);
  }
  SUBCASE("triple root") {
    // Multiple roots are only determined to about eps^(1/3).
    for (const Complex& r : poly_roots(std::vector<double>{1.0, 3.0, 3.0, 1.0}))
      CHECK(std::abs(r + 1.0) < 1e-4);
  }
  SUBCASE("roots reproduce random polynomials") {
    std::mt19937_64 gen(5);
    for (int i = 0; i < 100; ++i) {
      const CarmaSpec s = testing::random_spec(gen, 6);
      std::vector<double> coeffs{1.0};
      coeffs.insert(coeffs.end(), s.a().begin(), s.a().end());
      const auto r = poly_roots(coeffs);
      CHECK(static_cast<int>(r.size()) == s.p());
      const auto back = testing::poly_from_roots(r);
      for (std::size_t k = 0; k < back.size(); ++k)
        CHECK(back[k] == Approx(s.a()[k]).epsilon(1e-8).scale(1.0));
    }
  }
  CHECK_THROWS(poly_roots(std::vector<double>{2.0, 1.0}));
}

TEST_CASE("stability") {
  CHECK(is_stable(std::vector<double>{2.0}));
  CHECK(is_stable(std::vector<double>{1.0, 2.0}));
  CHECK_FALSE(is_stable(std::vector<double>{-1.0, 1.0}));
  CHECK_FALSE(is_stable(std::vector<double>{0.0}));
  CHECK_FALSE(is_stable(std::vector<double>{0.0, 1.0}));  // roots +-i
  CHECK(spectral_abscissa(std::vector<double>{1.0, 2.0}) == Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("resolvent") {
  CHECK(std::abs(resolvent(mat(1, {-2.0}), 0.0)(0, 0) - Complex(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(resolvent(mat(1, {-2.0}), 1.0)(0, 0) - Complex(0.4, -0.2)) < 1e-15);
  const ComplexMatrix r = resolvent(mat(2, {0, 1, -2, -1}), 0.0);
  const double expect[4] = {0.5, 0.5, -1.0, 0.0};
  for (int k = 0; k < 4; ++k) CHECK(std::abs(r.data()[k] - expect[k]) < 1e-14);

  std::mt19937_64 gen(3);
  for (int i = 0; i < 30; ++i) {
    const CarmaSpec s = testing::random_spec(gen);
    const std::size_t p = static_cast<std::size_t>(s.p());
    const double w = -5.0 + 0.37 * i;
    ComplexMatrix m = ComplexMatrix::identity(p) * Complex(0.0, w) - to_complex(s.state_matrix());
    CHECK(max_abs(m * resolvent(s.state_matrix(), w) - ComplexMatrix::identity(p)) < 1e-11);
  }
}

TEST_CASE("Lyapunov solve") {
  SUBCASE("p = 1") {
    CHECK(lyapunov_solve(mat(1, {-2.0}), 1.0)(0, 0) == Approx(0.25).epsilon(1e-15));
  }
  SUBCASE("p = 2 against hand elimination") {
    // Entrywise: 2 p12 = 0, p22 = 2 p11, -4 p12 - 2 p22 + 1 = 0.
    const RealMatrix p = lyapunov_solve(mat(2, {0, 1, -2, -1}), 1.0);
    CHECK(max_diff(p, mat(2, {0.25, 0.0, 0.0, 0.5})) < 1e-14);
  }
  SUBCASE("residual, symmetry and positive diagonal on random specs") {
    std::mt19937_64 gen(17);
    for (int i = 0; i < 100; ++i) {
      const CarmaSpec s = testing::random_spec(gen);
      const RealMatrix& a = s.state_matrix();
      const RealMatrix p = lyapunov_solve(a, s.sigma2());
      RealMatrix res = a * p + p * a.transpose();
      res(res.rows() - 1, res.cols() - 1) += s.sigma2();
      CHECK(max_abs(res) <= 1e-10 * s.sigma2());
      CHECK(p == p.transpose());
      for (std::size_t k = 0; k < p.rows(); ++k) CHECK(p(k, k) > 0.0);
    }
  }
}
