#include <doctest.h>

#include <complex>

#include "gemd/lti.hpp"
#include "gemd/rng.hpp"

using namespace gemd;

namespace {

TransferFunctionD random_stable_tf(GaussianRng& rng) {
  // denominator (1 - p1 z^{-1})(1 - p2 z^{-1}) with real poles in (-0.8, 0.8)
  const double p1 = rng.uniform(-0.8, 0.8);
  const double p2 = rng.uniform(-0.8, 0.8);
  PolynomialD den({1.0, -(p1 + p2), p1 * p2});
  PolynomialD num({rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
  return TransferFunctionD(num, den);
}

}  // namespace

TEST_CASE("polynomial canonical form") {
  CHECK(PolynomialD({0.0, 0.0}).is_zero());
  CHECK(PolynomialD({0.0, 0.0}).degree() == 0);
  CHECK(PolynomialD({1.0, 2.0, 0.0}).degree() == 1);
  CHECK(PolynomialD::delay(3).coeff(3) == 1.0);
  CHECK(PolynomialD::delay(3).coeff(0) == 0.0);
}

TEST_CASE("evaluate") {
  const auto one = TransferFunctionD::gain(1.0);
  CHECK(evaluate(one, 0.7).real() == doctest::Approx(1.0));
  CHECK(evaluate(one, 0.7).imag() == doctest::Approx(0.0));

  const auto delay = TransferFunctionD::delay_gain(1.0, 1);
  CHECK(evaluate(delay, 0.0).real() == doctest::Approx(1.0));
  CHECK(evaluate(delay, 3.14159265358979323846).real() == doctest::Approx(-1.0));
  CHECK(evaluate(delay, 3.14159265358979323846).imag() == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("denominator validation") {
  CHECK_THROWS_AS(TransferFunctionD(PolynomialD::one(), PolynomialD::delay(1)), structure_error);
  // unit-circle zero: 1 - z^{-1}
  CHECK_THROWS_AS(TransferFunctionD(PolynomialD::one(), PolynomialD({1.0, -1.0})), singularity_error);
  // non-monic denominators are normalized
  const TransferFunctionD tf(PolynomialD({2.0}), PolynomialD({2.0, 1.0}));
  CHECK(tf.den.coeff(0) == 1.0);
  CHECK(tf.num.coeff(0) == 1.0);
  CHECK(tf.den.coeff(1) == 0.5);
}

TEST_CASE("strict causality and feedthrough gain") {
  CHECK(is_strictly_causal(TransferFunctionD::delay_gain(0.4, 1)));
  CHECK_FALSE(is_strictly_causal(TransferFunctionD(PolynomialD({0.3, 0.4}), PolynomialD::one())));
  CHECK(is_strictly_causal(TransferFunctionD()));

  CHECK(feedthrough_gain(TransferFunctionD(PolynomialD({0.3, 0.4}), PolynomialD::one())) == 0.3);
  CHECK(feedthrough_gain(TransferFunctionD::delay_gain(1.0, 1)) == 0.0);
  CHECK(feedthrough_gain(TransferFunctionD(PolynomialD({0.2}), PolynomialD({1.0, -0.5}))) == 0.2);
}

TEST_CASE("impulse response") {
  const TransferFunctionD geometric(PolynomialD::one(), PolynomialD({1.0, -0.5}));
  const auto h = impulse_response(geometric, 4);
  CHECK(h[0] == doctest::Approx(1.0));
  CHECK(h[1] == doctest::Approx(0.5));
  CHECK(h[2] == doctest::Approx(0.25));
  CHECK(h[3] == doctest::Approx(0.125));

  const auto fir = impulse_response(TransferFunctionD(PolynomialD({0.3, 0.4}), PolynomialD::one()), 3);
  CHECK(fir == std::vector<double>{0.3, 0.4, 0.0});

  CHECK(impulse_response(TransferFunctionD(), 2) == std::vector<double>{0.0, 0.0});
  CHECK_THROWS_AS(impulse_response(TransferFunctionD(), 0), structure_error);
}

TEST_CASE("poles and stability") {
  const TransferFunctionD tf(PolynomialD::one(), PolynomialD({1.0, -0.5}));
  const auto p = poles(tf);
  REQUIRE(p.size() == 1);
  CHECK(p[0].real() == doctest::Approx(0.5));
  CHECK(is_stable(tf));
  CHECK_FALSE(is_stable(TransferFunctionD(PolynomialD::one(), PolynomialD({1.0, -1.2}))));
  CHECK(poles(TransferFunctionD::gain(2.0)).empty());
}

TEST_CASE("strictly causal part detection") {
  CHECK(has_strictly_causal_part(TransferFunctionD::delay_gain(0.4, 1)));
  CHECK(has_strictly_causal_part(TransferFunctionD(PolynomialD({0.3, 0.4}), PolynomialD::one())));
  CHECK_FALSE(has_strictly_causal_part(TransferFunctionD::gain(0.7)));
  CHECK_FALSE(has_strictly_causal_part(TransferFunctionD()));
  // 0.2/(1 - 0.5 z^{-1}) has a tail beyond lag 0
  CHECK(has_strictly_causal_part(TransferFunctionD(PolynomialD({0.2}), PolynomialD({1.0, -0.5}))));
  // but a constant multiple of the denominator is a pure gain
  CHECK_FALSE(has_strictly_causal_part(
      TransferFunctionD(PolynomialD({0.2, -0.1}), PolynomialD({1.0, -0.5}))));
}

TEST_CASE("evaluation matches the truncated impulse expansion") {
  GaussianRng rng(20240913);
  for (int trial = 0; trial < 50; ++trial) {
    const auto tf = random_stable_tf(rng);
    const int K = 200;  // |pole|^K < 1e-12 for |pole| < 0.8
    const auto h = impulse_response(tf, K);
    for (double omega : {0.0, 0.3, 1.1, -2.2, 3.0}) {
      std::complex<double> sum(0.0, 0.0);
      for (int k = 0; k < K; ++k)
        sum += h[static_cast<std::size_t>(k)] *
               std::complex<double>(std::cos(omega * k), -std::sin(omega * k));
      const auto direct = evaluate(tf, omega);
      CHECK(std::abs(direct - sum) < 1e-8);
      // real coefficients: conjugate symmetry across omega -> -omega
      CHECK(std::abs(std::conj(direct) - evaluate(tf, -omega)) < 1e-12);
    }
    CHECK(is_strictly_causal(tf) == (impulse_response(tf, 1)[0] == 0.0));
  }
}
