#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace gemd {

struct singularity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct structure_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct stability_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct data_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Polynomial in the unit-delay operator: c_0 + c_1 z^{-1} + ... + c_m z^{-m}.
/// Canonical form trims trailing zero coefficients; the zero polynomial is the
/// single coefficient [0].
template <typename Scalar = double>
class PolynomialInDelay {
 public:
  PolynomialInDelay() : coeffs_{Scalar(0)} {}

  explicit PolynomialInDelay(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(Scalar(0));
    trim();
  }

  static PolynomialInDelay zero() { return PolynomialInDelay(); }
  static PolynomialInDelay one() { return PolynomialInDelay({Scalar(1)}); }

  /// gain * z^{-k}
  static PolynomialInDelay delay(int k, Scalar gain = Scalar(1)) {
    if (k < 0) throw structure_error("delay power must be nonnegative");
    std::vector<Scalar> c(static_cast<std::size_t>(k) + 1, Scalar(0));
    c.back() = gain;
    return PolynomialInDelay(std::move(c));
  }

  const std::vector<Scalar>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == Scalar(0); }

  Scalar coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Scalar(0);
    return coeffs_[static_cast<std::size_t>(k)];
  }

  /// Horner evaluation at a given value of z^{-1}.
  std::complex<Scalar> eval(std::complex<Scalar> zinv) const {
    std::complex<Scalar> acc(Scalar(0), Scalar(0));
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * zinv + *it;
    return acc;
  }

  PolynomialInDelay operator*(const PolynomialInDelay& o) const {
    if (is_zero() || o.is_zero()) return zero();
    std::vector<Scalar> c(coeffs_.size() + o.coeffs_.size() - 1, Scalar(0));
    for (std::size_t a = 0; a < coeffs_.size(); ++a)
      for (std::size_t b = 0; b < o.coeffs_.size(); ++b) c[a + b] += coeffs_[a] * o.coeffs_[b];
    return PolynomialInDelay(std::move(c));
  }

  PolynomialInDelay operator+(const PolynomialInDelay& o) const {
    std::vector<Scalar> c(std::max(coeffs_.size(), o.coeffs_.size()), Scalar(0));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = coeff(static_cast<int>(k)) + o.coeff(static_cast<int>(k));
    return PolynomialInDelay(std::move(c));
  }

  PolynomialInDelay operator*(Scalar s) const {
    std::vector<Scalar> c = coeffs_;
    for (auto& v : c) v *= s;
    return PolynomialInDelay(std::move(c));
  }

  bool operator==(const PolynomialInDelay& o) const { return coeffs_ == o.coeffs_; }

 private:
  void trim() {
    while (coeffs_.size() > 1 && coeffs_.back() == Scalar(0)) coeffs_.pop_back();
  }
  std::vector<Scalar> coeffs_;
};

namespace detail {

/// Roots of c_0 x^m + c_1 x^{m-1} + ... + c_m, via the companion matrix.
template <typename Scalar>
std::vector<std::complex<Scalar>> polynomial_roots(const std::vector<Scalar>& c) {
  std::size_t lead = 0;
  while (lead < c.size() && c[lead] == Scalar(0)) ++lead;
  if (c.size() - lead <= 1) return {};
  const std::size_t m = c.size() - lead - 1;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> comp =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(m, m);
  for (std::size_t k = 0; k < m; ++k) comp(0, static_cast<Eigen::Index>(k)) = -c[lead + 1 + k] / c[lead];
  for (std::size_t k = 1; k < m; ++k) comp(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k - 1)) = Scalar(1);
  Eigen::EigenSolver<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> es(comp, false);
  std::vector<std::complex<Scalar>> roots(m);
  for (std::size_t k = 0; k < m; ++k) roots[k] = es.eigenvalues()(static_cast<Eigen::Index>(k));
  return roots;
}

}  // namespace detail

/// Proper real-rational function of the delay operator. The denominator is
/// normalized so its constant term equals one and must not vanish on the unit
/// circle (checked on a 512-point grid).
template <typename Scalar = double>
struct TransferFunction {
  PolynomialInDelay<Scalar> num;
  PolynomialInDelay<Scalar> den;

  TransferFunction() : num(PolynomialInDelay<Scalar>::zero()), den(PolynomialInDelay<Scalar>::one()) {}

  TransferFunction(PolynomialInDelay<Scalar> numerator, PolynomialInDelay<Scalar> denominator)
      : num(std::move(numerator)), den(std::move(denominator)) {
    const Scalar d0 = den.coeff(0);
    if (d0 == Scalar(0))
      throw structure_error("denominator constant term is zero (non-proper transfer function)");
    if (d0 != Scalar(1)) {
      num = num * (Scalar(1) / d0);
      den = den * (Scalar(1) / d0);
    }
    check_unit_circle();
  }

  static TransferFunction gain(Scalar g) {
    return TransferFunction(PolynomialInDelay<Scalar>({g}), PolynomialInDelay<Scalar>::one());
  }

  /// g * z^{-k}
  static TransferFunction delay_gain(Scalar g, int k = 1) {
    return TransferFunction(PolynomialInDelay<Scalar>::delay(k, g), PolynomialInDelay<Scalar>::one());
  }

  bool is_zero() const { return num.is_zero(); }

  bool operator==(const TransferFunction& o) const { return num == o.num && den == o.den; }

 private:
  void check_unit_circle() const {
    constexpr int kGrid = 512;
    for (int k = 0; k < kGrid; ++k) {
      const Scalar w = Scalar(2) * Scalar(EIGEN_PI) * Scalar(k) / Scalar(kGrid) - Scalar(EIGEN_PI);
      const std::complex<Scalar> zinv(std::cos(w), std::sin(w));  // e^{-i w}
      if (std::abs(den.eval(zinv)) < Scalar(1e-9))
        throw singularity_error("denominator vanishes on the unit circle");
    }
  }
};

using PolynomialD = PolynomialInDelay<double>;
using TransferFunctionD = TransferFunction<double>;

/// Value of the rational function at z = e^{i omega}.
template <typename Scalar>
std::complex<Scalar> evaluate(const TransferFunction<Scalar>& tf, Scalar omega) {
  const std::complex<Scalar> zinv(std::cos(omega), -std::sin(omega));
  const std::complex<Scalar> d = tf.den.eval(zinv);
  if (std::abs(d) < Scalar(1e-12)) throw singularity_error("evaluation at a denominator zero");
  return tf.num.eval(zinv) / d;
}

/// Lag-0 impulse-response coefficient. Equals the numerator constant term
/// because the denominator is monic in z^0.
template <typename Scalar>
Scalar feedthrough_gain(const TransferFunction<Scalar>& tf) {
  return tf.num.coeff(0);
}

template <typename Scalar>
bool is_strictly_causal(const TransferFunction<Scalar>& tf) {
  return feedthrough_gain(tf) == Scalar(0);
}

/// First nlags coefficients of the formal power series in z^{-1}.
template <typename Scalar>
std::vector<Scalar> impulse_response(const TransferFunction<Scalar>& tf, int nlags) {
  if (nlags < 1) throw structure_error("impulse_response requires nlags >= 1");
  std::vector<Scalar> h(static_cast<std::size_t>(nlags), Scalar(0));
  for (int k = 0; k < nlags; ++k) {
    Scalar acc = tf.num.coeff(k);
    const int p = tf.den.degree();
    for (int m = 1; m <= std::min(k, p); ++m) acc -= tf.den.coeff(m) * h[static_cast<std::size_t>(k - m)];
    h[static_cast<std::size_t>(k)] = acc;
  }
  return h;
}

/// Poles in the z plane (roots of z^p + a_1 z^{p-1} + ... + a_p).
template <typename Scalar>
std::vector<std::complex<Scalar>> poles(const TransferFunction<Scalar>& tf) {
  return detail::polynomial_roots(tf.den.coeffs());
}

template <typename Scalar>
bool is_stable(const TransferFunction<Scalar>& tf, Scalar margin = Scalar(1e-9)) {
  for (const auto& p : poles(tf))
    if (std::abs(p) >= Scalar(1) - margin) return false;
  return true;
}

/// All zeros of the numerator, in the z plane.
template <typename Scalar>
std::vector<std::complex<Scalar>> zeros(const TransferFunction<Scalar>& tf) {
  return detail::polynomial_roots(tf.num.coeffs());
}

/// Whether the strictly causal part (everything past lag 0) is nonzero:
/// num - b_0 * den != 0 as a polynomial.
template <typename Scalar>
bool has_strictly_causal_part(const TransferFunction<Scalar>& tf) {
  const Scalar b0 = tf.num.coeff(0);
  const int deg = std::max(tf.num.degree(), tf.den.degree());
  for (int k = 1; k <= deg; ++k)
    if (tf.num.coeff(k) - b0 * tf.den.coeff(k) != Scalar(0)) return true;
  return false;
}

}  // namespace gemd
