#pragma once

#include <cmath>
#include <complex>
#include <type_traits>

namespace lcz {

// std::complex is only specified for the built-in floating types, so the
// multiprecision paths use this small value type instead. Double keeps
// std::complex<double>; complex_t picks the right one.
template <class T>
struct Complex {
  T re{};
  T im{};

  Complex() = default;
  Complex(T r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(T r, T i) : re(std::move(r)), im(std::move(i)) {}

  const T& real() const { return re; }
  const T& imag() const { return im; }

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    T r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    T d = o.re * o.re + o.im * o.im;
    T r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = std::move(r);
    return *this;
  }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }

  friend T norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
  friend T abs(const Complex& z) {
    using std::sqrt;
    return sqrt(norm(z));
  }
  friend T arg(const Complex& z) {
    using std::atan2;
    return atan2(z.im, z.re);
  }
  friend Complex conj(const Complex& z) { return Complex(z.re, -z.im); }
};

namespace detail {
template <class T>
struct complex_of {
  using type = Complex<T>;
};
template <>
struct complex_of<double> {
  using type = std::complex<double>;
};
}  // namespace detail

template <class Real>
using complex_t = typename detail::complex_of<Real>::type;

template <class Real>
complex_t<Real> make_complex(const Real& re, const Real& im) {
  return complex_t<Real>(re, im);
}

template <class Real>
complex_t<Real> unit_phase(const Real& angle) {
  using std::cos;
  using std::sin;
  return complex_t<Real>(cos(angle), sin(angle));
}

}  // namespace lcz
