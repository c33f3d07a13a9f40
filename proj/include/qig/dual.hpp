#pragma once

// Forward-mode dual numbers with a fixed-size gradient.
//
// Dual<T, K> carries a value and K partial derivatives. T may itself be a
// Dual, which gives exact second derivatives (Dual<Dual<double,K>,K>).

#include <array>
#include <cmath>
#include <cstddef>

namespace qig {

template <typename T, std::size_t K>
struct Dual {
  T val{};
  std::array<T, K> grad{};

  constexpr Dual() = default;
  constexpr Dual(double v) : val(v) {}  // NOLINT: implicit lift of constants
  constexpr Dual(T v, std::array<T, K> g) : val(v), grad(g) {}

  // Independent variable number i with value v.
  static constexpr Dual variable(T v, std::size_t i) {
    Dual d(v, {});
    d.grad[i] = T(1.0);
    return d;
  }

  Dual& operator+=(const Dual& b) {
    val += b.val;
    for (std::size_t i = 0; i < K; ++i) grad[i] += b.grad[i];
    return *this;
  }
  Dual& operator-=(const Dual& b) {
    val -= b.val;
    for (std::size_t i = 0; i < K; ++i) grad[i] -= b.grad[i];
    return *this;
  }
  Dual& operator*=(const Dual& b) { return *this = *this * b; }
  Dual& operator/=(const Dual& b) { return *this = *this / b; }

  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator-(Dual a) {
    a.val = -a.val;
    for (auto& g : a.grad) g = -g;
    return a;
  }
  friend Dual operator*(const Dual& a, const Dual& b) {
    Dual c;
    c.val = a.val * b.val;
    for (std::size_t i = 0; i < K; ++i) c.grad[i] = a.grad[i] * b.val + a.val * b.grad[i];
    return c;
  }
  friend Dual operator/(const Dual& a, const Dual& b) {
    Dual c;
    c.val = a.val / b.val;
    const T inv = T(1.0) / b.val;
    for (std::size_t i = 0; i < K; ++i) c.grad[i] = (a.grad[i] - c.val * b.grad[i]) * inv;
    return c;
  }
};

template <typename T, std::size_t K, typename F, typename DF>
Dual<T, K> chain(const Dual<T, K>& a, F value, DF deriv) {
  Dual<T, K> c;
  c.val = value(a.val);
  const T d = deriv(a.val);
  for (std::size_t i = 0; i < K; ++i) c.grad[i] = d * a.grad[i];
  return c;
}

template <typename T, std::size_t K>
Dual<T, K> sqrt(const Dual<T, K>& a) {
  using std::sqrt;
  const T s = sqrt(a.val);
  return chain(a, [&](const T&) { return s; }, [&](const T&) { return T(0.5) / s; });
}

template <typename T, std::size_t K>
Dual<T, K> log(const Dual<T, K>& a) {
  using std::log;
  return chain(a, [](const T& v) { return log(v); }, [](const T& v) { return T(1.0) / v; });
}

template <typename T, std::size_t K>
Dual<T, K> exp(const Dual<T, K>& a) {
  using std::exp;
  const T e = exp(a.val);
  return chain(a, [&](const T&) { return e; }, [&](const T&) { return e; });
}

// Integer power by repeated multiplication (exact polynomial derivatives).
template <typename S>
S ipow(const S& a, unsigned n) {
  S result(1.0);
  S base = a;
  while (n) {
    if (n & 1u) result = result * base;
    base = base * base;
    n >>= 1u;
  }
  return result;
}

inline double value_of(double v) { return v; }
template <typename T, std::size_t K>
double value_of(const Dual<T, K>& d) {
  return value_of(d.val);
}

}  // namespace qig
