#pragma once

// Exact integer types for the geometric kernels: a 128-bit integer that
// throws on overflow (fast path) and boost's arbitrary-precision cpp_int
// (fallback). Kernels are templates over the integer type and rerun with
// BigInt when the fast path overflows.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rigidbound {

using BigInt = boost::multiprecision::cpp_int;

/// Thrown by Checked128 when a result does not fit.
struct ArithmeticOverflow {};

class Checked128 {
 public:
  constexpr Checked128() = default;
  constexpr Checked128(std::int64_t v) : v_(v) {}  // NOLINT(google-explicit-constructor)

  static constexpr Checked128 raw(__int128 v) {
    Checked128 c;
    c.v_ = v;
    return c;
  }
  constexpr __int128 value() const { return v_; }

  friend Checked128 operator+(Checked128 a, Checked128 b) {
    __int128 r;
    if (__builtin_add_overflow(a.v_, b.v_, &r)) throw ArithmeticOverflow{};
    return raw(r);
  }
  friend Checked128 operator-(Checked128 a, Checked128 b) {
    __int128 r;
    if (__builtin_sub_overflow(a.v_, b.v_, &r)) throw ArithmeticOverflow{};
    return raw(r);
  }
  friend Checked128 operator*(Checked128 a, Checked128 b) {
    __int128 r;
    if (__builtin_mul_overflow(a.v_, b.v_, &r)) throw ArithmeticOverflow{};
    return raw(r);
  }
  friend Checked128 operator/(Checked128 a, Checked128 b) { return raw(a.v_ / b.v_); }
  friend Checked128 operator%(Checked128 a, Checked128 b) { return raw(a.v_ % b.v_); }
  Checked128 operator-() const { return Checked128() - *this; }
  Checked128& operator+=(Checked128 b) { return *this = *this + b; }
  Checked128& operator-=(Checked128 b) { return *this = *this - b; }
  Checked128& operator*=(Checked128 b) { return *this = *this * b; }
  Checked128& operator/=(Checked128 b) { return *this = *this / b; }

  friend constexpr auto operator<=>(Checked128 a, Checked128 b) { return a.v_ <=> b.v_; }
  friend constexpr bool operator==(Checked128 a, Checked128 b) { return a.v_ == b.v_; }

 private:
  __int128 v_ = 0;
};

template <class Int>
int sign_of(const Int& x) {
  return x > Int(0) ? 1 : (x < Int(0) ? -1 : 0);
}

template <class Int>
Int abs_of(const Int& x) {
  return x < Int(0) ? -x : x;
}

template <class Int>
Int gcd_of(Int a, Int b) {
  a = abs_of(a);
  b = abs_of(b);
  while (b != Int(0)) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::uint64_t to_u64(const Checked128& x) { return static_cast<std::uint64_t>(x.value()); }
inline std::uint64_t to_u64(const BigInt& x) { return x.convert_to<std::uint64_t>(); }

inline BigInt to_big(const Checked128& x) {
  const __int128 v = x.value();
  const bool neg = v < 0;
  unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  BigInt out = static_cast<std::uint64_t>(mag >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(mag);
  return neg ? BigInt(-out) : out;
}
inline BigInt to_big(const BigInt& x) { return x; }

/// Determinant of a square integer matrix by fraction-free (Bareiss) elimination.
template <class Int>
Int bareiss_determinant(std::vector<std::vector<Int>> m) {
  const std::size_t n = m.size();
  if (n == 0) return Int(1);
  Int prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == Int(0)) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == Int(0)) ++swap;
      if (swap == n) return Int(0);
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

}  // namespace rigidbound
