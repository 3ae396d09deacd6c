#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

// Boost's mixed rational/integer operator== calls itself through the
// reversed candidates C++20 adds; exact overloads win overload resolution.
namespace boost {
inline bool operator==(const rational<std::int64_t>& a, int b) { return a == rational<std::int64_t>(b); }
inline bool operator==(int a, const rational<std::int64_t>& b) { return rational<std::int64_t>(a) == b; }
inline bool operator==(const rational<std::int64_t>& a, std::int64_t b) { return a == rational<std::int64_t>(b); }
inline bool operator==(std::int64_t a, const rational<std::int64_t>& b) { return rational<std::int64_t>(a) == b; }
}  // namespace boost

namespace stonespec {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Accepts `p`, `p/q` and finite decimals `p.ddd`, with an optional sign.
/// Decimals convert exactly. Returns nullopt on anything else.
inline std::optional<Rational> parse_rational(std::string_view s) {
  if (s.empty()) return std::nullopt;
  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto digits = [](std::string_view d) {
    return !d.empty() && d.size() <= 17 &&
           std::all_of(d.begin(), d.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  auto to_int = [](std::string_view d) {
    std::int64_t v = 0;
    for (char c : d) v = v * 10 + (c - '0');
    return v;
  };
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!digits(num) || !digits(den) || to_int(den) == 0) return std::nullopt;
    value = Rational(to_int(num), to_int(den));
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if (!digits(whole) || !digits(frac) || whole.size() + frac.size() > 17) return std::nullopt;
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    value = Rational(to_int(whole) * scale + to_int(frac), scale);
  } else {
    if (!digits(s)) return std::nullopt;
    value = Rational(to_int(s));
  }
  return negative ? -value : value;
}

struct RationalHash {
  std::size_t operator()(const Rational& r) const noexcept {
    const auto h1 = std::hash<std::int64_t>{}(r.numerator());
    const auto h2 = std::hash<std::int64_t>{}(r.denominator());
    return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
  }
};

/// Sorted, duplicate-free copy of the given values.
inline std::vector<Rational> distinct_sorted(std::vector<Rational> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

inline Rational abs(const Rational& r) { return r < 0 ? -r : r; }

/// Exact Gaussian rational; the value type of complex observables.
struct Complex {
  Rational re;
  Rational im;

  Complex() = default;
  Complex(Rational r) : re(r) {}  // NOLINT(google-explicit-constructor)
  Complex(Rational r, Rational i) : re(r), im(i) {}

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const Complex& a, const Complex& b) = default;

  Complex conj() const { return {re, -im}; }
  Rational norm_squared() const { return re * re + im * im; }
};

inline std::string to_string(const Complex& c) {
  if (c.im == 0) return to_string(c.re);
  const std::string im = c.im < 0 ? to_string(-c.im) : to_string(c.im);
  return to_string(c.re) + (c.im < 0 ? " - " : " + ") + im + "i";
}

inline std::ostream& operator<<(std::ostream& os, const Complex& c) { return os << to_string(c); }

}  // namespace stonespec
