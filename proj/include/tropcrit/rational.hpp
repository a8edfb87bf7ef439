#ifndef TROPCRIT_RATIONAL_HPP
#define TROPCRIT_RATIONAL_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tropcrit/error.hpp"

namespace tropcrit {

using Rational = mpq_class;
using RatVector = std::vector<Rational>;
using RealVector = std::vector<double>;

/// Parses "p/q", "-p/q" or a plain integer. Whitespace is not accepted.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty rational literal");
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    bool ok = (c >= '0' && c <= '9') || c == '/' || (c == '-' && (i == 0 || s[i - 1] == '/'));
    if (!ok) throw Error(ErrorCode::ParseError, "bad rational literal '" + s + "'");
  }
  Rational q;
  if (q.set_str(s, 10) != 0) throw Error(ErrorCode::ParseError, "bad rational literal '" + s + "'");
  if (q.get_den() == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

/// n/d in lowest terms. The two-argument mpq_class constructor does not reduce.
inline Rational ratio(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// A rational number or +infinity. Used for valuations (Val(0) = +inf) and
/// truncation horizons (an exact series has an infinite horizon).
class ExtendedRational {
 public:
  ExtendedRational() = default;  // +infinity
  ExtendedRational(const Rational& q) : value_(q) {}  // NOLINT(implicit)
  ExtendedRational(long q) : value_(Rational(q)) {}   // NOLINT(implicit)

  static ExtendedRational infinity() { return {}; }

  bool is_finite() const noexcept { return value_.has_value(); }
  bool is_infinite() const noexcept { return !value_.has_value(); }

  const Rational& value() const {
    if (!value_) throw Error(ErrorCode::InvalidArgument, "value() of infinite extended rational");
    return *value_;
  }

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite();
    return *a.value_ == *b.value_;
  }
  friend bool operator<(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.is_infinite()) return false;
    if (b.is_infinite()) return true;
    return *a.value_ < *b.value_;
  }
  friend bool operator<=(const ExtendedRational& a, const ExtendedRational& b) { return !(b < a); }
  friend bool operator>(const ExtendedRational& a, const ExtendedRational& b) { return b < a; }
  friend bool operator>=(const ExtendedRational& a, const ExtendedRational& b) { return !(a < b); }

  friend ExtendedRational operator+(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return Rational(*a.value_ + *b.value_);
  }
  friend ExtendedRational operator-(const ExtendedRational& a, const Rational& b) {
    if (a.is_infinite()) return infinity();
    return Rational(*a.value_ - b);
  }

  std::string str() const { return is_finite() ? to_string(*value_) : std::string("inf"); }

 private:
  std::optional<Rational> value_;
};

inline ExtendedRational min(const ExtendedRational& a, const ExtendedRational& b) { return b < a ? b : a; }

inline Rational dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "dot product of vectors of different length");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double dot(const RatVector& a, const RealVector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "dot product of vectors of different length");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += to_double(a[i]) * b[i];
  return s;
}

inline RatVector operator+(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vector sum of different lengths");
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline RatVector operator-(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vector difference of different lengths");
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline RatVector operator*(const Rational& s, const RatVector& a) {
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

inline RatVector zero_vector(std::size_t n) { return RatVector(n, Rational(0)); }

inline bool is_zero(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

inline RealVector to_double(const RatVector& v) {
  RealVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
  return out;
}

inline bool is_integral(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return is_integer(q); });
}

/// gcd of the entries of an integral vector; 0 for the zero vector.
inline mpz_class content(const RatVector& v) {
  mpz_class g = 0;
  for (const auto& q : v) {
    if (!is_integer(q)) throw Error(ErrorCode::InvalidArgument, "content() of non-integral vector");
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
  }
  return g;
}

inline bool is_primitive(const RatVector& v) { return is_integral(v) && content(v) == 1; }

inline std::string to_string(const RatVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + ")";
}

}  // namespace tropcrit

#endif  // TROPCRIT_RATIONAL_HPP
