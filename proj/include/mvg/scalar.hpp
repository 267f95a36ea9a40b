#pragma once
// Scalar support for the L1 geometry kernel.
//
// Every algorithm in this library is a template over a scalar type T. Two
// instantiations are used: mpq_class (exact, the default for everything that
// adjudicates) and double (fast screening inside numerical searches).

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mvg {

using Rational = mpq_class;

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static int sign(const Rational& v) { return sgn(v); }
  static bool is_zero(const Rational& v) { return sgn(v) == 0; }
  static double to_double(const Rational& v) { return v.get_d(); }
  // mpq_set_d is exact for finite doubles.
  static Rational from_double(double d) { return Rational(d); }
  static Rational from_rational(const Rational& q) { return q; }
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static constexpr double eps = 1e-12;
  static int sign(double v) { return v > eps ? 1 : (v < -eps ? -1 : 0); }
  static bool is_zero(double v) { return std::abs(v) <= eps; }
  static double to_double(double v) { return v; }
  static double from_double(double d) { return d; }
  static double from_rational(const Rational& q) { return q.get_d(); }
};

template <class T>
int sign_of(const T& v) {
  return scalar_traits<T>::sign(v);
}

template <class T>
T abs_of(const T& v) {
  return sign_of(v) < 0 ? T(-v) : v;
}

template <class T>
const T& min_of(const T& a, const T& b) {
  return b < a ? b : a;
}

template <class T>
const T& max_of(const T& a, const T& b) {
  return a < b ? b : a;
}

template <class T>
double to_double(const T& v) {
  return scalar_traits<T>::to_double(v);
}

template <class T>
T scalar_cast(const Rational& q) {
  return scalar_traits<T>::from_rational(q);
}

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "p/q", an integer, or a decimal with optional exponent
/// ("0.125", "-3.5e-2") into an exact rational.
inline Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw ParseError("empty number");

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    auto all_digits = [](const std::string& t, bool allow_sign) {
      if (t.empty()) return false;
      std::size_t i = 0;
      if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
      if (i == t.size()) return false;
      for (; i < t.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
      }
      return true;
    };
    if (!all_digits(num, true) || !all_digits(den, false)) {
      throw ParseError("malformed rational '" + s + "'");
    }
    if (num[0] == '+') num.erase(0, 1);
    mpz_class n(num, 10);
    mpz_class d(den, 10);
    if (d == 0) throw ParseError("zero denominator in '" + s + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
  }

  // Decimal form: [sign] digits [. digits] [e [sign] digits]
  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '-' || s[i] == '+') {
    negative = s[i] == '-';
    ++i;
  }
  std::string digits;
  long frac_len = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) ++frac_len;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw ParseError("malformed number '" + s + "'");
  long exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw ParseError("malformed number '" + s + "'");
    ++i;
    std::string e = s.substr(i);
    if (e.empty()) throw ParseError("malformed exponent in '" + s + "'");
    std::size_t used = 0;
    try {
      exponent = std::stol(e, &used);
    } catch (const std::exception&) {
      throw ParseError("malformed exponent in '" + s + "'");
    }
    if (used != e.size()) throw ParseError("malformed exponent in '" + s + "'");
    if (exponent > 4096 || exponent < -4096) throw ParseError("exponent out of range in '" + s + "'");
  }
  mpz_class n(digits, 10);
  long shift = exponent - frac_len;
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational q = shift < 0 ? Rational(n, p10) : Rational(n * p10);
  q.canonicalize();
  if (negative) q = -q;
  return q;
}

/// Canonical text form: "p/q" in lowest terms, or "p" for integers.
inline std::string format_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace mvg
