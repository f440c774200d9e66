#ifndef ORBISYM_RATIONAL_HPP
#define ORBISYM_RATIONAL_HPP

#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace orbisym {

/// Exact rational number with 64-bit numerator and denominator.
///
/// Always kept reduced with a positive denominator. Intermediate products are
/// formed in 128 bits; a result that does not fit back into 64 bits throws
/// std::overflow_error instead of wrapping.
class Rational {
public:
  constexpr Rational() noexcept = default;
  constexpr Rational(std::int64_t value) noexcept : num_(value) {} // NOLINT

  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    assign(static_cast<__int128>(num), static_cast<__int128>(den));
  }

  [[nodiscard]] constexpr std::int64_t num() const noexcept { return num_; }
  [[nodiscard]] constexpr std::int64_t den() const noexcept { return den_; }
  [[nodiscard]] constexpr bool is_zero() const noexcept { return num_ == 0; }
  [[nodiscard]] constexpr bool is_integer() const noexcept { return den_ == 1; }
  [[nodiscard]] constexpr int sign() const noexcept { return (num_ > 0) - (num_ < 0); }

  Rational operator-() const {
    if (num_ == INT64_MIN) throw std::overflow_error("rational overflow");
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  Rational& operator+=(const Rational& o) {
    if (o.num_ == 0) return *this;
    if (num_ == 0) return *this = o;
    if (den_ == 1 && o.den_ == 1) {
      std::int64_t s;
      if (__builtin_add_overflow(num_, o.num_, &s)) throw std::overflow_error("rational overflow");
      num_ = s;
      return *this;
    }
    const auto n = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
    const auto d = static_cast<__int128>(den_) * o.den_;
    assign(n, d);
    return *this;
  }

  Rational& operator-=(const Rational& o) { return *this += -o; }

  Rational& operator*=(const Rational& o) {
    if (num_ == 0 || o.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    if (den_ == 1 && o.den_ == 1) {
      std::int64_t p;
      if (__builtin_mul_overflow(num_, o.num_, &p)) throw std::overflow_error("rational overflow");
      num_ = p;
      return *this;
    }
    assign(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
    return *this;
  }

  Rational& operator/=(const Rational& o) {
    if (o.num_ == 0) throw std::domain_error("rational division by zero");
    assign(static_cast<__int128>(num_) * o.den_, static_cast<__int128>(den_) * o.num_);
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend constexpr bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  /// Text form "num/den", or just "num" for integers.
  [[nodiscard]] std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Parses "num", "num/den" or "-num/den". Throws std::invalid_argument.
  static Rational parse(std::string_view text) {
    const auto slash = text.find('/');
    auto to_int = [&](std::string_view part) -> std::int64_t {
      if (part.empty()) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
      std::size_t pos = 0;
      std::int64_t v = 0;
      try {
        v = std::stoll(std::string(part), &pos);
      } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
      }
      if (pos != part.size()) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
      return v;
    };
    if (slash == std::string_view::npos) return Rational(to_int(text));
    const auto den = to_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator '" + std::string(text) + "'");
    return Rational(to_int(text.substr(0, slash)), den);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
  static __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  void assign(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const __int128 g = gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (n == 0) d = 1;
    if (n > INT64_MAX || n < -INT64_MAX || d > INT64_MAX) throw std::overflow_error("rational overflow");
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

} // namespace orbisym

template <>
struct std::hash<orbisym::Rational> {
  std::size_t operator()(const orbisym::Rational& r) const noexcept {
    return std::hash<std::int64_t>{}(r.num()) * 1000003u ^ std::hash<std::int64_t>{}(r.den());
  }
};

#endif // ORBISYM_RATIONAL_HPP
