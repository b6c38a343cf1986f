#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace weakhopf {

__extension__ typedef __int128 i128;
__extension__ typedef unsigned __int128 u128;

// Exact rational. Values with small numerator and denominator live in two
// int64 fields; anything larger falls back to a heap mpq_class.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : num_(v) {}
  Rational(long v) { set_wide(static_cast<i128>(v), 1); }
  Rational(long long v) { set_wide(static_cast<i128>(v), 1); }
  Rational(long long n, long long d) {
    if (d == 0) throw std::domain_error("zero denominator");
    set_wide(n, d);
  }
  explicit Rational(const mpq_class& q) { set_big(q); }

  Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  static Rational parse(std::string_view s) {
    std::string t(s);
    if (t.empty()) throw std::invalid_argument("empty rational");
    auto slash = t.find('/');
    auto check = [](const std::string& part) {
      std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
      if (i >= part.size()) return false;
      for (; i < part.size(); ++i)
        if (part[i] < '0' || part[i] > '9') return false;
      return true;
    };
    std::string n = t.substr(0, slash);
    std::string d = slash == std::string::npos ? "1" : t.substr(slash + 1);
    if (!check(n) || !check(d) || d[0] == '-' || d[0] == '+')
      throw std::invalid_argument("malformed rational '" + t + "'");
    if (n[0] == '+') n.erase(0, 1);
    mpz_class zn(n), zd(d);
    if (zd == 0) throw std::invalid_argument("zero denominator in '" + t + "'");
    mpq_class q(zn, zd);
    q.canonicalize();
    return Rational(q);
  }

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  int sign() const {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
  }

  mpq_class to_mpq() const {
    if (big_) return *big_;
    mpq_class q(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
    return q;
  }

  std::string str() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.den_ == b.den_) {
        Rational r;
        r.set_wide(static_cast<i128>(a.num_) + b.num_, a.den_);
        return r;
      }
      Rational r;
      r.set_wide(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                 static_cast<i128>(a.den_) * b.den_);
      return r;
    }
    return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.num_ == 0 || b.num_ == 0) return Rational();
      std::int64_t g1 = std::gcd(a.num_, b.den_);
      std::int64_t g2 = std::gcd(b.num_, a.den_);
      Rational r;
      r.set_wide(static_cast<i128>(a.num_ / g1) * (b.num_ / g2),
                 static_cast<i128>(a.den_ / g2) * (b.den_ / g1));
      return r;
    }
    return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    return a * b.inverse();
  }
  Rational operator-() const {
    if (big_) return Rational(mpq_class(-*big_));
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rational inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    if (big_) return Rational(mpq_class(1 / *big_));
    Rational r;
    r.set_wide(den_, num_);
    return r;
  }
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // canonical: small and big never coincide
  }
  friend bool operator<(const Rational& a, const Rational& b) { return (a - b).sign() < 0; }

 private:
  // Bound keeps every intermediate of + and * inside 128-bit integers.
  static constexpr std::int64_t kLimit = std::int64_t(1) << 62;

  static u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
      if ((a >> 64) == 0 && (b >> 64) == 0)
        return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
      u128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static mpz_class to_mpz(i128 v) {
    bool neg = v < 0;
    u128 u = neg ? -static_cast<u128>(v) : static_cast<u128>(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
  }

  void set_wide(i128 n, i128 d) {
    big_.reset();
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) {
      num_ = 0;
      den_ = 1;
      return;
    }
    u128 un = n < 0 ? -static_cast<u128>(n) : static_cast<u128>(n);
    u128 g = gcd128(un, static_cast<u128>(d));
    if (g > 1) {
      n /= static_cast<i128>(g);
      d /= static_cast<i128>(g);
    }
    if (n <= kLimit && n >= -kLimit && d <= kLimit) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      return;
    }
    mpq_class q(to_mpz(n), to_mpz(d));
    big_ = std::make_unique<mpq_class>(q);
    num_ = 0;
    den_ = 1;
  }

  void set_big(const mpq_class& q) {
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (n.fits_slong_p() && d.fits_slong_p()) {
      long ln = n.get_si(), ld = d.get_si();
      if (ln <= kLimit && ln >= -kLimit && ld <= kLimit) {
        big_.reset();
        num_ = ln;
        den_ = ld;
        return;
      }
    }
    big_ = std::make_unique<mpq_class>(q);
    num_ = 0;
    den_ = 1;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

// Gaussian rational re + im*i.
class Scalar {
 public:
  Scalar() = default;
  Scalar(int v) : re_(v) {}
  Scalar(long v) : re_(v) {}
  Scalar(long long v) : re_(v) {}
  Scalar(Rational re) : re_(std::move(re)) {}
  Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static Scalar i() { return Scalar(Rational(0), Rational(1)); }

  // Accepts "a", "a/b", "c/d*i", "a/b+c/d*i", "a/b-c/d*i" (and bare "i", "-i").
  static Scalar parse(std::string_view s) {
    std::string t(s);
    if (t.empty()) throw std::invalid_argument("empty scalar");
    if (t.back() != 'i') return Scalar(Rational::parse(t));
    std::string body = t.substr(0, t.size() - 1);
    if (!body.empty() && body.back() == '*') body.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
      if (body[k] == '+' || body[k] == '-') {
        split = k;
        break;
      }
    }
    std::string re_part = split == std::string::npos ? "0" : body.substr(0, split);
    std::string im_part = split == std::string::npos ? body : body.substr(split);
    if (im_part.empty() || im_part == "+") im_part = "1";
    if (im_part == "-") im_part = "-1";
    if (split != std::string::npos && (t.size() < 2 || t[t.size() - 2] != '*') &&
        im_part != "1" && im_part != "-1" && im_part != "+1")
      throw std::invalid_argument("malformed scalar '" + t + "'");
    return Scalar(Rational::parse(re_part), Rational::parse(im_part));
  }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_one() const { return re_.is_one() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }

  Scalar conj() const { return Scalar(re_, -im_); }

  std::string str() const {
    if (im_.is_zero()) return re_.str();
    std::string ims = im_.str() + "*i";
    if (re_.is_zero()) return ims;
    if (im_.sign() < 0) return re_.str() + ims;
    return re_.str() + "+" + ims;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.im_.is_zero() && b.im_.is_zero()) return Scalar(a.re_ + b.re_);
    return Scalar(a.re_ + b.re_, a.im_ + b.im_);
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    if (a.im_.is_zero() && b.im_.is_zero()) return Scalar(a.re_ - b.re_);
    return Scalar(a.re_ - b.re_, a.im_ - b.im_);
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.im_.is_zero() && b.im_.is_zero()) return Scalar(a.re_ * b.re_);
    return Scalar(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
  }
  Scalar inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    if (im_.is_zero()) return Scalar(re_.inverse());
    Rational n = re_ * re_ + im_ * im_;
    return Scalar(re_ / n, -im_ / n);
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
  Scalar operator-() const { return Scalar(-re_, -im_); }
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

 private:
  Rational re_;
  Rational im_;
};

}  // namespace weakhopf
