#pragma once

// Exact arithmetic over a real quadratic field Q(sqrt(D)) plus surds
// c*sqrt(s) with c, s in the field.  This is the numeric substrate for all
// dimension computations: no floating point is load-bearing anywhere.
//
// Conventions:
//  - Rationals are arbitrary precision (boost::multiprecision).
//  - A QuadExt with b == 0 is a plain rational and carries d == 0, so pure
//    rationals are compatible with every field context.  Arithmetic between
//    two irrational values from different fields is a hard error.
//  - d is a positive square-free integer when b != 0 (d == 1 is folded away).

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fusioncat {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using float128 = __float128;

struct number_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact sqrt of a nonnegative rational, if it is a rational square.
std::optional<Rational> rational_sqrt(const Rational& q);

int sign_of(const Rational& q);

std::string render_rational(const Rational& q);
// Parses exactly the grammar `-?digits(/digits)?`; advances pos.
Rational parse_rational(const std::string& s, size_t& pos);

class QuadExt {
  public:
    QuadExt() : d_(0) {}
    QuadExt(long long n) : a_(n), d_(0) {}
    QuadExt(Rational a) : a_(std::move(a)), d_(0) {}
    QuadExt(Rational a, Rational b, int d);

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    int d() const { return d_; }
    bool is_rational() const { return d_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }

    QuadExt conjugate() const { return d_ == 0 ? *this : QuadExt(a_, -b_, d_); }
    // Field norm a^2 - d b^2 (the product with the conjugate).
    Rational norm() const { return a_ * a_ - Rational(d_) * b_ * b_; }

    QuadExt operator-() const;
    QuadExt& operator+=(const QuadExt& o);
    QuadExt& operator-=(const QuadExt& o);
    QuadExt& operator*=(const QuadExt& o);
    QuadExt& operator/=(const QuadExt& o);

    friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
    friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
    friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
    friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }

    bool operator==(const QuadExt& o) const { return a_ == o.a_ && b_ == o.b_ && d_ == o.d_; }
    bool operator!=(const QuadExt& o) const { return !(*this == o); }

    float128 to_f128() const;
    double to_double() const { return (double)to_f128(); }

  private:
    Rational a_, b_;
    int d_;

    friend int unify_field(const QuadExt& x, const QuadExt& y);
};

// Common field tag of two values; throws on a genuine mismatch.
int unify_field(const QuadExt& x, const QuadExt& y);

// Exact sign in {-1, 0, +1}, decided by rational comparisons only.
int quad_sign(const QuadExt& x);

inline bool quad_less(const QuadExt& x, const QuadExt& y) { return quad_sign(x - y) < 0; }

// Positive x with x*x == s inside Q(sqrt(fieldD)), if it exists.
// fieldD supplies the ambient field when s itself is rational.
std::optional<QuadExt> sqrt_in_field(const QuadExt& s, int fieldD);

std::string render_quadext(const QuadExt& x);
QuadExt parse_quadext(const std::string& s, size_t& pos, int fieldD);
QuadExt parse_quadext(const std::string& s, int fieldD);

// coeff * sqrt(radicand), both strictly positive field elements.
struct Surd {
    QuadExt coeff;
    QuadExt radicand;

    Surd(QuadExt c, QuadExt r);
    // Two surds are equal iff their squares agree.
    QuadExt squared() const { return coeff * coeff * radicand; }
    bool operator==(const Surd& o) const { return squared() == o.squared(); }
    Surd operator*(const Surd& o) const { return Surd(coeff * o.coeff, radicand * o.radicand); }
    float128 to_f128() const;
};

std::string render_surd(const Surd& s);

// Finite sum sum_i coeff_i * sqrt(rad_i) with the rad_i pairwise
// incommensurable (no ratio is a square in the field).  Coefficients live in
// the field itself: sqrt(2*(3+sqrt 17)^2) groups into the sqrt(2) class with
// coefficient 3+sqrt(17).
class SurdSum {
  public:
    SurdSum() = default;
    explicit SurdSum(const Surd& s) { add(s.coeff, s.radicand); }

    void add(const QuadExt& coeff, const QuadExt& radicand);
    void add_rational(const QuadExt& value) { add(value, QuadExt(1)); }

    SurdSum& operator+=(const SurdSum& o);
    SurdSum& operator-=(const SurdSum& o);
    SurdSum operator*(const SurdSum& o) const;

    bool is_zero() const { return terms_.empty(); }
    bool operator==(const SurdSum& o) const;
    size_t term_count() const { return terms_.size(); }
    float128 to_f128() const;

  private:
    struct Term {
        QuadExt radicand;
        QuadExt coeff;
    };
    std::vector<Term> terms_;
    int field_hint_ = 0;

    void note_field(const QuadExt& x);
};

inline bool surd_sum_eq(const SurdSum& x, const SurdSum& y) { return x == y; }

// 64-bit FNV-1a, used for content fingerprints of catalog files.
uint64_t fnv1a(const void* data, size_t len);
uint64_t fnv1a(const std::string& s);

}  // namespace fusioncat
