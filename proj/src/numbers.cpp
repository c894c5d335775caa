#include "fusioncat/numbers.hpp"

#include <quadmath.h>

#include <cassert>
#include <cctype>

namespace fusioncat {

namespace {

bool is_square_free(int d) {
    for (int p = 2; p * p <= d; ++p)
        if (d % (p * p) == 0) return false;
    return true;
}

[[noreturn]] void parse_fail(const std::string& s, size_t pos, const std::string& what) {
    throw number_error("parse error at offset " + std::to_string(pos) + " in \"" + s + "\": " + what);
}

}  // namespace

std::optional<Rational> rational_sqrt(const Rational& q) {
    if (q < 0) return std::nullopt;
    if (q == 0) return Rational(0);
    BigInt num = numerator(q), den = denominator(q);
    BigInt rn = sqrt(num), rd = sqrt(den);
    if (rn * rn != num || rd * rd != den) return std::nullopt;
    return Rational(rn, rd);
}

int sign_of(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

QuadExt::QuadExt(Rational a, Rational b, int d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    if (b_ == 0) {
        d_ = 0;
        return;
    }
    if (d_ == 1) {  // sqrt(1) folds into the rational part
        a_ += b_;
        b_ = 0;
        d_ = 0;
        return;
    }
    if (d_ <= 0) throw number_error("irrational QuadExt needs a positive field parameter");
    if (!is_square_free(d_)) throw number_error("field parameter must be square-free");
}

int unify_field(const QuadExt& x, const QuadExt& y) {
    if (x.d_ == 0) return y.d_;
    if (y.d_ == 0 || x.d_ == y.d_) return x.d_;
    throw number_error("mixed-field arithmetic: sqrt(" + std::to_string(x.d_) + ") vs sqrt(" +
                       std::to_string(y.d_) + ")");
}

QuadExt QuadExt::operator-() const { return QuadExt(-a_, -b_, d_); }

QuadExt& QuadExt::operator+=(const QuadExt& o) {
    int d = unify_field(*this, o);
    a_ += o.a_;
    b_ += o.b_;
    d_ = (b_ == 0) ? 0 : d;
    return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& o) {
    int d = unify_field(*this, o);
    a_ -= o.a_;
    b_ -= o.b_;
    d_ = (b_ == 0) ? 0 : d;
    return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& o) {
    int d = unify_field(*this, o);
    Rational na = a_ * o.a_ + Rational(d) * b_ * o.b_;
    Rational nb = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(na);
    b_ = std::move(nb);
    d_ = (b_ == 0) ? 0 : d;
    return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& o) {
    if (o.is_zero()) throw number_error("division by zero");
    // x/y = x * conj(y) / norm(y)
    Rational nrm = o.norm();
    *this *= o.conjugate();
    a_ /= nrm;
    b_ /= nrm;
    if (b_ == 0) d_ = 0;
    return *this;
}

float128 QuadExt::to_f128() const {
    // via strings: convert_to<double> would overflow on huge intermediates
    auto fq = [](const Rational& q) -> float128 {
        std::string ns = numerator(q).str(), ds = denominator(q).str();
        return strtoflt128(ns.c_str(), nullptr) / strtoflt128(ds.c_str(), nullptr);
    };
    if (d_ == 0) return fq(a_);
    return fq(a_) + fq(b_) * sqrtq((float128)d_);
}

int quad_sign(const QuadExt& x) {
    int s;
    if (x.b() == 0) {
        s = sign_of(x.a());
    } else if (x.a() == 0) {
        s = sign_of(x.b());
    } else {
        int sa = sign_of(x.a()), sb = sign_of(x.b());
        if (sa == sb) {
            s = sa;
        } else {
            // a and b*sqrt(d) compete; compare a^2 against d*b^2.
            // d square-free > 1 means the norm cannot vanish here.
            int sn = sign_of(x.norm());
            assert(sn != 0);
            s = sa > 0 ? sn : -sn;
        }
    }
#ifndef NDEBUG
    // Floating shadow of every exact sign decision (validation builds only).
    float128 v = x.to_f128();
    if (fabsq(v) > (float128)1e-20)
        assert(s == (v > 0 ? 1 : -1));
    else
        assert(s == 0 || fabsq(v) > 0);
#endif
    return s;
}

std::optional<QuadExt> sqrt_in_field(const QuadExt& s, int fieldD) {
    int sg = quad_sign(s);
    if (sg < 0) return std::nullopt;
    if (sg == 0) return QuadExt(0);
    if (s.d() != 0 && fieldD != 0 && s.d() != fieldD)
        throw number_error("sqrt_in_field: value outside the ambient field");
    if (s.is_rational()) {
        if (auto r = rational_sqrt(s.a())) return QuadExt(*r);
        if (fieldD > 1) {
            // s = d*b^2 gives sqrt(s) = b*sqrt(d)
            if (auto b = rational_sqrt(s.a() / fieldD)) return QuadExt(0, *b, fieldD);
        }
        return std::nullopt;
    }
    // x = a + b sqrt(d), x^2 = s: a^2 and d b^2 are (A +- t)/2 with t^2 = norm(s).
    int d = s.d();
    auto t = rational_sqrt(s.norm());
    if (!t) return std::nullopt;
    for (int pick = 0; pick < 2; ++pick) {
        Rational a2 = (s.a() + (pick == 0 ? *t : -*t)) / 2;
        auto a = rational_sqrt(a2);
        if (!a || *a == 0) continue;
        Rational b = s.b() / (2 * *a);
        QuadExt x(*a, b, d);
        if (x * x == s) return quad_sign(x) > 0 ? x : -x;
    }
    return std::nullopt;
}

std::string render_rational(const Rational& q) {
    std::string out = numerator(q).str();
    if (denominator(q) != 1) out += "/" + denominator(q).str();
    return out;
}

Rational parse_rational(const std::string& s, size_t& pos) {
    size_t start = pos;
    bool neg = false;
    if (pos < s.size() && s[pos] == '-') {
        neg = true;
        ++pos;
    }
    size_t dig = pos;
    while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
    if (pos == dig) parse_fail(s, start, "expected a rational");
    BigInt num(s.substr(dig, pos - dig));
    BigInt den = 1;
    if (pos < s.size() && s[pos] == '/') {
        ++pos;
        size_t d0 = pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        if (pos == d0) parse_fail(s, pos, "expected a denominator");
        den = BigInt(s.substr(d0, pos - d0));
        if (den == 0) parse_fail(s, d0, "zero denominator");
    }
    Rational q(num, den);
    return neg ? Rational(-q) : q;
}

// Grammar (no whitespace): <rat>
//                        | <rat>+<rat>*r
//                        | <rat>-<rat>*r   (the second rational is |b|)
std::string render_quadext(const QuadExt& x) {
    if (x.is_rational()) return render_rational(x.a());
    std::string out = render_rational(x.a());
    out += (x.b() > 0) ? "+" : "-";
    Rational ab = x.b() > 0 ? x.b() : Rational(-x.b());
    out += render_rational(ab) + "*r";
    return out;
}

QuadExt parse_quadext(const std::string& s, size_t& pos, int fieldD) {
    Rational a = parse_rational(s, pos);
    if (pos >= s.size() || (s[pos] != '+' && s[pos] != '-')) return QuadExt(a);
    // Lookahead: a '-' may begin `-b*r`; a '+' always does in this grammar.
    size_t save = pos;
    bool neg = s[pos] == '-';
    ++pos;
    Rational b;
    try {
        b = parse_rational(s, pos);
    } catch (const number_error&) {
        pos = save;
        return QuadExt(a);
    }
    if (pos + 1 < s.size() && s[pos] == '*' && s[pos + 1] == 'r') {
        pos += 2;
        if (fieldD <= 0) parse_fail(s, pos, "irrational literal outside a field context");
        return QuadExt(a, neg ? -b : b, fieldD);
    }
    pos = save;
    return QuadExt(a);
}

QuadExt parse_quadext(const std::string& s, int fieldD) {
    size_t pos = 0;
    QuadExt x = parse_quadext(s, pos, fieldD);
    if (pos != s.size()) parse_fail(s, pos, "trailing characters");
    return x;
}

Surd::Surd(QuadExt c, QuadExt r) : coeff(std::move(c)), radicand(std::move(r)) {
    if (quad_sign(coeff) <= 0 || quad_sign(radicand) <= 0)
        throw number_error("surd parts must be strictly positive");
}

float128 Surd::to_f128() const { return coeff.to_f128() * sqrtq(radicand.to_f128()); }

std::string render_surd(const Surd& s) {
    return "(" + render_quadext(s.coeff) + ")*sqrt(" + render_quadext(s.radicand) + ")";
}

void SurdSum::note_field(const QuadExt& x) {
    if (x.d() != 0) {
        if (field_hint_ != 0 && field_hint_ != x.d())
            throw number_error("mixed-field surd sum");
        field_hint_ = x.d();
    }
}

void SurdSum::add(const QuadExt& coeff, const QuadExt& radicand) {
    if (coeff.is_zero()) return;
    if (quad_sign(radicand) <= 0) throw number_error("surd radicand must be positive");
    note_field(coeff);
    note_field(radicand);
    for (size_t i = 0; i < terms_.size(); ++i) {
        // commensurable iff the ratio is a square in the field
        if (auto y = sqrt_in_field(radicand / terms_[i].radicand, field_hint_)) {
            terms_[i].coeff += coeff * *y;
            if (terms_[i].coeff.is_zero()) terms_.erase(terms_.begin() + i);
            return;
        }
    }
    terms_.push_back(Term{radicand, coeff});
}

SurdSum& SurdSum::operator+=(const SurdSum& o) {
    for (const auto& t : o.terms_) add(t.coeff, t.radicand);
    return *this;
}

SurdSum& SurdSum::operator-=(const SurdSum& o) {
    for (const auto& t : o.terms_) add(-t.coeff, t.radicand);
    return *this;
}

SurdSum SurdSum::operator*(const SurdSum& o) const {
    SurdSum out;
    for (const auto& t : terms_)
        for (const auto& u : o.terms_) out.add(t.coeff * u.coeff, t.radicand * u.radicand);
    return out;
}

bool SurdSum::operator==(const SurdSum& o) const {
    SurdSum diff = *this;
    diff -= o;
    return diff.is_zero();
}

float128 SurdSum::to_f128() const {
    float128 v = 0;
    for (const auto& t : terms_) v += t.coeff.to_f128() * sqrtq(t.radicand.to_f128());
    return v;
}

uint64_t fnv1a(const void* data, size_t len) {
    const unsigned char* p = (const unsigned char*)data;
    uint64_t h = 1469598103934665603ull;
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

uint64_t fnv1a(const std::string& s) { return fnv1a(s.data(), s.size()); }

}  // namespace fusioncat
