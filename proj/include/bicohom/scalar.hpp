#pragma once

// Exact scalars: Rational (GMP backed, always canonical) and GaussianRational,
// the coefficient field Q(i) used by every computation in the engine.

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace bicohom {

class Rational {
public:
    Rational() = default;
    Rational(long value) : q_(value) {}                     // NOLINT(implicit)
    Rational(int value) : q_(static_cast<long>(value)) {}   // NOLINT(implicit)
    Rational(const mpz_class& num, const mpz_class& den = 1) : q_(num, den) {
        ensure(den != 0, ErrorCode::ParseError, "zero denominator");
        q_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    int sign() const { return sgn(q_); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        ensure(!o.is_zero(), ErrorCode::InternalInconsistency, "division by zero");
        q_ /= o.q_;
        return *this;
    }
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    /// "num" or "num/den".
    std::string str() const {
        if (q_.get_den() == 1) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

    /// Accepts "-?digits" or "-?digits/digits" (leading '+' allowed).
    static Rational parse(std::string_view text) {
        auto digits = [&](std::string_view s) {
            if (s.empty()) return false;
            for (char c : s)
                if (!std::isdigit(static_cast<unsigned char>(c))) return false;
            return true;
        };
        std::string_view body = text;
        bool negative = false;
        if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
            negative = body.front() == '-';
            body.remove_prefix(1);
        }
        auto slash = body.find('/');
        std::string_view num = body.substr(0, slash);
        std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
        if (!digits(num) || !digits(den))
            fail(ErrorCode::ParseError, "expected rational 'num/den', got '" + std::string(text) + "'");
        mpz_class n{std::string(num)}, d{std::string(den)};
        if (d == 0) fail(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
        if (negative) n = -n;
        return Rational(n, d);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class q_{0};
};

/// re + im*i with exact rational parts.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(Rational re, Rational im = Rational{}) : re_(std::move(re)), im_(std::move(im)) {} // NOLINT
    GaussianRational(long value) : re_(value) {}  // NOLINT
    GaussianRational(int value) : re_(value) {}   // NOLINT

    static GaussianRational i() { return {Rational{0}, Rational{1}}; }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }

    GaussianRational conj() const { return {re_, -im_}; }
    /// |z|^2
    Rational norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational operator-() const { return {-re_, -im_}; }
    GaussianRational& operator+=(const GaussianRational& o) { re_ += o.re_; im_ += o.im_; return *this; }
    GaussianRational& operator-=(const GaussianRational& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
    GaussianRational& operator*=(const GaussianRational& o) {
        if (o.im_.is_zero()) {
            re_ *= o.re_;
            im_ *= o.re_;
            return *this;
        }
        Rational re = re_ * o.re_ - im_ * o.im_;
        Rational im = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(re);
        im_ = std::move(im);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        ensure(!o.is_zero(), ErrorCode::InternalInconsistency, "division by zero");
        if (o.im_.is_zero()) {
            re_ /= o.re_;
            im_ /= o.re_;
            return *this;
        }
        Rational n = o.norm();
        *this *= o.conj();
        re_ /= n;
        im_ /= n;
        return *this;
    }
    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// Canonical text: "a/b", "c/d i", or "a/b+c/d i".
    std::string str() const {
        if (im_.is_zero()) return re_.str();
        std::string imag = im_.str() + " i";
        if (re_.is_zero()) return imag;
        return re_.str() + (im_.sign() > 0 ? "+" : "") + imag;
    }

    /// Inverse of str(); also accepts "i", "-i", "2i" and no space before the i.
    static GaussianRational parse(std::string_view text) {
        std::string s;
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
        if (s.empty()) fail(ErrorCode::ParseError, "empty scalar");
        if (s.back() != 'i') return {Rational::parse(s), Rational{}};
        s.pop_back();
        // split at the last sign that is not the leading one
        std::size_t split = std::string::npos;
        for (std::size_t k = s.size(); k-- > 1;)
            if (s[k] == '+' || s[k] == '-') {
                split = k;
                break;
            }
        std::string real_part = split == std::string::npos ? "" : s.substr(0, split);
        std::string imag_part = split == std::string::npos ? s : s.substr(split);
        if (imag_part.empty() || imag_part == "+") imag_part = "1";
        else if (imag_part == "-") imag_part = "-1";
        Rational re = real_part.empty() ? Rational{} : Rational::parse(real_part);
        return {re, Rational::parse(imag_part)};
    }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.str(); }

private:
    Rational re_;
    Rational im_;
};

using Scalar = GaussianRational;

} // namespace bicohom
