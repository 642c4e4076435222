#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace corolla {

/// Exact element of Q(i).  All coefficient arithmetic in the toolkit runs
/// over this field; vertex factors of i and the alternating ghost signs
/// stay exact instead of being tracked by hand.
class GaussRat {
public:
    GaussRat() : re_(0), im_(0) {}
    GaussRat(long n) : re_(n), im_(0) {}
    GaussRat(long num, long den) : re_(mpq_class(num, den)), im_(0) { re_.canonicalize(); }
    explicit GaussRat(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussRat i() { return GaussRat(mpq_class(0), mpq_class(1)); }
    /// i^k folded into {1, i, -1, -i}.
    static GaussRat i_pow(long k) {
        long r = ((k % 4) + 4) % 4;
        switch (r) {
            case 0: return GaussRat(1);
            case 1: return i();
            case 2: return GaussRat(-1);
            default: return GaussRat(mpq_class(0), mpq_class(-1));
        }
    }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
        return GaussRat(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
        return GaussRat(a.re_ - b.re_, a.im_ - b.im_);
    }
    GaussRat operator-() const { return GaussRat(-re_, -im_); }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return GaussRat(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
        mpq_class n = b.re_ * b.re_ + b.im_ * b.im_;
        if (n == 0) throw std::domain_error("division by zero in GaussRat");
        return GaussRat((a.re_ * b.re_ + a.im_ * b.im_) / n, (a.im_ * b.re_ - a.re_ * b.im_) / n);
    }
    GaussRat& operator+=(const GaussRat& b) { return *this = *this + b; }
    GaussRat& operator-=(const GaussRat& b) { return *this = *this - b; }
    GaussRat& operator*=(const GaussRat& b) { return *this = *this * b; }
    GaussRat& operator/=(const GaussRat& b) { return *this = *this / b; }

    GaussRat inverse() const { return GaussRat(1) / *this; }
    GaussRat pow(unsigned k) const {
        GaussRat acc(1), base = *this;
        for (; k; k >>= 1) {
            if (k & 1) acc *= base;
            base *= base;
        }
        return acc;
    }

    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
    friend bool operator<(const GaussRat& a, const GaussRat& b) {
        int c = cmp(a.re_, b.re_);
        if (c != 0) return c < 0;
        return cmp(a.im_, b.im_) < 0;
    }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    /// "3", "-1/2", "i", "-2i", "(1/2+3i)"
    std::string str() const {
        auto q = [](const mpq_class& v) { return v.get_str(); };
        if (im_ == 0) return q(re_);
        std::string im_part = (im_ == 1) ? "i" : (im_ == -1 ? "-i" : q(im_) + "i");
        if (re_ == 0) return im_part;
        std::string s = "(" + q(re_);
        if (im_ > 0) s += "+";
        return s + im_part + ")";
    }

private:
    mpq_class re_, im_;
};

}  // namespace corolla
