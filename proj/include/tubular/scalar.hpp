#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

namespace tubular {

// Ground field k: either QQ (characteristic 0) or a prime field GF(p), p < 2^31.
class Field {
public:
    Field() = default;

    static Field rationals() { return Field(); }
    static Field prime(std::uint32_t p);

    bool is_rational() const { return p_ == 0; }
    std::uint32_t characteristic() const { return p_; }
    std::string name() const;

    friend bool operator==(Field a, Field b) { return a.p_ == b.p_; }
    friend bool operator!=(Field a, Field b) { return a.p_ != b.p_; }

private:
    explicit Field(std::uint32_t p) : p_(p) {}
    std::uint32_t p_ = 0;
};

// Parses "QQ", "rational", "GF(p)", "prime:p" or "prime p".
Field parse_field(const std::string& text);

// An element of k. Rationals are kept in lowest terms with positive
// denominator (mpq canonical form); GF(p) values are integers in [0, p).
class Scalar {
public:
    Scalar() = default;
    Scalar(Field f, long v);
    Scalar(Field f, const mpq_class& q);

    static Scalar zero(Field f) { return Scalar(f, 0L); }
    static Scalar one(Field f) { return Scalar(f, 1L); }

    Field field() const { return field_; }
    const mpq_class& value() const { return v_; }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    Scalar inverse() const;
    Scalar pow(long e) const;

    // Canonical text: "3/2", "-5", "0". GF(p) values print their representative.
    std::string str() const;

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.field_ == b.field_ && a.v_ == b.v_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

private:
    void check_field(const Scalar& o) const;
    void reduce();

    Field field_;
    mpq_class v_{0};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

// Exact rational power q^e for e >= 0 (and q != 0 when e < 0).
mpq_class rational_pow(const mpq_class& q, long e);

}  // namespace tubular
