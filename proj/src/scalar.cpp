#include "tubular/scalar.hpp"

#include <cctype>
#include <ostream>

#include "tubular/error.hpp"

namespace tubular {

namespace {

bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::uint32_t parse_modulus(const std::string& digits) {
    if (digits.empty() || digits.size() > 10) throw Error("bad field modulus '" + digits + "'");
    std::uint64_t p = 0;
    for (char c : digits) {
        if (!std::isdigit(static_cast<unsigned char>(c))) throw Error("bad field modulus '" + digits + "'");
        p = p * 10 + static_cast<std::uint64_t>(c - '0');
    }
    if (p >= (1ULL << 31)) throw Error("field modulus must be < 2^31");
    return static_cast<std::uint32_t>(p);
}

}  // namespace

Field Field::prime(std::uint32_t p) {
    if (p >= (1U << 31)) throw Error("field modulus must be < 2^31");
    if (!is_prime(p)) throw Error("field modulus " + std::to_string(p) + " is not prime");
    return Field(p);
}

std::string Field::name() const {
    return is_rational() ? "QQ" : "GF(" + std::to_string(p_) + ")";
}

Field parse_field(const std::string& text) {
    std::string s = trim(text);
    if (s == "QQ" || s == "rational" || s == "Q") return Field::rationals();
    if (s.rfind("GF(", 0) == 0 && s.back() == ')') return Field::prime(parse_modulus(s.substr(3, s.size() - 4)));
    if (s.rfind("prime:", 0) == 0) return Field::prime(parse_modulus(trim(s.substr(6))));
    if (s.rfind("prime ", 0) == 0) return Field::prime(parse_modulus(trim(s.substr(6))));
    throw Error("unknown field '" + s + "'");
}

Scalar::Scalar(Field f, long v) : field_(f), v_(v) { reduce(); }

Scalar::Scalar(Field f, const mpq_class& q) : field_(f), v_(q) {
    v_.canonicalize();
    reduce();
}

void Scalar::reduce() {
    if (field_.is_rational()) return;
    mpz_class p = field_.characteristic();
    mpz_class num = v_.get_num() % p;
    if (num < 0) num += p;
    mpz_class den = v_.get_den() % p;
    if (den == 0) throw NotAUnit("denominator vanishes in " + field_.name());
    if (den != 1) {
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
        num = (num * inv) % p;
    }
    v_ = mpq_class(num);
}

void Scalar::check_field(const Scalar& o) const {
    if (field_ != o.field_) throw FieldMismatch("scalars over " + field_.name() + " and " + o.field_.name());
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.v_ = -r.v_;
    r.reduce();
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    check_field(o);
    v_ += o.v_;
    if (!field_.is_rational()) {
        if (v_ >= field_.characteristic()) v_ -= field_.characteristic();
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    check_field(o);
    v_ -= o.v_;
    if (!field_.is_rational() && v_ < 0) v_ += field_.characteristic();
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    check_field(o);
    v_ *= o.v_;
    reduce();
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::inverse() const {
    if (is_zero()) throw NotAUnit("division by zero in " + field_.name());
    if (field_.is_rational()) return Scalar(field_, mpq_class(1) / v_);
    mpz_class p = field_.characteristic();
    mpz_class inv;
    mpz_class a = v_.get_num();
    mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    return Scalar(field_, mpq_class(inv));
}

Scalar Scalar::pow(long e) const {
    Scalar base = e < 0 ? inverse() : *this;
    unsigned long n = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1 : static_cast<unsigned long>(e);
    Scalar r = one(field_);
    while (n) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

std::string Scalar::str() const { return v_.get_str(); }

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

mpq_class rational_pow(const mpq_class& q, long e) {
    if (e < 0) {
        if (sgn(q) == 0) throw NotAUnit("zero to a negative power");
        return rational_pow(mpq_class(1) / q, -e);
    }
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), q.get_num().get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(den.get_mpz_t(), q.get_den().get_mpz_t(), static_cast<unsigned long>(e));
    mpq_class r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace tubular
