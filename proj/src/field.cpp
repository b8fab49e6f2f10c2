#include "sepeq/field.hpp"

#include <cstdlib>

namespace sepeq {

namespace {

bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

// Residue inverse by extended Euclid; gcd(a, p) = 1 is guaranteed for prime p.
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
    long long t = 0, new_t = 1;
    long long r = static_cast<long long>(p), new_r = static_cast<long long>(a);
    while (new_r != 0) {
        long long q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (t < 0) t += static_cast<long long>(p);
    return static_cast<std::uint64_t>(t);
}

}  // namespace

FieldSpec FieldSpec::prime(std::uint32_t p) {
    if (!is_prime_u32(p))
        throw ValidationError("FieldSpec: modulus " + std::to_string(p) + " is not prime");
    return FieldSpec{FieldKind::prime_field, p};
}

std::string FieldSpec::str() const {
    return is_rationals() ? "QQ" : "GF(" + std::to_string(p) + ")";
}

Scalar Scalar::zero(const FieldSpec& f) {
    Scalar s;
    s.field_ = f;
    return s;
}

Scalar Scalar::one(const FieldSpec& f) {
    Scalar s;
    s.field_ = f;
    if (f.is_rationals())
        s.rat_ = 1;
    else
        s.res_ = 1 % f.p;
    return s;
}

Scalar Scalar::of(long long n, const FieldSpec& f) {
    Scalar s;
    s.field_ = f;
    if (f.is_rationals()) {
        s.rat_ = mpq_class(mpz_class(static_cast<long>(n)));
    } else {
        long long r = n % static_cast<long long>(f.p);
        if (r < 0) r += f.p;
        s.res_ = static_cast<std::uint64_t>(r);
    }
    return s;
}

Scalar Scalar::ratio(long long num, long long den, const FieldSpec& f) {
    if (den == 0) throw ValidationError("Scalar: zero denominator");
    if (f.is_rationals()) {
        Scalar s;
        s.field_ = f;
        s.rat_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
        s.rat_.canonicalize();
        return s;
    }
    return Scalar::of(num, f) / Scalar::of(den, f);
}

Scalar Scalar::parse(const std::string& text, const FieldSpec& f) {
    if (text.empty()) throw ValidationError("Scalar: empty literal");
    Scalar s;
    s.field_ = f;
    if (f.is_rationals()) {
        if (mpq_set_str(s.rat_.get_mpq_t(), text.c_str(), 10) != 0)
            throw ValidationError("Scalar: bad rational literal '" + text + "'");
        if (mpz_sgn(mpq_denref(s.rat_.get_mpq_t())) == 0)
            throw ValidationError("Scalar: zero denominator in '" + text + "'");
        s.rat_.canonicalize();
        return s;
    }
    mpz_class z;
    if (mpz_set_str(z.get_mpz_t(), text.c_str(), 10) != 0)
        throw ValidationError("Scalar: bad residue literal '" + text + "'");
    mpz_class m = z % f.p;
    if (m < 0) m += f.p;
    s.res_ = m.get_ui();
    return s;
}

void Scalar::check_same_field(const Scalar& o) const {
    if (field_ != o.field_)
        throw ValidationError("Scalar: mixed fields " + field_.str() + " and " + o.field_.str());
}

bool Scalar::is_zero() const {
    return field_.is_rationals() ? rat_ == 0 : res_ == 0;
}

bool Scalar::is_one() const {
    return field_.is_rationals() ? rat_ == 1 : res_ == 1 % field_.p;
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same_field(o);
    Scalar s;
    s.field_ = field_;
    if (field_.is_rationals())
        s.rat_ = rat_ + o.rat_;
    else
        s.res_ = (res_ + o.res_) % field_.p;
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const {
    check_same_field(o);
    Scalar s;
    s.field_ = field_;
    if (field_.is_rationals())
        s.rat_ = rat_ - o.rat_;
    else
        s.res_ = (res_ + field_.p - o.res_) % field_.p;
    return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_same_field(o);
    Scalar s;
    s.field_ = field_;
    if (field_.is_rationals())
        s.rat_ = rat_ * o.rat_;
    else
        s.res_ = (res_ * o.res_) % field_.p;
    return s;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw ValidationError("Scalar: inverse of zero");
    Scalar s;
    s.field_ = field_;
    if (field_.is_rationals())
        s.rat_ = 1 / rat_;
    else
        s.res_ = mod_inverse(res_, field_.p);
    return s;
}

Scalar Scalar::operator/(const Scalar& o) const {
    return *this * o.inverse();
}

Scalar Scalar::operator-() const {
    Scalar s;
    s.field_ = field_;
    if (field_.is_rationals())
        s.rat_ = -rat_;
    else
        s.res_ = res_ == 0 ? 0 : field_.p - res_;
    return s;
}

bool Scalar::operator==(const Scalar& o) const {
    if (field_ != o.field_) return false;
    return field_.is_rationals() ? rat_ == o.rat_ : res_ == o.res_;
}

std::string Scalar::str() const {
    if (field_.is_rationals()) return rat_.get_str();
    return std::to_string(res_);
}

const mpq_class& Scalar::rational() const {
    if (!field_.is_rationals()) throw ValidationError("Scalar: not a rational");
    return rat_;
}

std::uint64_t Scalar::residue() const {
    if (field_.is_rationals()) throw ValidationError("Scalar: not a prime-field residue");
    return res_;
}

}  // namespace sepeq
