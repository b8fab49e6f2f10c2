// Exact ground fields: the rationals and prime fields F_p, with a common
// scalar value type.  Everything downstream reduces to arithmetic here, so
// no floating point appears anywhere in this library.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace sepeq {

/// Raised when input data violates a documented invariant.  The message
/// names the first failing axiom instance.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

enum class FieldKind : std::uint8_t { rationals, prime_field };

/// Designates the ground field.  Prime moduli are verified at construction.
struct FieldSpec {
    FieldKind kind = FieldKind::rationals;
    std::uint32_t p = 0;  // modulus, prime_field only

    static FieldSpec rationals() { return FieldSpec{FieldKind::rationals, 0}; }
    static FieldSpec prime(std::uint32_t p);  // throws ValidationError unless p is prime

    bool is_rationals() const { return kind == FieldKind::rationals; }
    std::uint32_t characteristic() const { return is_rationals() ? 0 : p; }

    bool operator==(const FieldSpec&) const = default;

    std::string str() const;
};

/// One exact field element.  Rationals are kept in lowest terms with a
/// positive denominator; prime-field values are residues in [0, p).
class Scalar {
public:
    Scalar() : field_(FieldSpec::rationals()) {}  // zero over Q

    static Scalar zero(const FieldSpec& f);
    static Scalar one(const FieldSpec& f);
    static Scalar of(long long n, const FieldSpec& f);
    static Scalar ratio(long long num, long long den, const FieldSpec& f);
    /// Parses the serialized form: "n" or "n/d" over Q, a decimal residue mod p.
    static Scalar parse(const std::string& text, const FieldSpec& f);

    const FieldSpec& field() const { return field_; }

    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;  // throws on zero divisor
    Scalar operator-() const;
    Scalar inverse() const;  // throws on zero

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Canonical serialized form; parse(str(), field()) round-trips exactly.
    std::string str() const;

    /// Rational payload (rationals only).
    const mpq_class& rational() const;
    /// Residue payload (prime fields only).
    std::uint64_t residue() const;

private:
    FieldSpec field_;
    mpq_class rat_;
    std::uint64_t res_ = 0;

    void check_same_field(const Scalar& o) const;
};

}  // namespace sepeq
