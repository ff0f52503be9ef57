#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "torlink/error.hpp"

namespace torlink {

// Coefficient field: the rationals or a prime field F_p with p in a machine word.
struct Field {
  enum class Kind { rationals, prime };

  Kind kind = Kind::rationals;
  std::uint64_t p = 0;  // modulus; 0 for Q

  static Field Q() { return Field{Kind::rationals, 0}; }
  static Field Fp(std::uint64_t p);  // throws bad_input unless p is prime and < 2^62

  bool is_prime_field() const { return kind == Kind::prime; }
  bool operator==(const Field&) const = default;
  std::string str() const;
};

bool is_prime_u64(std::uint64_t n);

// Exact field element. Rationals live in lowest terms with positive denominator
// (mpq_class canonicalizes); prime-field residues live in [0, p).
class Scalar {
 public:
  Scalar() = default;  // zero over Q

  static Scalar zero(const Field& f);
  static Scalar one(const Field& f);
  static Scalar of_int(const Field& f, long v);
  static Scalar of_fraction(const Field& f, long num, long den);
  static Scalar of_mpq(const Field& f, const mpq_class& v);
  static Scalar of_residue(const Field& f, std::uint64_t r);
  // accepts "-3", "5/7"; over F_p the value is reduced mod p
  static Scalar from_string(const Field& f, const std::string& s);

  const Field& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;  // throws on division by zero
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar inverse() const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  const mpq_class& rat() const { return rat_; }    // valid over Q
  std::uint64_t residue() const { return res_; }   // valid over F_p

  std::string str() const;

 private:
  void check_same_field(const Scalar& o) const;

  Field field_ = Field::Q();
  mpq_class rat_ = 0;       // used iff rationals
  std::uint64_t res_ = 0;   // used iff prime
};

}  // namespace torlink
