#include "torlink/field.hpp"

namespace torlink {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  if (a == 0) throw Error(Errc::bad_input, "division by zero in F_" + std::to_string(p));
  // p prime, so a^(p-2) works and avoids signed bookkeeping
  return powmod(a, p - 2, p);
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  // deterministic Miller-Rabin for 64-bit with the first 12 prime bases
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Field Field::Fp(std::uint64_t p) {
  if (p >= (1ull << 62) || !is_prime_u64(p))
    throw Error(Errc::bad_input, "F_p requires a prime p < 2^62, got " + std::to_string(p));
  return Field{Kind::prime, p};
}

std::string Field::str() const {
  return kind == Kind::rationals ? "Q" : "F" + std::to_string(p);
}

Scalar Scalar::zero(const Field& f) {
  Scalar s;
  s.field_ = f;
  return s;
}

Scalar Scalar::one(const Field& f) { return of_int(f, 1); }

Scalar Scalar::of_int(const Field& f, long v) {
  Scalar s;
  s.field_ = f;
  if (f.kind == Field::Kind::rationals) {
    s.rat_ = v;
  } else {
    long r = v % static_cast<long>(f.p);
    if (r < 0) r += static_cast<long>(f.p);
    s.res_ = static_cast<std::uint64_t>(r);
  }
  return s;
}

Scalar Scalar::of_fraction(const Field& f, long num, long den) {
  if (den == 0) throw Error(Errc::bad_input, "zero denominator");
  if (f.kind == Field::Kind::rationals) {
    Scalar s;
    s.field_ = f;
    s.rat_ = mpq_class(num, den);
    s.rat_.canonicalize();
    return s;
  }
  return of_int(f, num) / of_int(f, den);
}

Scalar Scalar::of_mpq(const Field& f, const mpq_class& v) {
  Scalar s;
  s.field_ = f;
  if (f.kind == Field::Kind::rationals) {
    s.rat_ = v;
    s.rat_.canonicalize();
    return s;
  }
  // reduce num/den mod p
  mpz_class pz(static_cast<unsigned long>(f.p));
  mpz_class num = v.get_num() % pz;
  if (num < 0) num += pz;
  mpz_class den = v.get_den() % pz;
  std::uint64_t n = num.get_ui();
  std::uint64_t d = den.get_ui();
  s.res_ = mulmod(n, invmod(d, f.p), f.p);
  return s;
}

Scalar Scalar::of_residue(const Field& f, std::uint64_t r) {
  if (f.kind != Field::Kind::prime) throw Error(Errc::bad_input, "of_residue needs a prime field");
  Scalar s;
  s.field_ = f;
  s.res_ = r % f.p;
  return s;
}

Scalar Scalar::from_string(const Field& f, const std::string& str) {
  auto slash = str.find('/');
  try {
    if (slash == std::string::npos) {
      mpq_class v(str);
      v.canonicalize();
      return of_mpq(f, v);
    }
    mpq_class num(str.substr(0, slash));
    mpq_class den(str.substr(slash + 1));
    if (den == 0) throw Error(Errc::bad_input, "zero denominator in '" + str + "'");
    mpq_class v = num / den;
    v.canonicalize();
    return of_mpq(f, v);
  } catch (const std::invalid_argument&) {
    throw Error(Errc::parse, "bad scalar literal '" + str + "'");
  }
}

bool Scalar::is_zero() const {
  return field_.kind == Field::Kind::rationals ? rat_ == 0 : res_ == 0;
}

bool Scalar::is_one() const {
  return field_.kind == Field::Kind::rationals ? rat_ == 1 : res_ == 1 % field_.p;
}

void Scalar::check_same_field(const Scalar& o) const {
  if (!(field_ == o.field_))
    throw Error(Errc::field_mismatch, "scalar fields differ: " + field_.str() + " vs " + o.field_.str());
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (field_.kind == Field::Kind::rationals)
    s.rat_ = -rat_;
  else
    s.res_ = res_ == 0 ? 0 : field_.p - res_;
  return s;
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same_field(o);
  Scalar s = *this;
  if (field_.kind == Field::Kind::rationals) {
    s.rat_ = rat_ + o.rat_;
  } else {
    std::uint64_t r = res_ + o.res_;
    if (r >= field_.p) r -= field_.p;
    s.res_ = r;
  }
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  check_same_field(o);
  Scalar s = *this;
  if (field_.kind == Field::Kind::rationals)
    s.rat_ = rat_ * o.rat_;
  else
    s.res_ = mulmod(res_, o.res_, field_.p);
  return s;
}

Scalar Scalar::inverse() const {
  Scalar s = *this;
  if (field_.kind == Field::Kind::rationals) {
    if (rat_ == 0) throw Error(Errc::bad_input, "division by zero");
    s.rat_ = 1 / rat_;
  } else {
    s.res_ = invmod(res_, field_.p);
  }
  return s;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

bool Scalar::operator==(const Scalar& o) const {
  if (!(field_ == o.field_)) return false;
  return field_.kind == Field::Kind::rationals ? rat_ == o.rat_ : res_ == o.res_;
}

std::string Scalar::str() const {
  if (field_.kind == Field::Kind::rationals) return rat_.get_str();
  return std::to_string(res_);
}

}  // namespace torlink
