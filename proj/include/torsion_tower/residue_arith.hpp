#pragma once

// Arithmetic in Z/p^n, Hensel lifting of simple roots and reduction of
// elements of the equation order Z[theta] at degree-one primes.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "torsion_tower/errors.hpp"

namespace torsion_tower {

using BigInt = mpz_class;

inline BigInt big_pow(std::uint64_t base, unsigned exponent) {
  BigInt result;
  mpz_ui_pow_ui(result.get_mpz_t(), base, exponent);
  return result;
}

inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  BigInt z(std::to_string(n));
  return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

/// Monic polynomial with integer coefficients, stored in ascending powers
/// (coeffs[i] is the coefficient of x^i).
class MonicIntPolynomial {
 public:
  explicit MonicIntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() < 2)
      throw Error(ErrorCode::ValidationError, "polynomial must have degree >= 1");
    if (coeffs_.back() != 1)
      throw Error(ErrorCode::ValidationError,
                  "polynomial is not monic (leading coefficient " + coeffs_.back().get_str() + ")");
  }

  static MonicIntPolynomial from_ints(std::initializer_list<long> coeffs) {
    std::vector<BigInt> c;
    for (long v : coeffs) c.emplace_back(v);
    return MonicIntPolynomial(std::move(c));
  }

  std::size_t degree() const { return coeffs_.size() - 1; }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }

  BigInt operator()(const BigInt& x) const {
    BigInt acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  BigInt derivative_at(const BigInt& x) const {
    BigInt acc = 0;
    for (std::size_t i = coeffs_.size() - 1; i >= 1; --i) acc = acc * x + coeffs_[i] * static_cast<unsigned long>(i);
    return acc;
  }

  std::string to_string() const {
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      const BigInt& c = coeffs_[i];
      if (c == 0) continue;
      BigInt mag = abs(c);
      if (first) {
        if (c < 0) out << "-";
      } else {
        out << (c < 0 ? " - " : " + ");
      }
      if (i == 0 || mag != 1) out << mag.get_str();
      if (i >= 1) out << "x";
      if (i >= 2) out << "^" << i;
      first = false;
    }
    if (first) out << "0";
    return out.str();
  }

  friend bool operator==(const MonicIntPolynomial& a, const MonicIntPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  std::vector<BigInt> coeffs_;
};

/// Residue in [0, modulus).
struct RingElt {
  BigInt value;

  friend bool operator==(const RingElt& a, const RingElt& b) { return a.value == b.value; }
};

/// A level prime of residue degree one: a simple root of f modulo p.
struct DegreeOnePrime {
  std::uint64_t p = 0;
  std::uint64_t root = 0;

  friend bool operator==(const DegreeOnePrime&, const DegreeOnePrime&) = default;
  friend auto operator<=>(const DegreeOnePrime&, const DegreeOnePrime&) = default;
};

class ResidueRing;
RingElt hensel_lift_root(const MonicIntPolynomial& f, std::uint64_t p, const BigInt& r0, unsigned n);

/// The ring Z/p^n, optionally carrying the image theta of the field generator.
class ResidueRing {
 public:
  ResidueRing(std::uint64_t p, unsigned n) : p_(p), n_(n), modulus_(big_pow(p, n)) {
    if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "exponent must be >= 1");
  }

  /// Z/p^n with theta the Hensel lift of the prime's root of f.
  static ResidueRing for_prime(const MonicIntPolynomial& f, const DegreeOnePrime& prime, unsigned n) {
    ResidueRing ring(prime.p, n);
    ring.theta_ = hensel_lift_root(f, prime.p, BigInt(std::to_string(prime.root)), n);
    return ring;
  }

  std::uint64_t p() const { return p_; }
  unsigned exponent() const { return n_; }
  const BigInt& modulus() const { return modulus_; }
  const std::optional<RingElt>& theta() const { return theta_; }

  RingElt elt(const BigInt& v) const { return RingElt{mod_floor(v, modulus_)}; }
  RingElt elt(long v) const { return elt(BigInt(v)); }
  RingElt zero() const { return RingElt{0}; }
  RingElt one() const { return elt(1); }

  RingElt add(const RingElt& a, const RingElt& b) const {
    BigInt s = a.value + b.value;
    if (s >= modulus_) s -= modulus_;
    return RingElt{std::move(s)};
  }
  RingElt sub(const RingElt& a, const RingElt& b) const {
    BigInt s = a.value - b.value;
    if (s < 0) s += modulus_;
    return RingElt{std::move(s)};
  }
  RingElt neg(const RingElt& a) const { return a.value == 0 ? a : RingElt{modulus_ - a.value}; }
  RingElt mul(const RingElt& a, const RingElt& b) const {
    BigInt s = a.value * b.value;
    mpz_mod(s.get_mpz_t(), s.get_mpz_t(), modulus_.get_mpz_t());
    return RingElt{std::move(s)};
  }

  bool is_unit(const RingElt& a) const { return mpz_divisible_ui_p(a.value.get_mpz_t(), p_) == 0; }
  bool is_zero(const RingElt& a) const { return a.value == 0; }

  RingElt inverse(const RingElt& a) const {
    BigInt inv;
    if (mpz_invert(inv.get_mpz_t(), a.value.get_mpz_t(), modulus_.get_mpz_t()) == 0)
      throw Error(ErrorCode::NotInvertible, a.value.get_str() + " is not a unit mod " + modulus_.get_str());
    return RingElt{std::move(inv)};
  }

  friend bool operator==(const ResidueRing& a, const ResidueRing& b) {
    return a.p_ == b.p_ && a.n_ == b.n_ && a.theta_ == b.theta_;
  }

 private:
  std::uint64_t p_;
  unsigned n_;
  BigInt modulus_;
  std::optional<RingElt> theta_;
};

/// Newton iteration with doubling precision: p -> p^2 -> p^4 ... capped at p^n.
inline RingElt hensel_lift_root(const MonicIntPolynomial& f, std::uint64_t p, const BigInt& r0, unsigned n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "exponent must be >= 1");
  const BigInt bp(std::to_string(p));
  if (mod_floor(f(r0), bp) != 0)
    throw Error(ErrorCode::NotARoot, r0.get_str() + " is not a root of " + f.to_string() + " mod " + bp.get_str());
  if (mod_floor(f.derivative_at(r0), bp) == 0)
    throw Error(ErrorCode::NonSimpleRoot,
                r0.get_str() + " is a multiple root of " + f.to_string() + " mod " + bp.get_str());

  BigInt r = mod_floor(r0, bp);
  unsigned precision = 1;
  while (precision < n) {
    precision = std::min(2 * precision, n);
    const BigInt mod = big_pow(p, precision);
    BigInt deriv = mod_floor(f.derivative_at(r), mod);
    BigInt inv;
    mpz_invert(inv.get_mpz_t(), deriv.get_mpz_t(), mod.get_mpz_t());
    r = mod_floor(r - f(r) * inv, mod);
  }
  return RingElt{r};
}

/// Element of Q(theta) written as (sum numerators[i] theta^i) / denominator.
class NumberRingElement {
 public:
  NumberRingElement() : numerators_{0}, denominator_(1) {}
  explicit NumberRingElement(std::vector<BigInt> numerators, BigInt denominator = 1)
      : numerators_(std::move(numerators)), denominator_(std::move(denominator)) {
    if (denominator_ == 0) throw Error(ErrorCode::ValidationError, "zero denominator");
    if (numerators_.empty()) numerators_.emplace_back(0);
    normalize();
  }
  NumberRingElement(long integer) : NumberRingElement(std::vector<BigInt>{BigInt(integer)}) {}  // NOLINT

  static NumberRingElement theta() { return NumberRingElement(std::vector<BigInt>{0, 1}); }

  const std::vector<BigInt>& numerators() const { return numerators_; }
  const BigInt& denominator() const { return denominator_; }

  friend NumberRingElement operator+(const NumberRingElement& a, const NumberRingElement& b) {
    std::vector<BigInt> out(std::max(a.numerators_.size(), b.numerators_.size()), BigInt(0));
    for (std::size_t i = 0; i < a.numerators_.size(); ++i) out[i] += a.numerators_[i] * b.denominator_;
    for (std::size_t i = 0; i < b.numerators_.size(); ++i) out[i] += b.numerators_[i] * a.denominator_;
    return NumberRingElement(std::move(out), a.denominator_ * b.denominator_);
  }

  friend NumberRingElement operator*(const NumberRingElement& a, const NumberRingElement& b) {
    std::vector<BigInt> out(a.numerators_.size() + b.numerators_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.numerators_.size(); ++i)
      for (std::size_t j = 0; j < b.numerators_.size(); ++j) out[i + j] += a.numerators_[i] * b.numerators_[j];
    return NumberRingElement(std::move(out), a.denominator_ * b.denominator_);
  }

  friend bool operator==(const NumberRingElement& a, const NumberRingElement& b) {
    return a.numerators_ == b.numerators_ && a.denominator_ == b.denominator_;
  }

 private:
  void normalize() {
    if (denominator_ < 0) {
      denominator_ = -denominator_;
      for (auto& c : numerators_) c = -c;
    }
    while (numerators_.size() > 1 && numerators_.back() == 0) numerators_.pop_back();
    BigInt g = denominator_;
    for (const auto& c : numerators_) g = gcd(g, c);
    if (g != 1) {
      for (auto& c : numerators_) c /= g;
      denominator_ /= g;
    }
  }

  std::vector<BigInt> numerators_;
  BigInt denominator_;
};

inline RingElt reduce_number_elt(const NumberRingElement& elt, const ResidueRing& ring) {
  if (!ring.theta()) throw Error(ErrorCode::InvalidArgument, "residue ring carries no field generator");
  if (mpz_divisible_ui_p(elt.denominator().get_mpz_t(), ring.p()) != 0)
    throw Error(ErrorCode::DenominatorNotInvertible,
                "denominator " + elt.denominator().get_str() + " is divisible by " + std::to_string(ring.p()));
  const BigInt& theta = ring.theta()->value;
  const BigInt& mod = ring.modulus();
  BigInt acc = 0;
  const auto& num = elt.numerators();
  for (auto it = num.rbegin(); it != num.rend(); ++it) {
    acc = acc * theta + *it;
    mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), mod.get_mpz_t());
  }
  return ring.mul(RingElt{acc}, ring.inverse(ring.elt(elt.denominator())));
}

namespace detail {

// Dense polynomials over F_p in ascending order, trimmed (no trailing zeros).
using PolyModP = std::vector<std::uint64_t>;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  base %= p;
  while (e) {
    if (e & 1) r = mulmod(r, base, p);
    base = mulmod(base, base, p);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

inline void trim(PolyModP& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline PolyModP poly_rem(PolyModP a, const PolyModP& b, std::uint64_t p) {
  trim(a);
  const std::uint64_t lead_inv = invmod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t q = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = (a[shift + i] + p - mulmod(q, b[i], p)) % p;
    trim(a);
  }
  return a;
}

inline PolyModP poly_mulmod(const PolyModP& a, const PolyModP& b, const PolyModP& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  PolyModP out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + mulmod(a[i], b[j], p)) % p;
  return poly_rem(std::move(out), m, p);
}

inline PolyModP poly_powmod(PolyModP base, std::uint64_t e, const PolyModP& m, std::uint64_t p) {
  PolyModP result = poly_rem(PolyModP{1}, m, p);
  base = poly_rem(std::move(base), m, p);
  while (e) {
    if (e & 1) result = poly_mulmod(result, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return result;
}

inline PolyModP make_monic(PolyModP f, std::uint64_t p) {
  trim(f);
  if (f.empty()) return f;
  const std::uint64_t inv = invmod(f.back(), p);
  for (auto& c : f) c = mulmod(c, inv, p);
  return f;
}

inline PolyModP poly_gcd(PolyModP a, PolyModP b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PolyModP r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(std::move(a), p);
}

inline PolyModP poly_sub(PolyModP a, const PolyModP& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

inline std::pair<PolyModP, PolyModP> poly_divmod(PolyModP a, const PolyModP& b, std::uint64_t p) {
  trim(a);
  PolyModP q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  const std::uint64_t lead_inv = invmod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t c = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = (a[shift + i] + p - mulmod(c, b[i], p)) % p;
    trim(a);
  }
  return {q, a};
}

// g is monic, squarefree and splits into linear factors over F_p (p odd).
inline void split_roots(const PolyModP& g, std::uint64_t p, std::vector<std::uint64_t>& roots) {
  if (g.size() <= 1) return;
  if (g.size() == 2) {
    roots.push_back((p - g[0]) % p);
    return;
  }
  for (std::uint64_t a = 0; a < p; ++a) {
    PolyModP shifted{a % p, 1};
    PolyModP h = poly_powmod(shifted, (p - 1) / 2, g, p);
    h = poly_sub(std::move(h), PolyModP{1}, p);
    PolyModP d = poly_gcd(g, h, p);
    if (d.size() > 1 && d.size() < g.size()) {
      split_roots(d, p, roots);
      split_roots(poly_divmod(g, d, p).first, p, roots);
      return;
    }
  }
}

// Distinct roots of f mod p via gcd(f, x^p - x) followed by equal-degree splitting.
inline std::vector<std::uint64_t> roots_mod_p(const MonicIntPolynomial& f, std::uint64_t p) {
  PolyModP fp;
  const BigInt bp(std::to_string(p));
  for (const auto& c : f.coeffs()) fp.push_back(mod_floor(c, bp).get_ui());
  std::vector<std::uint64_t> roots;
  if (p == 2) {
    // F_2 has only two candidates; evaluate directly.
    for (std::uint64_t r = 0; r < 2; ++r) {
      std::uint64_t acc = 0;
      for (auto it = fp.rbegin(); it != fp.rend(); ++it) acc = (acc * r + *it) % 2;
      if (acc == 0) roots.push_back(r);
    }
    return roots;
  }
  PolyModP xp = poly_powmod(PolyModP{0, 1}, p, fp, p);
  PolyModP g = poly_gcd(fp, poly_sub(std::move(xp), PolyModP{0, 1}, p), p);
  split_roots(g, p, roots);
  std::sort(roots.begin(), roots.end());
  return roots;
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<bool> composite(bound + 1, false);
  std::vector<std::uint64_t> primes;
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return primes;
}

}  // namespace detail

/// All (p, r) with p <= bound prime and r a simple root of f mod p, sorted.
inline std::vector<DegreeOnePrime> degree_one_primes(const MonicIntPolynomial& f, std::uint64_t bound) {
  if (bound < 2) throw Error(ErrorCode::InvalidArgument, "prime bound must be >= 2");
  std::vector<DegreeOnePrime> out;
  for (std::uint64_t p : detail::primes_up_to(bound)) {
    const BigInt bp(std::to_string(p));
    for (std::uint64_t r : detail::roots_mod_p(f, p)) {
      if (mod_floor(f.derivative_at(BigInt(std::to_string(r))), bp) == 0) continue;
      out.push_back({p, r});
    }
  }
  return out;
}

}  // namespace torsion_tower
