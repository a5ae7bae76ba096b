#pragma once

// Exact coefficient fields: arbitrary-precision rationals and GF(p^k).
//
// Both field types expose the same small interface (zero/one/add/sub/neg/mul/
// inv/is_zero/eq/from_int/to_string/parse) over a plain element type, so the
// matrix and subspace code is written once as templates. GaloisField is a
// pointer-sized handle onto interned, immutable tables; copies are free and
// two handles compare equal iff they denote the same field.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <type_traits>
#include <vector>

#include "adhm/error.hpp"

namespace adhm {

/// Upper bound on p^k for finite fields (tables are dense in q).
inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 20;

// ---------------------------------------------------------------------------
// Polynomials over the prime field F_p, coefficient vectors low degree first.
// ---------------------------------------------------------------------------
namespace poly {

using Coeffs = std::vector<std::uint32_t>;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // a^(p-2) mod p
  std::uint64_t result = 1, base = a % p;
  std::uint64_t e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

/// Remainder of a modulo b over F_p; b must be nonzero after trimming.
inline Coeffs mod(Coeffs a, Coeffs b, std::uint32_t p) {
  trim(a);
  trim(b);
  const std::uint32_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t factor = std::uint64_t{a.back()} * lead_inv % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      const std::uint64_t sub = factor * b[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

/// Index of a polynomial of degree < k in base-p positional encoding.
inline std::uint64_t encode(const Coeffs& c, std::uint32_t p) {
  std::uint64_t v = 0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * p + c[i];
  return v;
}

inline Coeffs decode(std::uint64_t v, std::uint32_t p, std::uint32_t k) {
  Coeffs c(k, 0);
  for (std::uint32_t i = 0; i < k; ++i) {
    c[i] = static_cast<std::uint32_t>(v % p);
    v /= p;
  }
  return c;
}

/// Trial division by every monic polynomial of degree 1..deg/2.
inline bool is_irreducible(const Coeffs& f, std::uint32_t p) {
  Coeffs g = f;
  trim(g);
  if (g.size() < 2) return false;
  const std::size_t deg = g.size() - 1;
  if (deg == 1) return true;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Coeffs h = decode(idx, p, static_cast<std::uint32_t>(d));
      h.push_back(1);
      if (mod(g, h, p).empty()) return false;
    }
  }
  return true;
}

/// Smallest monic irreducible of degree k, ordered by the base-p index of its
/// lower coefficients.
inline Coeffs smallest_irreducible(std::uint32_t p, std::uint32_t k) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < k; ++i) count *= p;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Coeffs f = decode(idx, p, k);
    f.push_back(1);
    if (is_irreducible(f, p)) return f;
  }
  raise(ErrorCode::InternalError, "no irreducible polynomial found");
}

}  // namespace poly

// ---------------------------------------------------------------------------
// FieldSpec
// ---------------------------------------------------------------------------

struct FieldSpec {
  enum class Kind { Rationals, FiniteField };

  Kind kind = Kind::Rationals;
  std::uint32_t p = 0;
  std::uint32_t k = 0;
  poly::Coeffs modulus;  // monic, degree k; empty for Q

  static FieldSpec rationals() { return {}; }

  static FieldSpec finite(std::uint32_t p, std::uint32_t k = 1) {
    require(poly::is_prime(p), ErrorCode::InvalidField, "characteristic must be prime");
    require(k >= 1, ErrorCode::InvalidField, "extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
      q *= p;
      require(q <= kMaxFieldOrder, ErrorCode::InvalidField, "field order exceeds 2^20");
    }
    FieldSpec s;
    s.kind = Kind::FiniteField;
    s.p = p;
    s.k = k;
    s.modulus = poly::smallest_irreducible(p, k);
    return s;
  }

  static FieldSpec finite(std::uint32_t p, const poly::Coeffs& modulus) {
    require(poly::is_prime(p), ErrorCode::InvalidField, "characteristic must be prime");
    poly::Coeffs m = modulus;
    poly::trim(m);
    require(m.size() >= 2 && m.back() == 1, ErrorCode::InvalidField, "modulus must be monic of degree >= 1");
    for (auto c : m) require(c < p, ErrorCode::InvalidField, "modulus coefficient out of range");
    require(poly::is_irreducible(m, p), ErrorCode::InvalidField, "modulus is reducible");
    FieldSpec s;
    s.kind = Kind::FiniteField;
    s.p = p;
    s.k = static_cast<std::uint32_t>(m.size() - 1);
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < s.k; ++i) {
      q *= p;
      require(q <= kMaxFieldOrder, ErrorCode::InvalidField, "field order exceeds 2^20");
    }
    s.modulus = std::move(m);
    return s;
  }

  bool is_finite() const { return kind == Kind::FiniteField; }

  std::uint64_t order() const {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) q *= p;
    return q;
  }

  /// "Q", "GF2", "GF2^3".
  std::string name() const {
    if (!is_finite()) return "Q";
    std::string s = "GF" + std::to_string(p);
    if (k > 1) s += "^" + std::to_string(k);
    return s;
  }

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.kind == b.kind && a.p == b.p && a.k == b.k && a.modulus == b.modulus;
  }
};

/// Parses "Q", "GF<p>", "GF<p>^<k>" (also "GF(p)" / "GF(p^k)").
inline FieldSpec parse_field_name(std::string s) {
  if (s == "Q" || s == "QQ") return FieldSpec::rationals();
  if (s.rfind("GF", 0) != 0) raise(ErrorCode::MalformedInput, "unknown field '" + s + "'");
  s = s.substr(2);
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == '(' || c == ')'; }), s.end());
  std::uint32_t p = 0, k = 1;
  const auto caret = s.find('^');
  try {
    std::size_t used = 0;
    p = static_cast<std::uint32_t>(std::stoul(s.substr(0, caret), &used));
    if (used != (caret == std::string::npos ? s.size() : caret)) throw std::invalid_argument("p");
    if (caret != std::string::npos) {
      k = static_cast<std::uint32_t>(std::stoul(s.substr(caret + 1), &used));
      if (used != s.size() - caret - 1) throw std::invalid_argument("k");
    }
  } catch (const std::logic_error&) {
    raise(ErrorCode::MalformedInput, "cannot parse field '" + s + "'");
  }
  return FieldSpec::finite(p, k);
}

// ---------------------------------------------------------------------------
// Rationals
// ---------------------------------------------------------------------------

class Rationals {
 public:
  using Elem = mpq_class;
  static constexpr bool is_finite = false;

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const {
    if (a == 0) raise(ErrorCode::DivisionByZero, "inverse of zero");
    return 1 / a;
  }
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  bool is_one(const Elem& a) const { return a == 1; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  Elem from_int(long long v) const { return Elem(static_cast<long>(v)); }

  std::string to_string(const Elem& a) const { return a.get_str(); }

  Elem parse(const std::string& text) const {
    Elem v;
    const std::string t = strip(text);
    if (t.empty() || v.set_str(t, 10) != 0) raise(ErrorCode::MalformedInput, "bad rational '" + text + "'");
    if (v.get_den() == 0) raise(ErrorCode::MalformedInput, "zero denominator in '" + text + "'");
    v.canonicalize();
    return v;
  }

  FieldSpec spec() const { return FieldSpec::rationals(); }

  friend bool operator==(const Rationals&, const Rationals&) { return true; }

  /// Small random rational, used by property tests.
  template <class Rng>
  Elem random(Rng& rng) const {
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
    Elem v(num(rng), den(rng));
    v.canonicalize();
    return v;
  }

 private:
  static std::string strip(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
  }
};

// ---------------------------------------------------------------------------
// GaloisField
// ---------------------------------------------------------------------------

namespace detail {

struct GFTables {
  std::uint32_t p = 0, k = 0, q = 0;
  poly::Coeffs modulus;
  std::vector<std::uint32_t> exp_table;  // k > 1: exp_table[i] = g^i, size q-1
  std::vector<std::uint32_t> log_table;  // k > 1
  std::vector<std::uint32_t> inv_table;
  std::vector<std::uint32_t> neg_table;
  std::vector<std::uint32_t> add_table;  // q*q, only for small odd-characteristic extensions

  std::uint32_t add_digits(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t r = 0, place = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
      r += ((a % p + b % p) % p) * place;
      a /= p;
      b /= p;
      place *= p;
    }
    return r;
  }

  // Slow polynomial product modulo the modulus; table construction only.
  std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const {
    const poly::Coeffs ca = poly::decode(a, p, k), cb = poly::decode(b, p, k);
    poly::Coeffs prod(2 * k, 0);
    for (std::uint32_t i = 0; i < k; ++i)
      for (std::uint32_t j = 0; j < k; ++j)
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{ca[i]} * cb[j]) % p);
    poly::Coeffs r = poly::mod(prod, modulus, p);
    r.resize(k, 0);
    return static_cast<std::uint32_t>(poly::encode(r, p));
  }
};

inline std::shared_ptr<const GFTables> build_tables(std::uint32_t p, const poly::Coeffs& modulus) {
  auto t = std::make_shared<GFTables>();
  t->p = p;
  t->k = static_cast<std::uint32_t>(modulus.size() - 1);
  t->modulus = modulus;
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < t->k; ++i) q *= p;
  t->q = static_cast<std::uint32_t>(q);

  t->neg_table.resize(q);
  for (std::uint32_t a = 0; a < q; ++a) {
    std::uint32_t r = 0, place = 1, x = a;
    for (std::uint32_t i = 0; i < t->k; ++i) {
      r += ((p - x % p) % p) * place;
      x /= p;
      place *= p;
    }
    t->neg_table[a] = r;
  }

  t->inv_table.assign(q, 0);
  if (t->k == 1) {
    for (std::uint32_t a = 1; a < q; ++a) t->inv_table[a] = poly::inv_mod(a, p);
  } else {
    // Find a generator of the multiplicative group.
    const std::uint32_t order = t->q - 1;
    for (std::uint32_t g = 2; g < q; ++g) {
      std::vector<std::uint32_t> powers;
      powers.reserve(order);
      std::uint32_t x = 1;
      bool primitive = true;
      for (std::uint32_t i = 0; i < order; ++i) {
        if (i > 0 && x == 1) {
          primitive = false;
          break;
        }
        powers.push_back(x);
        x = t->mul_slow(x, g);
      }
      if (!primitive || x != 1) continue;
      t->exp_table = std::move(powers);
      t->log_table.assign(q, 0);
      for (std::uint32_t i = 0; i < order; ++i) t->log_table[t->exp_table[i]] = i;
      break;
    }
    if (t->exp_table.empty()) raise(ErrorCode::InternalError, "no primitive element");
    for (std::uint32_t a = 1; a < q; ++a) t->inv_table[a] = t->exp_table[(order - t->log_table[a]) % order];
    if (p != 2 && q <= 256) {
      t->add_table.resize(std::size_t{q} * q);
      for (std::uint32_t a = 0; a < q; ++a)
        for (std::uint32_t b = 0; b < q; ++b) t->add_table[std::size_t{a} * q + b] = t->add_digits(a, b);
    }
  }
  return t;
}

/// Tables are interned for the lifetime of the process.
inline const GFTables* intern_tables(std::uint32_t p, const poly::Coeffs& modulus) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, poly::Coeffs>, std::shared_ptr<const GFTables>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, modulus);
  auto it = registry.find(key);
  if (it == registry.end()) it = registry.emplace(key, build_tables(p, modulus)).first;
  return it->second.get();
}

}  // namespace detail

class GaloisField {
 public:
  using Elem = std::uint32_t;
  static constexpr bool is_finite = true;

  /// GF(2); lets matrices and containers default-construct.
  GaloisField() {
    static const detail::GFTables* gf2 = detail::intern_tables(2, {0, 1});
    t_ = gf2;
  }
  explicit GaloisField(const FieldSpec& spec) {
    require(spec.is_finite(), ErrorCode::UnsupportedField, "GaloisField needs a finite field spec");
    t_ = detail::intern_tables(spec.p, spec.modulus);
  }
  explicit GaloisField(std::uint32_t p, std::uint32_t k = 1) : GaloisField(FieldSpec::finite(p, k)) {}

  std::uint32_t characteristic() const { return t_->p; }
  std::uint32_t degree() const { return t_->k; }
  std::uint32_t order() const { return t_->q; }
  const poly::Coeffs& modulus() const { return t_->modulus; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }

  Elem add(Elem a, Elem b) const {
    if (t_->k == 1) {
      const Elem s = a + b;
      return s >= t_->p ? s - t_->p : s;
    }
    if (t_->p == 2) return a ^ b;
    if (!t_->add_table.empty()) return t_->add_table[std::size_t{a} * t_->q + b];
    return t_->add_digits(a, b);
  }
  Elem neg(Elem a) const { return t_->k == 1 ? (a == 0 ? 0 : t_->p - a) : t_->neg_table[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (t_->k == 1) return static_cast<Elem>(std::uint64_t{a} * b % t_->p);
    if (a == 0 || b == 0) return 0;
    const std::uint32_t order = t_->q - 1;
    std::uint32_t e = t_->log_table[a] + t_->log_table[b];
    if (e >= order) e -= order;
    return t_->exp_table[e];
  }
  Elem inv(Elem a) const {
    if (a == 0) raise(ErrorCode::DivisionByZero, "inverse of zero");
    return t_->inv_table[a];
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  bool is_zero(Elem a) const { return a == 0; }
  bool is_one(Elem a) const { return a == 1; }
  bool eq(Elem a, Elem b) const { return a == b; }

  Elem from_int(long long v) const {
    const long long p = t_->p;
    long long r = v % p;
    if (r < 0) r += p;
    return static_cast<Elem>(r);
  }

  /// Element with the given base-p coefficient list (low degree first).
  Elem from_coefficients(const poly::Coeffs& c) const {
    require(c.size() <= t_->k, ErrorCode::MalformedInput, "too many coefficients for GF element");
    for (auto x : c) require(x < t_->p, ErrorCode::MalformedInput, "coefficient out of range");
    return static_cast<Elem>(poly::encode(c, t_->p));
  }
  poly::Coeffs coefficients(Elem a) const { return poly::decode(a, t_->p, t_->k); }

  /// Prime-field elements print as "c"; extension elements as "[c0,c1,...]".
  std::string to_string(Elem a) const {
    if (t_->k == 1) return std::to_string(a);
    const auto c = coefficients(a);
    std::string s = "[";
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(c[i]);
    }
    return s + "]";
  }

  Elem parse(const std::string& text) const {
    std::string t;
    for (char ch : text)
      if (ch != ' ' && ch != '\t') t += ch;
    if (t.empty()) raise(ErrorCode::MalformedInput, "empty GF element");
    if (t.front() == '[') {
      if (t.back() != ']') raise(ErrorCode::MalformedInput, "bad GF element '" + text + "'");
      poly::Coeffs c;
      std::stringstream ss(t.substr(1, t.size() - 2));
      std::string item;
      while (std::getline(ss, item, ',')) c.push_back(parse_digit(item, text));
      return from_coefficients(c);
    }
    // A plain (possibly negative) integer denotes its image in the prime field.
    try {
      std::size_t used = 0;
      const long long v = std::stoll(t, &used);
      if (used != t.size()) throw std::invalid_argument("trailing");
      return from_int(v);
    } catch (const std::logic_error&) {
      raise(ErrorCode::MalformedInput, "bad GF element '" + text + "'");
    }
  }

  FieldSpec spec() const {
    FieldSpec s;
    s.kind = FieldSpec::Kind::FiniteField;
    s.p = t_->p;
    s.k = t_->k;
    s.modulus = t_->modulus;
    return s;
  }

  friend bool operator==(const GaloisField& a, const GaloisField& b) { return a.t_ == b.t_; }

  template <class Rng>
  Elem random(Rng& rng) const {
    std::uniform_int_distribution<std::uint32_t> d(0, t_->q - 1);
    return d(rng);
  }

 private:
  std::uint32_t parse_digit(const std::string& item, const std::string& text) const {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size() || v < 0 || v >= static_cast<long long>(t_->p)) throw std::invalid_argument("digit");
      return static_cast<std::uint32_t>(v);
    } catch (const std::logic_error&) {
      raise(ErrorCode::MalformedInput, "bad GF coefficient in '" + text + "'");
    }
  }

  const detail::GFTables* t_;
};

template <class F>
inline constexpr bool is_finite_field_v = F::is_finite;

template <class F>
F make_field(const FieldSpec& spec);

template <>
inline Rationals make_field<Rationals>(const FieldSpec& spec) {
  require(!spec.is_finite(), ErrorCode::FieldMismatch, "expected Q");
  return Rationals{};
}

template <>
inline GaloisField make_field<GaloisField>(const FieldSpec& spec) {
  return GaloisField(spec);
}

// ---------------------------------------------------------------------------
// Scalar: an element bound to its field, for the public scalar API.
// ---------------------------------------------------------------------------

enum class ScalarOp { Add, Mul, Inv, Neg };

template <class F>
class Scalar {
 public:
  using Elem = typename F::Elem;

  Scalar(F field, Elem value) : field_(field), value_(std::move(value)) {}

  static Scalar parse(F field, const std::string& text) { return Scalar(field, field.parse(text)); }

  const F& field() const { return field_; }
  const Elem& value() const { return value_; }
  std::string str() const { return field_.to_string(value_); }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    check(a, b);
    return Scalar(a.field_, a.field_.add(a.value_, b.value_));
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    check(a, b);
    return Scalar(a.field_, a.field_.sub(a.value_, b.value_));
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    check(a, b);
    return Scalar(a.field_, a.field_.mul(a.value_, b.value_));
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    check(a, b);
    return Scalar(a.field_, a.field_.div(a.value_, b.value_));
  }
  Scalar operator-() const { return Scalar(field_, field_.neg(value_)); }
  Scalar inverse() const { return Scalar(field_, field_.inv(value_)); }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.field_ == b.field_ && a.field_.eq(a.value_, b.value_);
  }

 private:
  static void check(const Scalar& a, const Scalar& b) {
    if (!(a.field_ == b.field_)) raise(ErrorCode::FieldMismatch, "scalars from different fields");
  }

  F field_;
  Elem value_;
};

/// Binary/unary field operation dispatch; unary ops ignore b.
template <class F>
Scalar<F> scalar_op(const Scalar<F>& a, const Scalar<F>& b, ScalarOp op) {
  if (!(a.field() == b.field())) raise(ErrorCode::FieldMismatch, "scalars from different fields");
  switch (op) {
    case ScalarOp::Add: return a + b;
    case ScalarOp::Mul: return a * b;
    case ScalarOp::Inv: return a.inverse();
    case ScalarOp::Neg: return -a;
  }
  raise(ErrorCode::InternalError, "unknown scalar op");
}

}  // namespace adhm
