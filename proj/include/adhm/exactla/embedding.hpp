#pragma once

// Field homomorphisms: GF(p^k) -> GF(p^(k e)) and reduction Q -> GF(p).

#include <optional>
#include <vector>

#include "adhm/exactla/matrix.hpp"

namespace adhm {

/// Embedding of a finite field into an extension of it, as a lookup table.
class FieldEmbedding {
 public:
  FieldEmbedding(GaloisField from, GaloisField to) : from_(from), to_(to) {
    require(from.characteristic() == to.characteristic() && to.degree() % from.degree() == 0,
            ErrorCode::FieldMismatch, "target is not an extension of the source field");
    // Image of the generator x: a root of the source modulus in the target.
    const auto& mod = from.modulus();
    std::optional<std::uint32_t> theta;
    for (std::uint32_t t = 0; t < to.order() && !theta; ++t) {
      std::uint32_t acc = 0;
      for (std::size_t i = mod.size(); i-- > 0;) acc = to.add(to.mul(acc, t), to.from_int(mod[i]));
      if (acc == 0) theta = t;
    }
    if (!theta) raise(ErrorCode::InternalError, "no root of the modulus in the extension");
    table_.resize(from.order());
    for (std::uint32_t a = 0; a < from.order(); ++a) {
      const auto c = from.coefficients(a);
      std::uint32_t acc = 0;
      for (std::size_t i = c.size(); i-- > 0;) acc = to.add(to.mul(acc, *theta), to.from_int(c[i]));
      table_[a] = acc;
    }
  }

  const GaloisField& source() const { return from_; }
  const GaloisField& target() const { return to_; }

  std::uint32_t operator()(std::uint32_t a) const { return table_[a]; }

  Matrix<GaloisField> operator()(const Matrix<GaloisField>& m) const {
    require(m.field() == from_, ErrorCode::FieldMismatch, "matrix not over the embedding's source");
    return m.map(to_, [this](std::uint32_t a) { return table_[a]; });
  }

 private:
  GaloisField from_, to_;
  std::vector<std::uint32_t> table_;
};

/// Image of a rational in GF(p), or nullopt when p divides the denominator.
inline std::optional<std::uint32_t> reduce_mod_p(const mpq_class& a, const GaloisField& fp) {
  require(fp.degree() == 1, ErrorCode::UnsupportedField, "reduction targets a prime field");
  const unsigned long p = fp.characteristic();
  const unsigned long den = mpz_fdiv_ui(a.get_den().get_mpz_t(), p);
  if (den == 0) return std::nullopt;
  const unsigned long num = mpz_fdiv_ui(a.get_num().get_mpz_t(), p);
  return fp.mul(static_cast<std::uint32_t>(num), fp.inv(static_cast<std::uint32_t>(den)));
}

inline std::optional<Matrix<GaloisField>> reduce_mod_p(const Matrix<Rationals>& m, const GaloisField& fp) {
  Matrix<GaloisField> out(fp, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto v = reduce_mod_p(m(i, j), fp);
      if (!v) return std::nullopt;
      out(i, j) = *v;
    }
  return out;
}

}  // namespace adhm
