// Dirichlet characters mod q: construction through the CRT decomposition of
// (Z/qZ)^x, conductor and parity classification, Gauss sums.
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "xishift/numeric.hpp"

namespace xishift {

namespace detail {
struct CharacterGroup;
}

/// A Dirichlet character stored exactly: chi(a) = exp(2 pi i * e(a) / order)
/// with integer e(a), or 0 when gcd(a, q) > 1.
class DirichletCharacter {
 public:
  [[nodiscard]] std::int64_t modulus() const;
  [[nodiscard]] std::int64_t label() const { return label_; }
  /// Exponent per cyclic factor of the unit group, in factor order.
  [[nodiscard]] const std::vector<std::int64_t>& exponents() const { return exponents_; }
  /// Common denominator of all value exponents (exponent of the unit group).
  [[nodiscard]] std::int64_t order() const;

  /// Exponent of chi(a) over order(), or -1 when a is not a unit mod q.
  [[nodiscard]] std::int64_t value_exponent(std::int64_t a) const;
  [[nodiscard]] cplx value(std::int64_t a) const;
  /// Table of chi(0), ..., chi(q-1). For q = 1 the single entry is 1.
  [[nodiscard]] std::vector<cplx> values() const;

  /// k in chi(-1) = (-1)^k.
  [[nodiscard]] int parity() const { return parity_; }
  [[nodiscard]] std::int64_t conductor() const { return conductor_; }
  [[nodiscard]] bool is_primitive() const { return conductor_ == modulus(); }
  [[nodiscard]] bool is_principal() const;
  /// True when every value is real (chi equals its conjugate).
  [[nodiscard]] bool is_real() const;

  [[nodiscard]] DirichletCharacter conjugate() const;
  /// "q.label", as accepted by parse_character().
  [[nodiscard]] std::string spec() const;
  [[nodiscard]] nlohmann::json to_json() const;

 private:
  friend std::vector<DirichletCharacter> enumerate_characters(std::int64_t q);
  friend DirichletCharacter character_from_label(std::int64_t q, std::int64_t label);

  DirichletCharacter(std::shared_ptr<const detail::CharacterGroup> group, std::vector<std::int64_t> exponents);

  std::shared_ptr<const detail::CharacterGroup> group_;
  std::vector<std::int64_t> exponents_;
  std::int64_t label_ = 0;
  std::int64_t conductor_ = 1;
  int parity_ = 0;
};

/// All phi(q) characters mod q, ordered by label (lexicographic in the
/// exponent tuple). Throws DomainError unless 1 <= q <= 10^6.
std::vector<DirichletCharacter> enumerate_characters(std::int64_t q);

DirichletCharacter character_from_label(std::int64_t q, std::int64_t label);

/// Parses "q.label" (e.g. "4.1"). Throws DomainError on malformed input.
DirichletCharacter parse_character(const std::string& spec);

/// Smallest f | q through which chi factors.
std::int64_t conductor(const DirichletCharacter& chi);

/// tau(chi) = sum_{a=1}^{q} chi(a) exp(2 pi i a / q), by direct summation.
ComplexValue gauss_sum(const DirichletCharacter& chi);

std::int64_t euler_phi(std::int64_t n);

}  // namespace xishift
