#include "xishift/characters.hpp"

#include <numeric>
#include <sstream>

namespace xishift {

namespace detail {

// One cyclic factor of (Z/qZ)^x. For odd p^e the factor is generated by a
// primitive root; 2^e contributes <-1> (e >= 2) and <5> (e >= 3).
struct CyclicFactor {
  enum class Kind { odd_prime_power, two_sign, two_five };
  Kind kind;
  std::int64_t prime;
  int power;
  std::int64_t prime_power;
  std::int64_t order;
  // dlog[a mod prime_power] = discrete log in this factor, -1 for non-units.
  std::shared_ptr<std::vector<std::int32_t>> dlog;
};

struct CharacterGroup {
  std::int64_t modulus = 1;
  std::int64_t exponent = 1;  // lcm of factor orders
  std::vector<CyclicFactor> factors;
};

}  // namespace detail

namespace {

using detail::CharacterGroup;
using detail::CyclicFactor;

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::int64_t primitive_root_mod_p(std::int64_t p) {
  if (p == 2) return 1;
  const auto fac = factorize(p - 1);
  for (std::int64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (const auto& [r, e] : fac) {
      if (powmod(g, (p - 1) / r, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw DomainError("no primitive root found");
}

std::shared_ptr<const CharacterGroup> build_group(std::int64_t q) {
  if (q < 1 || q > 1'000'000) throw DomainError("modulus must lie in [1, 10^6], got " + std::to_string(q));
  auto group = std::make_shared<CharacterGroup>();
  group->modulus = q;
  for (const auto& [p, e] : factorize(q)) {
    std::int64_t pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    if (p == 2) {
      if (e == 1) continue;  // (Z/2Z)^x is trivial
      auto sign = std::make_shared<std::vector<std::int32_t>>(pe, -1);
      auto five = std::make_shared<std::vector<std::int32_t>>(pe, -1);
      const std::int64_t five_order = e >= 3 ? pe / 4 : 1;
      std::int64_t x = 1;
      for (std::int64_t k = 0; k < five_order; ++k) {
        (*sign)[x] = 0;
        (*five)[x] = static_cast<std::int32_t>(k);
        (*sign)[pe - x] = 1;
        (*five)[pe - x] = static_cast<std::int32_t>(k);
        x = x * 5 % pe;
      }
      group->factors.push_back({CyclicFactor::Kind::two_sign, 2, e, pe, 2, sign});
      if (e >= 3) group->factors.push_back({CyclicFactor::Kind::two_five, 2, e, pe, five_order, five});
    } else {
      std::int64_t g = primitive_root_mod_p(p);
      if (e >= 2 && powmod(g, p - 1, p * p) == 1) g += p;
      const std::int64_t order = pe / p * (p - 1);
      auto table = std::make_shared<std::vector<std::int32_t>>(pe, -1);
      std::int64_t x = 1;
      for (std::int64_t k = 0; k < order; ++k) {
        (*table)[x] = static_cast<std::int32_t>(k);
        x = mulmod(x, g, pe);
      }
      group->factors.push_back({CyclicFactor::Kind::odd_prime_power, p, e, pe, order, table});
    }
  }
  for (const auto& f : group->factors) group->exponent = std::lcm(group->exponent, f.order);
  return group;
}

std::int64_t order_of(std::int64_t j, std::int64_t n) { return n / std::gcd(j, n); }

std::int64_t compute_conductor(const CharacterGroup& g, const std::vector<std::int64_t>& exps) {
  std::int64_t cond = 1;
  std::int64_t two_sign = 0, two_five = 0, two_five_order = 1;
  bool has_two = false;
  for (std::size_t i = 0; i < g.factors.size(); ++i) {
    const auto& f = g.factors[i];
    const std::int64_t j = exps[i];
    switch (f.kind) {
      case CyclicFactor::Kind::odd_prime_power: {
        if (j == 0) break;
        // order = d * p^r with d | p-1; conductor exponent is r + 1
        std::int64_t ord = order_of(j, f.order);
        std::int64_t local = f.prime;
        while (ord % f.prime == 0) {
          ord /= f.prime;
          local *= f.prime;
        }
        cond *= local;
        break;
      }
      case CyclicFactor::Kind::two_sign:
        has_two = true;
        two_sign = j;
        break;
      case CyclicFactor::Kind::two_five:
        two_five = j;
        two_five_order = f.order;
        break;
    }
  }
  if (has_two) {
    if (two_five != 0) {
      // five-part of order 2^r needs conductor 2^(r+2)
      std::int64_t ord = order_of(two_five, two_five_order);
      std::int64_t local = 4;
      while (ord > 1) {
        ord /= 2;
        local *= 2;
      }
      cond *= local;
    } else if (two_sign != 0) {
      cond *= 4;
    }
  }
  return cond;
}

}  // namespace

DirichletCharacter::DirichletCharacter(std::shared_ptr<const detail::CharacterGroup> group,
                                       std::vector<std::int64_t> exponents)
    : group_(std::move(group)), exponents_(std::move(exponents)) {
  label_ = 0;
  for (std::size_t i = 0; i < exponents_.size(); ++i) label_ = label_ * group_->factors[i].order + exponents_[i];
  conductor_ = compute_conductor(*group_, exponents_);
  const std::int64_t q = group_->modulus;
  const std::int64_t e = value_exponent(q == 1 ? 0 : q - 1);
  parity_ = (2 * e == group_->exponent) ? 1 : 0;
}

std::int64_t DirichletCharacter::modulus() const { return group_->modulus; }
std::int64_t DirichletCharacter::order() const { return group_->exponent; }

std::int64_t DirichletCharacter::value_exponent(std::int64_t a) const {
  const std::int64_t q = group_->modulus;
  a %= q;
  if (a < 0) a += q;
  if (q == 1) return 0;
  if (std::gcd(a, q) != 1) return -1;
  const std::int64_t big = group_->exponent;
  std::int64_t e = 0;
  for (std::size_t i = 0; i < group_->factors.size(); ++i) {
    const auto& f = group_->factors[i];
    const std::int64_t log = (*f.dlog)[a % f.prime_power];
    e = (e + mulmod(exponents_[i] * (big / f.order) % big, log, big)) % big;
  }
  return e;
}

cplx DirichletCharacter::value(std::int64_t a) const {
  const std::int64_t e = value_exponent(a);
  if (e < 0) return {0.0, 0.0};
  const std::int64_t n = group_->exponent;
  // quarter turns are returned exactly
  if (4 * e % n == 0) {
    switch (4 * e / n) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double ang = 2 * kPi * static_cast<double>(e) / static_cast<double>(n);
  return {std::cos(ang), std::sin(ang)};
}

std::vector<cplx> DirichletCharacter::values() const {
  std::vector<cplx> out(static_cast<std::size_t>(modulus()));
  for (std::int64_t a = 0; a < modulus(); ++a) out[a] = value(a);
  return out;
}

bool DirichletCharacter::is_principal() const {
  for (auto j : exponents_)
    if (j != 0) return false;
  return true;
}

bool DirichletCharacter::is_real() const {
  for (std::size_t i = 0; i < exponents_.size(); ++i)
    if ((2 * exponents_[i]) % group_->factors[i].order != 0) return false;
  return true;
}

DirichletCharacter DirichletCharacter::conjugate() const {
  std::vector<std::int64_t> neg(exponents_.size());
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    const std::int64_t n = group_->factors[i].order;
    neg[i] = (n - exponents_[i]) % n;
  }
  return DirichletCharacter(group_, std::move(neg));
}

std::string DirichletCharacter::spec() const { return std::to_string(modulus()) + "." + std::to_string(label_); }

nlohmann::json DirichletCharacter::to_json() const {
  std::vector<std::int64_t> table(static_cast<std::size_t>(modulus()));
  for (std::int64_t a = 0; a < modulus(); ++a) table[a] = value_exponent(a);
  return {{"modulus", modulus()}, {"label", label_},         {"conductor", conductor_},
          {"parity", parity_},    {"order", order()},        {"primitive", is_primitive()},
          {"value_exponents", table}};
}

std::vector<DirichletCharacter> enumerate_characters(std::int64_t q) {
  auto group = build_group(q);
  std::vector<DirichletCharacter> out;
  std::vector<std::int64_t> exps(group->factors.size(), 0);
  while (true) {
    out.push_back(DirichletCharacter(group, exps));
    // odometer, last factor fastest: labels come out in increasing order
    std::size_t i = exps.size();
    while (i > 0) {
      --i;
      if (++exps[i] < group->factors[i].order) break;
      exps[i] = 0;
      if (i == 0) return out;
    }
    if (exps.empty()) return out;
  }
}

DirichletCharacter character_from_label(std::int64_t q, std::int64_t label) {
  auto group = build_group(q);
  std::int64_t count = 1;
  for (const auto& f : group->factors) count *= f.order;
  if (label < 0 || label >= count)
    throw DomainError("label " + std::to_string(label) + " out of range for modulus " + std::to_string(q));
  std::vector<std::int64_t> exps(group->factors.size());
  for (std::size_t i = exps.size(); i-- > 0;) {
    exps[i] = label % group->factors[i].order;
    label /= group->factors[i].order;
  }
  return DirichletCharacter(group, std::move(exps));
}

DirichletCharacter parse_character(const std::string& spec) {
  const auto dot = spec.find('.');
  if (dot == std::string::npos) throw DomainError("character spec must look like q.label: " + spec);
  try {
    std::size_t used1 = 0, used2 = 0;
    const std::string qs = spec.substr(0, dot), ls = spec.substr(dot + 1);
    const long long q = std::stoll(qs, &used1);
    const long long label = std::stoll(ls, &used2);
    if (used1 != qs.size() || used2 != ls.size()) throw std::invalid_argument("trailing characters");
    return character_from_label(q, label);
  } catch (const std::logic_error&) {
    throw DomainError("character spec must look like q.label: " + spec);
  }
}

std::int64_t conductor(const DirichletCharacter& chi) { return chi.conductor(); }

ComplexValue gauss_sum(const DirichletCharacter& chi) {
  const std::int64_t q = chi.modulus();
  cplx sum{0.0, 0.0};
  double mag = 0.0;
  for (std::int64_t a = 1; a <= q; ++a) {
    const cplx v = chi.value(a);
    if (v == cplx{0.0, 0.0}) continue;
    const double ang = 2 * kPi * static_cast<double>(a % q) / static_cast<double>(q);
    sum += v * cplx{std::cos(ang), std::sin(ang)};
    mag += 1.0;
  }
  return {sum, 8 * kEps * mag + kEps * std::abs(sum)};
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t r = n;
  for (const auto& [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

}  // namespace xishift
