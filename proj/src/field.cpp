#include "invrel/field.hpp"

#include <cctype>
#include <charconv>

namespace invrel {

bool is_prime_number(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::prime(std::uint32_t p) {
  if (p < 3 || !is_prime_number(p) || p >= (1u << 31))
    throw Error("field modulus must be an odd prime below 2^31, got " + std::to_string(p));
  FieldSpec s;
  s.kind = Kind::PrimeField;
  s.p = p;
  return s;
}

FieldSpec FieldSpec::parse(std::string_view text) {
  if (text == "q" || text == "Q") return rationals();
  std::string_view rest;
  if (text.substr(0, 3) == "gf:" || text.substr(0, 3) == "GF:")
    rest = text.substr(3);
  else if (text.substr(0, 2) == "gf" || text.substr(0, 2) == "GF")
    rest = text.substr(2);
  else
    throw Error("unrecognised field '" + std::string(text) + "' (expected q or gf:<p>)");
  std::uint32_t p = 0;
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), p);
  if (ec != std::errc() || ptr != rest.data() + rest.size() || rest.empty())
    throw Error("unrecognised field '" + std::string(text) + "'");
  return prime(p);
}

std::string FieldSpec::to_string() const {
  return is_prime() ? "gf:" + std::to_string(p) : "q";
}

PrimeField::PrimeField(std::uint32_t p) : p_(FieldSpec::prime(p).p) {}

PrimeField::value_type PrimeField::inv(value_type a) const {
  if (a == 0) throw Error("inverse of zero");
  // Fermat: a^(p-2)
  std::uint64_t result = 1, base = a;
  std::uint32_t e = p_ - 2;
  while (e) {
    if (e & 1u) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<value_type>(result);
}

}  // namespace invrel
