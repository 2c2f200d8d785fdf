#include "invrel/poly.hpp"

#include <algorithm>
#include <map>

namespace invrel {

VarCode Variable::code() const {
  if (i < 1 || j < 1 || i > kMaxMatrixSize || j > kMaxMatrixSize)
    throw Error("variable index out of range: " + to_string());
  int kk = 0;
  switch (family) {
    case Family::X:
      if (k < 1 || k > kMaxMatrixIndex) throw Error("matrix index out of range: " + to_string());
      kk = k;
      break;
    case Family::Y:
      if (i >= j) throw Error("y variables exist only above the diagonal: " + to_string());
      break;
    case Family::Z:
      break;
  }
  return static_cast<VarCode>((static_cast<int>(family) << 14) | (kk << 8) | ((i - 1) << 4) | (j - 1));
}

Variable Variable::decode(VarCode c) {
  Variable v;
  v.family = static_cast<Family>(c >> 14);
  v.k = (c >> 8) & 0x3f;
  v.i = ((c >> 4) & 0xf) + 1;
  v.j = (c & 0xf) + 1;
  return v;
}

std::string Variable::to_string() const {
  std::string idx = "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
  switch (family) {
    case Family::X: return "x" + idx + "(" + std::to_string(k) + ")";
    case Family::Y: return "y" + idx;
    case Family::Z: return "z" + idx;
  }
  return "?";
}

Monomial::Monomial(Storage vars) : vars_(std::move(vars)) { std::sort(vars_.begin(), vars_.end()); }

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.vars_.resize(vars_.size() + other.vars_.size());
  std::merge(vars_.begin(), vars_.end(), other.vars_.begin(), other.vars_.end(), out.vars_.begin());
  return out;
}

std::vector<std::pair<VarCode, int>> Monomial::exponents() const {
  std::vector<std::pair<VarCode, int>> runs;
  for (VarCode v : vars_) {
    if (!runs.empty() && runs.back().first == v)
      ++runs.back().second;
    else
      runs.emplace_back(v, 1);
  }
  return runs;
}

std::string Monomial::to_string() const {
  if (vars_.empty()) return "1";
  std::string out;
  for (auto [v, e] : exponents()) {
    if (!out.empty()) out += '*';
    out += Variable::decode(v).to_string();
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

bool term_order_before(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  return std::lexicographical_compare(a.vars().begin(), a.vars().end(), b.vars().begin(), b.vars().end());
}

namespace {

template <class Term>
void sort_terms(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return term_order_before(a.mono, b.mono); });
}

}  // namespace

template <class F>
Poly<F> Poly<F>::constant(const F& field, Coeff c) {
  Poly p(field);
  if (!field.is_zero(c)) p.terms_.push_back({Monomial{}, std::move(c)});
  return p;
}

template <class F>
Poly<F> Poly<F>::variable(const F& field, const Variable& v) {
  Poly p(field);
  p.terms_.push_back({Monomial(v.code()), field.one()});
  return p;
}

template <class F>
Poly<F> Poly<F>::from_terms(const F& field, std::vector<Term> terms) {
  absl::flat_hash_map<Monomial, Coeff> acc;
  acc.reserve(terms.size());
  for (auto& t : terms) {
    auto [it, inserted] = acc.try_emplace(std::move(t.mono), field.zero());
    field.add_to(it->second, t.coeff);
  }
  Poly p(field);
  p.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!field.is_zero(c)) p.terms_.push_back({m, c});
  sort_terms(p.terms_);
  return p;
}

template <class F>
typename Poly<F>::Coeff Poly<F>::constant_value() const {
  if (!is_constant()) throw Error("polynomial is not constant");
  return terms_.empty() ? field_.zero() : terms_[0].coeff;
}

template <class F>
std::vector<int> Poly<F>::multidegree(int d) const {
  std::vector<int> result(static_cast<std::size_t>(d), 0);
  bool first = true;
  for (const auto& t : terms_) {
    std::vector<int> md(static_cast<std::size_t>(d), 0);
    for (VarCode v : t.mono.vars()) {
      Variable var = Variable::decode(v);
      if (var.family != Family::X) continue;
      if (var.k > d) throw Error("variable beyond d in multidegree: " + var.to_string());
      ++md[static_cast<std::size_t>(var.k - 1)];
    }
    if (first) {
      result = md;
      first = false;
    } else if (md != result) {
      throw Error("polynomial is not multihomogeneous");
    }
  }
  return result;
}

template <class F>
Poly<F> Poly<F>::operator-() const {
  Poly out(field_);
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) out.terms_.push_back({t.mono, field_.neg(t.coeff)});
  return out;
}

template <class F>
Poly<F> Poly<F>::combine(const Poly& o, bool subtract) const {
  check_field(o);
  Poly out(field_);
  out.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && term_order_before(terms_[i].mono, o.terms_[j].mono))) {
      out.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() || term_order_before(o.terms_[j].mono, terms_[i].mono)) {
      const auto& t = o.terms_[j++];
      out.terms_.push_back({t.mono, subtract ? field_.neg(t.coeff) : t.coeff});
    } else {
      Coeff c = subtract ? field_.sub(terms_[i].coeff, o.terms_[j].coeff)
                         : field_.add(terms_[i].coeff, o.terms_[j].coeff);
      if (!field_.is_zero(c)) out.terms_.push_back({terms_[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

template <class F>
Poly<F>& Poly<F>::operator+=(const Poly& o) {
  if (o.is_zero()) {
    check_field(o);
    return *this;
  }
  return *this = combine(o, false);
}

template <class F>
Poly<F>& Poly<F>::operator-=(const Poly& o) {
  if (o.is_zero()) {
    check_field(o);
    return *this;
  }
  return *this = combine(o, true);
}

template <class F>
Poly<F> Poly<F>::scale(const Coeff& c) const {
  Poly out(field_);
  if (field_.is_zero(c)) return out;
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Coeff v = field_.mul(t.coeff, c);
    if (!field_.is_zero(v)) out.terms_.push_back({t.mono, std::move(v)});
  }
  return out;
}

template <class F>
Poly<F> Poly<F>::mul(const Poly& o) const {
  check_field(o);
  if (is_zero() || o.is_zero()) return Poly(field_);
  if (o.is_constant()) return scale(o.constant_value());
  if (is_constant()) return o.scale(constant_value());
  const Poly& big = size() >= o.size() ? *this : o;
  const Poly& small = size() >= o.size() ? o : *this;
  if (small.size() == 1) {
    // A single term preserves the term order of the other factor.
    Poly out(field_);
    out.terms_.reserve(big.size());
    const auto& s = small.terms_[0];
    for (const auto& t : big.terms_) {
      Coeff c = field_.mul(t.coeff, s.coeff);
      if (!field_.is_zero(c)) out.terms_.push_back({t.mono * s.mono, std::move(c)});
    }
    return out;
  }
  absl::flat_hash_map<Monomial, Coeff> acc;
  acc.reserve(std::min<std::size_t>(size() * o.size(), std::size_t{1} << 22));
  for (const auto& a : big.terms_) {
    for (const auto& b : small.terms_) {
      auto [it, inserted] = acc.try_emplace(a.mono * b.mono, field_.zero());
      field_.add_mul_to(it->second, a.coeff, b.coeff);
    }
  }
  Poly out(field_);
  out.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!field_.is_zero(c)) out.terms_.push_back({m, std::move(c)});
  sort_terms(out.terms_);
  return out;
}

template <class F>
Poly<F> Poly<F>::pow(int e) const {
  if (e < 0) throw Error("negative exponent");
  Poly result = from_int(field_, 1);
  Poly base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

template <class F>
Poly<F> Poly<F>::substitute(const Assignment& assignment, Unassigned mode) const {
  std::map<std::pair<VarCode, int>, Poly> powers;
  auto power_of = [&](VarCode v, int e) -> const Poly& {
    auto key = std::make_pair(v, e);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    auto a = assignment.find(v);
    Poly image(field_);
    if (a != assignment.end()) {
      check_field(a->second);
      image = a->second.pow(e);
    } else if (mode == Unassigned::Keep) {
      image = Poly::variable(field_, Variable::decode(v)).pow(e);
    } else {
      throw Error("unassigned variable in substitution: " + Variable::decode(v).to_string());
    }
    return powers.emplace(key, std::move(image)).first->second;
  };
  Poly out(field_);
  std::vector<Term> pieces;
  for (const auto& t : terms_) {
    Poly prod = constant(field_, t.coeff);
    for (auto [v, e] : t.mono.exponents()) {
      prod *= power_of(v, e);
      if (prod.is_zero()) break;
    }
    for (auto& pt : prod.terms_) pieces.push_back(std::move(pt));
  }
  return from_terms(field_, std::move(pieces));
}

template <class F>
std::string Poly<F>::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    std::string c = field_.to_string(t.coeff);
    bool negative = !c.empty() && c[0] == '-';
    if (negative) c.erase(0, 1);
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    if (t.mono.is_one()) {
      out += c;
    } else {
      if (c != "1") out += c + "*";
      out += t.mono.to_string();
    }
  }
  return out;
}

template class Poly<Rationals>;
template class Poly<PrimeField>;

}  // namespace invrel
