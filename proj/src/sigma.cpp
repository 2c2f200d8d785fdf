#include "invrel/sigma.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

namespace invrel {

std::string SigmaSymbol::to_string() const { return "s" + std::to_string(t) + "(" + arg.to_string() + ")"; }

std::optional<SigmaSymbol> make_symbol(int t, const Word& w, Flavor flavor) {
  if (t < 0) throw Error("negative sigma index");
  if (w.is_unity()) throw Error("sigma symbol of the unity word");
  Word c = canonical_class(w, flavor);
  if (!c.is_primitive()) throw Error("sigma symbol argument is not primitive: " + w.to_string());
  if (t == 0) return std::nullopt;
  return SigmaSymbol{t, c};
}

std::string to_string(const SigmaMonomial& m) {
  if (m.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < m.size();) {
    std::size_t j = i;
    while (j < m.size() && m[j] == m[i]) ++j;
    if (!out.empty()) out += '*';
    out += m[i].to_string();
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

std::vector<int> mdeg(const SigmaMonomial& m, int d) {
  std::vector<int> out(static_cast<std::size_t>(d), 0);
  for (const auto& s : m) {
    auto w = s.arg.mdeg(d);
    for (int k = 0; k < d; ++k) out[static_cast<std::size_t>(k)] += s.t * w[static_cast<std::size_t>(k)];
  }
  return out;
}

template <class F>
SigmaPoly<F> SigmaPoly<F>::constant(const F& field, const Coeff& c) {
  SigmaPoly p(field);
  p.add_term({}, c);
  return p;
}

template <class F>
SigmaPoly<F> SigmaPoly<F>::symbol(const F& field, int t, const Word& w, Flavor flavor) {
  auto s = make_symbol(t, w, flavor);
  if (!s) return constant(field, field.one());
  return monomial(field, {*s}, field.one());
}

template <class F>
SigmaPoly<F> SigmaPoly<F>::monomial(const F& field, SigmaMonomial m, const Coeff& c) {
  std::sort(m.begin(), m.end());
  SigmaPoly p(field);
  p.add_term(m, c);
  return p;
}

template <class F>
void SigmaPoly<F>::add_term(const SigmaMonomial& m, const Coeff& c) {
  if (field_.is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second = field_.add(it->second, c);
  if (field_.is_zero(it->second)) terms_.erase(it);
}

template <class F>
SigmaPoly<F>& SigmaPoly<F>::operator+=(const SigmaPoly& o) {
  if (!(field_ == o.field_)) throw Error("mixed-field operands");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

template <class F>
SigmaPoly<F>& SigmaPoly<F>::operator-=(const SigmaPoly& o) {
  if (!(field_ == o.field_)) throw Error("mixed-field operands");
  for (const auto& [m, c] : o.terms_) add_term(m, field_.neg(c));
  return *this;
}

template <class F>
SigmaPoly<F> SigmaPoly<F>::scale(const Coeff& c) const {
  SigmaPoly out(field_);
  for (const auto& [m, v] : terms_) out.add_term(m, field_.mul(v, c));
  return out;
}

template <class F>
SigmaPoly<F> SigmaPoly<F>::mul(const SigmaPoly& o) const {
  if (!(field_ == o.field_)) throw Error("mixed-field operands");
  SigmaPoly out(field_);
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) {
      SigmaMonomial m(a.size() + b.size());
      std::merge(a.begin(), a.end(), b.begin(), b.end(), m.begin());
      out.add_term(m, field_.mul(ca, cb));
    }
  return out;
}

template <class F>
SigmaPoly<F> SigmaPoly<F>::component(const std::vector<int>& delta) const {
  SigmaPoly out(field_);
  const int d = static_cast<int>(delta.size());
  for (const auto& [m, c] : terms_) {
    bool fits = true;
    for (const auto& s : m) fits = fits && s.arg.max_index() <= d;
    if (fits && mdeg(m, d) == delta) out.add_term(m, c);
  }
  return out;
}

template <class F>
std::vector<std::vector<int>> SigmaPoly<F>::multidegrees(int d) const {
  std::set<std::vector<int>> seen;
  for (const auto& [m, c] : terms_) seen.insert(mdeg(m, d));
  return {seen.begin(), seen.end()};
}

template <class F>
std::string SigmaPoly<F>::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string cs = field_.to_string(c);
    bool neg = cs[0] == '-';
    if (neg) cs.erase(0, 1);
    out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    first = false;
    if (m.empty())
      out += cs;
    else
      out += (cs == "1" ? "" : cs + "*") + invrel::to_string(m);
  }
  return out;
}

template <class F>
SigmaPoly<F> SigmaPoly<F>::parse(const F& field, std::string_view text, Flavor flavor) {
  SigmaPoly out(field);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& why) { return Error("bad sigma expression '" + std::string(text) + "': " + why); };
  auto read_int = [&]() {
    long v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
    if (ec != std::errc()) throw fail("expected a number");
    i = static_cast<std::size_t>(ptr - text.data());
    return v;
  };
  bool any = false;
  while (skip(), i < text.size()) {
    bool negate = false;
    if (text[i] == '+' || text[i] == '-') {
      negate = text[i] == '-';
      ++i;
      skip();
    } else if (any) {
      throw fail("expected + or -");
    }
    SigmaPoly term = constant(field, negate ? field.from_int(-1) : field.one());
    for (bool more = true; more;) {
      skip();
      if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        term = term.scale(field.from_int(read_int()));
      } else if (i < text.size() && text[i] == 's') {
        ++i;
        int t = static_cast<int>(read_int());
        if (i >= text.size() || text[i] != '(') throw fail("expected (");
        auto close = text.find(')', i);
        if (close == std::string_view::npos) throw fail("missing )");
        Word w = Word::parse(text.substr(i + 1, close - i - 1));
        i = close + 1;
        SigmaPoly sym = symbol(field, t, w, flavor);
        int e = 1;
        if (i < text.size() && text[i] == '^') {
          ++i;
          e = static_cast<int>(read_int());
        }
        for (int r = 0; r < e; ++r) term = term * sym;
      } else {
        throw fail("expected a factor");
      }
      skip();
      more = i < text.size() && text[i] == '*';
      if (more) ++i;
    }
    out += term;
    any = true;
  }
  if (!any) throw fail("empty");
  return out;
}

template class SigmaPoly<Rationals>;
template class SigmaPoly<PrimeField>;

}  // namespace invrel
