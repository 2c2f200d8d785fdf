#include "invrel/word.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace invrel {

LetterCode Letter::code() const {
  if (k < 1 || k > kMaxLetterIndex) throw Error("letter index out of range: " + std::to_string(k));
  return static_cast<LetterCode>(2 * (k - 1) + (transposed ? 1 : 0));
}

Word Word::from_letters(const std::vector<Letter>& letters) {
  std::vector<LetterCode> codes;
  codes.reserve(letters.size());
  for (const auto& l : letters) codes.push_back(l.code());
  return Word(std::move(codes));
}

Word Word::involute() const {
  std::vector<LetterCode> out(codes_.rbegin(), codes_.rend());
  for (auto& c : out) c ^= 1;
  return Word(std::move(out));
}

Word Word::rotate(std::size_t shift) const {
  if (codes_.empty()) return *this;
  std::vector<LetterCode> out = codes_;
  std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(shift % out.size()), out.end());
  return Word(std::move(out));
}

Word Word::strip_transposes() const {
  std::vector<LetterCode> out = codes_;
  for (auto& c : out) c &= static_cast<LetterCode>(~1u);
  return Word(std::move(out));
}

Word Word::operator*(const Word& o) const {
  std::vector<LetterCode> out = codes_;
  out.insert(out.end(), o.codes_.begin(), o.codes_.end());
  return Word(std::move(out));
}

bool Word::is_primitive() const {
  const std::size_t n = codes_.size();
  if (n == 0) return false;
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = codes_[i] == codes_[i - p];
    if (periodic) return false;
  }
  return true;
}

std::vector<int> Word::mdeg(int d) const {
  std::vector<int> out(static_cast<std::size_t>(d), 0);
  for (auto c : codes_) {
    int k = c / 2 + 1;
    if (k > d) throw Error("letter x" + std::to_string(k) + " beyond d = " + std::to_string(d));
    ++out[static_cast<std::size_t>(k - 1)];
  }
  return out;
}

int Word::max_index() const {
  int m = 0;
  for (auto c : codes_) m = std::max(m, c / 2 + 1);
  return m;
}

std::string Word::to_string() const {
  if (codes_.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < codes_.size(); ++i) {
    Letter l = at(i);
    if (i) out += ' ';
    out += 'x' + std::to_string(l.k);
    if (l.transposed) out += '\'';
  }
  return out;
}

Word Word::parse(std::string_view text) {
  std::vector<Letter> letters;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto first = text.find_first_not_of(" \t");
  auto last = text.find_last_not_of(" \t");
  if (first != std::string_view::npos && text.substr(first, last - first + 1) == "1") return Word{};
  while (skip(), i < text.size()) {
    if (text[i] != 'x') throw Error("bad word '" + std::string(text) + "': expected x<k>");
    ++i;
    int k = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), k);
    if (ec != std::errc()) throw Error("bad word '" + std::string(text) + "': missing index");
    i = static_cast<std::size_t>(ptr - text.data());
    bool t = false;
    if (i < text.size() && (text[i] == '\'' || text[i] == 'T')) {
      t = true;
      ++i;
    }
    letters.push_back({k, t});
  }
  if (letters.empty()) throw Error("empty word");
  return from_letters(letters);
}

Word least_rotation(const Word& w) {
  Word best = w;
  for (std::size_t s = 1; s < w.size(); ++s) best = std::min(best, w.rotate(s));
  return best;
}

Word canonical_class(const Word& w, Flavor flavor) {
  if (w.is_unity()) return w;
  if (flavor == Flavor::Plain) return least_rotation(w.strip_transposes());
  return std::min(least_rotation(w), least_rotation(w.involute()));
}

template <class F>
Mat<F> realize(const Word& w, Group g, const F& field, int n) {
  Mat<F> out = Mat<F>::identity(field, n);
  bool first = true;
  for (std::size_t i = 0; i < w.size(); ++i) {
    Letter l = w.at(i);
    Mat<F> x = generic_x(field, n, l.k);
    if (l.transposed && g == Group::O) x = transpose(x);
    if (l.transposed && g == Group::Sp) x = transpose(x, TransposeKind::Symplectic);
    out = first ? x : out * x;
    first = false;
  }
  return out;
}

template <class F>
WordSum<F> WordSum<F>::of(const F& field, const Word& w) {
  WordSum s(field);
  s.add(w, field.one());
  return s;
}

template <class F>
bool WordSum<F>::is_word() const {
  return terms_.size() == 1 && field_.is_one(terms_.begin()->second);
}

template <class F>
WordSum<F>& WordSum<F>::add(const Word& w, const Coeff& c) {
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    if (!field_.is_zero(c)) terms_.emplace(w, c);
    return *this;
  }
  it->second = field_.add(it->second, c);
  if (field_.is_zero(it->second)) terms_.erase(it);
  return *this;
}

template <class F>
WordSum<F> WordSum<F>::involute() const {
  WordSum out(field_);
  for (const auto& [w, c] : terms_) out.add(w.involute(), c);
  return out;
}

template <class F>
int WordSum<F>::max_index() const {
  int m = 0;
  for (const auto& [w, c] : terms_) m = std::max(m, w.max_index());
  return m;
}

template <class F>
std::string WordSum<F>::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    std::string cs = field_.to_string(c);
    bool neg = cs[0] == '-';
    if (neg) cs.erase(0, 1);
    out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    first = false;
    if (cs != "1") out += cs + (w.is_unity() ? "" : "*");
    if (cs == "1" || !w.is_unity()) out += w.to_string();
  }
  return out;
}

template <class F>
WordSum<F> WordSum<F>::parse(const F& field, std::string_view text) {
  WordSum out(field);
  std::string s(text);
  std::size_t i = 0;
  bool negate = false;
  bool any = false;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    if (s[i] == '+' || s[i] == '-') {
      negate = s[i] == '-';
      ++i;
      continue;
    }
    std::size_t end = s.find_first_of("+-", i);
    std::string term = s.substr(i, end == std::string::npos ? std::string::npos : end - i);
    i = end == std::string::npos ? s.size() : end;
    while (!term.empty() && std::isspace(static_cast<unsigned char>(term.back()))) term.pop_back();
    Coeff c = field.one();
    Word w;
    auto star = term.find('*');
    if (star != std::string::npos) {
      long v = 0;
      std::string cs = term.substr(0, star);
      auto [ptr, ec] = std::from_chars(cs.data(), cs.data() + cs.size(), v);
      if (ec != std::errc() || ptr != cs.data() + cs.size()) throw Error("bad coefficient in '" + s + "'");
      c = field.from_int(v);
      w = Word::parse(term.substr(star + 1));
    } else if (!term.empty() && std::isdigit(static_cast<unsigned char>(term[0])) && term != "1") {
      long v = 0;
      auto [ptr, ec] = std::from_chars(term.data(), term.data() + term.size(), v);
      if (ec != std::errc() || ptr != term.data() + term.size()) throw Error("bad term '" + term + "'");
      c = field.from_int(v);
    } else {
      w = Word::parse(term);
    }
    out.add(w, negate ? field.neg(c) : c);
    negate = false;
    any = true;
  }
  if (!any) throw Error("empty word expression");
  return out;
}

template <class F>
Mat<F> realize(const WordSum<F>& s, Group g, int n) {
  Mat<F> out(s.field(), n);
  for (const auto& [w, c] : s.terms()) {
    Mat<F> m = realize(w, g, s.field(), n);
    out += s.field().is_one(c) ? m : m.scale(c);
  }
  return out;
}

template class WordSum<Rationals>;
template class WordSum<PrimeField>;
template Mat<Rationals> realize(const Word&, Group, const Rationals&, int);
template Mat<PrimeField> realize(const Word&, Group, const PrimeField&, int);
template Mat<Rationals> realize(const WordSum<Rationals>&, Group, int);
template Mat<PrimeField> realize(const WordSum<PrimeField>&, Group, int);

}  // namespace invrel
