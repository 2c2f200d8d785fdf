#include "invrel/quiver.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include <json.hpp>

namespace invrel {

namespace {

void two_vertex_arrows(int d, const std::string& back, std::vector<Arrow>& arrows, std::vector<int>& slot) {
  if (d < 1 || d >= kMaxLetterIndex) throw Error("index count d out of range: " + std::to_string(d));
  for (int k = 1; k <= d; ++k) {
    arrows.push_back({static_cast<LetterCode>(2 * (k - 1)), "x" + std::to_string(k), 1, 2});
    arrows.push_back({static_cast<LetterCode>(2 * (k - 1) + 1), "x" + std::to_string(k) + "'", 1, 2});
    slot.push_back(k - 1);
    slot.push_back(k - 1);
  }
  arrows.push_back({static_cast<LetterCode>(2 * d), back, 2, 1});
  arrows.push_back({static_cast<LetterCode>(2 * d + 1), back + "'", 2, 1});
  slot.push_back(d);
  slot.push_back(d);
}

}  // namespace

Quiver Quiver::q() {
  Quiver g;
  g.kind_ = Kind::Q;
  g.d_ = 1;
  g.name_ = "Q";
  g.arrows_ = {{0, "x", 1, 1}, {1, "x'", 2, 2}, {2, "y", 1, 2}, {3, "y'", 1, 2}, {4, "z", 2, 1}, {5, "z'", 2, 1}};
  g.slot_ = {0, 0, 1, 1, 2, 2};
  return g;
}

Quiver Quiver::g_y(int d) {
  Quiver g;
  g.kind_ = Kind::Gy;
  g.d_ = d;
  g.name_ = "Gy";
  two_vertex_arrows(d, "y", g.arrows_, g.slot_);
  return g;
}

Quiver Quiver::g_z(int d) {
  Quiver g;
  g.kind_ = Kind::Gz;
  g.d_ = d;
  g.name_ = "Gz";
  two_vertex_arrows(d, "z", g.arrows_, g.slot_);
  return g;
}

const Arrow& Quiver::arrow(LetterCode c) const {
  if (c >= arrows_.size()) throw Error("no arrow with code " + std::to_string(c) + " in " + name_);
  return arrows_[c];
}

bool Quiver::is_formal(LetterCode c) const {
  return kind_ == Kind::Gy && c == static_cast<LetterCode>(2 * d_ + 1);
}

std::vector<int> Quiver::mdeg(const Word& path) const {
  std::vector<int> out(kind_ == Kind::Q ? 3 : static_cast<std::size_t>(d_ + 1), 0);
  for (auto c : path.codes()) {
    arrow(c);
    ++out[static_cast<std::size_t>(slot_[c])];
  }
  return out;
}

bool Quiver::is_path(const Word& w) const {
  if (w.is_unity()) return false;
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (arrow(w.codes()[i]).tail != arrow(w.codes()[i + 1]).head) return false;
  arrow(w.codes().back());
  return true;
}

int Quiver::head(const Word& path) const { return arrow(path.codes().front()).head; }
int Quiver::tail(const Word& path) const { return arrow(path.codes().back()).tail; }

std::string Quiver::render(const Word& path) const {
  if (path.is_unity()) return "1";
  std::string out;
  for (auto c : path.codes()) {
    if (!out.empty()) out += ' ';
    out += arrow(c).label;
  }
  return out;
}

Word Quiver::parse(std::string_view text) const {
  std::vector<LetterCode> codes;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    if (i >= text.size()) break;
    std::size_t j = text.find(' ', i);
    std::string_view tok = text.substr(i, j == std::string_view::npos ? std::string_view::npos : j - i);
    i = j == std::string_view::npos ? text.size() : j;
    auto it = std::find_if(arrows_.begin(), arrows_.end(), [&](const Arrow& a) { return a.label == tok; });
    if (it == arrows_.end()) throw Error("unknown arrow '" + std::string(tok) + "' in " + name_);
    codes.push_back(it->code);
  }
  Word w(std::move(codes));
  if (!is_path(w)) throw Error("'" + std::string(text) + "' is not a path of " + name_);
  return w;
}

namespace {

// y^T = -y in G_y: classes are taken up to sign, so y^T reads back as y.
Word canonical_path(const Quiver& q, const Word& w) {
  if (q.kind() != Quiver::Kind::Gy) return canonical_class(w, Flavor::Involutive);
  auto y = static_cast<LetterCode>(2 * q.d());
  std::vector<LetterCode> t = w.involute().codes();
  for (auto& c : t)
    if (c == y + 1) c = y;
  return std::min(least_rotation(w), least_rotation(Word(std::move(t))));
}

}  // namespace

std::vector<Word> Quiver::closed_path_classes(const std::vector<int>& bound, bool primitive_only) const {
  if (bound.size() != mdeg(Word({0})).size()) throw Error("bound has the wrong number of slots for " + name_);
  std::set<Word> classes;
  std::vector<int> used(bound.size(), 0);
  std::vector<LetterCode> seq;
  int start = 0;
  // Depth-first over arrow sequences; the per-slot bound keeps it finite.
  auto dfs = [&](auto&& self, int at) -> void {
    if (!seq.empty() && at == start) {
      Word w(seq);
      if (!primitive_only || w.is_primitive()) classes.insert(canonical_path(*this, w));
    }
    for (const auto& a : arrows_) {
      if (is_formal(a.code) || a.head != at) continue;
      auto s = static_cast<std::size_t>(slot_[a.code]);
      if (used[s] >= bound[s]) continue;
      ++used[s];
      seq.push_back(a.code);
      self(self, a.tail);
      seq.pop_back();
      --used[s];
    }
  };
  for (start = 1; start <= 2; ++start) dfs(dfs, start);
  return {classes.begin(), classes.end()};
}

std::vector<Word> Quiver::paths_between(int h, int t, int max_len) const {
  std::vector<Word> out;
  std::vector<LetterCode> seq;
  auto dfs = [&](auto&& self, int at) -> void {
    if (!seq.empty() && at == t) out.emplace_back(seq);
    if (static_cast<int>(seq.size()) >= max_len) return;
    for (const auto& a : arrows_) {
      if (is_formal(a.code) || a.head != at) continue;
      seq.push_back(a.code);
      self(self, a.tail);
      seq.pop_back();
    }
  };
  dfs(dfs, h);
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(RelationType t) { return t == RelationType::Sigma ? "sigma" : "rho"; }

RelationType parse_relation_type(std::string_view text) {
  if (text == "sigma") return RelationType::Sigma;
  if (text == "rho") return RelationType::Rho;
  throw Error("relation type must be sigma or rho, got '" + std::string(text) + "'");
}

std::vector<Word> RelationExpr::paths() const {
  std::set<Word> s;
  for (const auto& term : terms)
    for (const auto& f : term.factors) s.insert(f.path);
  return {s.begin(), s.end()};
}

std::string RelationExpr::to_json() const {
  Quiver q = Quiver::q();
  nlohmann::ordered_json j;
  j["type"] = invrel::to_string(type);
  j["t"] = t;
  j["r"] = r;
  j["terms"] = nlohmann::ordered_json::array();
  for (const auto& term : terms) {
    nlohmann::ordered_json fs = nlohmann::ordered_json::array();
    for (const auto& f : term.factors) fs.push_back({{"k", f.k}, {"path", q.render(f.path)}});
    j["terms"].push_back({{"sign", term.sign}, {"factors", fs}});
  }
  return j.dump();
}

RelationExpr build_relation(RelationType type, int t, int r, const std::vector<int>& cap) {
  if (t < 0 || r < 0) throw Error("t and r must be non-negative");
  if (t == 0 && r == 0) throw Error("t and r cannot both be zero");
  if (cap.size() != 3 || t > cap[0] || r > cap[1] || r > cap[2])
    throw Error("path multidegree (" + std::to_string(t) + "," + std::to_string(r) + "," + std::to_string(r) +
                ") exceeds the enumeration cap");
  Quiver q = Quiver::q();
  const std::vector<int> target = {t, r, r};
  std::vector<Word> classes = q.closed_path_classes(target, true);
  std::vector<std::vector<int>> degs;
  for (const auto& c : classes) degs.push_back(q.mdeg(c));

  RelationExpr e;
  e.type = type;
  e.t = t;
  e.r = r;
  std::vector<RelationFactor> chosen;
  std::vector<int> rest = target;
  auto search = [&](auto&& self, std::size_t i) -> void {
    if (rest == std::vector<int>{0, 0, 0}) {
      int k_sum = 0, xi = t;
      for (const auto& f : chosen) {
        int yz = 0;  // untransposed y and z only
        for (auto c : f.path.codes()) yz += (c == 2 || c == 4) ? 1 : 0;
        k_sum += f.k;
        xi += f.k * (yz + 1);
      }
      int parity = type == RelationType::Sigma ? xi : t + k_sum;
      e.terms.push_back({parity % 2 ? -1 : 1, chosen});
      return;
    }
    if (i == classes.size()) return;
    self(self, i + 1);
    const auto& dg = degs[i];
    for (int k = 1;; ++k) {
      bool fits = true;
      for (int s = 0; s < 3; ++s) fits = fits && k * dg[s] <= rest[s];
      if (!fits) break;
      for (int s = 0; s < 3; ++s) rest[s] -= k * dg[s];
      chosen.push_back({k, classes[i]});
      self(self, i + 1);
      chosen.pop_back();
      for (int s = 0; s < 3; ++s) rest[s] += k * dg[s];
    }
  };
  search(search, 0);
  // fewer factors first, then by (k, path)
  std::sort(e.terms.begin(), e.terms.end(), [](const RelationTerm& a, const RelationTerm& b) {
    if (a.factors.size() != b.factors.size()) return a.factors.size() < b.factors.size();
    return std::lexicographical_compare(
        a.factors.begin(), a.factors.end(), b.factors.begin(), b.factors.end(),
        [](const RelationFactor& u, const RelationFactor& v) { return std::tie(u.k, u.path) < std::tie(v.k, v.path); });
  });
  return e;
}

template <class F>
ArrowImages<F> ArrowImages<F>::make(const Mat<F>& x, const Mat<F>& y, const Mat<F>& z, TransposeKind kind) {
  ArrowImages im;
  for (const Mat<F>* m : {&x, &y, &z}) {
    im.by_code.push_back(*m);
    im.by_code.push_back(transpose(*m, kind));
  }
  return im;
}

template <class F>
ArrowImages<F> realize_triple(const WordSum<F>& a, const WordSum<F>& b, const WordSum<F>& c, Group g, int n) {
  if (g == Group::GL) throw Error("relation substitution needs an O or Sp transpose");
  TransposeKind kind = g == Group::Sp ? TransposeKind::Symplectic : TransposeKind::Ordinary;
  return ArrowImages<F>::make(realize(a, g, n), realize(b, g, n), realize(c, g, n), kind);
}

template <class F>
Mat<F> path_matrix(const Word& path, const ArrowImages<F>& images) {
  if (path.is_unity()) throw Error("empty path");
  Mat<F> out = images.by_code.at(path.codes()[0]);
  for (std::size_t i = 1; i < path.size(); ++i) out = out * images.by_code.at(path.codes()[i]);
  return out;
}

template <class F>
std::vector<SubstitutedTerm<F>> substitute_triple(const RelationExpr& e, const ArrowImages<F>& images) {
  std::map<Word, Mat<F>> cache;
  for (const auto& p : e.paths()) cache.emplace(p, path_matrix(p, images));
  std::vector<SubstitutedTerm<F>> out;
  for (const auto& term : e.terms) {
    SubstitutedTerm<F> st{term.sign, {}};
    for (const auto& f : term.factors) st.factors.emplace_back(f.k, cache.at(f.path));
    out.push_back(std::move(st));
  }
  return out;
}

std::vector<PathTriple> admissible_triples(const Quiver& g, int max_a, int max_b, int max_c) {
  if (g.kind() == Quiver::Kind::Q) throw Error("admissible triples live in G_y or G_z");
  auto as = g.paths_between(1, 1, max_a);
  auto bs = g.paths_between(1, 2, max_b);
  auto cs = g.paths_between(2, 1, max_c);
  std::vector<PathTriple> out;
  for (const auto& a : as)
    for (const auto& b : bs)
      for (const auto& c : cs) out.push_back({a, b, c});
  return out;
}

#define INVREL_INSTANTIATE(F)                                                                                  \
  template struct ArrowImages<F>;                                                                              \
  template ArrowImages<F> realize_triple(const WordSum<F>&, const WordSum<F>&, const WordSum<F>&, Group, int); \
  template Mat<F> path_matrix(const Word&, const ArrowImages<F>&);                                             \
  template std::vector<SubstitutedTerm<F>> substitute_triple(const RelationExpr&, const ArrowImages<F>&);

INVREL_INSTANTIATE(Rationals)
INVREL_INSTANTIATE(PrimeField)

#undef INVREL_INSTANTIATE

}  // namespace invrel
