#include "invrel/invrel.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <initializer_list>
#include <string>

#include <json.hpp>

#include "invrel/iso.hpp"
#include "invrel/kernel.hpp"

using namespace invrel;
using Json = nlohmann::ordered_json;

struct invrel_config {
  Group group = Group::Sp;
  int n = 2;
  int d = 2;
  FieldSpec field = FieldSpec::prime(7);
  std::uint64_t seed = 1;
  int max_word_len = 2;
  int max_tr = 2;
  std::string route = "auto";
  int maxdeg = 3;
  int samples = 25;
  bool timings = false;
  std::string literal = "auto";
  std::string method = "auto";
  std::string cache;
  int per_k = 4;
  int max_k = 3;
};

namespace {

thread_local std::string last_error;

invrel_status fail(invrel_status s, std::string msg) {
  last_error = std::move(msg);
  return s;
}

template <class Fn>
invrel_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    return fn();
  } catch (const Infeasible& e) {
    return fail(INVREL_INFEASIBLE, e.what());
  } catch (const Error& e) {
    return fail(INVREL_USAGE, e.what());
  } catch (const std::exception& e) {
    return fail(INVREL_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int to_int(const std::string& v, const std::string& key, int lo, int hi) {
  std::size_t used = 0;
  long x;
  try {
    x = std::stol(v, &used);
  } catch (const std::exception&) {
    throw Error(key + " needs an integer, got '" + v + "'");
  }
  if (used != v.size()) throw Error(key + " needs an integer, got '" + v + "'");
  if (x < lo || x > hi) throw Error(key + " must be in " + std::to_string(lo) + ".." + std::to_string(hi));
  return static_cast<int>(x);
}

bool to_bool(const std::string& v, const std::string& key) {
  if (v == "1" || v == "true" || v == "on") return true;
  if (v == "0" || v == "false" || v == "off") return false;
  throw Error(key + " needs a boolean, got '" + v + "'");
}

std::string choice(const std::string& v, const std::string& key, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (v == a) return v;
  throw Error("bad value '" + v + "' for " + key);
}

Route route_of(const invrel_config& c) {
  if (c.route == "direct") return Route::Direct;
  if (c.route == "factored") return Route::Factored;
  return c.n <= 2 ? Route::Direct : Route::Factored;
}

Json header(const invrel_config& c, const char* scope) {
  Json j;
  j["scope"] = scope;
  j["group"] = to_string(c.group);
  j["n"] = c.n;
  j["d"] = c.d;
  j["field"] = c.field.to_string();
  return j;
}

struct Emitter {
  invrel_line_fn fn;
  void* user;
  void operator()(const std::string& line) const {
    if (fn) fn(line.c_str(), user);
  }
  void operator()(const Json& j) const { (*this)(j.dump()); }
};

int verify_relations(const invrel_config& c, const Emitter& out) {
  SweepConfig sc;
  sc.ctx = {c.group, c.n, c.d, c.field};
  sc.max_word_len = c.max_word_len;
  sc.max_tr = c.max_tr;
  sc.route = route_of(c);
  sc.timings = c.timings;
  auto s = run_relation_sweep(sc, [&](const std::string& line) { out(line); });
  Json sum;
  sum["summary"] = {{"scope", "relations"}, {"route", to_string(sc.route)}, {"checked", s.checked},
                    {"failures", s.nonzero}};
  out(sum);
  return s.nonzero;
}

int verify_invariance(const invrel_config& c, const Emitter& out) {
  EvalContext{c.group, c.n, c.d, c.field}.validate();
  if (!c.field.is_prime()) throw Error("invariance sampling needs a prime field");
  bool certificate = c.method == "certificate" || (c.method == "auto" && c.n > 2);
  PrimeField f(c.field.p);
  int failures = 0, checked = 0;
  for (const auto& w : primitive_classes(c.d, c.max_word_len, c.group))
    for (int t = 1; t <= c.n; ++t) {
      auto r = check_invariance(w, t, c.group, f, c.n, c.samples, c.seed, certificate);
      Json j = header(c, "invariance");
      j["word"] = r.word;
      j["t"] = r.t;
      j["samples"] = r.samples;
      j["violations"] = r.violations;
      j["method"] = r.method;
      out(j);
      ++checked;
      if (r.violations) ++failures;
    }
  Json sum;
  sum["summary"] = {{"scope", "invariance"}, {"checked", checked}, {"failures", failures}};
  out(sum);
  return failures;
}

int verify_iso(const invrel_config& c, const Emitter& out) {
  if (c.group != Group::Sp) throw Error("the iso scope is about Sp(n)");
  EvalContext{c.group, c.n, c.d, c.field}.validate();
  bool literal = c.literal == "on" || (c.literal == "auto" && c.n <= 2);
  int failures = 0, checked = 0;
  verify_composites(c.field, c.n, c.d, c.max_word_len, literal, [&](const CompositeResult& r) {
    Json j = header(c, "iso");
    j["identity"] = r.identity;
    j["generator"] = r.generator;
    j["pass"] = r.pass;
    if (!r.pass) j["detail"] = r.detail;
    out(j);
    ++checked;
    if (!r.pass) ++failures;
  });
  if (c.field.is_prime()) {
    PrimeField f(c.field.p);
    std::vector<GeneratorExpr> gens;
    for (const auto& i : i_generators(c.n, c.d, 1)) gens.push_back(mu(psi_generator(i)));
    auto w = skew_witness_check(f, c.n, c.samples, c.seed, gens);
    Json j = header(c, "iso");
    j["identity"] = "skew_witness";
    j["samples"] = w.samples;
    j["congruence_failures"] = w.congruence_failures;
    j["substitution_failures"] = w.substitution_failures;
    j["pass"] = w.congruence_failures == 0 && w.substitution_failures == 0;
    out(j);
    ++checked;
    if (!j["pass"].get<bool>()) ++failures;
    if (c.n <= 2) {
      auto col = theta_collision_check(f, c.n, c.d, 2);
      Json k = header(c, "iso");
      k["identity"] = "theta_collisions";
      k["expressions"] = col.expressions;
      k["collisions"] = col.collisions;
      k["violations"] = col.violations;
      k["pass"] = col.violations == 0;
      out(k);
      ++checked;
      if (col.violations) ++failures;
    }
  }
  Json sum;
  sum["summary"] = {{"scope", "iso"}, {"checked", checked}, {"failures", failures}};
  out(sum);
  return failures;
}

std::string cache_name(const invrel_config& c, const std::vector<int>& delta) {
  std::string f = c.field.to_string();
  for (auto& ch : f)
    if (ch == ':') ch = '-';
  std::string name = to_string(c.group) + "-n" + std::to_string(c.n) + "-d" + std::to_string(c.d) + "-" + f + "-";
  for (std::size_t i = 0; i < delta.size(); ++i) name += (i ? "." : "") + std::to_string(delta[i]);
  return name + ".json";
}

int verify_kernel(const invrel_config& c, const Emitter& out) {
  EvalContext{c.group, c.n, c.d, c.field}.validate();
  if (c.maxdeg > kMaxComponentDegree)
    throw Infeasible("maxdeg above the component cap " + std::to_string(kMaxComponentDegree));
  int failures = 0, checked = 0, equal = 0;
  with_field(c.field, [&](const auto& field) {
    using F = std::decay_t<decltype(field)>;
    KernelLab<F> lab(field, c.group, c.n, c.d);
    for (const auto& delta : multidegrees_up_to(c.d, c.maxdeg)) {
      std::string hash = basis_hash(lab.basis(delta));
      std::filesystem::path file;
      Json j;
      if (!c.cache.empty()) {
        file = std::filesystem::path(c.cache) / cache_name(c, delta);
        std::ifstream in(file);
        if (in) {
          Json cached = Json::parse(in, nullptr, false);
          if (!cached.is_discarded() && cached.value("basis_hash", "") == hash) j = std::move(cached);
        }
      }
      if (j.is_null()) {
        auto r = lab.span_escalating(delta);
        j = header(c, "kernel");
        j["delta"] = delta;
        j["basis_size"] = r.basis_size;
        j["basis_hash"] = hash;
        j["kernel_dim"] = r.kernel_dim;
        j["span_dim"] = r.span_dim;
        j["equal"] = r.span_dim == r.kernel_dim;
        j["generators"] = r.generators;
        j["products"] = r.products;
        j["outside_kernel"] = r.outside_kernel;
        j["phi_size"] = r.phi_size;
        j["points"] = r.points;
        j["scheme"] = to_string(r.scheme);
        if (!file.empty()) {
          std::filesystem::create_directories(file.parent_path());
          std::ofstream(file) << j.dump(2) << '\n';
        }
      }
      out(j);
      ++checked;
      if (j["outside_kernel"].get<int>() != 0) ++failures;
      if (j["equal"].get<bool>()) ++equal;
    }
    return 0;
  });
  Json sum;
  sum["summary"] = {{"scope", "kernel"}, {"checked", checked}, {"equal", equal}, {"failures", failures}};
  out(sum);
  return failures;
}

int verify_scaling(const invrel_config& c, const Emitter& out) {
  ScalingConfig sc;
  sc.field = c.field;
  sc.n = c.n;
  sc.d = c.d;
  sc.max_k = c.max_k;
  sc.per_k = c.per_k;
  sc.seed = c.seed;
  int failures = 0, checked = 0;
  scaling_check(sc, [&](const ScalingCase& s) {
    Json j;
    j["scope"] = "scaling";
    j["n"] = c.n;
    j["d"] = c.d;
    j["field"] = c.field.to_string();
    j["f"] = s.f;
    j["k"] = s.k;
    j["pass"] = s.pass;
    out(j);
    ++checked;
    if (!s.pass) ++failures;
  });
  Json sum;
  sum["summary"] = {{"scope", "scaling"}, {"checked", checked}, {"failures", failures}};
  out(sum);
  return failures;
}

template <class Fn>
invrel_status relation_value(const invrel_config* cfg, const char* type, int t, int r, const char* a, const char* b,
                             const char* c, Fn&& with_poly) {
  if (!cfg || !type) return fail(INVREL_USAGE, "null argument");
  return guarded([&] {
    EvalContext{cfg->group, cfg->n, cfg->d, cfg->field}.validate();
    RelationExpr e = build_relation(parse_relation_type(type), t, r);
    with_field(cfg->field, [&](const auto& field) {
      using F = std::decay_t<decltype(field)>;
      auto sum = [&](const char* s) {
        if (!s || !*s) return WordSum<F>(field);
        return WordSum<F>::parse(field, s);
      };
      RelationEvaluator<F> ev(field, cfg->group, cfg->n);
      with_poly(ev.evaluate(e, sum(a), sum(b), sum(c), route_of(*cfg)));
      return 0;
    });
    return INVREL_OK;
  });
}

}  // namespace

extern "C" {

const char* invrel_version(void) { return "1.0.0"; }

const char* invrel_last_error(void) { return last_error.c_str(); }

void invrel_string_free(char* s) { std::free(s); }

invrel_status invrel_config_new(invrel_config** out) {
  if (!out) return fail(INVREL_USAGE, "null argument");
  return guarded([&] {
    *out = new invrel_config();
    return INVREL_OK;
  });
}

void invrel_config_free(invrel_config* cfg) { delete cfg; }

invrel_status invrel_config_set(invrel_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return fail(INVREL_USAGE, "null argument");
  return guarded([&] {
    std::string k = key, v = value;
    if (k == "group")
      cfg->group = parse_group(v);
    else if (k == "n")
      cfg->n = to_int(v, k, 1, 64);
    else if (k == "d")
      cfg->d = to_int(v, k, 1, kMaxLetterIndex);
    else if (k == "field")
      cfg->field = FieldSpec::parse(v);
    else if (k == "seed") {
      std::size_t used = 0;
      unsigned long long s = 0;
      try {
        s = std::stoull(v, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != v.size() || v[0] == '-') throw Error("seed needs a nonnegative integer");
      cfg->seed = s;
    } else if (k == "max-word-len")
      cfg->max_word_len = to_int(v, k, 1, 6);
    else if (k == "max-tr")
      cfg->max_tr = to_int(v, k, 1, 6);
    else if (k == "route")
      cfg->route = choice(v, k, {"auto", "direct", "factored"});
    else if (k == "maxdeg")
      cfg->maxdeg = to_int(v, k, 0, 64);
    else if (k == "samples")
      cfg->samples = to_int(v, k, 1, 100000);
    else if (k == "timings")
      cfg->timings = to_bool(v, k);
    else if (k == "literal")
      cfg->literal = choice(v, k, {"auto", "on", "off"});
    else if (k == "method")
      cfg->method = choice(v, k, {"auto", "direct", "certificate"});
    else if (k == "cache")
      cfg->cache = v;
    else if (k == "per-k")
      cfg->per_k = to_int(v, k, 1, 1000);
    else if (k == "max-k")
      cfg->max_k = to_int(v, k, 0, 4);
    else
      throw Error("unknown setting '" + k + "'");
    return INVREL_OK;
  });
}

invrel_status invrel_config_get(const invrel_config* cfg, const char* key, char** value) {
  if (!cfg || !key || !value) return fail(INVREL_USAGE, "null argument");
  return guarded([&] {
    std::string k = key, v;
    if (k == "group")
      v = to_string(cfg->group);
    else if (k == "n")
      v = std::to_string(cfg->n);
    else if (k == "d")
      v = std::to_string(cfg->d);
    else if (k == "field")
      v = cfg->field.to_string();
    else if (k == "seed")
      v = std::to_string(cfg->seed);
    else if (k == "max-word-len")
      v = std::to_string(cfg->max_word_len);
    else if (k == "max-tr")
      v = std::to_string(cfg->max_tr);
    else if (k == "route")
      v = cfg->route;
    else if (k == "maxdeg")
      v = std::to_string(cfg->maxdeg);
    else if (k == "samples")
      v = std::to_string(cfg->samples);
    else if (k == "timings")
      v = cfg->timings ? "1" : "0";
    else if (k == "literal")
      v = cfg->literal;
    else if (k == "method")
      v = cfg->method;
    else if (k == "cache")
      v = cfg->cache;
    else if (k == "per-k")
      v = std::to_string(cfg->per_k);
    else if (k == "max-k")
      v = std::to_string(cfg->max_k);
    else
      throw Error("unknown setting '" + k + "'");
    *value = dup(v);
    return INVREL_OK;
  });
}

invrel_status invrel_expand(const char* type, int t, int r, char** json) {
  if (!type || !json) return fail(INVREL_USAGE, "null argument");
  return guarded([&] {
    if (t < 0 || r < 0) throw Error("t and r must be nonnegative");
    *json = dup(build_relation(parse_relation_type(type), t, r).to_json());
    return INVREL_OK;
  });
}

invrel_status invrel_verify(const invrel_config* cfg, const char* scope, invrel_line_fn emit, void* user,
                            int* failures) {
  if (!cfg || !scope) return fail(INVREL_USAGE, "null argument");
  return guarded([&] {
    std::string s = scope;
    Emitter out{emit, user};
    int bad;
    if (s == "relations")
      bad = verify_relations(*cfg, out);
    else if (s == "invariance")
      bad = verify_invariance(*cfg, out);
    else if (s == "iso")
      bad = verify_iso(*cfg, out);
    else if (s == "kernel")
      bad = verify_kernel(*cfg, out);
    else if (s == "scaling")
      bad = verify_scaling(*cfg, out);
    else
      throw Error("unknown scope '" + s + "'");
    if (failures) *failures = bad;
    return bad ? fail(INVREL_FAILED, std::to_string(bad) + " check(s) failed") : INVREL_OK;
  });
}

invrel_status invrel_relation_value(const invrel_config* cfg, const char* type, int t, int r, const char* a,
                                    const char* b, const char* c, char** poly) {
  if (!poly) return fail(INVREL_USAGE, "null argument");
  return relation_value(cfg, type, t, r, a, b, c, [&](const auto& p) { *poly = dup(p.to_string()); });
}

invrel_status invrel_relation_terms(const invrel_config* cfg, const char* type, int t, int r, const char* a,
                                    const char* b, const char* c, long* terms) {
  if (!terms) return fail(INVREL_USAGE, "null argument");
  return relation_value(cfg, type, t, r, a, b, c, [&](const auto& p) { *terms = static_cast<long>(p.size()); });
}

}  // extern "C"
