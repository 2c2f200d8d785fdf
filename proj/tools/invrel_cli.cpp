// Command-line driver over the C interface.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "invrel/invrel.h"

namespace {

struct Sink {
  std::ofstream file;
  std::ostream* os = &std::cout;
};

void write_line(const char* line, void* user) {
  auto* s = static_cast<Sink*>(user);
  *s->os << line << '\n';
  s->os->flush();
}

int exit_code(invrel_status s) {
  if (s == INVREL_OK) return 0;
  std::cerr << "error: " << invrel_last_error() << '\n';
  return s == INVREL_INTERNAL ? 1 : static_cast<int>(s);
}

using ConfigPtr = std::unique_ptr<invrel_config, decltype(&invrel_config_free)>;

// Flags shared by the run commands; unset flags keep the library defaults.
struct RunFlags {
  std::vector<std::pair<std::string, std::string>> set;
  std::string out;

  void add(CLI::App* app, const std::string& key, const std::string& help) {
    app->add_option_function<std::string>(
        "--" + key, [this, key](const std::string& v) { set.emplace_back(key, v); }, help);
  }
};

void add_common(CLI::App* app, RunFlags& f) {
  f.add(app, "group", "gl, o or sp");
  f.add(app, "n", "matrix size");
  f.add(app, "d", "number of matrices");
  f.add(app, "field", "q or gf:<p>");
  f.add(app, "seed", "sampling seed");
  app->add_option("--out", f.out, "write JSON lines here instead of stdout");
}

int run(const RunFlags& f, const std::string& scope) {
  invrel_config* raw = nullptr;
  if (invrel_status s = invrel_config_new(&raw); s != INVREL_OK) return exit_code(s);
  ConfigPtr cfg(raw, invrel_config_free);
  for (const auto& [k, v] : f.set)
    if (invrel_status s = invrel_config_set(cfg.get(), k.c_str(), v.c_str()); s != INVREL_OK) return exit_code(s);
  Sink sink;
  if (!f.out.empty()) {
    sink.file.open(f.out);
    if (!sink.file) {
      std::cerr << "error: cannot write " << f.out << '\n';
      return 2;
    }
    sink.os = &sink.file;
  }
  int failures = 0;
  invrel_status s = invrel_verify(cfg.get(), scope.c_str(), write_line, &sink, &failures);
  return exit_code(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks of relations between matrix invariants of GL, O and Sp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(invrel_version()));

  std::string type;
  int t = 0, r = 0;
  auto* expand = app.add_subcommand("expand", "print sigma_{t,r} or rho_{t,r} as JSON");
  expand->add_option("--type", type, "sigma or rho")->required()->check(CLI::IsMember({"sigma", "rho"}));
  expand->add_option("--t", t, "t >= 0")->required();
  expand->add_option("--r", r, "r >= 0")->required();

  RunFlags vf;
  std::string scope;
  auto* verify = app.add_subcommand("verify", "run a verification and stream JSON lines");
  verify->add_option("scope", scope, "relations, invariance, iso or kernel")
      ->required()
      ->check(CLI::IsMember({"relations", "invariance", "iso", "kernel"}));
  add_common(verify, vf);
  vf.add(verify, "max-word-len", "longest substituted word");
  vf.add(verify, "max-tr", "relations: n < t + 2r <= n + max-tr");
  vf.add(verify, "route", "relations: auto, direct or factored");
  vf.add(verify, "maxdeg", "kernel: largest component degree");
  vf.add(verify, "cache", "kernel: directory of per-component JSON files");
  vf.add(verify, "samples", "group elements or skew matrices to sample");
  vf.add(verify, "literal", "iso: auto, on or off");
  vf.add(verify, "method", "invariance: auto, direct or certificate");
  verify->add_flag_function(
      "--timings", [&](std::int64_t) { vf.set.emplace_back("timings", "1"); }, "add millis to relation lines");

  RunFlags sf;
  auto* scaling = app.add_subcommand("scaling-check", "check that y -> z - z^T -> y scales by 2^k");
  add_common(scaling, sf);
  sf.add(scaling, "per-k", "samples per y-degree");
  sf.add(scaling, "max-k", "largest y-degree");

  RunFlags xf;
  std::string a, b, c;
  auto* value = app.add_subcommand("value", "evaluate one substituted relation");
  value->add_option("--type", type, "sigma or rho")->required()->check(CLI::IsMember({"sigma", "rho"}));
  value->add_option("--t", t, "t >= 0")->required();
  value->add_option("--r", r, "r >= 0")->required();
  value->add_option("--a", a, "word for x");
  value->add_option("--b", b, "word for y");
  value->add_option("--c", c, "word for z, 1 for the unity");
  xf.add(value, "group", "o or sp");
  xf.add(value, "n", "matrix size");
  xf.add(value, "d", "number of matrices");
  xf.add(value, "field", "q or gf:<p>");
  xf.add(value, "route", "auto, direct or factored");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (*expand) {
    char* json = nullptr;
    invrel_status s = invrel_expand(type.c_str(), t, r, &json);
    if (s != INVREL_OK) return exit_code(s);
    std::cout << json << '\n';
    invrel_string_free(json);
    return 0;
  }
  if (*verify) return run(vf, scope);
  if (*scaling) return run(sf, "scaling");

  invrel_config* raw = nullptr;
  if (invrel_status s = invrel_config_new(&raw); s != INVREL_OK) return exit_code(s);
  ConfigPtr cfg(raw, invrel_config_free);
  for (const auto& [k, v] : xf.set)
    if (invrel_status s = invrel_config_set(cfg.get(), k.c_str(), v.c_str()); s != INVREL_OK) return exit_code(s);
  char* poly = nullptr;
  invrel_status s = invrel_relation_value(cfg.get(), type.c_str(), t, r, a.c_str(), b.c_str(), c.c_str(), &poly);
  if (s != INVREL_OK) return exit_code(s);
  std::cout << poly << '\n';
  invrel_string_free(poly);
  return 0;
}
