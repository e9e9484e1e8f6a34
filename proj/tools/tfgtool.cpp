// Command-line front end. Talks to the library only through tfg.h.
//
// Exit status: 0 success or true, 1 checked-false (explanation on stdout),
// 2 input errors (diagnostics on stderr).

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tfg/tfg.h"

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitInput = 2;

struct Failure {
  int exit_code;
  std::string message;
};

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};

using Clopen = std::unique_ptr<tfg_clopen, Deleter<tfg_clopen, tfg_clopen_free>>;
using PointH = std::unique_ptr<tfg_point, Deleter<tfg_point, tfg_point_free>>;
using Element = std::unique_ptr<tfg_element, Deleter<tfg_element, tfg_element_free>>;
using Oracle = std::unique_ptr<tfg_oracle, Deleter<tfg_oracle, tfg_oracle_free>>;
using Map = std::unique_ptr<tfg_boolean_map, Deleter<tfg_boolean_map, tfg_boolean_map_free>>;
using Rng = std::unique_ptr<tfg_rng, Deleter<tfg_rng, tfg_rng_free>>;
using Text = std::unique_ptr<char, Deleter<char, tfg_string_free>>;

// Statuses that mean "the checked property does not hold" rather than bad input.
bool is_checked_false(int status) {
  return status == TFG_ERR_NOT_SPATIALLY_CONSISTENT ||
         status == TFG_ERR_ORACLE_INCONSISTENCY || status == TFG_ERR_RESOLUTION;
}

void check(int status, const std::string& context = {}) {
  if (status == TFG_OK) return;
  std::string msg = context.empty() ? "" : context + ": ";
  msg += tfg_status_name(status);
  msg += ": ";
  msg += tfg_last_error();
  throw Failure{is_checked_false(status) ? kExitFalse : kExitInput, msg};
}

struct Options {
  int base = 0;
  std::size_t depth = 0;
  bool depth_given = false;
  std::uint64_t seed = 1;
  std::size_t samples = 10;
  std::string format = "text";
  std::vector<std::string> inputs;
  std::string set_file;
  std::string oracle_file;
  std::string map_file;
  std::string op;
  std::string kind;
  std::vector<std::string> tests;
};

int format_code(const Options& o) {
  return o.format == "json-lines" ? TFG_FORMAT_JSON_LINES : TFG_FORMAT_TEXT;
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitInput, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Clopen load_set(const Options& o, const std::string& path) {
  tfg_clopen* out = nullptr;
  check(tfg_clopen_parse(read_input(path).c_str(), o.base, &out), path);
  return Clopen(out);
}

Element load_element(const Options& o, const std::string& path) {
  tfg_element* out = nullptr;
  check(tfg_element_parse(read_input(path).c_str(), o.base, &out), path);
  return Element(out);
}

PointH load_point(const Options& o, const std::string& path) {
  tfg_point* out = nullptr;
  check(tfg_point_parse(read_input(path).c_str(), o.base, &out), path);
  return PointH(out);
}

Oracle load_oracle(const Options& o) {
  if (o.oracle_file.empty()) throw Failure{kExitInput, "--oracle is required"};
  const auto dir = std::filesystem::path(o.oracle_file).parent_path();
  tfg_oracle* out = nullptr;
  check(tfg_oracle_parse(read_input(o.oracle_file).c_str(),
                         dir.empty() ? "." : dir.c_str(), o.base, &out),
        o.oracle_file);
  return Oracle(out);
}

Map load_map(const Options& o) {
  if (o.map_file.empty()) throw Failure{kExitInput, "--map is required"};
  tfg_boolean_map* out = nullptr;
  check(tfg_boolean_map_parse(read_input(o.map_file).c_str(), o.base, &out), o.map_file);
  return Map(out);
}

const std::string& input(const Options& o, std::size_t i, const char* what) {
  if (o.inputs.size() <= i) throw Failure{kExitInput, std::string("missing ") + what};
  return o.inputs[i];
}

const std::string& set_path(const Options& o, std::size_t positional) {
  if (!o.set_file.empty()) return o.set_file;
  return input(o, positional, "clopen set file");
}

std::string take(char* s) { return s == nullptr ? std::string() : std::string(Text(s).get()); }

template <class Handle, class Fmt>
int print(const Handle* h, Fmt fmt, const Options& o) {
  char* out = nullptr;
  check(fmt(h, format_code(o), &out));
  std::cout << take(out);
  return kExitTrue;
}

int print_set(const Clopen& a, const Options& o) { return print(a.get(), tfg_clopen_format, o); }
int print_element(const Element& g, const Options& o) {
  return print(g.get(), tfg_element_format, o);
}

// Boolean verdicts: `true`/`false` plus an optional reason, or one json object.
int verdict(bool value, const Options& o, const std::string& reason = {},
            const std::string& payload = {}) {
  if (format_code(o) == TFG_FORMAT_JSON_LINES) {
    nlohmann::json j{{"kind", "verdict"}, {"result", value}};
    if (!reason.empty()) j["reason"] = reason;
    std::cout << j.dump() << "\n" << payload;
  } else {
    std::cout << (value ? "true" : "false") << "\n";
    if (!reason.empty()) std::cout << "reason " << reason << "\n";
    std::cout << payload;
  }
  return value ? kExitTrue : kExitFalse;
}

// Checks that fail by raising a "checked-false" status still print a verdict.
int verdict_from(int status, const Options& o) {
  if (is_checked_false(status))
    return verdict(false, o, std::string(tfg_status_name(status)) + ": " + tfg_last_error());
  check(status);
  return kExitTrue;
}

// With --depth, the set is listed by its depth-d cylinders instead.
int cmd_canon(const Options& o) {
  const Clopen a = load_set(o, input(o, 0, "set file"));
  if (!o.depth_given) return print_set(a, o);
  const int base = tfg_clopen_base(a.get());
  char* listing = nullptr;
  check(tfg_clopen_refine(a.get(), o.depth, &listing));
  std::istringstream lines(take(listing));
  std::vector<std::string> words;
  for (std::string w; std::getline(lines, w);) words.push_back(w);
  if (format_code(o) == TFG_FORMAT_JSON_LINES) {
    std::cout << nlohmann::json{{"kind", "clopen"}, {"base", base}, {"words", words}}.dump()
              << "\n";
  } else {
    std::cout << "base " << base << "\n";
    if (words.empty()) std::cout << "EMPTY\n";
    for (const auto& w : words) std::cout << w << "\n";
  }
  return kExitTrue;
}

int cmd_bool(const Options& o) {
  const Clopen a = load_set(o, input(o, 0, "first set file"));
  tfg_clopen* out = nullptr;
  if (o.op == "complement") {
    check(tfg_clopen_complement(a.get(), &out));
  } else {
    const Clopen b = load_set(o, input(o, 1, "second set file"));
    if (o.op == "union") check(tfg_clopen_union(a.get(), b.get(), &out));
    else if (o.op == "intersect") check(tfg_clopen_intersection(a.get(), b.get(), &out));
    else if (o.op == "diff") check(tfg_clopen_difference(a.get(), b.get(), &out));
    else throw Failure{kExitInput, "unknown operation '" + o.op + "'"};
  }
  return print_set(Clopen(out), o);
}

int cmd_compose(const Options& o) {
  const Element g = load_element(o, input(o, 0, "first element file"));
  const Element h = load_element(o, input(o, 1, "second element file"));
  tfg_element* out = nullptr;
  check(tfg_element_compose(g.get(), h.get(), &out));
  return print_element(Element(out), o);
}

int cmd_invert(const Options& o) {
  const Element g = load_element(o, input(o, 0, "element file"));
  tfg_element* out = nullptr;
  check(tfg_element_invert(g.get(), &out));
  return print_element(Element(out), o);
}

int cmd_support(const Options& o) {
  const Element g = load_element(o, input(o, 0, "element file"));
  tfg_clopen* out = nullptr;
  check(tfg_element_support(g.get(), &out));
  return print_set(Clopen(out), o);
}

int cmd_is_involution(const Options& o) {
  const Element g = load_element(o, input(o, 0, "element file"));
  int yes = 0;
  check(tfg_element_is_involution(g.get(), &yes));
  if (yes) return verdict(true, o);
  int order = 0;
  check(tfg_element_order_upto(g.get(), 2, &order));
  return verdict(false, o, order == 1 ? "identity has order 1" : "square is not the identity");
}

int cmd_make_involution(const Options& o) {
  const Clopen a = load_set(o, set_path(o, 0));
  tfg_element* out = nullptr;
  check(tfg_make_involution(a.get(), &out));
  return print_element(Element(out), o);
}

int cmd_express_supports(const Options& o) {
  const Clopen a = load_set(o, set_path(o, 0));
  char* out = nullptr;
  check(tfg_express_supports(a.get(), format_code(o), &out, nullptr));
  std::cout << take(out);
  return kExitTrue;
}

int cmd_in_gamma(const Options& o) {
  const Element g = load_element(o, input(o, 0, "element file"));
  const Clopen v = load_set(o, set_path(o, 1));
  int yes = 0;
  check(tfg_in_gamma(g.get(), v.get(), &yes));
  return verdict(yes != 0, o, yes ? "" : "support is not inside the set");
}

int cmd_commutant_check(const Options& o) {
  const Element g = load_element(o, input(o, 0, "element file"));
  const Clopen v = load_set(o, set_path(o, 1));
  int yes = 0;
  char* witness = nullptr;
  check(tfg_commutant_check(g.get(), v.get(), format_code(o), &yes, &witness));
  return verdict(yes != 0, o, yes ? "" : "does not commute with the witness involution",
                 take(witness));
}

int cmd_in_r(const Options& o) {
  const Element g = load_element(o, input(o, 0, "element file"));
  const Clopen v = load_set(o, set_path(o, 1));
  int member = 0;
  tfg_element* inside = nullptr;
  tfg_element* outside = nullptr;
  check(tfg_in_r(g.get(), v.get(), &member, &inside, &outside));
  if (!member) return verdict(false, o, "element does not preserve the set");
  const Element in(inside);
  const Element out(outside);
  char* in_text = nullptr;
  char* out_text = nullptr;
  check(tfg_element_format(in.get(), format_code(o), &in_text));
  const std::string in_str = take(in_text);
  check(tfg_element_format(out.get(), format_code(o), &out_text));
  const std::string out_str = take(out_text);
  const bool text = format_code(o) == TFG_FORMAT_TEXT;
  return verdict(true, o, {},
                 (text ? "[inside]\n" : "") + in_str + (text ? "[outside]\n" : "") + out_str);
}

int cmd_criterion_decompose(const Options& o) {
  const Element pi = load_element(o, input(o, 0, "involution file"));
  const Clopen v = load_set(o, set_path(o, 1));
  char* out = nullptr;
  check(tfg_criterion_decompose(pi.get(), v.get(), format_code(o), &out, nullptr));
  std::cout << take(out);
  return kExitTrue;
}

int cmd_criterion_check(const Options& o) {
  const Element h = load_element(o, input(o, 0, "involution file"));
  const Clopen v = load_set(o, set_path(o, 1));
  int holds = 0;
  check(tfg_criterion_check(h.get(), v.get(), o.depth_given ? o.depth : 6, &holds));
  return verdict(holds != 0, o, holds ? "" : "a sample violates condition (i) or (ii)");
}

int cmd_lambda(const Options& o) {
  const Oracle alpha = load_oracle(o);
  const Clopen v = load_set(o, set_path(o, 0));
  tfg_clopen* out = nullptr;
  const int status =
      tfg_lambda(alpha.get(), v.get(), o.depth_given ? o.depth : 4, &out);
  if (status != TFG_OK) return verdict_from(status, o);
  return print_set(Clopen(out), o);
}

int cmd_reconstruct(const Options& o) {
  const Oracle alpha = load_oracle(o);
  tfg_boolean_map* out = nullptr;
  const int status = tfg_reconstruct(alpha.get(), o.depth_given ? o.depth : 4, &out);
  if (status != TFG_OK) return verdict_from(status, o);
  return print(Map(out).get(), tfg_boolean_map_format, o);
}

int cmd_verify_wpi(const Options& o) {
  const Oracle alpha = load_oracle(o);
  const Element pi = load_element(o, input(o, 0, "involution file"));
  int ok = 0;
  char* detail = nullptr;
  const int status = tfg_verify_wpi(alpha.get(), pi.get(), o.samples, o.seed, &ok, &detail);
  if (status != TFG_OK) return verdict_from(status, o);
  return verdict(ok != 0, o, take(detail));
}

std::vector<Element> test_elements(const Options& o, int base, std::size_t max_depth) {
  std::vector<Element> tests;
  for (const auto& path : o.tests) tests.push_back(load_element(o, path));
  if (!o.tests.empty()) return tests;
  for (std::int64_t n : {1, -1}) {
    tfg_element* g = nullptr;
    check(tfg_element_shift(base, n, &g));
    tests.emplace_back(g);
  }
  tfg_rng* raw = nullptr;
  check(tfg_rng_create(o.seed, &raw));
  const Rng rng(raw);
  for (std::size_t i = 0; i < o.samples; ++i) {
    tfg_element* g = nullptr;
    check(tfg_element_random(base, max_depth, rng.get(), &g));
    tests.emplace_back(g);
  }
  return tests;
}

int map_base(const Map& m) {
  char* text = nullptr;
  check(tfg_boolean_map_format(m.get(), TFG_FORMAT_JSON_LINES, &text));
  return nlohmann::json::parse(take(text)).at("base").get<int>();
}

int cmd_verify_conjugacy(const Options& o) {
  const Oracle alpha = load_oracle(o);
  const Map m = load_map(o);
  const auto tests =
      test_elements(o, map_base(m), o.depth_given ? o.depth : tfg_boolean_map_depth(m.get()));
  std::vector<const tfg_element*> raw;
  for (const auto& t : tests) raw.push_back(t.get());
  int ok = 0;
  char* detail = nullptr;
  const int status =
      tfg_verify_conjugacy(alpha.get(), m.get(), raw.data(), raw.size(), &ok, &detail);
  if (status != TFG_OK) return verdict_from(status, o);
  return verdict(ok != 0, o, take(detail));
}

int cmd_verify_oe(const Options& o) {
  const Oracle alpha = load_oracle(o);
  const Map m = load_map(o);
  const int base = map_base(m);
  std::vector<PointH> points;
  std::vector<Element> elements;
  if (!o.inputs.empty()) {
    if (o.inputs.size() % 2 != 0)
      throw Failure{kExitInput, "expected <point-file> <element-file> pairs"};
    for (std::size_t i = 0; i < o.inputs.size(); i += 2) {
      points.push_back(load_point(o, o.inputs[i]));
      elements.push_back(load_element(o, o.inputs[i + 1]));
    }
  } else {
    tfg_rng* raw = nullptr;
    check(tfg_rng_create(o.seed, &raw));
    const Rng rng(raw);
    const std::size_t max_depth = o.depth_given ? o.depth : tfg_boolean_map_depth(m.get());
    for (std::size_t i = 0; i < o.samples; ++i) {
      tfg_point* x = nullptr;
      check(tfg_point_random(base, 4, 4, rng.get(), &x));
      points.emplace_back(x);
      tfg_element* g = nullptr;
      check(tfg_element_random(base, max_depth, rng.get(), &g));
      elements.emplace_back(g);
    }
  }
  std::vector<const tfg_point*> xs;
  std::vector<const tfg_element*> gs;
  for (const auto& x : points) xs.push_back(x.get());
  for (const auto& g : elements) gs.push_back(g.get());
  int ok = 0;
  char* detail = nullptr;
  const int status = tfg_verify_orbit_equivalence(alpha.get(), m.get(), xs.data(), gs.data(),
                                                  xs.size(), &ok, &detail);
  if (status != TFG_OK) return verdict_from(status, o);
  return verdict(ok != 0, o, take(detail));
}

int cmd_same_orbit(const Options& o) {
  const PointH x = load_point(o, input(o, 0, "first point file"));
  const PointH y = load_point(o, input(o, 1, "second point file"));
  int found = 0;
  std::int64_t n = 0;
  check(tfg_same_orbit(x.get(), y.get(), &found, &n));
  if (format_code(o) == TFG_FORMAT_JSON_LINES) {
    nlohmann::json j{{"kind", "same-orbit"}, {"result", found != 0}};
    if (found) j["power"] = n;
    std::cout << j.dump() << "\n";
  } else if (found) {
    std::cout << n << "\n";
  } else {
    std::cout << "absent\n";
  }
  return found ? kExitTrue : kExitFalse;
}

int cmd_measure(const Options& o) {
  const Clopen a = load_set(o, set_path(o, 0));
  char* out = nullptr;
  check(tfg_clopen_measure(a.get(), format_code(o), &out));
  std::cout << take(out);
  return kExitTrue;
}

int cmd_random(const Options& o) {
  if (o.base == 0) throw Failure{kExitInput, "--base is required"};
  tfg_rng* raw = nullptr;
  check(tfg_rng_create(o.seed, &raw));
  const Rng rng(raw);
  const std::size_t depth = o.depth_given ? o.depth : 4;
  if (o.kind == "set") {
    tfg_clopen* a = nullptr;
    check(tfg_clopen_random(o.base, depth, rng.get(), &a));
    return print_set(Clopen(a), o);
  }
  if (o.kind == "element" || o.kind == "involution") {
    tfg_element* g = nullptr;
    check(o.kind == "element" ? tfg_element_random(o.base, depth, rng.get(), &g)
                              : tfg_involution_random(o.base, depth, rng.get(), &g));
    return print_element(Element(g), o);
  }
  if (o.kind == "point") {
    tfg_point* x = nullptr;
    check(tfg_point_random(o.base, depth, depth, rng.get(), &x));
    return print(PointH(x).get(), tfg_point_format, o);
  }
  throw Failure{kExitInput, "unknown kind '" + o.kind + "'"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topological full groups of base-p odometers"};
  app.require_subcommand(1);

  Options o;
  std::function<int(const Options&)> run;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--base", o.base, "Base used when a file has no 'base' line")
        ->check(CLI::Range(2, 36));
    sub->add_option_function<std::size_t>(
        "--depth", [&](const std::size_t& d) { o.depth = d; o.depth_given = true; },
        "Refinement depth");
    sub->add_option("--seed", o.seed, "Seed for randomized inputs");
    sub->add_option("--samples", o.samples, "Number of random samples");
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"text", "json-lines"}));
  };
  auto command = [&](const char* name, const char* help, int (*fn)(const Options&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub);
    sub->callback([&run, fn] { run = fn; });
    return sub;
  };
  auto with_inputs = [&](CLI::App* sub, const char* what) {
    sub->add_option("inputs", o.inputs, what);
    return sub;
  };
  auto with_set = [&](CLI::App* sub) {
    sub->add_option("--set", o.set_file, "Clopen set file");
    return sub;
  };
  auto with_oracle = [&](CLI::App* sub) {
    sub->add_option("--oracle", o.oracle_file, "Oracle description file")->required();
    return sub;
  };

  with_inputs(command("canon", "Canonical form of a clopen set", cmd_canon), "Set file");
  {
    auto* sub = command("bool", "Boolean operation on clopen sets", cmd_bool);
    sub->add_option("op", o.op, "union | intersect | complement | diff")
        ->required()
        ->check(CLI::IsMember({"union", "intersect", "complement", "diff"}));
    with_inputs(sub, "Set files");
  }
  with_inputs(command("compose", "x -> g(h(x))", cmd_compose), "Element files g h");
  with_inputs(command("invert", "Inverse element", cmd_invert), "Element file");
  with_inputs(command("support", "Support of an element", cmd_support), "Element file");
  with_inputs(command("is-involution", "Order exactly 2?", cmd_is_involution), "Element file");
  with_set(with_inputs(
      command("make-involution", "Involution supported in a set", cmd_make_involution),
      "Set file"));
  with_set(with_inputs(command("express-supports",
                               "Write a set through involution supports",
                               cmd_express_supports),
                       "Set file"));
  with_set(with_inputs(command("in-gamma", "Support inside V?", cmd_in_gamma),
                       "Element file [set file]"));
  with_set(with_inputs(
      command("commutant-check", "Member of the commutant of Gamma_V?", cmd_commutant_check),
      "Element file [set file]"));
  with_set(with_inputs(command("in-r", "Member of <Gamma_V, Gamma_{X-V}>?", cmd_in_r),
                       "Element file [set file]"));
  with_set(with_inputs(command("criterion-decompose", "Decompose h = pi rho1 rho2",
                               cmd_criterion_decompose),
                       "Involution file [set file]"));
  with_set(with_inputs(command("criterion-check", "Check conditions (i) and (ii)",
                               cmd_criterion_check),
                       "Involution file [set file]"));
  with_oracle(with_set(with_inputs(
      command("lambda", "Image of a clopen set under the reconstructed map", cmd_lambda),
      "Set file")));
  with_oracle(command("reconstruct", "Reconstruct the cylinder map", cmd_reconstruct));
  with_oracle(with_inputs(
      command("verify-wpi", "Check the W_pi correspondence", cmd_verify_wpi),
      "Involution file"));
  {
    auto* sub = with_oracle(command("verify-conjugacy", "Check alpha(g) Lambda = Lambda g",
                                    cmd_verify_conjugacy));
    sub->add_option("--map", o.map_file, "Boolean map file")->required();
    sub->add_option("--test", o.tests, "Test element file (repeatable)");
  }
  {
    auto* sub = with_oracle(with_inputs(
        command("verify-oe", "Check that Lambda carries orbits to orbits", cmd_verify_oe),
        "Point and element file pairs"));
    sub->add_option("--map", o.map_file, "Boolean map file")->required();
  }
  with_inputs(command("same-orbit", "Offset n with y = x + n", cmd_same_orbit),
              "Point files x y");
  with_set(with_inputs(command("measure", "Invariant measure of a set", cmd_measure),
                       "Set file"));
  {
    auto* sub = command("random", "Seeded random object", cmd_random);
    sub->add_option("kind", o.kind, "set | element | involution | point")
        ->required()
        ->check(CLI::IsMember({"set", "element", "involution", "point"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    return run(o);
  } catch (const Failure& f) {
    if (f.exit_code == kExitFalse) return verdict(false, o, f.message);
    std::cerr << "tfgtool: " << f.message << "\n";
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "tfgtool: " << e.what() << "\n";
    return kExitInput;
  }
}
