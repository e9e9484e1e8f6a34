#include "tfg/text_format.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tfg/error.hpp"

namespace tfg {

namespace {

using nlohmann::json;

struct Line {
  std::size_t number;
  std::string text;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool starts_with_json(std::string_view text) {
  const auto t = trim(text);
  return !t.empty() && t.front() == '{';
}

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    ++number;
    const auto t = trim(text.substr(pos, end - pos));
    if (!t.empty() && t.front() != '#') out.push_back({number, std::string(t)});
    pos = end + 1;
  }
  return out;
}

// Runs `f`, turning library errors into parse errors tied to `line`.
template <class F>
auto at_line(std::size_t line, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(line, e.what());
  }
}

std::int64_t parse_int(std::string_view s, std::size_t line, const char* what) {
  std::int64_t v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError(line, std::string("invalid ") + what + " '" + std::string(s) + "'");
  return v;
}

// Value of a `<key> <value>` line, or nothing when the key differs.
std::optional<std::string_view> keyed(const Line& l, std::string_view key) {
  std::string_view t = l.text;
  if (t.size() <= key.size() || t.substr(0, key.size()) != key ||
      (t[key.size()] != ' ' && t[key.size()] != '\t'))
    return std::nullopt;
  return trim(t.substr(key.size()));
}

int read_base(const std::vector<Line>& lines, std::size_t& i,
              std::optional<int> default_base) {
  if (i < lines.size()) {
    if (auto v = keyed(lines[i], "base")) {
      const auto line = lines[i].number;
      ++i;
      const int p = static_cast<int>(parse_int(*v, line, "base"));
      at_line(line, [&] { check_base(p); });
      return p;
    }
  }
  if (default_base) return *default_base;
  throw ParseError(i < lines.size() ? lines[i].number : 0, "expected 'base <p>'");
}

ClopenSet clopen_from_lines(const std::vector<Line>& lines, std::size_t begin,
                            std::size_t end, std::optional<int> default_base) {
  std::size_t i = begin;
  std::vector<Line> sub(lines.begin() + static_cast<std::ptrdiff_t>(begin),
                        lines.begin() + static_cast<std::ptrdiff_t>(end));
  std::size_t j = 0;
  const int p = read_base(sub, j, default_base);
  i = begin + j;
  if (end - i == 1 && lines[i].text == "EMPTY") return ClopenSet::empty(p);
  if (end - i == 1 && lines[i].text == "FULL") return ClopenSet::full(p);
  std::vector<Digits> words;
  for (; i < end; ++i) {
    if (lines[i].text == "EMPTY" || lines[i].text == "FULL")
      throw ParseError(lines[i].number, lines[i].text + " must stand alone");
    words.push_back(at_line(lines[i].number, [&] { return digits_from_string(p, lines[i].text); }));
  }
  if (words.empty())
    throw ParseError(end > begin ? lines[end - 1].number : 0,
                     "no words; use EMPTY for the empty set");
  return ClopenSet::canonicalize(p, std::move(words));
}

FullGroupElement element_from_lines(const std::vector<Line>& lines, std::size_t begin,
                                    std::size_t end, std::optional<int> default_base) {
  std::vector<Line> sub(lines.begin() + static_cast<std::ptrdiff_t>(begin),
                        lines.begin() + static_cast<std::ptrdiff_t>(end));
  std::size_t i = 0;
  const int p = read_base(sub, i, default_base);
  std::vector<Cell> cells;
  for (; i < sub.size(); ++i) {
    const auto& l = sub[i];
    const auto colon = l.text.rfind(':');
    if (colon == std::string::npos)
      throw ParseError(l.number, "expected '<word>:<power>'");
    const auto word = trim(std::string_view(l.text).substr(0, colon));
    const auto power = trim(std::string_view(l.text).substr(colon + 1));
    cells.push_back(Cell{at_line(l.number, [&] { return digits_from_string(p, word); }),
                         parse_int(power, l.number, "power")});
  }
  if (cells.empty()) throw ParseError(0, "element has no table entries");
  try {
    return FullGroupElement::from_table(p, std::move(cells));
  } catch (const Error& e) {
    throw ParseError(0, std::string("invalid element table: ") + e.what());
  }
}

Point point_from_lines(const std::vector<Line>& lines, std::size_t begin,
                       std::size_t end, std::optional<int> default_base) {
  std::vector<Line> sub(lines.begin() + static_cast<std::ptrdiff_t>(begin),
                        lines.begin() + static_cast<std::ptrdiff_t>(end));
  std::size_t i = 0;
  const int p = read_base(sub, i, default_base);
  if (sub.size() - i != 2)
    throw ParseError(i < sub.size() ? sub[i].number : 0,
                     "expected 'pre <digits|?>' and 'per <digits>'");
  auto pre = keyed(sub[i], "pre");
  if (!pre) throw ParseError(sub[i].number, "expected 'pre <digits|?>'");
  auto per = keyed(sub[i + 1], "per");
  if (!per) throw ParseError(sub[i + 1].number, "expected 'per <digits>'");
  Digits pre_digits =
      *pre == "?" ? Digits{}
                  : at_line(sub[i].number, [&] { return digits_from_string(p, *pre); });
  Digits per_digits = at_line(sub[i + 1].number, [&] { return digits_from_string(p, *per); });
  return at_line(sub[i + 1].number,
                 [&] { return Point(p, std::move(pre_digits), std::move(per_digits)); });
}

json words_json(const std::vector<Digits>& words) {
  json arr = json::array();
  for (const Digits& w : words) arr.push_back(digits_to_string(w));
  return arr;
}

std::string digits_or_question(const Digits& d) {
  return d.empty() ? "?" : digits_to_string(d);
}

json clopen_json(const ClopenSet& a) {
  return {{"kind", "clopen"}, {"base", a.base()}, {"words", words_json(a.words())}};
}

json point_json(const Point& x) {
  return {{"kind", "point"},
          {"base", x.base()},
          {"pre", digits_or_question(x.preperiod())},
          {"per", digits_to_string(x.period())}};
}

json element_json(const FullGroupElement& g) {
  json table = json::array();
  for (const Cell& c : g.cells())
    table.push_back({{"word", digits_to_string(c.word)}, {"power", c.power}});
  return {{"kind", "element"}, {"base", g.base()}, {"table", table}};
}

json expression_json(const SupportExpression& e) {
  switch (e.kind) {
    case SupportExpression::Kind::Support:
      return {{"op", "support"}, {"involution", element_json(e.involution.at(0))}};
    case SupportExpression::Kind::Union:
    case SupportExpression::Kind::Intersection: {
      json args = json::array();
      for (const auto& c : e.children) args.push_back(expression_json(c));
      return {{"op", e.kind == SupportExpression::Kind::Union ? "union" : "inter"},
              {"args", args}};
    }
  }
  return {};
}

std::string set_inline(const ClopenSet& a) {
  if (a.is_empty()) return "EMPTY";
  if (a.is_full()) return "FULL";
  std::string s;
  for (const Digits& w : a.words()) {
    if (!s.empty()) s += ',';
    s += digits_to_string(w);
  }
  return s;
}

std::string json_line(const json& j) { return j.dump() + "\n"; }

template <class T>
T json_field(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(1, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(1, std::string("field '") + key + "': " + e.what());
  }
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(1, e.what());
  }
}

ClopenSet clopen_from_json(const json& j) {
  const int p = json_field<int>(j, "base");
  return at_line(1, [&] {
    std::vector<Digits> words;
    for (const auto& w : json_field<std::vector<std::string>>(j, "words"))
      words.push_back(digits_from_string(p, w));
    return ClopenSet::canonicalize(p, std::move(words));
  });
}

FullGroupElement element_from_json(const json& j) {
  const int p = json_field<int>(j, "base");
  return at_line(1, [&] {
    std::vector<Cell> cells;
    for (const auto& c : json_field<json>(j, "table"))
      cells.push_back(Cell{digits_from_string(p, json_field<std::string>(c, "word")),
                           json_field<std::int64_t>(c, "power")});
    return FullGroupElement::from_table(p, std::move(cells));
  });
}

Point point_from_json(const json& j) {
  const int p = json_field<int>(j, "base");
  const auto pre = json_field<std::string>(j, "pre");
  return at_line(1, [&] {
    return Point(p, pre == "?" ? Digits{} : digits_from_string(p, pre),
                 digits_from_string(p, json_field<std::string>(j, "per")));
  });
}

}  // namespace

std::string format(const ClopenSet& a, Format f) {
  if (f == Format::JsonLines) return json_line(clopen_json(a));
  std::string s = "base " + std::to_string(a.base()) + "\n";
  if (a.is_empty()) return s + "EMPTY\n";
  if (a.is_full()) return s + "FULL\n";
  for (const Digits& w : a.words()) s += digits_to_string(w) + "\n";
  return s;
}

std::string format(const Point& x, Format f) {
  if (f == Format::JsonLines) return json_line(point_json(x));
  return "base " + std::to_string(x.base()) + "\npre " + digits_or_question(x.preperiod()) +
         "\nper " + digits_to_string(x.period()) + "\n";
}

std::string format(const FullGroupElement& g, Format f) {
  if (f == Format::JsonLines) return json_line(element_json(g));
  std::string s = "base " + std::to_string(g.base()) + "\n";
  for (const Cell& c : g.cells())
    s += digits_to_string(c.word) + ":" + std::to_string(c.power) + "\n";
  return s;
}

std::string format(const BooleanMap& m, Format f) {
  if (f == Format::JsonLines) {
    json images = json::array();
    for (const auto& [w, img] : m.images())
      images.push_back({{"word", digits_to_string(w)}, {"set", words_json(img.words())}});
    return json_line({{"kind", "boolean-map"},
                      {"base", m.domain_base()},
                      {"codomain_base", m.codomain_base()},
                      {"depth", m.depth()},
                      {"images", images}});
  }
  std::string s = "base " + std::to_string(m.domain_base()) + "\n";
  if (m.codomain_base() != m.domain_base())
    s += "codomain-base " + std::to_string(m.codomain_base()) + "\n";
  s += "depth " + std::to_string(m.depth()) + "\n";
  for (const auto& [w, img] : m.images())
    s += digits_to_string(w) + " -> " + set_inline(img) + "\n";
  return s;
}

std::string format(const CriterionDecomposition& d, Format f) {
  if (f == Format::JsonLines)
    return json_line({{"kind", "criterion-decomposition"},
                      {"A", clopen_json(d.a)},
                      {"B", clopen_json(d.b)},
                      {"O", clopen_json(d.o)},
                      {"rho1", element_json(d.rho1)},
                      {"rho2", element_json(d.rho2)},
                      {"h", element_json(d.h)}});
  return "[A]\n" + format(d.a) + "[B]\n" + format(d.b) + "[O]\n" + format(d.o) +
         "[rho1]\n" + format(d.rho1) + "[rho2]\n" + format(d.rho2) + "[h]\n" +
         format(d.h);
}

std::string format(const CommutantWitness& w, Format f) {
  if (f == Format::JsonLines)
    return json_line({{"kind", "commutant-witness"},
                      {"rho", element_json(w.rho)},
                      {"point", point_json(w.point)},
                      {"left", point_json(w.left)},
                      {"right", point_json(w.right)}});
  return "[rho]\n" + format(w.rho) + "[point]\n" + format(w.point) + "[left]\n" +
         format(w.left) + "[right]\n" + format(w.right);
}

std::string format(const SupportExpression& e, Format f) {
  if (f == Format::JsonLines)
    return json_line({{"kind", "support-expression"}, {"expr", expression_json(e)}});
  std::vector<const FullGroupElement*> leaves;
  auto render = [&](auto& self, const SupportExpression& node) -> std::string {
    if (node.kind == SupportExpression::Kind::Support) {
      leaves.push_back(&node.involution.at(0));
      return "#" + std::to_string(leaves.size() - 1);
    }
    std::string s = node.kind == SupportExpression::Kind::Union ? "(union" : "(inter";
    for (const auto& c : node.children) s += " " + self(self, c);
    return s + ")";
  };
  std::string s = "expr " + render(render, e) + "\n";
  for (std::size_t i = 0; i < leaves.size(); ++i)
    s += "[pi" + std::to_string(i) + "]\n" + format(*leaves[i]);
  return s;
}

std::string format(const Rational& r, Format f) {
  if (f == Format::JsonLines) return json_line({{"kind", "rational"}, {"value", to_string(r)}});
  return to_string(r) + "\n";
}

ClopenSet parse_clopen(std::string_view text, std::optional<int> default_base) {
  if (starts_with_json(text)) return clopen_from_json(parse_json(text));
  const auto lines = content_lines(text);
  return clopen_from_lines(lines, 0, lines.size(), default_base);
}

Point parse_point(std::string_view text, std::optional<int> default_base) {
  if (starts_with_json(text)) return point_from_json(parse_json(text));
  const auto lines = content_lines(text);
  return point_from_lines(lines, 0, lines.size(), default_base);
}

FullGroupElement parse_element(std::string_view text, std::optional<int> default_base) {
  if (starts_with_json(text)) return element_from_json(parse_json(text));
  const auto lines = content_lines(text);
  return element_from_lines(lines, 0, lines.size(), default_base);
}

BooleanMap parse_boolean_map(std::string_view text, std::optional<int> default_base) {
  if (starts_with_json(text)) {
    const json j = parse_json(text);
    const int p = json_field<int>(j, "base");
    const int q = j.contains("codomain_base") ? json_field<int>(j, "codomain_base") : p;
    const auto depth = json_field<std::size_t>(j, "depth");
    return at_line(1, [&] {
      std::map<Digits, ClopenSet> images;
      for (const auto& entry : json_field<json>(j, "images")) {
        std::vector<Digits> words;
        for (const auto& w : json_field<std::vector<std::string>>(entry, "set"))
          words.push_back(digits_from_string(q, w));
        images.emplace(digits_from_string(p, json_field<std::string>(entry, "word")),
                       ClopenSet::canonicalize(q, std::move(words)));
      }
      return BooleanMap(p, q, depth, std::move(images));
    });
  }

  const auto lines = content_lines(text);
  std::size_t i = 0;
  const int p = read_base(lines, i, default_base);
  int q = p;
  if (i < lines.size())
    if (auto v = keyed(lines[i], "codomain-base")) {
      q = static_cast<int>(parse_int(*v, lines[i].number, "codomain base"));
      at_line(lines[i].number, [&] { check_base(q); });
      ++i;
    }
  if (i >= lines.size()) throw ParseError(0, "expected 'depth <d>'");
  const auto depth_value = keyed(lines[i], "depth");
  if (!depth_value) throw ParseError(lines[i].number, "expected 'depth <d>'");
  const auto depth = parse_int(*depth_value, lines[i].number, "depth");
  if (depth < 0) throw ParseError(lines[i].number, "depth must be non-negative");
  ++i;

  std::map<Digits, ClopenSet> images;
  for (; i < lines.size(); ++i) {
    const auto& l = lines[i];
    const auto arrow = l.text.find("->");
    if (arrow == std::string::npos)
      throw ParseError(l.number, "expected '<word> -> <words>'");
    const auto key = trim(std::string_view(l.text).substr(0, arrow));
    const auto rhs = trim(std::string_view(l.text).substr(arrow + 2));
    ClopenSet img = at_line(l.number, [&] {
      if (rhs == "EMPTY") return ClopenSet::empty(q);
      if (rhs == "FULL") return ClopenSet::full(q);
      std::vector<Digits> words;
      std::size_t pos = 0;
      while (pos <= rhs.size()) {
        const auto comma = std::min(rhs.find(',', pos), rhs.size());
        words.push_back(digits_from_string(q, trim(rhs.substr(pos, comma - pos))));
        pos = comma + 1;
      }
      return ClopenSet::canonicalize(q, std::move(words));
    });
    Digits w = at_line(l.number, [&] { return digits_from_string(p, key); });
    if (w.size() != static_cast<std::size_t>(depth))
      throw ParseError(l.number, "word length differs from the map depth");
    if (!images.emplace(std::move(w), std::move(img)).second)
      throw ParseError(l.number, "duplicate image");
  }
  return at_line(0, [&] {
    return BooleanMap(p, q, static_cast<std::size_t>(depth), std::move(images));
  });
}

Rational parse_rational(std::string_view text) {
  auto t = trim(text);
  std::string value;
  if (starts_with_json(t)) {
    value = json_field<std::string>(parse_json(t), "value");
    t = trim(value);
  }
  const auto slash = t.find('/');
  const auto num_text = std::string(trim(t.substr(0, slash)));
  const auto den_text =
      slash == std::string_view::npos ? std::string("1") : std::string(trim(t.substr(slash + 1)));
  try {
    const BigInt num(num_text);
    const BigInt den(den_text);
    if (den == 0) throw ParseError(1, "zero denominator");
    return den < 0 ? Rational(-num, -den) : Rational(num, den);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError(1, "invalid rational '" + std::string(t) + "'");
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::InvalidArgument, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

OracleSpec parse_oracle_spec(std::string_view text, const std::filesystem::path& directory,
                             std::optional<int> default_base) {
  const auto lines = content_lines(text);
  std::size_t i = 0;
  std::optional<int> base;
  if (i < lines.size() && keyed(lines[i], "base")) base = read_base(lines, i, std::nullopt);
  if (lines.size() - i != 1)
    throw ParseError(i < lines.size() ? lines[i].number : 0,
                     "expected exactly one oracle line");
  const Line& l = lines[i];

  auto single = [&](std::string_view part) -> OracleSpec {
    part = trim(part);
    if (part == "digitwise") {
      const auto p = base ? base : default_base;
      if (!p) throw ParseError(l.number, "digitwise oracle needs a base");
      return OracleSpec{DigitwiseSpec{*p}};
    }
    if (part.substr(0, 6) == "inner ") {
      const auto file = directory / std::string(trim(part.substr(6)));
      const std::string content = at_line(l.number, [&] { return read_file(file); });
      try {
        return OracleSpec{InnerSpec{parse_element(content, base ? base : default_base)}};
      } catch (const ParseError& e) {
        throw ParseError(l.number, file.string() + ": " + e.what());
      }
    }
    throw ParseError(l.number, "unknown oracle '" + std::string(part) + "'");
  };

  const std::string_view t = l.text;
  if (t.substr(0, 10) == "composite ") {
    CompositeSpec c;
    std::string_view rest = t.substr(10);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const auto semi = std::min(rest.find(';', pos), rest.size());
      c.parts.push_back(single(rest.substr(pos, semi - pos)));
      pos = semi + 1;
    }
    OracleSpec spec{std::move(c)};
    at_line(l.number, [&] { return spec.base(); });
    return spec;
  }
  return single(t);
}

}  // namespace tfg
