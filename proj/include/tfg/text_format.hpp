#pragma once

// Text and json-lines encodings of every value the library exchanges.
//
// Text grammar (`#` starts a comment line, blank lines are ignored):
//   clopen set   base <p> / one LSB-first word per line | EMPTY | FULL
//   element      base <p> / <word>:<power> per line, ε for the empty word
//   point        base <p> / pre <digits|?> / per <digits>
//   boolean map  base <p> / [codomain-base <q>] / depth <d> /
//                <word> -> <w1>,<w2>,... | EMPTY | FULL
//   oracle       [base <p>] / inner <element-file> | digitwise |
//                composite <spec>;<spec>...
//   rational     <numerator>/<denominator>
// Composite results are sections introduced by `[name]` header lines.
//
// json-lines carries the same fields, one object per line. Parsers accept
// either encoding and detect json by a leading `{`.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "tfg/clopen.hpp"
#include "tfg/full_group.hpp"
#include "tfg/odometer.hpp"
#include "tfg/oracle_spec.hpp"
#include "tfg/reconstruction.hpp"
#include "tfg/toolkit.hpp"

namespace tfg {

enum class Format { Text, JsonLines };

std::string format(const ClopenSet& a, Format f = Format::Text);
std::string format(const Point& x, Format f = Format::Text);
std::string format(const FullGroupElement& g, Format f = Format::Text);
std::string format(const BooleanMap& m, Format f = Format::Text);
std::string format(const CriterionDecomposition& d, Format f = Format::Text);
std::string format(const CommutantWitness& w, Format f = Format::Text);
std::string format(const SupportExpression& e, Format f = Format::Text);
std::string format(const Rational& r, Format f = Format::Text);

/// `base` lines may be omitted when a default is supplied.
ClopenSet parse_clopen(std::string_view text, std::optional<int> default_base = {});
Point parse_point(std::string_view text, std::optional<int> default_base = {});
FullGroupElement parse_element(std::string_view text,
                               std::optional<int> default_base = {});
BooleanMap parse_boolean_map(std::string_view text,
                             std::optional<int> default_base = {});
Rational parse_rational(std::string_view text);

/// Element files named by `inner` are resolved against `directory`.
OracleSpec parse_oracle_spec(std::string_view text,
                             const std::filesystem::path& directory,
                             std::optional<int> default_base = {});

std::string read_file(const std::filesystem::path& path);

}  // namespace tfg
