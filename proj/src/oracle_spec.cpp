#include "tfg/oracle_spec.hpp"

#include <memory>

#include "tfg/error.hpp"

namespace tfg {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

FullGroupElement forward(const OracleSpec& spec, const FullGroupElement& g) {
  return std::visit(
      overloaded{
          [&](const InnerSpec& s) { return conjugate(s.conjugator, g); },
          [&](const DigitwiseSpec&) { return digit_flip(g); },
          [&](const CompositeSpec& s) {
            FullGroupElement acc = g;
            for (auto it = s.parts.rbegin(); it != s.parts.rend(); ++it)
              acc = forward(*it, acc);
            return acc;
          }},
      spec.kind);
}

// The spec whose hidden map is the inverse one.
OracleSpec inverse_of(const OracleSpec& spec) {
  return std::visit(
      overloaded{
          [](const InnerSpec& s) { return OracleSpec{InnerSpec{invert(s.conjugator)}}; },
          [](const DigitwiseSpec& s) { return OracleSpec{s}; },
          [](const CompositeSpec& s) {
            CompositeSpec inv;
            for (auto it = s.parts.rbegin(); it != s.parts.rend(); ++it)
              inv.parts.push_back(inverse_of(*it));
            return OracleSpec{std::move(inv)};
          }},
      spec.kind);
}

}  // namespace

int OracleSpec::base() const {
  return std::visit(
      overloaded{[](const InnerSpec& s) { return s.conjugator.base(); },
                 [](const DigitwiseSpec& s) { return s.base; },
                 [](const CompositeSpec& s) {
                   if (s.parts.empty())
                     fail(ErrorCode::InvalidArgument, "empty composite oracle");
                   const int b = s.parts.front().base();
                   for (const auto& part : s.parts)
                     if (part.base() != b)
                       fail(ErrorCode::Representation,
                            "composite oracle mixes bases");
                   return b;
                 }},
      kind);
}

IsomorphismOracle OracleSpec::oracle() const {
  const int b = base();
  // The oracle owns copies so it stays valid after the spec is gone.
  auto self = std::make_shared<const OracleSpec>(*this);
  auto inverse = std::make_shared<const OracleSpec>(inverse_of(*this));
  return IsomorphismOracle{
      b, b,
      [self](const FullGroupElement& g) { return forward(*self, g); },
      [inverse](const FullGroupElement& g) { return forward(*inverse, g); }};
}

ClopenSet OracleSpec::hidden_image(const ClopenSet& a) const {
  return std::visit(
      overloaded{[&](const InnerSpec& s) { return image(s.conjugator, a); },
                 [&](const DigitwiseSpec&) { return digit_flip(a); },
                 [&](const CompositeSpec& s) {
                   ClopenSet acc = a;
                   for (auto it = s.parts.rbegin(); it != s.parts.rend(); ++it)
                     acc = it->hidden_image(acc);
                   return acc;
                 }},
      kind);
}

}  // namespace tfg
