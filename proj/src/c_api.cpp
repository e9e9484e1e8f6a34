#include "tfg/tfg.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "tfg/clopen.hpp"
#include "tfg/error.hpp"
#include "tfg/full_group.hpp"
#include "tfg/odometer.hpp"
#include "tfg/oracle_spec.hpp"
#include "tfg/random.hpp"
#include "tfg/reconstruction.hpp"
#include "tfg/text_format.hpp"
#include "tfg/toolkit.hpp"

struct tfg_clopen {
  tfg::ClopenSet value;
};
struct tfg_point {
  tfg::Point value;
};
struct tfg_element {
  tfg::FullGroupElement value;
};
struct tfg_oracle {
  tfg::IsomorphismOracle value;
};
struct tfg_boolean_map {
  tfg::BooleanMap value;
};
struct tfg_rng {
  tfg::Rng value;
};

namespace {

thread_local std::string last_error;
thread_local std::size_t last_error_line = 0;

int status_of(tfg::ErrorCode code) {
  switch (code) {
    case tfg::ErrorCode::Parse: return TFG_ERR_PARSE;
    case tfg::ErrorCode::Representation: return TFG_ERR_REPRESENTATION;
    case tfg::ErrorCode::Depth: return TFG_ERR_DEPTH;
    case tfg::ErrorCode::Precondition: return TFG_ERR_PRECONDITION;
    case tfg::ErrorCode::Invariance: return TFG_ERR_INVARIANCE;
    case tfg::ErrorCode::NotSpatiallyConsistent: return TFG_ERR_NOT_SPATIALLY_CONSISTENT;
    case tfg::ErrorCode::OracleInconsistency: return TFG_ERR_ORACLE_INCONSISTENCY;
    case tfg::ErrorCode::Resolution: return TFG_ERR_RESOLUTION;
    case tfg::ErrorCode::InvalidArgument: return TFG_ERR_INVALID_ARGUMENT;
  }
  return TFG_ERR_INTERNAL;
}

int record(int status, const char* message, std::size_t line = 0) {
  last_error = message;
  last_error_line = line;
  return status;
}

// Runs `f`, mapping every exception to a status code.
template <class F>
int guarded(F&& f) noexcept {
  try {
    last_error.clear();
    last_error_line = 0;
    f();
    return TFG_OK;
  } catch (const tfg::ParseError& e) {
    return record(TFG_ERR_PARSE, e.what(), e.line());
  } catch (const tfg::Error& e) {
    return record(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return record(TFG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(TFG_ERR_INTERNAL, e.what());
  } catch (...) {
    return record(TFG_ERR_INTERNAL, "unknown failure");
  }
}

template <class... Ps>
void require(const Ps*... ptrs) {
  if (((ptrs == nullptr) || ...))
    tfg::fail(tfg::ErrorCode::InvalidArgument, "null argument");
}

tfg::Format format_of(int f) {
  if (f == TFG_FORMAT_TEXT) return tfg::Format::Text;
  if (f == TFG_FORMAT_JSON_LINES) return tfg::Format::JsonLines;
  tfg::fail(tfg::ErrorCode::InvalidArgument, "unknown format " + std::to_string(f));
}

std::optional<int> base_of(int default_base) {
  if (default_base <= 0) return std::nullopt;
  tfg::check_base(default_base);
  return default_base;
}

char* copy_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

template <class Handle, class T>
void emit(Handle** out, T&& value) {
  *out = new Handle{std::forward<T>(value)};
}

// Adapts caller functions to the engine's oracle interface.
struct CallbackOracle {
  tfg_element_fn fn;
  void* user;

  tfg::FullGroupElement operator()(const tfg::FullGroupElement& g) const {
    if (fn == nullptr) tfg::fail(tfg::ErrorCode::InvalidArgument, "oracle callback missing");
    const tfg_element in{g};
    tfg_element* out = nullptr;
    const int status = fn(user, &in, &out);
    std::unique_ptr<tfg_element> owned(out);
    if (status != TFG_OK || !owned)
      throw std::runtime_error("oracle callback returned status " + std::to_string(status));
    return owned->value;
  }
};

void same_base(const tfg::FullGroupElement& g, int base) {
  if (g.base() != base)
    tfg::fail(tfg::ErrorCode::Representation, "arguments over different bases");
}

template <class Op>
int binary_set_op(const tfg_clopen* a, const tfg_clopen* b, tfg_clopen** out, Op op) {
  return guarded([&] {
    require(a, b, out);
    if (a->value.base() != b->value.base())
      tfg::fail(tfg::ErrorCode::Representation, "clopen sets over different bases");
    emit(out, op(a->value, b->value));
  });
}

void report(const tfg::CheckReport& r, int* ok, char** detail) {
  *ok = r.ok ? 1 : 0;
  if (detail != nullptr) *detail = r.ok ? nullptr : copy_string(r.detail);
}

}  // namespace

extern "C" {

const char* tfg_last_error(void) { return last_error.c_str(); }
size_t tfg_last_error_line(void) { return last_error_line; }

const char* tfg_status_name(int status) {
  switch (status) {
    case TFG_OK: return "ok";
    case TFG_ERR_PARSE: return "parse error";
    case TFG_ERR_REPRESENTATION: return "representation error";
    case TFG_ERR_DEPTH: return "depth error";
    case TFG_ERR_PRECONDITION: return "precondition error";
    case TFG_ERR_INVARIANCE: return "invariance error";
    case TFG_ERR_NOT_SPATIALLY_CONSISTENT: return "not spatially consistent";
    case TFG_ERR_ORACLE_INCONSISTENCY: return "oracle inconsistency";
    case TFG_ERR_RESOLUTION: return "resolution error";
    case TFG_ERR_INVALID_ARGUMENT: return "invalid argument";
    case TFG_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void tfg_string_free(char* s) { std::free(s); }

int tfg_rng_create(uint64_t seed, tfg_rng** out) {
  return guarded([&] {
    require(out);
    emit(out, tfg::Rng(seed));
  });
}
void tfg_rng_free(tfg_rng* rng) { delete rng; }

// Clopen sets

int tfg_clopen_parse(const char* text, int default_base, tfg_clopen** out) {
  return guarded([&] {
    require(text, out);
    emit(out, tfg::parse_clopen(text, base_of(default_base)));
  });
}

int tfg_clopen_format(const tfg_clopen* a, int format, char** out) {
  return guarded([&] {
    require(a, out);
    *out = copy_string(tfg::format(a->value, format_of(format)));
  });
}

void tfg_clopen_free(tfg_clopen* a) { delete a; }

int tfg_clopen_base(const tfg_clopen* a) { return a != nullptr ? a->value.base() : 0; }

int tfg_clopen_full(int base, tfg_clopen** out) {
  return guarded([&] {
    require(out);
    tfg::check_base(base);
    emit(out, tfg::ClopenSet::full(base));
  });
}

int tfg_clopen_union(const tfg_clopen* a, const tfg_clopen* b, tfg_clopen** out) {
  return binary_set_op(a, b, out, [](auto& x, auto& y) { return tfg::set_union(x, y); });
}
int tfg_clopen_intersection(const tfg_clopen* a, const tfg_clopen* b, tfg_clopen** out) {
  return binary_set_op(a, b, out, [](auto& x, auto& y) { return tfg::intersection(x, y); });
}
int tfg_clopen_difference(const tfg_clopen* a, const tfg_clopen* b, tfg_clopen** out) {
  return binary_set_op(a, b, out, [](auto& x, auto& y) { return tfg::difference(x, y); });
}

int tfg_clopen_complement(const tfg_clopen* a, tfg_clopen** out) {
  return guarded([&] {
    require(a, out);
    emit(out, tfg::complement(a->value));
  });
}

int tfg_clopen_is_subset(const tfg_clopen* a, const tfg_clopen* b, int* out) {
  return guarded([&] {
    require(a, b, out);
    *out = tfg::is_subset(a->value, b->value) ? 1 : 0;
  });
}

int tfg_clopen_equal(const tfg_clopen* a, const tfg_clopen* b, int* out) {
  return guarded([&] {
    require(a, b, out);
    *out = a->value == b->value ? 1 : 0;
  });
}

int tfg_clopen_refine(const tfg_clopen* a, size_t k, char** out) {
  return guarded([&] {
    require(a, out);
    std::string s;
    for (const auto& w : tfg::refine_to_depth(a->value, k)) s += tfg::digits_to_string(w) + "\n";
    *out = copy_string(s);
  });
}

int tfg_clopen_measure(const tfg_clopen* a, int format, char** out) {
  return guarded([&] {
    require(a, out);
    const tfg::OdometerSystem system(a->value.base());
    *out = copy_string(tfg::format(system.measure_value(a->value), format_of(format)));
  });
}

int tfg_clopen_random(int base, size_t max_depth, tfg_rng* rng, tfg_clopen** out) {
  return guarded([&] {
    require(rng, out);
    tfg::check_base(base);
    emit(out, tfg::random_clopen(base, max_depth, rng->value));
  });
}

// Points

int tfg_point_parse(const char* text, int default_base, tfg_point** out) {
  return guarded([&] {
    require(text, out);
    emit(out, tfg::parse_point(text, base_of(default_base)));
  });
}

int tfg_point_format(const tfg_point* x, int format, char** out) {
  return guarded([&] {
    require(x, out);
    *out = copy_string(tfg::format(x->value, format_of(format)));
  });
}

void tfg_point_free(tfg_point* x) { delete x; }

int tfg_point_apply_power(const tfg_point* x, int64_t n, tfg_point** out) {
  return guarded([&] {
    require(x, out);
    emit(out, tfg::OdometerSystem(x->value.base()).apply_power(n, x->value));
  });
}

int tfg_point_rational(const tfg_point* x, int format, char** out) {
  return guarded([&] {
    require(x, out);
    *out = copy_string(tfg::format(x->value.to_rational(), format_of(format)));
  });
}

int tfg_same_orbit(const tfg_point* x, const tfg_point* y, int* found, int64_t* n) {
  return guarded([&] {
    require(x, y, found, n);
    if (x->value.base() != y->value.base())
      tfg::fail(tfg::ErrorCode::Representation, "points over different bases");
    const auto offset = tfg::OdometerSystem(x->value.base()).same_orbit(x->value, y->value);
    *found = offset ? 1 : 0;
    *n = offset.value_or(0);
  });
}

int tfg_cylinder_image(int base, const char* word, int64_t n, char** out) {
  return guarded([&] {
    require(word, out);
    const tfg::OdometerSystem system(base);
    const auto image = system.cylinder_image(n, tfg::digits_from_string(base, word));
    *out = copy_string(tfg::digits_to_string(image));
  });
}

int tfg_point_random(int base, size_t max_preperiod, size_t max_period, tfg_rng* rng,
                     tfg_point** out) {
  return guarded([&] {
    require(rng, out);
    tfg::check_base(base);
    emit(out, tfg::random_point(base, max_preperiod, max_period, rng->value));
  });
}

// Elements

int tfg_element_parse(const char* text, int default_base, tfg_element** out) {
  return guarded([&] {
    require(text, out);
    emit(out, tfg::parse_element(text, base_of(default_base)));
  });
}

int tfg_element_format(const tfg_element* g, int format, char** out) {
  return guarded([&] {
    require(g, out);
    *out = copy_string(tfg::format(g->value, format_of(format)));
  });
}

void tfg_element_free(tfg_element* g) { delete g; }

int tfg_element_base(const tfg_element* g) { return g != nullptr ? g->value.base() : 0; }

int tfg_element_shift(int base, int64_t n, tfg_element** out) {
  return guarded([&] {
    require(out);
    tfg::check_base(base);
    emit(out, tfg::FullGroupElement::shift(base, n));
  });
}

int tfg_element_equal(const tfg_element* g, const tfg_element* h, int* out) {
  return guarded([&] {
    require(g, h, out);
    *out = g->value == h->value ? 1 : 0;
  });
}

int tfg_element_compose(const tfg_element* g, const tfg_element* h, tfg_element** out) {
  return guarded([&] {
    require(g, h, out);
    same_base(g->value, h->value.base());
    emit(out, tfg::compose(g->value, h->value));
  });
}

int tfg_element_invert(const tfg_element* g, tfg_element** out) {
  return guarded([&] {
    require(g, out);
    emit(out, tfg::invert(g->value));
  });
}

int tfg_element_apply(const tfg_element* g, const tfg_point* x, tfg_point** out) {
  return guarded([&] {
    require(g, x, out);
    same_base(g->value, x->value.base());
    emit(out, g->value(x->value));
  });
}

int tfg_element_support(const tfg_element* g, tfg_clopen** out) {
  return guarded([&] {
    require(g, out);
    emit(out, tfg::support(g->value));
  });
}

int tfg_element_image(const tfg_element* g, const tfg_clopen* a, tfg_clopen** out) {
  return guarded([&] {
    require(g, a, out);
    same_base(g->value, a->value.base());
    emit(out, tfg::image(g->value, a->value));
  });
}

int tfg_element_is_involution(const tfg_element* g, int* out) {
  return guarded([&] {
    require(g, out);
    *out = tfg::is_involution(g->value) ? 1 : 0;
  });
}

int tfg_element_order_upto(const tfg_element* g, int limit, int* order) {
  return guarded([&] {
    require(g, order);
    *order = tfg::order_upto(g->value, limit).value_or(0);
  });
}

int tfg_element_restrict(const tfg_element* g, const tfg_clopen* v, tfg_element** out) {
  return guarded([&] {
    require(g, v, out);
    same_base(g->value, v->value.base());
    emit(out, tfg::restrict(g->value, v->value));
  });
}

int tfg_make_involution(const tfg_clopen* a, tfg_element** out) {
  return guarded([&] {
    require(a, out);
    emit(out, tfg::make_involution(a->value));
  });
}

int tfg_involutions_covering(const tfg_clopen* a, size_t depth, int format, char** out) {
  return guarded([&] {
    require(a, out);
    const auto f = format_of(format);
    std::string s;
    std::size_t i = 0;
    for (const auto& pi : tfg::involutions_covering(a->value, depth)) {
      if (f == tfg::Format::Text) s += "[pi" + std::to_string(i++) + "]\n";
      s += tfg::format(pi, f);
    }
    *out = copy_string(s);
  });
}

int tfg_express_supports(const tfg_clopen* a, int format, char** out,
                         tfg_clopen** evaluated) {
  return guarded([&] {
    require(a, out);
    const auto f = format_of(format);
    const auto expr = tfg::express_by_involution_supports(a->value);
    auto value = tfg::evaluate(expr, a->value.base());
    *out = copy_string(tfg::format(expr, f));
    if (evaluated != nullptr) emit(evaluated, std::move(value));
  });
}

int tfg_element_random(int base, size_t max_depth, tfg_rng* rng, tfg_element** out) {
  return guarded([&] {
    require(rng, out);
    tfg::check_base(base);
    emit(out, tfg::random_element(base, max_depth, rng->value));
  });
}

int tfg_involution_random(int base, size_t max_depth, tfg_rng* rng, tfg_element** out) {
  return guarded([&] {
    require(rng, out);
    tfg::check_base(base);
    emit(out, tfg::random_involution(base, max_depth, rng->value));
  });
}

// Toolkit

int tfg_in_gamma(const tfg_element* g, const tfg_clopen* v, int* out) {
  return guarded([&] {
    require(g, v, out);
    same_base(g->value, v->value.base());
    *out = tfg::in_gamma(g->value, v->value) ? 1 : 0;
  });
}

int tfg_commutant_check(const tfg_element* g, const tfg_clopen* v, int format,
                        int* in_commutant, char** witness) {
  return guarded([&] {
    require(g, v, in_commutant);
    same_base(g->value, v->value.base());
    const auto f = format_of(format);
    const auto result = tfg::commutant_check(g->value, v->value);
    std::string text = result.witness ? tfg::format(*result.witness, f) : std::string();
    *in_commutant = result.in_commutant ? 1 : 0;
    if (witness != nullptr) *witness = result.witness ? copy_string(text) : nullptr;
  });
}

int tfg_in_r(const tfg_element* g, const tfg_clopen* v, int* member, tfg_element** inside,
             tfg_element** outside) {
  return guarded([&] {
    require(g, v, member);
    same_base(g->value, v->value.base());
    auto result = tfg::in_R(g->value, v->value);
    std::unique_ptr<tfg_element> in_part;
    std::unique_ptr<tfg_element> out_part;
    if (result.member) {
      in_part.reset(new tfg_element{std::move(*result.inside)});
      out_part.reset(new tfg_element{std::move(*result.outside)});
    }
    *member = result.member ? 1 : 0;
    if (inside != nullptr) *inside = in_part.release();
    if (outside != nullptr) *outside = out_part.release();
  });
}

int tfg_criterion_decompose(const tfg_element* pi, const tfg_clopen* v, int format,
                            char** out, tfg_element** h) {
  return guarded([&] {
    require(pi, v, out);
    same_base(pi->value, v->value.base());
    const auto f = format_of(format);
    auto d = tfg::criterion_decompose(pi->value, v->value);
    std::string text = tfg::format(d, f);
    if (h != nullptr) emit(h, std::move(d.h));
    *out = copy_string(text);
  });
}

int tfg_criterion_check(const tfg_element* h, const tfg_clopen* v, size_t max_depth,
                        int* holds) {
  return guarded([&] {
    require(h, v, holds);
    same_base(h->value, v->value.base());
    const auto samples = tfg::criterion_samples(h->value, v->value, max_depth);
    *holds = tfg::criterion_conditions_hold(h->value, v->value, samples) ? 1 : 0;
  });
}

// Oracles

int tfg_oracle_parse(const char* text, const char* directory, int default_base,
                     tfg_oracle** out) {
  return guarded([&] {
    require(text, out);
    const std::filesystem::path dir = directory != nullptr ? directory : ".";
    emit(out, tfg::parse_oracle_spec(text, dir, base_of(default_base)).oracle());
  });
}

int tfg_oracle_from_callbacks(int domain_base, int codomain_base, tfg_element_fn apply,
                              tfg_element_fn inverse_apply, void* user, tfg_oracle** out) {
  return guarded([&] {
    require(out);
    tfg::check_base(domain_base);
    tfg::check_base(codomain_base);
    if (apply == nullptr) tfg::fail(tfg::ErrorCode::InvalidArgument, "apply callback missing");
    emit(out, tfg::IsomorphismOracle{domain_base, codomain_base,
                                     CallbackOracle{apply, user},
                                     CallbackOracle{inverse_apply, user}});
  });
}

void tfg_oracle_free(tfg_oracle* o) { delete o; }

int tfg_oracle_apply(const tfg_oracle* o, const tfg_element* g, tfg_element** out) {
  return guarded([&] {
    require(o, g, out);
    same_base(g->value, o->value.domain_base);
    emit(out, o->value.apply(g->value));
  });
}

// Reconstruction

int tfg_lambda(const tfg_oracle* o, const tfg_clopen* v, size_t depth, tfg_clopen** out) {
  return guarded([&] {
    require(o, v, out);
    if (v->value.base() != o->value.domain_base)
      tfg::fail(tfg::ErrorCode::Representation, "set is not over the oracle's domain base");
    emit(out, tfg::lambda_of_clopen(o->value, v->value, depth));
  });
}

int tfg_reconstruct(const tfg_oracle* o, size_t depth, tfg_boolean_map** out) {
  return guarded([&] {
    require(o, out);
    emit(out, tfg::reconstruct_boolean_map(o->value, depth));
  });
}

int tfg_boolean_map_parse(const char* text, int default_base, tfg_boolean_map** out) {
  return guarded([&] {
    require(text, out);
    emit(out, tfg::parse_boolean_map(text, base_of(default_base)));
  });
}

int tfg_boolean_map_format(const tfg_boolean_map* m, int format, char** out) {
  return guarded([&] {
    require(m, out);
    *out = copy_string(tfg::format(m->value, format_of(format)));
  });
}

void tfg_boolean_map_free(tfg_boolean_map* m) { delete m; }

size_t tfg_boolean_map_depth(const tfg_boolean_map* m) {
  return m != nullptr ? m->value.depth() : 0;
}

int tfg_verify_wpi(const tfg_oracle* o, const tfg_element* pi, size_t samples,
                   uint64_t seed, int* ok, char** detail) {
  return guarded([&] {
    require(o, pi, ok);
    same_base(pi->value, o->value.domain_base);
    report(tfg::verify_w_pi_correspondence(o->value, pi->value, samples, seed), ok, detail);
  });
}

int tfg_verify_conjugacy(const tfg_oracle* o, const tfg_boolean_map* m,
                         const tfg_element* const* tests, size_t count, int* ok,
                         char** detail) {
  return guarded([&] {
    require(o, m, ok);
    if (count > 0) require(tests);
    std::vector<tfg::FullGroupElement> gs;
    for (size_t i = 0; i < count; ++i) {
      require(tests[i]);
      gs.push_back(tests[i]->value);
    }
    report(tfg::verify_conjugacy(o->value, m->value, gs), ok, detail);
  });
}

int tfg_verify_orbit_equivalence(const tfg_oracle* o, const tfg_boolean_map* m,
                                 const tfg_point* const* points,
                                 const tfg_element* const* elements, size_t count, int* ok,
                                 char** detail) {
  return guarded([&] {
    require(o, m, ok);
    if (count > 0) require(points, elements);
    std::vector<std::pair<tfg::Point, tfg::FullGroupElement>> pairs;
    for (size_t i = 0; i < count; ++i) {
      require(points[i], elements[i]);
      pairs.emplace_back(points[i]->value, elements[i]->value);
    }
    report(tfg::verify_orbit_equivalence(o->value, m->value, pairs), ok, detail);
  });
}

}  // extern "C"
