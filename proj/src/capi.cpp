#include "ultrafn/ultrafn.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "ultrafn/error.hpp"
#include "ultrafn/report.hpp"
#include "ultrafn/suites.hpp"

using namespace ultrafn;

struct uf_context {
  RunConfig config;
  ContextPtr ctx;
};

namespace {

thread_local std::string last_error;

uf_status fail(uf_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Argument errors get their own status, so they are thrown as a distinct type.
struct BadArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Runs `body`, mapping exceptions onto status codes.
template <typename F>
uf_status checked(F&& body) {
  try {
    body();
    return UF_OK;
  } catch (const Error& e) {
    return fail(static_cast<uf_status>(e.code()), e.what());
  } catch (const BadArgument& e) {
    return fail(UF_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(UF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(UF_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(UF_ERR_INTERNAL, "unknown failure");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::Config, what);
}

void check_args(const uf_context* ctx, size_t n) {
  if (!ctx) throw BadArgument("null context");
  if (n != ctx->ctx->dimension())
    throw Error(ErrorCode::ContextMismatch,
                "vector length " + std::to_string(n) +
                    " does not match the context dimension " +
                    std::to_string(ctx->ctx->dimension()));
}

RestrictedUltrafunction wrap(const uf_context* ctx, const double* u, size_t n) {
  check_args(ctx, n);
  if (!u) throw BadArgument("null value vector");
  return RestrictedUltrafunction(
      ctx->ctx, Eigen::Map<const Eigen::VectorXd>(u, static_cast<Eigen::Index>(n)));
}

void store(const RestrictedUltrafunction& u, double* out) {
  if (!out) throw BadArgument("null output vector");
  Eigen::Map<Eigen::VectorXd>(out, u.values().size()) = u.values();
}

const uf_context& valid(const uf_context* ctx) {
  if (!ctx) throw BadArgument("null context");
  return *ctx;
}

DistributionDescriptor descriptor(const uf_context* ctx, const char* text) {
  if (!ctx || !text) throw BadArgument("null argument");
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Config,
                std::string("descriptor is not valid JSON: ") + e.what());
  }
  return descriptor_from_json(j, ctx->ctx->beta(),
                              ctx->config.heaviside_jump_value);
}

template <typename F>
uf_status with_string(char** out, F&& produce) {
  if (!out) return fail(UF_ERR_INVALID_ARGUMENT, "null output pointer");
  *out = nullptr;
  return checked([&] { *out = copy_string(produce()); });
}

}  // namespace

extern "C" {

const char* uf_last_error(void) { return last_error.c_str(); }

const char* uf_status_name(uf_status status) {
  switch (status) {
    case UF_OK: return "ok";
    case UF_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case UF_ERR_INTERNAL: return "internal";
    default:
      if (status >= UF_ERR_CONFIG && status <= UF_ERR_IO)
        return to_string(static_cast<ErrorCode>(status));
      return "unknown";
  }
}

void uf_string_free(char* s) { std::free(s); }

uf_status uf_context_create(const char* config_json, uf_context** out) {
  if (!out) return fail(UF_ERR_INVALID_ARGUMENT, "null output pointer");
  *out = nullptr;
  if (!config_json) return fail(UF_ERR_INVALID_ARGUMENT, "null config");
  return checked([&] {
    auto c = std::make_unique<uf_context>();
    c->config = parse_run_config(std::string(config_json));
    c->ctx = Context::create(context_options(c->config));
    *out = c.release();
  });
}

uf_status uf_context_create_default(uf_context** out) {
  return uf_context_create("{}", out);
}

void uf_context_destroy(uf_context* ctx) { delete ctx; }

size_t uf_context_dimension(const uf_context* ctx) {
  return ctx ? ctx->ctx->dimension() : 0;
}

double uf_context_beta(const uf_context* ctx) {
  return ctx ? ctx->ctx->beta() : 0.0;
}

const char* uf_context_output_dir(const uf_context* ctx) {
  return ctx ? ctx->config.output_dir.c_str() : "";
}

uf_status uf_context_points(const uf_context* ctx, double* out, size_t n) {
  return checked([&] {
    check_args(ctx, n);
    if (!out) throw BadArgument("null output vector");
    const auto& pts = ctx->ctx->points().points();
    std::copy(pts.begin(), pts.end(), out);
  });
}

uf_status uf_space_report(const uf_context* ctx, char** json_out) {
  return with_string(json_out, [&] {
    if (!ctx) throw BadArgument("null context");
    return space_report(ctx->ctx).dump(2);
  });
}

uf_status uf_sigma_report(const uf_context* ctx, char** json_out) {
  return with_string(json_out, [&] {
    if (!ctx) throw BadArgument("null context");
    return sigma_report(ctx->ctx).dump(2);
  });
}

uf_status uf_sigma_csv(const uf_context* ctx, size_t grid, char** csv_out) {
  return with_string(csv_out, [&] {
    if (!ctx) throw BadArgument("null context");
    return sigma_csv(ctx->ctx, grid);
  });
}

uf_status uf_delta_csv(const uf_context* ctx, double q, size_t grid,
                       char** csv_out) {
  return with_string(csv_out, [&] {
    if (!ctx) throw BadArgument("null context");
    return delta_csv(ctx->ctx, q, grid);
  });
}

uf_status uf_embed(const uf_context* ctx, const char* descriptor_json,
                   double* values, size_t n, double* leakage) {
  return checked([&] {
    check_args(ctx, n);
    const auto e = embed(ctx->ctx, descriptor(ctx, descriptor_json),
                         ctx->config.d_max);
    store(e.value, values);
    if (leakage) *leakage = e.leakage;
  });
}

uf_status uf_embed_report(const uf_context* ctx, const char* descriptor_json,
                          char** json_out) {
  return with_string(json_out, [&] {
    const auto& c = valid(ctx);
    return embed_report(c.ctx, descriptor(ctx, descriptor_json), c.config.d_max)
        .dump(2);
  });
}

uf_status uf_mul_report(const uf_context* ctx, const char* left_json,
                        const char* right_json, char** json_out) {
  return with_string(json_out, [&] {
    const auto& c = valid(ctx);
    return mul_report(c.ctx, descriptor(ctx, left_json),
                      descriptor(ctx, right_json), c.config.d_max)
        .dump(2);
  });
}

uf_status uf_pair(const uf_context* ctx, const char* descriptor_json,
                  size_t bump_index, double* value, size_t* warning_count) {
  return checked([&] {
    if (!value) throw BadArgument("null output");
    const auto t = descriptor(ctx, descriptor_json);
    const auto bumps = interior_bumps(ctx->ctx->space(), 3);
    need(bump_index < bumps.size(), "bump index must be 0, 1 or 2");
    const auto p = pair(ctx->ctx, t, bumps[bump_index], ctx->config.d_max);
    *value = p.value;
    if (warning_count) *warning_count = p.warnings.size();
  });
}

uf_status uf_pair_report(const uf_context* ctx, const char* descriptor_json,
                         size_t bump_index, char** json_out) {
  return with_string(json_out, [&] {
    const auto& c = valid(ctx);
    return pair_report(c.ctx, descriptor(ctx, descriptor_json), bump_index,
                       c.config.d_max)
        .dump(2);
  });
}

uf_status uf_suite_plan(const uf_context* ctx, const char* name,
                        char** names_out) {
  return with_string(names_out, [&] {
    if (!ctx || !name) throw BadArgument("null argument");
    const std::string n = name;
    std::vector<std::string> plan;
    if (n == "all")
      plan = ctx->config.suites.empty() ? suite_names() : ctx->config.suites;
    else if (is_suite_name(n))
      plan = {n};
    else
      throw Error(ErrorCode::Config, "unknown suite '" + n + "'");
    std::string out;
    for (const auto& s : plan) out += s + '\n';
    return out;
  });
}

uf_status uf_run_suite(const uf_context* ctx, const char* name, uint64_t seed,
                       char** json_out, int* passed) {
  return with_string(json_out, [&] {
    if (!ctx || !name) throw BadArgument("null argument");
    const auto report = run_suite(name, ctx->ctx, ctx->config, seed);
    if (passed) *passed = report.passed ? 1 : 0;
    return to_json(report).dump(2);
  });
}

uf_status uf_derivative(const uf_context* ctx, const double* u, double* out,
                        size_t n, int times) {
  return checked([&] {
    need(times >= 0, "derivative count must be >= 0");
    store(derivative(wrap(ctx, u, n), times), out);
  });
}

uf_status uf_multiply(const uf_context* ctx, const double* u, const double* v,
                      double* out, size_t n) {
  return checked([&] { store(wrap(ctx, u, n) * wrap(ctx, v, n), out); });
}

uf_status uf_scalar_product(const uf_context* ctx, const double* u,
                            const double* v, size_t n, double* out) {
  return checked([&] {
    if (!out) throw BadArgument("null output");
    *out = scalar_product(wrap(ctx, u, n), wrap(ctx, v, n));
  });
}

uf_status uf_integral(const uf_context* ctx, const double* u, size_t n,
                      double* out) {
  return checked([&] {
    if (!out) throw BadArgument("null output");
    *out = integral(wrap(ctx, u, n));
  });
}

uf_status uf_boundary_bracket(const uf_context* ctx, const double* u,
                              const double* v, size_t n, double* out) {
  return checked([&] {
    if (!out) throw BadArgument("null output");
    *out = boundary_bracket(wrap(ctx, u, n), wrap(ctx, v, n));
  });
}

uf_status uf_values_csv(const uf_context* ctx, const double* u, size_t n,
                        char** csv_out) {
  return with_string(csv_out, [&] { return values_csv(wrap(ctx, u, n)); });
}

uf_status uf_extension_csv(const uf_context* ctx, const double* u, size_t n,
                           size_t grid, char** csv_out) {
  return with_string(csv_out, [&] {
    return samples_csv(extension_function(wrap(ctx, u, n)), grid);
  });
}

}  // extern "C"
