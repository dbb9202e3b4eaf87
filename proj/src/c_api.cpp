#include "l2h/l2h.h"

#include <new>
#include <string>

#include "l2h/commands.hpp"

struct l2h_config {
  l2h::RunConfig config;
};

struct l2h_report {
  l2h::RunResult result;
};

namespace {

thread_local std::string last_error;

l2h_status fail(l2h_status s, std::string message) {
  last_error = std::move(message);
  return s;
}

// Runs f, translating exceptions into status codes.
template <class F>
l2h_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return L2H_OK;
  } catch (const l2h::Error& e) {
    return fail(static_cast<l2h_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(L2H_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(L2H_ERR_INTERNAL, e.what());
  }
}

template <class F>
l2h_status with_config(l2h_config* c, F&& f) {
  if (!c) return fail(L2H_ERR_NULL_HANDLE, "null config handle");
  return guarded([&] { f(c->config); });
}

const char* safe(const char* s) { return s ? s : ""; }

}  // namespace

extern "C" {

const char* l2h_version(void) { return "0.1.0"; }

const char* l2h_status_name(l2h_status status) {
  if (status == L2H_ERR_NULL_HANDLE) return "NullHandle";
  return l2h::error_code_name(static_cast<l2h::ErrorCode>(static_cast<int>(status)));
}

const char* l2h_last_error(void) { return last_error.c_str(); }

l2h_status l2h_config_new(l2h_config** out) {
  if (!out) return fail(L2H_ERR_NULL_HANDLE, "null output pointer");
  return guarded([&] { *out = new l2h_config(); });
}

void l2h_config_free(l2h_config* config) { delete config; }

l2h_status l2h_config_set_command(l2h_config* c, const char* command) {
  return with_config(c, [&](l2h::RunConfig& r) { r.command = safe(command); });
}

l2h_status l2h_config_set_input_path(l2h_config* c, const char* path) {
  return with_config(c, [&](l2h::RunConfig& r) { r.input_path = safe(path); });
}

l2h_status l2h_config_set_input_text(l2h_config* c, const char* text) {
  return with_config(c, [&](l2h::RunConfig& r) {
    r.input_path.clear();
    r.input_text = safe(text);
  });
}

l2h_status l2h_config_set_degrees(l2h_config* c, const char* range) {
  return with_config(c, [&](l2h::RunConfig& r) { r.degrees = l2h::parse_degree_range(safe(range)); });
}

l2h_status l2h_config_set_max_power(l2h_config* c, unsigned max_power) {
  return with_config(c, [&](l2h::RunConfig& r) {
    if (max_power == 0) throw l2h::Error(l2h::ErrorCode::invalid_argument, "max power must be positive");
    r.max_power = max_power;
  });
}

l2h_status l2h_config_set_max_radius(l2h_config* c, size_t radius) {
  return with_config(c, [&](l2h::RunConfig& r) { r.max_radius = radius; });
}

l2h_status l2h_config_set_quotients(l2h_config* c, size_t count) {
  return with_config(c, [&](l2h::RunConfig& r) {
    if (count == 0) throw l2h::Error(l2h::ErrorCode::invalid_argument, "quotient budget must be positive");
    r.quotients = count;
  });
}

l2h_status l2h_config_set_method(l2h_config* c, const char* method) {
  return with_config(c, [&](l2h::RunConfig& r) { r.method = l2h::parse_method(safe(method)); });
}

l2h_status l2h_config_set_seed(l2h_config* c, uint64_t seed) {
  return with_config(c, [&](l2h::RunConfig& r) { r.seed = seed; });
}

l2h_status l2h_config_set_epsilon_zero(l2h_config* c, const char* value) {
  return with_config(c, [&](l2h::RunConfig& r) {
    l2h::Rational q;
    if (q.set_str(safe(value), 10) != 0)
      throw l2h::Error(l2h::ErrorCode::invalid_argument, std::string("bad rational '") + safe(value) + "'");
    q.canonicalize();
    if (q <= 0) throw l2h::Error(l2h::ErrorCode::invalid_argument, "epsilon_zero must be positive");
    r.epsilon_zero = q;
  });
}

l2h_status l2h_config_set_support_cap(l2h_config* c, size_t cap) {
  return with_config(c, [&](l2h::RunConfig& r) {
    if (cap == 0) throw l2h::Error(l2h::ErrorCode::invalid_argument, "support cap must be positive");
    r.support_cap = cap;
  });
}

l2h_status l2h_config_set_wedge_count(l2h_config* c, size_t count) {
  return with_config(c, [&](l2h::RunConfig& r) { r.wedge_count = count; });
}

l2h_status l2h_config_set_require_certified(l2h_config* c, int flag) {
  return with_config(c, [&](l2h::RunConfig& r) { r.require_certified = flag != 0; });
}

l2h_status l2h_config_set_timing(l2h_config* c, int flag) {
  return with_config(c, [&](l2h::RunConfig& r) { r.timing = flag != 0; });
}

l2h_status l2h_config_set_force(l2h_config* c, int flag) {
  return with_config(c, [&](l2h::RunConfig& r) { r.force = flag != 0; });
}

l2h_status l2h_run(const l2h_config* c, l2h_report** out) {
  if (!c || !out) return fail(L2H_ERR_NULL_HANDLE, "null handle");
  return guarded([&] {
    l2h::validate(c->config);
    auto* report = new l2h_report();
    report->result = l2h::run_command(c->config);
    *out = report;
  });
}

int l2h_report_exit_code(const l2h_report* report) { return report ? report->result.exit_code : l2h::exit_failure; }

const char* l2h_report_json(const l2h_report* report) { return report ? report->result.json.c_str() : ""; }

const char* l2h_report_summary(const l2h_report* report) { return report ? report->result.summary.c_str() : ""; }

void l2h_report_free(l2h_report* report) { delete report; }

}  // extern "C"
