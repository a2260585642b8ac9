#include "loewner/loewner.h"

#include "loewner/error.hpp"
#include "loewner/instances.hpp"
#include "loewner/means.hpp"
#include "loewner/report.hpp"
#include "loewner/spectral.hpp"
#include "loewner/suite.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct lw_matrix {
  loewner::SymMatrix m;
};

struct lw_report {
  loewner::Report r;
};

namespace {

thread_local std::string g_last_error;

lw_status fail(lw_status code, const char* what) {
  g_last_error = what;
  return code;
}

template <typename F>
lw_status guard(F&& f) {
  try {
    g_last_error.clear();
    f();
    return LW_OK;
  } catch (const loewner::Error& e) {
    return fail(static_cast<lw_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(LW_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LW_INTERNAL, e.what());
  }
}

void need(const void* p, const char* name) {
  if (p == nullptr) throw loewner::InvalidArgument(std::string(name) + " is null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* lw_version(void) { return loewner::kToolVersion.data(); }

const char* lw_last_error(void) { return g_last_error.c_str(); }

void lw_string_free(char* s) { std::free(s); }

lw_status lw_matrix_create(int dim, const double* data, lw_matrix** out) {
  return guard([&] {
    need(data, "data");
    need(out, "out");
    if (dim < 1) throw loewner::DimensionError("dim must be >= 1");
    const auto n = static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim);
    *out = new lw_matrix{loewner::SymMatrix(dim, std::span<const double>(data, n))};
  });
}

lw_status lw_matrix_load(const char* path, lw_matrix** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new lw_matrix{loewner::load_matrix(path)};
  });
}

lw_status lw_matrix_save(const lw_matrix* m, const char* path) {
  return guard([&] {
    need(m, "matrix");
    need(path, "path");
    loewner::save_matrix(m->m, path);
  });
}

void lw_matrix_destroy(lw_matrix* m) { delete m; }

int lw_matrix_dim(const lw_matrix* m) { return m == nullptr ? 0 : m->m.dim(); }

lw_status lw_matrix_copy_data(const lw_matrix* m, double* out, size_t capacity) {
  return guard([&] {
    need(m, "matrix");
    need(out, "out");
    const auto data = m->m.row_major();
    if (capacity < data.size()) {
      throw loewner::InvalidArgument("buffer holds " + std::to_string(capacity) + " doubles, need " +
                                     std::to_string(data.size()));
    }
    std::copy(data.begin(), data.end(), out);
  });
}

lw_status lw_mean(const char* kernel, const lw_matrix* a, const lw_matrix* b, lw_matrix** out) {
  return guard([&] {
    need(kernel, "kernel");
    need(a, "A");
    need(b, "B");
    need(out, "out");
    *out = new lw_matrix{loewner::mean(loewner::ScalarKernel::parse(kernel), a->m, b->m)};
  });
}

lw_status lw_loewner_compare(const lw_matrix* x, const lw_matrix* y, double tol, lw_relation* out) {
  return guard([&] {
    need(x, "X");
    need(y, "Y");
    need(out, "out");
    const double t = tol < 0.0 ? loewner::default_tolerance(x->m, y->m) : tol;
    switch (loewner::loewner_compare(x->m, y->m, t).relation) {
      case loewner::Relation::LE: *out = LW_LE; break;
      case loewner::Relation::GE: *out = LW_GE; break;
      case loewner::Relation::EQ: *out = LW_EQ; break;
      case loewner::Relation::INCOMPARABLE: *out = LW_INCOMPARABLE; break;
    }
  });
}

lw_status lw_ui_norm(const lw_matrix* x, const char* norm, double* out) {
  return guard([&] {
    need(x, "X");
    need(norm, "norm");
    need(out, "out");
    *out = loewner::ui_norm(x->m, loewner::NormKind::parse(norm));
  });
}

lw_status lw_estimate_sandwich(const lw_matrix* a, const lw_matrix* b, double* s, double* t) {
  return guard([&] {
    need(a, "A");
    need(b, "B");
    need(s, "s");
    need(t, "t");
    const auto [lo, hi] = loewner::estimate_sandwich(a->m, b->m);
    *s = lo;
    *t = hi;
  });
}

lw_status lw_run(const char* command, const char* config_json, lw_report** out) {
  return guard([&] {
    need(command, "command");
    need(out, "out");
    auto config = config_json != nullptr ? loewner::config_from_json(config_json) : loewner::SuiteConfig{};
    config.command = command;
    *out = new lw_report{loewner::run_command(config)};
  });
}

lw_status lw_report_load(const char* path, lw_report** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new lw_report{loewner::load_report(path)};
  });
}

lw_status lw_report_json(const lw_report* r, char** out) {
  return guard([&] {
    need(r, "report");
    need(out, "out");
    *out = dup(loewner::report_to_json(r->r));
  });
}

lw_status lw_report_write(const lw_report* r, const char* path) {
  return guard([&] {
    need(r, "report");
    need(path, "path");
    loewner::write_report(r->r, path);
  });
}

int lw_report_all_hold(const lw_report* r) { return r != nullptr && r->r.all_non_audit_hold ? 1 : 0; }

size_t lw_report_instance_count(const lw_report* r) {
  return r == nullptr ? 0 : loewner::recheckable_instances(r->r).size();
}

void lw_report_destroy(lw_report* r) { delete r; }

lw_status lw_recheck(const lw_report* r, size_t index, char** certificate_json, int* holds, int* audit) {
  return guard([&] {
    need(r, "report");
    need(certificate_json, "certificate_json");
    const auto cert = loewner::recheck(r->r, index);
    *certificate_json = dup(loewner::certificate_to_json(cert));
    if (holds != nullptr) *holds = cert.holds ? 1 : 0;
    if (audit != nullptr) *audit = loewner::inequality_info(cert.inequality_id).audit ? 1 : 0;
  });
}

}  // extern "C"
