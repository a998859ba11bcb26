// Copyright (c) lindist contributors.
// SPDX-License-Identifier: Apache-2.0

#include "lindist.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "lindist/analysis.hpp"
#include "lindist/csv.hpp"
#include "lindist/distortion.hpp"
#include "lindist/error.hpp"
#include "lindist/laminate.hpp"
#include "lindist/rank_one.hpp"
#include "lindist/verify.hpp"

struct lindist_report {
  lindist::AnalysisReport rep;
};

struct lindist_laminate {
  lindist::LaminateSpec spec;
  lindist::JumpReport jump;
};

struct lindist_sweep {
  std::vector<lindist::SweepCell> cells;
};

struct lindist_verify {
  lindist::VerifyReport rep;
};

namespace {

thread_local std::string g_last_error;

int code_of(const lindist::error& e) {
  switch (e.code()) {
    case lindist::errc::ok: return LINDIST_OK;
    case lindist::errc::invalid_input: return LINDIST_E_INVALID_INPUT;
    case lindist::errc::singular_matrix: return LINDIST_E_SINGULAR_MATRIX;
    case lindist::errc::degenerate_spectrum: return LINDIST_E_DEGENERATE_SPECTRUM;
    case lindist::errc::nonsmooth_point: return LINDIST_E_NONSMOOTH_POINT;
    case lindist::errc::pole: return LINDIST_E_POLE;
    case lindist::errc::inconsistent: return LINDIST_E_INCONSISTENT;
    case lindist::errc::io_error: return LINDIST_E_IO;
  }
  return LINDIST_E_UNKNOWN;
}

template <class F>
int guarded(F&& f) {
  try {
    f();
    return LINDIST_OK;
  } catch (const lindist::error& e) {
    g_last_error = e.what();
    return code_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LINDIST_E_UNKNOWN;
  }
}

int bad_arg(const char* what) {
  g_last_error = what;
  return LINDIST_E_INVALID_INPUT;
}

lindist::Mat3 to_mat(const double a[9]) {
  lindist::Mat3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = a[3 * r + c];
  return m;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void copy3(double dst[3], const lindist::Vec3& v) {
  dst[0] = v[0];
  dst[1] = v[1];
  dst[2] = v[2];
}

}  // namespace

extern "C" {

const char* lindist_strerror(int code) {
  switch (code) {
    case LINDIST_OK: return "ok";
    case LINDIST_E_INVALID_INPUT: return "invalid input";
    case LINDIST_E_SINGULAR_MATRIX: return "singular matrix";
    case LINDIST_E_DEGENERATE_SPECTRUM: return "degenerate spectrum";
    case LINDIST_E_NONSMOOTH_POINT: return "nonsmooth point";
    case LINDIST_E_POLE: return "pole";
    case LINDIST_E_INCONSISTENT: return "internal consistency check failed";
    case LINDIST_E_IO: return "i/o failure";
    default: return "unknown error";
  }
}

const char* lindist_last_error(void) { return g_last_error.c_str(); }

int lindist_linear_distortion(const double a[9], double* h_out) {
  if (!a || !h_out) return bad_arg("lindist_linear_distortion: null argument");
  return guarded([&] { *h_out = lindist::linear_distortion(to_mat(a)); });
}

int lindist_analyze(const double a[9], lindist_report** out) {
  if (!a || !out) return bad_arg("lindist_analyze: null argument");
  return guarded([&] { *out = new lindist_report{lindist::analyze(to_mat(a))}; });
}

int lindist_analyze_sing(double alpha, double beta, lindist_report** out) {
  if (!out) return bad_arg("lindist_analyze_sing: null argument");
  return guarded([&] { *out = new lindist_report{lindist::analyze_sing(alpha, beta)}; });
}

int lindist_report_get(const lindist_report* rep, lindist_report_view* out) {
  if (!rep || !out) return bad_arg("lindist_report_get: null argument");
  const lindist::AnalysisReport& r = rep->rep;
  *out = lindist_report_view{};
  out->improvable = r.improvable ? 1 : 0;
  out->h_a = r.h_a;
  out->scale = r.form.scale;
  out->alpha = r.form.alpha;
  out->beta = r.form.beta;
  copy3(out->u, r.b0.u);
  copy3(out->v, r.b0.v);
  copy3(out->u_world, r.b0_world.u);
  copy3(out->v_world, r.b0_world.v);
  out->d1 = r.d1;
  out->d2 = r.d2;
  out->t_minus = r.t_minus;
  out->t_plus = r.t_plus;
  out->t_minus_world = r.t_minus_world;
  out->t_plus_world = r.t_plus_world;
  out->h_minus = r.h_minus;
  out->h_plus = r.h_plus;
  out->ratio = r.ratio;
  out->angle_rad = r.angle_rad;
  out->fraction_plus = r.fraction_plus;
  out->gap_identity = r.gap_identity;
  return LINDIST_OK;
}

const char* lindist_report_reason(const lindist_report* rep) {
  return rep ? rep->rep.reason.c_str() : "";
}

void lindist_report_free(lindist_report* rep) { delete rep; }

int lindist_branch_csv(double alpha, double beta, double t_lo, double t_hi, int n,
                       char** csv_out) {
  if (!csv_out) return bad_arg("lindist_branch_csv: null argument");
  return guarded([&] {
    lindist::SingularForm f;
    f.alpha = alpha;
    f.beta = beta;
    f.q = lindist::mat3_identity();
    f.r = lindist::mat3_identity();
    *csv_out = dup_string(lindist::branch_csv(lindist::branch_table(f, t_lo, t_hi, n)));
    if (!*csv_out) throw lindist::error(lindist::errc::io_error, "out of memory");
  });
}

int lindist_landscape_csv(double alpha, double beta, int n_theta, int n_rs, char** csv_out) {
  if (!csv_out) return bad_arg("lindist_landscape_csv: null argument");
  return guarded([&] {
    lindist::SingularForm f;
    f.alpha = alpha;
    f.beta = beta;
    f.q = lindist::mat3_identity();
    f.r = lindist::mat3_identity();
    *csv_out =
        dup_string(lindist::landscape_csv(lindist::curvature_landscape(f, n_theta, n_rs), n_theta));
    if (!*csv_out) throw lindist::error(lindist::errc::io_error, "out of memory");
  });
}

void lindist_string_free(char* s) { std::free(s); }

int lindist_laminate_create(const double a[9], int j, lindist_laminate** out) {
  if (!a || !out) return bad_arg("lindist_laminate_create: null argument");
  return guarded([&] {
    lindist::LaminateSpec spec = lindist::make_laminate(to_mat(a), j);
    lindist::JumpReport jump = lindist::laminate_distortion(spec);
    *out = new lindist_laminate{spec, jump};
  });
}

int lindist_laminate_map(const lindist_laminate* l, const double x[3], double fx[3]) {
  if (!l || !x || !fx) return bad_arg("lindist_laminate_map: null argument");
  return guarded([&] {
    copy3(fx, lindist::laminate_eval(l->spec, lindist::vec3(x[0], x[1], x[2])));
  });
}

int lindist_laminate_gradient(const lindist_laminate* l, const double x[3], double g[9]) {
  if (!l || !x || !g) return bad_arg("lindist_laminate_gradient: null argument");
  return guarded([&] {
    lindist::Mat3 m = lindist::laminate_gradient(l->spec, lindist::vec3(x[0], x[1], x[2]));
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) g[3 * r + c] = m(r, c);
  });
}

int lindist_laminate_info_get(const lindist_laminate* l, lindist_laminate_info* out) {
  if (!l || !out) return bad_arg("lindist_laminate_info_get: null argument");
  out->j = l->spec.j;
  out->t_minus = l->spec.t_minus;
  out->t_plus = l->spec.t_plus;
  copy3(out->u, l->spec.b0.u);
  copy3(out->v, l->spec.b0.v);
  out->h_a = l->jump.h_a;
  out->h_laminate = l->jump.h_laminate;
  out->ratio = l->jump.ratio;
  out->fraction_plus = l->jump.fraction_plus;
  return LINDIST_OK;
}

void lindist_laminate_free(lindist_laminate* l) { delete l; }

int lindist_sweep_cells(const double* alphas, const double* betas, size_t n,
                        lindist_sweep** out) {
  if (!alphas || !betas || !out) return bad_arg("lindist_sweep_cells: null argument");
  return guarded([&] {
    std::vector<std::pair<double, double>> cells(n);
    for (size_t i = 0; i < n; ++i) cells[i] = {alphas[i], betas[i]};
    *out = new lindist_sweep{lindist::jump_sweep_cells(cells)};
  });
}

size_t lindist_sweep_size(const lindist_sweep* s) { return s ? s->cells.size() : 0; }

int lindist_sweep_row_get(const lindist_sweep* s, size_t i, lindist_sweep_row* out) {
  if (!s || !out) return bad_arg("lindist_sweep_row_get: null argument");
  if (i >= s->cells.size()) return bad_arg("lindist_sweep_row_get: index out of range");
  const lindist::SweepCell& c = s->cells[i];
  *out = {c.alpha, c.beta,      c.t_minus,        c.t_plus,     c.h_a,
          c.h_laminate, c.ratio, c.angle_rad, c.fraction_plus, c.ok ? 1 : 0};
  return LINDIST_OK;
}

const char* lindist_sweep_note(const lindist_sweep* s, size_t i) {
  return (s && i < s->cells.size()) ? s->cells[i].note.c_str() : "";
}

int lindist_sweep_max_ratio(const lindist_sweep* s, double* out) {
  if (!s || !out) return bad_arg("lindist_sweep_max_ratio: null argument");
  return guarded([&] { *out = lindist::sweep_max_ratio(s->cells); });
}

int lindist_sweep_csv(const lindist_sweep* s, char** csv_out) {
  if (!s || !csv_out) return bad_arg("lindist_sweep_csv: null argument");
  return guarded([&] {
    *csv_out = dup_string(lindist::sweep_csv(s->cells));
    if (!*csv_out) throw lindist::error(lindist::errc::io_error, "out of memory");
  });
}

void lindist_sweep_free(lindist_sweep* s) { delete s; }

int lindist_verify_run(lindist_verify** out) {
  if (!out) return bad_arg("lindist_verify_run: null argument");
  return guarded([&] { *out = new lindist_verify{lindist::run_verification()}; });
}

int lindist_verify_all_pass(const lindist_verify* v) {
  return (v && v->rep.all_pass) ? 1 : 0;
}

size_t lindist_verify_count(const lindist_verify* v) { return v ? v->rep.checks.size() : 0; }

int lindist_verify_check_get(const lindist_verify* v, size_t i, const char** name, int* pass,
                             const char** detail) {
  if (!v || !name || !pass || !detail) return bad_arg("lindist_verify_check_get: null argument");
  if (i >= v->rep.checks.size()) return bad_arg("lindist_verify_check_get: index out of range");
  const lindist::CheckResult& c = v->rep.checks[i];
  *name = c.name.c_str();
  *pass = c.pass ? 1 : 0;
  *detail = c.detail.c_str();
  return LINDIST_OK;
}

void lindist_verify_free(lindist_verify* v) { delete v; }

void lindist_test_set_curvature_perturbation(double rel) {
  lindist::set_test_curvature_perturbation(rel);
}

}  // extern "C"
