/* Copyright (c) lindist contributors.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the distortion/laminate analysis core. All functions
 * return 0 on success or a nonzero error code; lindist_last_error() holds
 * a thread-local message for the most recent failure on this thread.
 */

#ifndef LINDIST_H
#define LINDIST_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
  LINDIST_OK = 0,
  LINDIST_E_INVALID_INPUT = 1,
  LINDIST_E_SINGULAR_MATRIX = 2,
  LINDIST_E_DEGENERATE_SPECTRUM = 3,
  LINDIST_E_NONSMOOTH_POINT = 4,
  LINDIST_E_POLE = 5,
  LINDIST_E_INCONSISTENT = 6,
  LINDIST_E_IO = 7,
  LINDIST_E_UNKNOWN = 100
};

const char* lindist_strerror(int code);
const char* lindist_last_error(void);

/* Matrices are 9 doubles, row major. */
int lindist_linear_distortion(const double a[9], double* h_out);

typedef struct lindist_report lindist_report;

typedef struct {
  int improvable;
  double h_a;
  double scale, alpha, beta;
  double u[3], v[3]; /* optimal pair, normalized frame */
  double u_world[3], v_world[3];
  double d1, d2;
  double t_minus, t_plus;
  double t_minus_world, t_plus_world;
  double h_minus, h_plus;
  double ratio, angle_rad, fraction_plus, gap_identity;
} lindist_report_view;

int lindist_analyze(const double a[9], lindist_report** out);
int lindist_analyze_sing(double alpha, double beta, lindist_report** out);
int lindist_report_get(const lindist_report* rep, lindist_report_view* out);
/* Empty string when the spectrum allows an improvement. */
const char* lindist_report_reason(const lindist_report* rep);
void lindist_report_free(lindist_report* rep);

/* CSV builders; *csv_out is malloc'd, release with lindist_string_free. */
int lindist_branch_csv(double alpha, double beta, double t_lo, double t_hi, int n,
                       char** csv_out);
int lindist_landscape_csv(double alpha, double beta, int n_theta, int n_rs, char** csv_out);
void lindist_string_free(char* s);

typedef struct lindist_laminate lindist_laminate;

typedef struct {
  int j;
  double t_minus, t_plus; /* input-frame pencil parameters */
  double u[3], v[3];      /* oscillation direction and interface normal */
  double h_a, h_laminate, ratio, fraction_plus;
} lindist_laminate_info;

int lindist_laminate_create(const double a[9], int j, lindist_laminate** out);
int lindist_laminate_map(const lindist_laminate* l, const double x[3], double fx[3]);
int lindist_laminate_gradient(const lindist_laminate* l, const double x[3], double g[9]);
int lindist_laminate_info_get(const lindist_laminate* l, lindist_laminate_info* out);
void lindist_laminate_free(lindist_laminate* l);

typedef struct lindist_sweep lindist_sweep;

typedef struct {
  double alpha, beta, t_minus, t_plus, h_a, h_laminate, ratio, angle_rad, fraction_plus;
  int ok;
} lindist_sweep_row;

/* n paired (alpha[i], beta[i]) cells; failed cells are kept with ok = 0. */
int lindist_sweep_cells(const double* alphas, const double* betas, size_t n,
                        lindist_sweep** out);
size_t lindist_sweep_size(const lindist_sweep* s);
int lindist_sweep_row_get(const lindist_sweep* s, size_t i, lindist_sweep_row* out);
const char* lindist_sweep_note(const lindist_sweep* s, size_t i);
int lindist_sweep_max_ratio(const lindist_sweep* s, double* out);
int lindist_sweep_csv(const lindist_sweep* s, char** csv_out);
void lindist_sweep_free(lindist_sweep* s);

typedef struct lindist_verify lindist_verify;

int lindist_verify_run(lindist_verify** out);
int lindist_verify_all_pass(const lindist_verify* v);
size_t lindist_verify_count(const lindist_verify* v);
int lindist_verify_check_get(const lindist_verify* v, size_t i, const char** name, int* pass,
                             const char** detail);
void lindist_verify_free(lindist_verify* v);

/* Test-only hook: relative shift applied to the closed-form curvature, for
 * exercising the verification suite's failure path. */
void lindist_test_set_curvature_perturbation(double rel);

#ifdef __cplusplus
}
#endif

#endif
