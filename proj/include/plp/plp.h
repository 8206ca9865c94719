#ifndef PLP_PLP_H
#define PLP_PLP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; nonzero values mirror plp::ErrorCode. */
typedef enum plp_status {
  PLP_OK = 0,
  PLP_ERR_INVALID_ARGUMENT = 1,
  PLP_ERR_SINGULAR_MATRIX,
  PLP_ERR_NOT_SUBLATTICE,
  PLP_ERR_OVERFLOW,
  PLP_ERR_UNSUPPORTED_LATTICE,
  PLP_ERR_NOT_IN_DUAL,
  PLP_ERR_NOT_IN_CONE,
  PLP_ERR_NOT_IN_SPAN,
  PLP_ERR_TOLERANCE_UNREACHABLE,
  PLP_ERR_OUT_OF_HYPOTHESIS,
  PLP_ERR_INSUFFICIENT_DERIVATIVES,
  PLP_ERR_BRANCH_MISMATCH,
  PLP_ERR_MONOTONICITY_SPOT_CHECK,
  PLP_ERR_SIGN_PATTERN,
  PLP_ERR_CONVEXITY_SPOT_CHECK,
  PLP_ERR_ASSUMPTION_SPOT_CHECK,
  PLP_ERR_NOT_CPSD,
  PLP_ERR_OUT_OF_RANGE,
  PLP_ERR_SCHEMA,
  PLP_ERR_INTERNAL = 100
} plp_status;

const char* plp_version(void);
/* Message of the last failed call on this thread; empty after a success. */
const char* plp_last_error(void);
const char* plp_status_name(plp_status s);

/* Lattices. Generators are row-major dim x dim, columns are basis vectors. */
typedef struct plp_lattice plp_lattice;
plp_status plp_lattice_named(const char* key, plp_lattice** out);
plp_status plp_lattice_create(int dim, const double* generator, plp_lattice** out);
void plp_lattice_free(plp_lattice* lat);
int plp_lattice_dim(const plp_lattice* lat);
plp_status plp_lattice_generator(const plp_lattice* lat, double* out);

/* Configurations: n points of dimension dim, row-major. */
typedef struct plp_configuration plp_configuration;
plp_status plp_configuration_create(const plp_lattice* ambient, size_t n, const double* points, plp_configuration** out);
plp_status plp_configuration_omega_star(int n, plp_configuration** out);
void plp_configuration_free(plp_configuration* cfg);
size_t plp_configuration_size(const plp_configuration* cfg);
int plp_configuration_dim(const plp_configuration* cfg);
plp_status plp_configuration_points(const plp_configuration* cfg, double* out);

plp_status plp_theta_eval(double c, double x, int dual, int deriv, double* value, double* tail);
/* family: "A2" or "L" */
plp_status plp_tilde_F(double t1, double t2, double a, const char* family, double* out);

typedef struct plp_energy_report {
  double energy;
  double lp_bound; /* NaN unless has_lp_bound */
  double gap;
  int has_lp_bound;
} plp_energy_report;
plp_status plp_energy_eval(const plp_lattice* lat, double a, const plp_configuration* cfg, plp_energy_report* out);

/* JSON results. passed is 1 unless the result carries a failed check. */
typedef struct plp_result plp_result;
const char* plp_result_json(const plp_result* r);
int plp_result_passed(const plp_result* r);
void plp_result_free(plp_result* r);

/* family: "m2", "2m2", "3m2", "6m2" */
plp_status plp_moments_nodes(const char* family, int m, plp_result** out);
/* case_name: "4pt", "6pt" or "Z"; m is used by "Z" only. */
plp_status plp_interpolant_build(const char* case_name, double a, int m, plp_result** out);
plp_status plp_certificate_list(plp_result** out);
/* case_name: "4pt" or "6pt" */
plp_status plp_verify_case(const char* case_name, const double* a_grid, size_t n, plp_result** out);
/* a may be NULL with n = 0 for the declared default samples. */
plp_status plp_verify_certificate(const char* id, const double* a, size_t n, plp_result** out);

typedef struct plp_optimizer_config {
  int n;
  const char* lattice;
  double a;
  int restarts;
  int max_iters;
  double grad_tol;
  double armijo;
  double shrink;
  double initial_step;
  uint64_t seed;
  int threads; /* 0: PLP_THREADS, else hardware concurrency */
} plp_optimizer_config;
void plp_optimizer_config_default(plp_optimizer_config* cfg);
plp_status plp_optimize(const plp_optimizer_config* cfg, plp_result** out);
/* Energies of the labelled candidates, plus minimize(opt) when opt is not NULL, sorted ascending. */
plp_status plp_compare_candidates(int n, const char* lattice, double a, const plp_configuration* const* candidates,
                                  const char* const* labels, size_t count, const plp_optimizer_config* opt,
                                  plp_result** out);

#ifdef __cplusplus
}
#endif

#endif
