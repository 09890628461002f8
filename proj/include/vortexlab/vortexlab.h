/* vortexlab.h
 * C interface to the vortex laboratory. The CLI and any foreign-language
 * callers link against this surface only. All functions return vl_status;
 * on failure vl_last_error() carries a thread-local message.
 */
#ifndef VORTEXLAB_VORTEXLAB_H
#define VORTEXLAB_VORTEXLAB_H

#include <stddef.h>

#if defined(_WIN32)
#define VL_API __declspec(dllexport)
#else
#define VL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vl_status {
    VL_OK = 0,
    VL_ERR_CONFIG = 2,  /* configuration / usage errors */
    VL_ERR_NUMERIC = 3, /* numerical failures: collision, non-convergence, budget */
    VL_ERR_INTERNAL = 4
} vl_status;

VL_API const char* vl_version(void);
VL_API const char* vl_last_error(void);

/* Experiment runner. config_json is a flat object; see the README for the
 * schema. The report handle owns the summary JSON and the list of files
 * written; free it with vl_report_free. */
typedef struct vl_report vl_report;

VL_API vl_status vl_run_experiment(const char* config_json, vl_report** out);
VL_API const char* vl_report_json(const vl_report* report);
VL_API size_t vl_report_file_count(const vl_report* report);
VL_API const char* vl_report_file(const vl_report* report, size_t index);
/* 1 when the report carries no failed checks (relevant for "verify"). */
VL_API int vl_report_passed(const vl_report* report);
VL_API void vl_report_free(vl_report* report);

/* Direct numeric entry points. */
VL_API vl_status vl_coupling_constant(double alpha, double* out);
VL_API vl_status vl_crystal_center_intensity(int n, double alpha, double* out);
VL_API vl_status vl_crystal_spectrum(int n, double alpha, double* lambda0, double* kappa1,
                                     double* kappa2, double* nu_min);

/* Hexagonal Schwarz-Christoffel domain handle. */
typedef struct vl_domain vl_domain;

VL_API vl_status vl_domain_create(double delta, vl_domain** out);
VL_API void vl_domain_free(vl_domain* domain);
VL_API vl_status vl_domain_taylor(const vl_domain* domain, double* t1_abs, double* t3_abs);
VL_API vl_status vl_domain_map(const vl_domain* domain, double wx, double wy, double* zx,
                               double* zy);
VL_API vl_status vl_domain_inverse(const vl_domain* domain, double zx, double zy,
                                   double* wx, double* wy);
VL_API vl_status vl_domain_robin(const vl_domain* domain, double wx, double wy,
                                 double* gamma_tilde, double* conformal_radius);

#ifdef __cplusplus
}
#endif

#endif /* VORTEXLAB_VORTEXLAB_H */
