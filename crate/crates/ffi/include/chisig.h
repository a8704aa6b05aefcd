#ifndef CHISIG_H
#define CHISIG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ChisigStatus {
  CHISIG_STATUS_OK = 0,
  CHISIG_STATUS_NULL_POINTER = 1,
  CHISIG_STATUS_INVALID_UTF8 = 2,
  CHISIG_STATUS_PARSE = 3,
  CHISIG_STATUS_INVALID_ARGUMENT = 4,
  CHISIG_STATUS_VIOLATION = 5,
  CHISIG_STATUS_UNSUPPORTED = 6,
  CHISIG_STATUS_NUMERIC = 7,
  CHISIG_STATUS_OVERFLOW = 8,
  CHISIG_STATUS_INTERNAL = 9,
  CHISIG_STATUS_PANIC = 10,
} ChisigStatus;

typedef enum ChisigFamily {
  CHISIG_FAMILY_REAL = 0,
  CHISIG_FAMILY_HOLZAPFEL = 1,
  CHISIG_FAMILY_MIXED = 2,
  CHISIG_FAMILY_COMPLEX = 3,
} ChisigFamily;

typedef enum ChisigClassification {
  CHISIG_CLASSIFICATION_STRICT = 0,
  CHISIG_CLASSIFICATION_EQUALITY_CERTIFIED = 1,
  CHISIG_CLASSIFICATION_ZERO_CHI = 2,
} ChisigClassification;

// Opaque assembly handle.
typedef struct ChisigAssembly ChisigAssembly;

typedef struct ChisigDiagnosis {
  int64_t chi;
  int64_t sigma;
  int64_t slack;
  // A `ChisigClassification` value.
  int32_t classification;
  // Nonzero when the equality certificate uses only F4 and complex pieces.
  int32_t certificate_f4_complex_only;
} ChisigDiagnosis;

typedef struct ChisigCurvature {
  double scalar;
  double wplus_norm2;
  double wminus_norm2;
  double traceless_ricci_norm2;
  double wplus_eigenvalues[3];
  double wminus_eigenvalues[3];
  double chi_density;
  double sigma_density;
  double delta_plus_density;
  double delta_minus_density;
} ChisigCurvature;

typedef struct ChisigBranchedCover {
  int64_t n;
  int64_t chi;
  int64_t c1_squared;
  int64_t l_components;
  int64_t l_self_intersection;
  int64_t r_components;
  int64_t r_self_intersection_num;
  int64_t r_self_intersection_den;
  int64_t logbmy_defect;
  int64_t minus_l_squared;
} ChisigBranchedCover;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or NULL. The pointer
// stays valid until the next chisig call on the same thread.
const char *chisig_last_error(void);

// Library version as a static NUL-terminated string.
const char *chisig_version(void);

// Parses an assembly from JSON.
//
// # Safety
// `json` must be NULL or a NUL-terminated string; `out` must be NULL or writable.
enum ChisigStatus chisig_assembly_from_json(const char *json, struct ChisigAssembly **out);

// # Safety
// `a` must be NULL or a handle from this library that has not been freed.
void chisig_assembly_free(struct ChisigAssembly *a);

// # Safety
// `out` must be NULL or writable.
enum ChisigStatus chisig_build_m(size_t m, struct ChisigAssembly **out);

// # Safety
// `out` must be NULL or writable.
enum ChisigStatus chisig_build_mprime(size_t m, struct ChisigAssembly **out);

// # Safety
// `out` must be NULL or writable.
enum ChisigStatus chisig_build_z(int64_t n, struct ChisigAssembly **out);

// # Safety
// `out` must be NULL or writable.
enum ChisigStatus chisig_random_assembly(enum ChisigFamily family,
                                         uint64_t seed,
                                         struct ChisigAssembly **out);

// # Safety
// `a` must be a live handle; `pieces` and `edges` NULL or writable.
enum ChisigStatus chisig_assembly_counts(const struct ChisigAssembly *a,
                                         size_t *pieces,
                                         size_t *edges);

// Serializes the assembly. Free the result with `chisig_string_free`.
//
// # Safety
// `a` must be a live handle; `out` NULL or writable.
enum ChisigStatus chisig_assembly_to_json(const struct ChisigAssembly *a, char **out);

// # Safety
// `s` must be NULL or a string returned by this library, not yet freed.
void chisig_string_free(char *s);

// Writes the number of structural violations to `count`; zero means valid.
// The first violation, if any, is available from `chisig_last_error`.
//
// # Safety
// `a` must be a live handle; `count` NULL or writable.
enum ChisigStatus chisig_validate(const struct ChisigAssembly *a, size_t *count);

// # Safety
// `a` must be a live handle; `out` NULL or writable.
enum ChisigStatus chisig_diagnose(const struct ChisigAssembly *a, struct ChisigDiagnosis *out);

// Signature as a reduced fraction, by the L2 route (`route = 0`) or the
// boundary-defect route (`route = 1`).
//
// # Safety
// `a` must be a live handle; `num` and `den` NULL or writable.
enum ChisigStatus chisig_signature(const struct ChisigAssembly *a,
                                   int32_t route,
                                   int64_t *num,
                                   int64_t *den);

// Eta invariant of a boundary class given as JSON, e.g.
// `{"flat":{"letter":"C","sign":1}}`.
//
// # Safety
// `boundary_json` must be NULL or NUL-terminated; `num`, `den` NULL or writable.
enum ChisigStatus chisig_eta(const char *boundary_json, int64_t *num, int64_t *den);

// Curvature invariants of a model chart at `point[0..4]`. A `step` of zero
// selects the library default.
//
// # Safety
// `model` must be NUL-terminated, `point` must hold 4 doubles, `out` writable.
enum ChisigStatus chisig_curvature(const char *model,
                                   const double *point,
                                   double step,
                                   struct ChisigCurvature *out);

// # Safety
// `out` must be NULL or writable.
enum ChisigStatus chisig_branched_cover(int64_t n, struct ChisigBranchedCover *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHISIG_H */
