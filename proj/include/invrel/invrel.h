/* C interface to the invariant-relations engine. */
#ifndef INVREL_H
#define INVREL_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define INVREL_API __attribute__((visibility("default")))
#else
#define INVREL_API
#endif

/* Values double as process exit codes of the CLI. */
typedef enum invrel_status {
  INVREL_OK = 0,
  INVREL_FAILED = 1,     /* ran to the end, some check failed */
  INVREL_USAGE = 2,      /* bad argument or configuration */
  INVREL_INFEASIBLE = 3, /* beyond a size cap */
  INVREL_INTERNAL = 4
} invrel_status;

typedef struct invrel_config invrel_config;

/* Receives one JSON document per call, without trailing newline. */
typedef void (*invrel_line_fn)(const char* line, void* user);

INVREL_API const char* invrel_version(void);

/* Message of the last non-OK status on this thread; "" if none. */
INVREL_API const char* invrel_last_error(void);

/* Frees strings returned through char** out parameters. */
INVREL_API void invrel_string_free(char* s);

/* Defaults: group sp, n 2, d 2, field gf:7, seed 1, max-word-len 2,
 * max-tr 2, route auto, maxdeg 3, samples 25, timings 0, literal auto,
 * method auto, cache "" (off), per-k 4, max-k 3. */
INVREL_API invrel_status invrel_config_new(invrel_config** out);
INVREL_API void invrel_config_free(invrel_config* cfg);

/* Keys as above; values are parsed and checked here. */
INVREL_API invrel_status invrel_config_set(invrel_config* cfg, const char* key, const char* value);

/* Canonical text of a setting, e.g. "gf:7" for field. */
INVREL_API invrel_status invrel_config_get(const invrel_config* cfg, const char* key, char** value);

/* sigma_{t,r} or rho_{t,r} as a JSON object. type is "sigma" or "rho". */
INVREL_API invrel_status invrel_expand(const char* type, int t, int r, char** json);

/* scope: relations, invariance, iso, kernel, scaling. Streams one JSON line
 * per check, then a summary line. failures may be NULL. */
INVREL_API invrel_status invrel_verify(const invrel_config* cfg, const char* scope, invrel_line_fn emit, void* user,
                                       int* failures);

/* Value of a relation at words a, b, c (NULL or "" for none, "1" for the
 * unity) under the group, field and n of cfg, as polynomial text; "0" when it
 * vanishes. */
INVREL_API invrel_status invrel_relation_value(const invrel_config* cfg, const char* type, int t, int r,
                                               const char* a, const char* b, const char* c, char** poly);

/* Number of terms of the same value, without rendering it. */
INVREL_API invrel_status invrel_relation_terms(const invrel_config* cfg, const char* type, int t, int r,
                                               const char* a, const char* b, const char* c, long* terms);

#ifdef __cplusplus
}
#endif

#endif /* INVREL_H */
