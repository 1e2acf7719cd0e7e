/* dqt_c.h — C interface to the transport library: opaque handles, status
 * codes and string results. Link against the dqt_c shared library. */
#ifndef DQT_C_H
#define DQT_C_H

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; nonzero values double as CLI exit codes where defined. */
typedef enum dqt_status {
  DQT_OK = 0,
  DQT_ERROR = 1,           /* unexpected failure */
  DQT_ERR_BALLISTIC = 2,   /* ballistic transport detected */
  DQT_ERR_SOLVER = 3,      /* solver non-convergence */
  DQT_ERR_CONFIG = 4,      /* configuration or validation error */
  DQT_ERR_INVALID = 5      /* invalid argument to a C API call */
} dqt_status;

typedef struct dqt_config dqt_config;
typedef struct dqt_result dqt_result;

/* Library version string, e.g. "0.1.0". */
const char* dqt_version(void);

/* Thread-local message of the last failing call. */
const char* dqt_last_error(void);

/* Parses configuration text (the same key-value format the CLI reads).
 * An empty string yields an empty source to fill via dqt_config_set. */
dqt_status dqt_config_parse(const char* text, dqt_config** out);

/* Sets one key, e.g. dqt_config_set(cfg, "model.c", "2.0"). */
dqt_status dqt_config_set(dqt_config* config, const char* key, const char* value);

void dqt_config_free(dqt_config* config);

/* Runs one command: "diffusivity", "tau", "dispersion", "bound", "sweep" or
 * "probe-cone". On success *out owns the result strings. */
dqt_status dqt_run(const dqt_config* config, const char* command, dqt_result** out);

/* Serialized views of a result; pointers remain owned by the result. */
const char* dqt_result_json(const dqt_result* result);
const char* dqt_result_csv(const dqt_result* result);

void dqt_result_free(dqt_result* result);

#ifdef __cplusplus
}
#endif

#endif /* DQT_C_H */
