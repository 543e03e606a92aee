/* Copyright 2026 The maskitlab Authors
 * SPDX-License-Identifier: Apache-2.0
 */

/* C interface to maskitlab. Reports come back as JSON text (one object, or
 * one object per line for listings) allocated by the library; release them
 * with mk_free. Every call returns MK_OK or an error status, and the message
 * of the last failure on the calling thread is available from
 * mk_last_error(). */

#ifndef MASKITLAB_MASKITLAB_H_
#define MASKITLAB_MASKITLAB_H_

#include <stddef.h>

#if defined(_WIN32)
#define MK_API __declspec(dllexport)
#else
#define MK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mk_status {
  MK_OK = 0,
  MK_ERR_CONFIG = 1,
  MK_ERR_USAGE = 2,
  MK_ERR_ORACLE_OVERFLOW = 3,
  MK_ERR_WRONG_SHAPE = 4,
  MK_ERR_NESTING_VIOLATION = 5,
  MK_ERR_OUTSIDE_T0 = 6,
  MK_ERR_ENUMERATION_BUDGET = 7,
  MK_ERR_NO_COMPACT_FOUND = 8,
  MK_ERR_WITNESS_FAILED = 9,
  MK_ERR_NO_CONVERGENCE = 10,
  MK_ERR_DEGENERATE_MATRIX = 11,
  MK_ERR_IDENTITY_MAP = 12,
  MK_ERR_IO = 13,
  MK_ERR_PRECONDITION = 14,
  MK_ERR_INTERNAL = 99
} mk_status;

typedef struct mk_config mk_config;

MK_API const char* mk_version(void);
/* "ConfigError", "OutsideT0", ...; "ok" for MK_OK. */
MK_API const char* mk_status_name(mk_status status);
MK_API const char* mk_last_error(void);
MK_API void mk_free(void* p);

MK_API mk_status mk_config_load_file(const char* path, mk_config** out);
MK_API mk_status mk_config_load_string(const char* json, mk_config** out);
MK_API void mk_config_free(mk_config* cfg);
/* depth < 0 or epsilon < 0 keeps the file value. Overrides that weaken the
 * file settings are recorded as warnings and show up in reports. */
MK_API mk_status mk_config_override(mk_config* cfg, int depth, double epsilon);
MK_API int mk_config_depth(const mk_config* cfg);
/* 1 for an amalgamated free product, 0 for an HNN extension. */
MK_API int mk_config_is_amalgam(const mk_config* cfg);
/* Warnings as a JSON array. */
MK_API mk_status mk_config_warnings(const mk_config* cfg, char** json);

/* Verification report; *exit_code is 0 certified, 2 failed, 3 not proved. */
MK_API mk_status mk_verify(const mk_config* cfg, char** json, int* exit_code);

/* Normal forms up to max_length, one JSON object per line. */
MK_API mk_status mk_enumerate(const mk_config* cfg, int max_length, char** jsonl);

/* Translate cover, one cap per line. */
MK_API mk_status mk_cover(const mk_config* cfg, int depth, char** jsonl);
MK_API mk_status mk_cover_stats(const mk_config* cfg, int depth, char** json);

/* point is "re,im", "re" or "inf". With conical != 0 the report also carries
 * a conical-limit witness (or the reason it could not be built). */
MK_API mk_status mk_code(const mk_config* cfg, const char* point, int depth, int conical,
                         char** json);

/* word uses the text syntax "u v^-1 f^2". */
MK_API mk_status mk_classify(const mk_config* cfg, const char* word, char** json);
/* Newline-separated random words in text syntax. */
MK_API mk_status mk_random_words(const mk_config* cfg, int count, int max_length,
                                 unsigned long long seed, char** text);

/* Probe over the powers word^1 .. word^count. */
MK_API mk_status mk_probe(const mk_config* cfg, const char* word, int count, char** json);

/* Binary P6 image of the depth-`depth` cloud. window is x0, y0, x1, y1 and
 * may be NULL for the default [-8, 8]^2. */
MK_API mk_status mk_render(const mk_config* cfg, int depth, int width, int height,
                           const double* window, unsigned char** bytes, size_t* size);

#ifdef __cplusplus
}
#endif

#endif /* MASKITLAB_MASKITLAB_H_ */
