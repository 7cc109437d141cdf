#ifndef XMOD_XMOD_H
#define XMOD_XMOD_H

/* C interface to the xmod library. All handles are opaque; every function
 * that can fail returns an xmod_status and leaves a message retrievable with
 * xmod_last_error() on the calling thread. Strings returned by the library
 * stay valid until the owning handle is freed. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define XMOD_API __declspec(dllexport)
#else
#define XMOD_API __attribute__((visibility("default")))
#endif

typedef enum xmod_status {
    XMOD_OK = 0,
    XMOD_ERR_INPUT = 1,     /* malformed or invalid input */
    XMOD_ERR_BUDGET = 2,    /* computation stopped at its budget */
    XMOD_ERR_INVARIANT = 3, /* internal consistency check failed */
    XMOD_ERR_ARGUMENT = 4   /* null handle, bad index or short buffer */
} xmod_status;

typedef struct xmod_spec xmod_spec;
typedef struct xmod_report xmod_report;

/* Unset fields: coeff NULL, max_degree < 0, budget 0, normalized < 0. */
typedef struct xmod_options {
    const char* coeff;
    int max_degree;
    uint64_t budget;
    int normalized;
    unsigned threads;
} xmod_options;

XMOD_API const char* xmod_version(void);

/* Message of the last failure on this thread, "" if none. */
XMOD_API const char* xmod_last_error(void);

/* Fills `options` with the unset values and one thread. */
XMOD_API void xmod_options_init(xmod_options* options);

XMOD_API xmod_status xmod_spec_parse(const char* text, xmod_spec** out);
XMOD_API void xmod_spec_free(xmod_spec* spec);

XMOD_API size_t xmod_spec_crossed_count(const xmod_spec* spec);
/* Name of the i-th crossed module in declaration order, NULL if out of range. */
XMOD_API const char* xmod_spec_crossed_name(const xmod_spec* spec, size_t index);

/* Orders of the source and target groups and of pi_1 = coker and pi_2 = ker. */
XMOD_API xmod_status xmod_crossed_orders(const xmod_spec* spec, const char* name, uint64_t* source_order,
                                         uint64_t* target_order, uint64_t* pi1_order, uint64_t* pi2_order);

/* Betti numbers (ranks of the free part over Z) of the classifying space in
 * degrees 0..max_degree. On success *count = max_degree + 1; if the budget
 * stops the computation early, *count is the number of degrees computed and
 * XMOD_ERR_BUDGET is returned. `capacity` must be at least max_degree + 1. */
XMOD_API xmod_status xmod_crossed_cohomology(const xmod_spec* spec, const char* name, const char* coeff,
                                             int max_degree, uint64_t budget, uint64_t* ranks, size_t capacity,
                                             size_t* count);

/* Runs a command (validate, nerve, cohomology, group-cohomology, e2-page,
 * structural). `options` may be NULL. A report is produced even when the
 * command fails; the return value is its exit code. */
XMOD_API xmod_status xmod_run(const xmod_spec* spec, const char* command, const xmod_options* options,
                              xmod_report** out);
/* Parse and run; parse errors become a report with XMOD_ERR_INPUT. */
XMOD_API xmod_status xmod_run_text(const char* text, const char* command, const xmod_options* options,
                                   xmod_report** out);

XMOD_API int xmod_report_exit_code(const xmod_report* report);
/* JSON report; indent < 0 gives a single line. */
XMOD_API const char* xmod_report_json(xmod_report* report, int indent);
/* Removes the "timings" member, leaving a report that depends only on the
 * input, the command and the options. */
XMOD_API void xmod_report_drop_timings(xmod_report* report);
XMOD_API void xmod_report_free(xmod_report* report);

#ifdef __cplusplus
}
#endif

#endif
