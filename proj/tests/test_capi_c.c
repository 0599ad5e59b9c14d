/* Compiled as plain C to keep the public header C-clean. */

#include <math.h>
#include <stdio.h>
#include <string.h>

#include "cavsim/cavsim.h"

static int failures = 0;

static void expect(int ok, const char* what) {
    if (!ok) {
        fprintf(stderr, "FAIL: %s\n", what);
        ++failures;
    }
}

int main(void) {
    expect(strcmp(cavsim_version(), "0.1.0") == 0, "version");

    double r0 = 0.0, t0 = 0.0, p = 0.0;
    expect(cavsim_resonant_coefficients(1.0, 1.0, 2.0, &r0, &t0, &p) == CAVSIM_OK,
           "resonant status");
    expect(fabs(p - 31.0 / 33.0) < 1e-14, "resonant p value");
    expect(fabs(t0 - (1.0 + r0)) <= 1e-15, "t0 = 1 + r0");

    cavsim_system_params params;
    expect(cavsim_preset_get("weak2", &params) == CAVSIM_OK, "preset lookup");
    expect(params.lambda1 == 2.0, "preset lambda");

    cavsim_complex entries[16];
    size_t dim = 0;
    expect(cavsim_truth_table(CAVSIM_GATE_CPHASE, 1.0, entries, 16, &dim) == CAVSIM_OK,
           "truth table status");
    expect(dim == 4, "truth table dim");
    expect(fabs(entries[15].re + 1.0) < 1e-12, "LL entry is -1");
    expect(fabs(entries[1].re) < 1e-12, "off-diagonal entry is 0");

    expect(cavsim_resonant_coefficients(0.0, 0.0, 0.0, &r0, &t0, &p) ==
               CAVSIM_ERROR_DEGENERATE_DENOMINATOR,
           "degenerate denominator status");
    expect(strlen(cavsim_last_error_message()) > 0, "error message present");

    if (failures == 0) printf("all C API checks passed\n");
    return failures;
}
