#include <stdio.h>
#include <string.h>
#include "chisig.h"

#define CHECK(cond) do { if (!(cond)) { fprintf(stderr, "line %d: %s\n", __LINE__, #cond); return 1; } } while (0)

int main(void) {
    ChisigAssembly *m = NULL;
    ChisigDiagnosis d;
    CHECK(chisig_build_m(2, &m) == CHISIG_STATUS_OK);
    CHECK(chisig_diagnose(m, &d) == CHISIG_STATUS_OK);
    CHECK(d.chi == 24 && d.sigma == 8 && d.slack == 0);
    CHECK(d.classification == CHISIG_CLASSIFICATION_EQUALITY_CERTIFIED);
    chisig_assembly_free(m);

    int64_t num = 0, den = 0;
    CHECK(chisig_eta("{\"flat\":{\"letter\":\"E\",\"sign\":1}}", &num, &den) == CHISIG_STATUS_OK);
    CHECK(num == -4 && den == 3);

    ChisigCurvature c;
    double p[4] = {0.0, 1.0, 0.0, 0.0};
    CHECK(chisig_curvature("F4", p, 0.0, &c) == CHISIG_STATUS_OK);
    CHECK(c.scalar > -3.000001 && c.scalar < -2.999999);

    CHECK(chisig_curvature("S4", p, 0.0, &c) == CHISIG_STATUS_INVALID_ARGUMENT);
    CHECK(strstr(chisig_last_error(), "S4") != NULL);
    printf("ok %s\n", chisig_version());
    return 0;
}
