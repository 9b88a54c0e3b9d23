/* Links against the liesym C ABI and exercises the basic surface. */
#include "liesym.h"
#include <assert.h>
#include <stdio.h>
#include <string.h>

int main(void) {
    assert(strlen(liesym_version()) > 0);

    LiesymAlgebra *alg = liesym_algebra_from_catalog("n23");
    assert(alg != NULL);
    assert(liesym_algebra_dim(alg) == 5);

    char *report = NULL;
    LiesymStatus status = liesym_analyze(alg, NULL, "1,1,2,3,3", &report);
    assert(status == LIESYM_STATUS_OK);
    assert(report != NULL);
    assert(strstr(report, "\"q_delta\": \"10\"") != NULL
           || strstr(report, "\"q_delta\":\"10\"") != NULL);
    liesym_string_free(report);

    report = NULL;
    status = liesym_check_system(alg, "X1^2\nX2^2", NULL, NULL, &report);
    assert(status == LIESYM_STATUS_DOMAIN_ERROR);
    assert(report != NULL);
    liesym_string_free(report);
    assert(strlen(liesym_last_error()) > 0);

    liesym_algebra_free(alg);

    LiesymAlgebra *bad = liesym_algebra_from_catalog("nope");
    assert(bad == NULL);

    report = NULL;
    status = liesym_run("[\"spectrum\",\"polar\",\"--op\",\"-(X1^2)\",\"--t\",\"2\"]", &report);
    assert(status == LIESYM_STATUS_OK);
    assert(report != NULL);
    liesym_string_free(report);

    printf("c smoke test passed\n");
    return 0;
}
