/* Compiled as C99: the public header must stay a valid C interface. */
#include <qjm.h>

#include <math.h>
#include <stdio.h>

int main(void) {
    const double plus_z[] = {1, 0, 0, 0};
    const double sigma_x[] = {0, 0, 1, 0, 1, 0, 0, 0};
    const double sigma_y[] = {0, 0, 0, -1, 0, 1, 0, 0};

    qjm_state *psi = NULL;
    qjm_operator *a = NULL;
    qjm_operator *b = NULL;
    if (qjm_state_create(plus_z, 2, &psi) != QJM_OK) {
        return 1;
    }
    if (qjm_operator_create(sigma_x, 2, &a) != QJM_OK ||
        qjm_operator_create(sigma_y, 2, &b) != QJM_OK) {
        return 1;
    }

    double value = -1;
    if (qjm_commutator_value(a, b, psi, &value) != QJM_OK || fabs(value - 1.0) > 1e-12) {
        return 1;
    }

    qjm_statistics stats;
    if (qjm_state_statistics(a, b, psi, &stats) != QJM_OK) {
        return 1;
    }

    qjm_report report;
    if (qjm_eval_relation("branciard_dimless", 0.0, 1.0, &stats, &report) != QJM_OK) {
        return 1;
    }
    if (!report.satisfied || !report.saturated) {
        return 1;
    }

    if (qjm_eval_relation("hak", 0.0, 0.5, &stats, &report) != QJM_OK) {
        return 1;
    }
    if (report.satisfied || report.universal) {
        return 1;
    }

    qjm_operator_destroy(b);
    qjm_operator_destroy(a);
    qjm_state_destroy(psi);
    printf("c header ok\n");
    return 0;
}
