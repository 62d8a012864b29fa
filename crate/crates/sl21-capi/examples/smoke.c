/* Minimal consumer of the C ABI. Build after `cargo build --release`:
 *
 *   gcc -O1 -I crates/sl21-capi/include crates/sl21-capi/examples/smoke.c \
 *       target/release/libsl21_capi.a -lpthread -ldl -lm -o sl21-smoke
 */
#include <assert.h>
#include <stdio.h>
#include <string.h>

#include "sl21.h"

int main(void) {
    printf("sl21 version %s\n", sl21_version());

    Sl21Instance *inst = NULL;
    Sl21Status st = sl21_instance_compute(5, SL21_CHI_KIND_ZERO, 0, 0, "4", "1",
                                          SL21_MODULE_KIND_SIMPLE, &inst);
    assert(st == SL21_STATUS_OK);
    printf("dim H1(S^0((4,1))) = %u (even %u, odd %u), module dim %u, predicted %d\n",
           sl21_instance_dim_h1(inst), sl21_instance_dim_even(inst),
           sl21_instance_dim_odd(inst), sl21_instance_module_dim(inst),
           sl21_instance_predicted(inst));
    sl21_instance_free(inst);

    char *json = NULL;
    st = sl21_sweep_json(3, SL21_CHI_KIND_NILPOTENT, 0, 0, SL21_MODULE_KIND_KAC,
                         false, &json);
    assert(st == SL21_STATUS_OK);
    printf("nilpotent sweep over F_3: %zu bytes of JSON\n", strlen(json));
    sl21_string_free(json);
    return 0;
}
