/* Minimal C consumer of the tracecode C ABI.
 *
 * Build (from the workspace root, after `cargo build -p tracecode-ffi`):
 *   cc crates/tracecode-ffi/examples/demo.c \
 *      -Icrates/tracecode-ffi/include \
 *      -Ltarget/debug -ltracecode_ffi -o demo
 *   LD_LIBRARY_PATH=target/debug ./demo
 */
#include <assert.h>
#include <inttypes.h>
#include <stdio.h>

#include "tracecode.h"

int main(void) {
    TcTower *tower = NULL;
    assert(tc_tower_new(2, 1, 3, &tower) == TC_STATUS_OK);
    printf("tower: q=%" PRIu64 " q^m=%" PRIu64 "\n", tc_tower_q(tower),
           tc_tower_order(tower));

    TcCode *code = NULL;
    assert(tc_code_counterexample(tower, 2, &code) == TC_STATUS_OK);

    uint64_t successes = 0, total = 0;
    assert(tc_exact_pc(code, 1 << 21, &successes, &total) == TC_STATUS_OK);
    printf("P_C = %" PRIu64 "/%" PRIu64 "\n", successes, total);
    assert(successes == 0 && total == 117649);

    char *bound = NULL;
    assert(tc_bound(2, 2, 1, 0, 4, &bound) == TC_STATUS_OK);
    printf("bound = %s\n", bound);
    tc_string_free(bound);

    printf("S1(10,2) = %.15f\n", tc_s1(10, 2));

    tc_code_free(code);
    tc_tower_free(tower);
    return 0;
}
