#include <stdio.h>
#include <string.h>

#include "freenil.h"

#define CHECK(cond) do { if (!(cond)) { fprintf(stderr, "failed: %s\n", #cond); return 1; } } while (0)

int main(void) {
    size_t fix[] = {1, 2};
    NmMap *map = NULL;
    CHECK(nm_random_automorphism(10, 3, 5, 15, fix, 2, &map) == NM_STATUS_OK);

    NmDecomposition *dec = NULL;
    CHECK(nm_decompose(map, fix, 2, &dec) == NM_STATUS_OK);
    size_t count = 0;
    CHECK(nm_decomposition_factor_count(dec, &count) == NM_STATUS_OK);
    bool ok = false;
    char *report = NULL;
    CHECK(nm_decomposition_verify(dec, &ok, &report) == NM_STATUS_OK);
    CHECK(ok);
    CHECK(strstr(report, "\"ok\":true") != NULL);
    nm_string_free(report);

    NmMap *bad = NULL;
    CHECK(nm_map_from_json("{\"rank\":2,\"class\":1,\"images\":[[[1,2]],[[2,1]]]}", &bad) == NM_STATUS_OK);
    NmMap *inv = NULL;
    CHECK(nm_map_invert(bad, &inv) == NM_STATUS_NOT_AUTOMORPHISM);
    CHECK(inv == NULL);
    CHECK(strncmp(nm_last_error_message(), "NotAutomorphism", 15) == 0);

    printf("factors=%zu\n", count);
    nm_map_free(bad);
    nm_decomposition_free(dec);
    nm_map_free(map);
    return 0;
}
