#include <stdio.h>
#include <string.h>
#include "toriclab.h"

static const char *CP3 =
    "fan3 cp3\n"
    "rays 4\n"
    "R 0: 1 0 0\nR 1: 0 1 0\nR 2: 0 0 1\nR 3: -1 -1 -1\n"
    "cones 4\n"
    "C: 0 1 2\nC: 0 1 3\nC: 0 2 3\nC: 1 2 3\n"
    "support: 1 1 1 1\n";

int main(void) {
    TlFan *fan = NULL;
    if (tl_fan_parse(CP3, tl_default_seed(), &fan) != TL_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", tl_last_error());
        return 1;
    }
    int64_t gb = 0;
    if (tl_fan_gauss_bonnet(fan, &gb) != TL_STATUS_OK || gb != 24) return 2;
    TlWall wall;
    if (tl_fan_wall(fan, 0, &wall) != TL_STATUS_OK || wall.curvature != 4) return 3;
    char *volume = NULL;
    if (tl_fan_volume(fan, NULL, &volume) != TL_STATUS_OK) return 4;
    int ok = strcmp(volume, "32/3") == 0;
    tl_string_free(volume);
    if (!ok) return 5;
    TlWitness w;
    if (tl_fan_witness(fan, &w) != TL_STATUS_OK || w.degree != 3) return 6;
    if (tl_fan_parse("nonsense", 0, &fan) != TL_STATUS_PARSE || tl_last_error() == NULL) return 7;
    tl_fan_free(fan);
    printf("ok %lld %s\n", (long long)gb, "32/3");
    return 0;
}
