#include <stdio.h>
#include <string.h>

#include "tractus.h"

int main(void) {
    TractusModel *model = NULL;
    TractusFrame *frame = NULL;
    TractusDerived derived;
    char *svg = NULL;

    if (tractus_model_bundled(&model) != TRACTUS_STATUS_OK) return 1;
    if (tractus_solve_phoneme(model, "m", &frame) != TRACTUS_STATUS_OK) return 2;
    if (tractus_frame_derived(frame, &derived) != TRACTUS_STATUS_OK) return 3;
    if (!(derived.velopharyngeal_opening > 0.0) || derived.labial_aperture > 1e-9) return 4;
    if (tractus_render_svg(model, frame, "sagittal", 100, &svg) != TRACTUS_STATUS_OK) return 5;
    if (strncmp(svg, "<svg", 4) != 0) return 6;
    tractus_string_free(svg);
    tractus_frame_free(frame);

    frame = NULL;
    if (tractus_solve_phoneme(model, "zz", &frame) != TRACTUS_STATUS_UNKNOWN_PHONEME) return 7;
    if (frame != NULL || tractus_last_error() == NULL) return 8;
    tractus_model_free(model);
    printf("ok %s\n", tractus_version());
    return 0;
}
