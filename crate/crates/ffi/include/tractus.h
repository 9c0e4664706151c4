#ifndef TRACTUS_H
#define TRACTUS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

typedef enum TractusStatus {
  TRACTUS_STATUS_OK = 0,
  TRACTUS_STATUS_NULL_POINTER = 1,
  TRACTUS_STATUS_INVALID_UTF8 = 2,
  TRACTUS_STATUS_INVALID_JSON = 3,
  TRACTUS_STATUS_VALIDATION = 4,
  TRACTUS_STATUS_UNKNOWN_PHONEME = 5,
  TRACTUS_STATUS_DATA = 6,
  TRACTUS_STATUS_INVALID_ARGUMENT = 7,
  TRACTUS_STATUS_PANIC = 8,
} TractusStatus;

// One solved articulator configuration.
typedef struct TractusFrame TractusFrame;

// Loaded contour library and phoneme inventory.
typedef struct TractusModel TractusModel;

// Derived scalars of a frame.
typedef struct TractusDerived {
  double labial_aperture;
  double apical_distance;
  double dorsal_distance;
  double velopharyngeal_opening;
  double glottal_width;
  double jaw_height;
} TractusDerived;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. The pointer
// stays valid until the next call on the same thread.
const char *tractus_last_error(void);

// Library version as a static string.
const char *tractus_version(void);

// Model built from the data compiled into the library.
//
// # Safety
// `out` must be a valid pointer to write a handle to.
enum TractusStatus tractus_model_bundled(struct TractusModel **out);

// Model loaded from a directory holding `contours.json` and `phonemes.json`.
//
// # Safety
// `dir` must be a nul-terminated string; `out` a valid pointer.
enum TractusStatus tractus_model_load(const char *dir, struct TractusModel **out);

// # Safety
// `model` must come from a `tractus_model_*` constructor or be null.
void tractus_model_free(struct TractusModel *model);

// Phoneme inventory as a JSON array.
//
// # Safety
// `model` must be a live handle; `out` a valid pointer.
enum TractusStatus tractus_phonemes_json(const struct TractusModel *model, char **out);

// Solves a control-state JSON document.
//
// # Safety
// `model` must be a live handle, `state_json` nul-terminated, `out` valid.
enum TractusStatus tractus_solve_json(const struct TractusModel *model,
                                      const char *state_json,
                                      struct TractusFrame **out);

// Solves the preset state of a phoneme.
//
// # Safety
// `model` must be a live handle, `sampa` nul-terminated, `out` valid.
enum TractusStatus tractus_solve_phoneme(const struct TractusModel *model,
                                         const char *sampa,
                                         struct TractusFrame **out);

// # Safety
// `frame` must come from a `tractus_solve_*` call or be null.
void tractus_frame_free(struct TractusFrame *frame);

// # Safety
// `frame` must be a live handle; `out` a valid pointer.
enum TractusStatus tractus_frame_derived(const struct TractusFrame *frame,
                                         struct TractusDerived *out);

// Frame as a JSON document.
//
// # Safety
// `frame` must be a live handle; `out` a valid pointer.
enum TractusStatus tractus_frame_json(const struct TractusFrame *frame, char **out);

// SVG of one view ("sagittal", "glottal", "palatal" or "composite");
// `size` is the pixel size of each panel.
//
// # Safety
// `model` and `frame` must be live handles, `view` nul-terminated, `out` valid.
enum TractusStatus tractus_render_svg(const struct TractusModel *model,
                                      const struct TractusFrame *frame,
                                      const char *view,
                                      uint32_t size,
                                      char **out);

// Timestamped frames for a SAMPA string with default timing, as JSON.
//
// # Safety
// `model` must be a live handle, `sampa` nul-terminated, `out` valid.
enum TractusStatus tractus_animate_json(const struct TractusModel *model,
                                        const char *sampa,
                                        double fps,
                                        char **out);

// # Safety
// `s` must come from this library or be null.
void tractus_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRACTUS_H */
