#include <stdio.h>
#include <string.h>

#include "cobkh.h"

#define CHECK(x)                                                              \
  do {                                                                        \
    CobkhStatus s_ = (x);                                                     \
    if (s_ != COBKH_STATUS_OK) {                                              \
      fprintf(stderr, "%s -> %d: %s\n", #x, (int)s_, cobkh_last_error());     \
      return 1;                                                               \
    }                                                                         \
  } while (0)

int main(void) {
  CobkhDiagram *d = NULL;
  CobkhHomology *h = NULL;
  size_t n = 0, free_rank = 0, torsion = 0;

  CHECK(cobkh_diagram_builtin("trefoil_left", &d));
  CHECK(cobkh_homology(d, COBKH_COEFFICIENTS_Z, true, &h));
  CHECK(cobkh_homology_len(h, &n));
  for (size_t i = 0; i < n; i++) {
    int32_t hd, qd;
    size_t r, t;
    CHECK(cobkh_homology_group(h, i, &hd, &qd, &r, &t));
    free_rank += r;
    torsion += t;
  }
  printf("groups=%zu free=%zu torsion=%zu\n", n, free_rank, torsion);
  cobkh_homology_free(h);
  cobkh_diagram_free(d);

  if (cobkh_diagram_builtin("nope", &d) != COBKH_STATUS_UNKNOWN_BUILTIN) return 2;
  if (strstr(cobkh_last_error(), "nope") == NULL) return 3;

  char *report = NULL;
  CHECK(cobkh_verify("mainA_prism", &report));
  printf("%s\n", report);
  cobkh_string_free(report);
  return 0;
}
