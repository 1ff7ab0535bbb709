#include <math.h>
#include <stdio.h>
#include <string.h>

#include "hyperkit.h"

#define CHECK(cond)                                                 \
  do {                                                              \
    if (!(cond)) {                                                  \
      fprintf(stderr, "check failed at line %d: %s\n", __LINE__,    \
              #cond);                                               \
      return 1;                                                     \
    }                                                               \
  } while (0)

int main(void) {
  HkHypergroup *ghj = NULL;
  CHECK(hk_hypergroup_builtin("ghj", &ghj) == HK_STATUS_OK);
  CHECK(hk_hypergroup_size(ghj) == 2);

  double w[2];
  CHECK(hk_hypergroup_weights(ghj, 1e-9, w, 2) == HK_STATUS_OK);
  CHECK(fabs(w[1] - (2.0 + sqrt(3.0))) < 1e-9);
  CHECK(hk_hypergroup_weights(ghj, 1e-9, w, 1) == HK_STATUS_BUFFER_TOO_SMALL);

  char *doc = NULL;
  CHECK(hk_hypergroup_serialize(ghj, &doc) == HK_STATUS_OK);
  HkHypergroup *copy = NULL;
  CHECK(hk_hypergroup_parse(doc, 1e-9, &copy) == HK_STATUS_OK);
  hk_string_free(doc);
  hk_hypergroup_free(copy);

  HkGroupoid *ising = NULL;
  CHECK(hk_groupoid_builtin("ising", &ising) == HK_STATUS_OK);
  const char *chain[] = {"dual", "dual"};
  char *state = NULL;
  CHECK(hk_groupoid_juxtapose(ising, chain, 2, &state) == HK_STATUS_OK);
  CHECK(strstr(state, "\"boundary-state\"") != NULL);
  hk_string_free(state);
  hk_groupoid_free(ising);

  CHECK(hk_hypergroup_builtin("no-such-table", &copy) == HK_STATUS_MISMATCH);
  CHECK(hk_last_error() != NULL);

  hk_hypergroup_free(ghj);
  printf("ok %s\n", hk_version());
  return 0;
}
