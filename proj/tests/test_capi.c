/* Exercises the C interface from C. */
#include <stdio.h>
#include <string.h>

#include "drcoh/drcoh.h"

static int failures = 0;

#define EXPECT(cond)                                               \
  do {                                                             \
    if (!(cond)) {                                                 \
      fprintf(stderr, "%s:%d: %s failed\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                  \
    }                                                              \
  } while (0)

static int dims_are(const drcoh_result* r, const size_t* want, size_t n) {
  if (drcoh_result_degree_count(r) != n) return 0;
  for (size_t i = 0; i < n; ++i)
    if (drcoh_result_dim(r, i) != want[i]) return 0;
  return 1;
}

int main(void) {
  drcoh_options* o = drcoh_options_new();
  EXPECT(o != NULL);
  EXPECT(drcoh_options_set_max_level(o, 0) == DRCOH_ERR_ARG);
  EXPECT(drcoh_options_set_max_gb_steps(NULL, 10) == DRCOH_ERR_ARG);
  EXPECT(strlen(drcoh_last_error()) > 0);

  drcoh_result* r = NULL;
  const char* x[] = {"x"};
  EXPECT(drcoh_affine(o, "x", x, 1, &r) == DRCOH_OK);
  {
    const size_t want[] = {1, 1};
    EXPECT(dims_are(r, want, 2));
  }
  EXPECT(strstr(drcoh_result_report(r), "H1 dim=1\n") != NULL);
  drcoh_result_free(r);

  const char* conic[] = {"x^2+y*z"};
  r = NULL;
  EXPECT(drcoh_open(o, "x,y,z", conic, 1, &r) == DRCOH_OK);
  {
    const size_t want[] = {1, 0, 0, 0, 0};
    EXPECT(dims_are(r, want, 5));
  }
  drcoh_result_free(r);

  r = NULL;
  EXPECT(drcoh_closed(o, "x,y,z", conic, 1, &r) == DRCOH_OK);
  {
    const size_t want[] = {1, 0, 1};
    EXPECT(dims_are(r, want, 3));
  }
  drcoh_result_free(r);

  r = NULL;
  EXPECT(drcoh_locally_closed(o, "x,y,z", "x^2+y*z", "x", 0, &r) == DRCOH_ERR_ARG);
  EXPECT(r == NULL);
  EXPECT(drcoh_locally_closed(o, "x,y,z", "x^2+y*z", "x", 1, &r) == DRCOH_OK);
  {
    const size_t want[] = {1, 1, 0};
    EXPECT(dims_are(r, want, 3));
  }
  drcoh_result_free(r);

  r = NULL;
  EXPECT(drcoh_toric(o, "1,0;0,1;-1,-1", NULL, NULL, NULL, NULL, &r) == DRCOH_OK);
  {
    const size_t want[] = {1, 0, 1, 0, 1};
    EXPECT(dims_are(r, want, 5));
  }
  drcoh_result_free(r);
  r = NULL;
  EXPECT(drcoh_toric(o, "1,0;1,2;-1,-1", NULL, NULL, NULL, NULL, &r) == DRCOH_ERR_MATH);

  const char* bad[] = {"x^2+(y"};
  EXPECT(drcoh_open(o, "x,y,z", bad, 1, &r) == DRCOH_ERR_PARSE);
  EXPECT(strstr(drcoh_last_error(), "position") != NULL);
  EXPECT(drcoh_open(o, "x,x,z", conic, 1, &r) == DRCOH_ERR_ARG);
  EXPECT(drcoh_open(o, "x,y,z", conic, 1, NULL) == DRCOH_ERR_ARG);

  EXPECT(drcoh_options_set_max_gb_steps(o, 3) == DRCOH_OK);
  EXPECT(drcoh_open(o, "x,y,z", conic, 1, &r) == DRCOH_ERR_LIMIT);
  EXPECT(strstr(drcoh_last_error(), "bernstein_sato") != NULL);
  EXPECT(r == NULL);

  EXPECT(drcoh_result_degree_count(NULL) == 0);
  drcoh_options_free(o);
  if (failures) fprintf(stderr, "%d failures\n", failures);
  else printf("C interface: all checks passed\n");
  return failures ? 1 : 0;
}
