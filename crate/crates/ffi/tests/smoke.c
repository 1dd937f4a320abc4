#include <stdio.h>
#include <string.h>

#include "multider.h"

#define EXPECT(cond)                                          \
  do {                                                        \
    if (!(cond)) {                                            \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      return 1;                                               \
    }                                                         \
  } while (0)

int main(void) {
  MdSystem *sys = NULL;
  EXPECT(md_system_new("B2", &sys) == MD_STATUS_OK);

  size_t rank = 0;
  uint32_t h = 0;
  EXPECT(md_system_info(sys, &rank, &h) == MD_STATUS_OK);
  EXPECT(rank == 2 && h == 4);

  MdBasis *b = NULL;
  EXPECT(md_basis_new(sys, 3, &b) == MD_STATUS_OK);
  char *entry = NULL;
  EXPECT(md_basis_entry(b, 1, 0, &entry) == MD_STATUS_OK);
  EXPECT(strcmp(entry, "5/3*x1^2*x2^3 - 1/3*x2^5") == 0);
  md_string_free(entry);

  bool passed = false;
  EXPECT(md_verify(sys, 3, "all", &passed, NULL) == MD_STATUS_OK);
  EXPECT(passed);

  MdSystem *bad = NULL;
  EXPECT(md_system_new("E8", &bad) == MD_STATUS_UNKNOWN_SYSTEM);
  EXPECT(strlen(md_last_error()) > 0);

  md_basis_free(b);
  md_system_free(sys);
  printf("ok %s\n", md_version());
  return 0;
}
