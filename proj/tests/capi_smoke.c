/* The header must compile as C. */
#include <stdio.h>
#include <string.h>

#include "invrel/invrel.h"

static void count(const char* line, void* user) {
  (void)line;
  ++*(int*)user;
}

int main(void) {
  invrel_config* cfg = NULL;
  char* json = NULL;
  int lines = 0, failures = -1;
  if (invrel_config_new(&cfg) != INVREL_OK) return 1;
  if (invrel_config_set(cfg, "d", "1") != INVREL_OK) return 1;
  if (invrel_config_set(cfg, "max-word-len", "1") != INVREL_OK) return 1;
  if (invrel_verify(cfg, "relations", count, &lines, &failures) != INVREL_OK || failures != 0 || lines < 2) return 1;
  if (invrel_config_set(cfg, "n", "3") != INVREL_OK) return 1;
  if (invrel_verify(cfg, "relations", count, &lines, &failures) != INVREL_USAGE) return 1;
  if (strlen(invrel_last_error()) == 0) return 1;
  invrel_config_free(cfg);
  if (invrel_expand("sigma", 0, 1, &json) != INVREL_OK) return 1;
  printf("%s\n", json);
  invrel_string_free(json);
  return 0;
}
