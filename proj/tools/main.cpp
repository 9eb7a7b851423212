/* worldline — command line front end (subcommands land as modules come up) */

#include <cstdio>

int main() {
  std::puts("worldline: symbolic + numeric workbench (under construction)");
  return 0;
}
