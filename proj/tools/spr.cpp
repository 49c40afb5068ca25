#include <cstdio>

int main() {
  std::puts("spr: commands not wired up yet");
  return 0;
}
