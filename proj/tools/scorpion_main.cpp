#include <cstdio>

int main() {
  std::puts("scorpion: CLI not wired up yet");
  return 1;
}
