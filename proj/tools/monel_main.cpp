#include <iostream>

int main() {
  std::cerr << "monel: no command given\n";
  return 2;
}
