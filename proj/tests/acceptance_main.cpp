#include <iostream>

#include "preper/acceptance.hpp"

int main() {
  auto results = preper::run_acceptance(std::cout);
  return preper::all_passed(results) ? 0 : 1;
}
