#include <cstdlib>
#include <iostream>
#include <vector>

#include "gg/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> criteria;
  for (int i = 1; i < argc; ++i) criteria.push_back(std::atoi(argv[i]));
  if (criteria.empty()) criteria = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  int failures = gg::run_acceptance(criteria, 0, std::cout);
  return failures == 0 ? 0 : 1;
}
