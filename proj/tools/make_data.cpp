// Regenerates the bundled demonstration dataset.  Usage:
//   revana-make-data [seed [rows]] > data/synthetic_diet.csv

#include <cstdint>
#include <cstdlib>
#include <iostream>

#include "revana/report.hpp"
#include "revana/synthetic.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = revana::kSyntheticDietSeed;
  int rows = 155;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  if (argc > 2) rows = std::atoi(argv[2]);
  revana::write_csv(revana::synthetic_diet_dataset(seed, rows), std::cout);
  return 0;
}
