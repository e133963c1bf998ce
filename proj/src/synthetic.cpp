#include "revana/synthetic.hpp"

#include "revana/rng.hpp"

namespace revana {

DataMatrix synthetic_diet_dataset(std::uint64_t seed, int rows) {
  if (rows < 10) throw InputError("synthetic dataset needs at least 10 rows");
  const Eigen::Index n = rows;
  Rng rng(seed);

  // one latent development factor drives the index column and the response;
  // a second shared factor ties the consumption columns together so that no
  // subset of them can explain the index-response axis well enough to
  // threaten the sign
  Eigen::VectorXd development(n), dietary_pattern(n);
  Eigen::MatrixXd noise(n, 7);
  for (Eigen::Index i = 0; i < n; ++i) {
    development[i] = rng.normal();
    dietary_pattern[i] = rng.normal();
    for (Eigen::Index j = 0; j < 7; ++j) noise(i, j) = rng.normal();
  }

  const Eigen::VectorXd hdi = 0.70 + 0.10 * development.array();
  const Eigen::VectorXd cholesterol =
      4.70 + 0.42 * development.array() + 0.20 * noise.col(0).array();

  struct Load {
    const char* label;
    double on_development, on_pattern, own_noise, scale, offset;
  };
  const Load loads[5] = {
      {"meat", 0.58, 0.42, 0.55, 24.0, 55.0},
      {"milk", 0.50, 0.48, 0.60, 62.0, 120.0},
      {"eggs", 0.55, 0.40, 0.62, 4.2, 9.0},
      {"fish", 0.48, 0.50, 0.58, 11.0, 30.0},
      {"animal_fat", 0.52, 0.45, 0.65, 5.5, 14.0},
  };

  DataMatrix out;
  out.append(DataColumn("cholesterol", cholesterol));
  out.append(DataColumn("hdi", hdi));
  for (int j = 0; j < 5; ++j) {
    const Load& load = loads[j];
    Eigen::VectorXd column = load.offset +
        load.scale * (load.on_development * development.array() +
                      load.on_pattern * dietary_pattern.array() +
                      load.own_noise * noise.col(j + 2).array());
    out.append(DataColumn(load.label, std::move(column)));
  }
  return out;
}

}  // namespace revana
