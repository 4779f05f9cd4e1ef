#pragma once

#include "robad/dataset.hpp"

namespace robad {

/// Built-in smoke-test data: two Gaussian blobs of benign traffic plus two
/// planted outlier clusters ("AttackA", "AttackB") far outside both blobs.
struct SyntheticSpec {
  std::size_t n_rows = 20000;
  std::size_t dim = 8;
  double attack_ratio = 0.2;
  double noise_sigma = 0.3;
  double outlier_offset = 6.0;  // blob centers sit at +-1, attacks at +-offset
  bool with_categorical = true;
  std::uint64_t seed = 1;
};

inline LabeledDataset make_synthetic(const SyntheticSpec& spec) {
  require(spec.n_rows >= 8, "synthetic dataset needs at least 8 rows");
  require(spec.dim >= 2, "synthetic dataset needs at least 2 dimensions");
  require(spec.attack_ratio > 0.0 && spec.attack_ratio < 1.0,
          "synthetic attack ratio must be in (0,1)");
  Rng rng(spec.seed);

  const std::size_t n_attack = std::max<std::size_t>(2, round_half_up(
                                   static_cast<double>(spec.n_rows) * spec.attack_ratio));
  const std::size_t n_normal = spec.n_rows - n_attack;

  detail::DatasetBuilder b;
  std::vector<std::pair<std::string, ColumnKind>> cols;
  for (std::size_t d = 0; d < spec.dim; ++d)
    cols.emplace_back("f" + std::to_string(d), ColumnKind::continuous);
  if (spec.with_categorical) cols.emplace_back("chan", ColumnKind::categorical);
  b.init_schema(DatasetKind::synthetic, cols);

  auto gauss = [&rng]() {
    // Box-Muller on explicitly drawn uniforms keeps the stream portable
    double u1 = std::max(uniform01(rng), 1e-300);
    double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  };
  static const char* chan_values[3] = {"a", "b", "c"};

  auto emit_row = [&](double center, const char* label) {
    for (std::size_t d = 0; d < spec.dim; ++d)
      b.ds.cont_cols[d].push_back(center + spec.noise_sigma * gauss());
    if (spec.with_categorical) {
      auto code = b.cat_code(0, chan_values[bounded_rand(rng, 3)]);
      b.ds.cat_cols[0].push_back(code);
    }
    b.add_class(label);
  };

  for (std::size_t i = 0; i < n_normal; ++i) emit_row(i % 2 == 0 ? -1.0 : 1.0, "Benign");
  for (std::size_t i = 0; i < n_attack; ++i) {
    if (i % 2 == 0) emit_row(spec.outlier_offset, "AttackA");
    else emit_row(-spec.outlier_offset, "AttackB");
  }

  return binarize_labels(b.finish());
}

}  // namespace robad
