#pragma once

#include "robad/dataset.hpp"

#include <set>
#include <sstream>

namespace robad {

/// Parameters of one contaminated train/test split. An empty
/// `target_attack_types` means generic contamination (any attack type).
struct SplitSpec {
  double c_pct = 0.0;   // attack share of the final training set, percent
  double p_pct = 20.0;  // share of attack rows reserved as the contamination pool
  std::uint64_t seed = 0;
  std::vector<std::string> target_attack_types;
};

struct ContaminatedSplit {
  IndexList train_normal;
  IndexList train_contam;
  IndexList contam_pool;
  IndexList test;
  SplitSpec spec;

  /// Assembled training rows: normals followed by injected attacks.
  IndexList train_rows() const {
    IndexList rows = train_normal;
    rows.insert(rows.end(), train_contam.begin(), train_contam.end());
    return rows;
  }
};

/// Number of attack rows to inject so attacks form c% of the final training
/// set: round(n_norm_train * c / (100 - c)), half away from zero.
inline std::size_t contamination_count(std::size_t n_norm_train, double c_pct) {
  require(c_pct >= 0.0 && c_pct < 100.0, "contamination ratio must be in [0,100)");
  return round_half_up(static_cast<double>(n_norm_train) * c_pct / (100.0 - c_pct));
}

/// Draws the split. Sampling order is fixed so the test set depends only on
/// (seed, p): normals are shuffled and halved, attacks are shuffled and cut
/// into pool/test, and only then is the contamination drawn from the pool.
inline ContaminatedSplit make_split(const LabeledDataset& ds, const SplitSpec& spec) {
  require(spec.c_pct >= 0.0 && spec.c_pct < 100.0, "contamination ratio must be in [0,100)");
  require(spec.p_pct > 0.0 && spec.p_pct <= 100.0, "contamination pool percent must be in (0,100]");

  std::set<std::uint32_t> target_ids;
  for (const auto& t : spec.target_attack_types) {
    auto it = std::lower_bound(ds.class_names.begin(), ds.class_names.end(), t);
    if (it == ds.class_names.end() || *it != t)
      throw PreconditionError("unknown target attack type: " + t);
    target_ids.insert(static_cast<std::uint32_t>(it - ds.class_names.begin()));
  }

  IndexList normals = ds.normal_indices();
  IndexList attacks = ds.attack_indices();
  require(!normals.empty(), "dataset has no normal rows");
  require(!attacks.empty(), "dataset has no attack rows");

  Rng rng(spec.seed);
  deterministic_shuffle(normals, rng);
  deterministic_shuffle(attacks, rng);

  ContaminatedSplit split;
  split.spec = spec;
  const std::size_t n_train_norm = normals.size() / 2;
  split.train_normal.assign(normals.begin(), normals.begin() + static_cast<std::ptrdiff_t>(n_train_norm));

  const std::size_t n_pool =
      std::min(attacks.size(), round_half_up(static_cast<double>(attacks.size()) * spec.p_pct / 100.0));
  split.contam_pool.assign(attacks.begin(), attacks.begin() + static_cast<std::ptrdiff_t>(n_pool));

  split.test.assign(normals.begin() + static_cast<std::ptrdiff_t>(n_train_norm), normals.end());
  split.test.insert(split.test.end(), attacks.begin() + static_cast<std::ptrdiff_t>(n_pool),
                    attacks.end());

  IndexList eligible;
  for (Index i : split.contam_pool) {
    if (target_ids.empty() || target_ids.count(ds.class_ids[i])) eligible.push_back(i);
  }
  const std::size_t want = contamination_count(n_train_norm, spec.c_pct);
  if (want > eligible.size()) {
    std::ostringstream msg;
    msg << "contamination pool too small: need " << want << " rows for c=" << spec.c_pct
        << "% but only " << eligible.size() << " eligible rows in the pool";
    throw PreconditionError(msg.str());
  }
  deterministic_shuffle(eligible, rng);
  split.train_contam.assign(eligible.begin(), eligible.begin() + static_cast<std::ptrdiff_t>(want));
  return split;
}

struct Violation {
  std::string invariant;
  std::string detail;
};

/// Independent re-check of every split invariant; empty means well-formed.
inline std::vector<Violation> verify_split(const ContaminatedSplit& split,
                                           const LabeledDataset& ds) {
  std::vector<Violation> out;
  auto add = [&out](const std::string& inv, const std::string& detail) {
    out.push_back({inv, detail});
  };

  auto in_bounds = [&](const IndexList& v) {
    return std::all_of(v.begin(), v.end(), [&](Index i) { return i < ds.n_rows; });
  };
  if (!in_bounds(split.train_normal) || !in_bounds(split.train_contam) ||
      !in_bounds(split.contam_pool) || !in_bounds(split.test)) {
    add("index bounds", "split references rows outside the dataset");
    return out;
  }

  for (Index i : split.train_normal)
    if (ds.y[i] != 0) {
      add("train normals purity", "row " + std::to_string(i) + " is an attack");
      break;
    }
  for (Index i : split.contam_pool)
    if (ds.y[i] != 1) {
      add("pool purity", "row " + std::to_string(i) + " is not an attack");
      break;
    }

  std::set<Index> pool(split.contam_pool.begin(), split.contam_pool.end());
  for (Index i : split.train_contam)
    if (!pool.count(i)) {
      add("contamination source", "row " + std::to_string(i) + " not drawn from the pool");
      break;
    }

  std::set<Index> test(split.test.begin(), split.test.end());
  std::size_t overlap = 0;
  for (Index i : split.train_normal) overlap += test.count(i);
  for (Index i : split.train_contam) overlap += test.count(i);
  if (overlap > 0) add("train/test overlap", std::to_string(overlap) + " shared rows");

  const std::size_t want = contamination_count(split.train_normal.size(), split.spec.c_pct);
  if (want != split.train_contam.size())
    add("contamination count mismatch", "expected " + std::to_string(want) + ", have " +
                                            std::to_string(split.train_contam.size()));

  std::set<Index> tn(split.train_normal.begin(), split.train_normal.end());
  std::set<Index> tc(split.train_contam.begin(), split.train_contam.end());
  if (tn.size() != split.train_normal.size() || tc.size() != split.train_contam.size() ||
      test.size() != split.test.size())
    add("duplicate indices", "an index set contains repeated rows");

  return out;
}

}  // namespace robad
