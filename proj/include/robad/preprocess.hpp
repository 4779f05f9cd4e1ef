#pragma once

#include "robad/dataset.hpp"

namespace robad {

/// Fitted min-max statistics and one-hot vocabularies. Immutable after fit.
///
/// Min/max come from the fit rows only (training half); vocabularies are taken
/// from the whole dataset so the encoded width is identical across runs.
struct Preprocessor {
  struct ContRange {
    double min = 0.0, max = 0.0;
  };
  std::vector<ColumnSpec> schema;
  std::vector<ContRange> cont_range;             // per continuous column
  std::vector<std::vector<std::string>> vocab;   // per categorical column
  IndexList fit_row_indices;
  std::size_t encoded_dim = 0;
};

inline Preprocessor fit_preprocessor(const LabeledDataset& ds, std::span<const Index> fit_indices) {
  require(!fit_indices.empty(), "empty fit set");
  for (Index i : fit_indices)
    require(i < ds.n_rows, "fit index out of bounds: " + std::to_string(i));

  Preprocessor prep;
  prep.schema = ds.schema;
  prep.vocab = ds.cat_vocab;
  prep.fit_row_indices.assign(fit_indices.begin(), fit_indices.end());
  prep.cont_range.resize(ds.cont_cols.size());
  for (std::size_t c = 0; c < ds.cont_cols.size(); ++c) {
    const auto& col = ds.cont_cols[c];
    double lo = col[fit_indices[0]], hi = lo;
    for (Index i : fit_indices) {
      lo = std::min(lo, col[i]);
      hi = std::max(hi, col[i]);
    }
    prep.cont_range[c] = {lo, hi};
  }
  prep.encoded_dim = ds.cont_cols.size();
  for (const auto& v : prep.vocab) prep.encoded_dim += v.size();
  return prep;
}

namespace detail {

/// Per-apply lookup from dataset categorical codes to encoder vocabulary slots
/// (-1 when out of vocabulary).
inline std::vector<std::vector<int>> build_code_maps(const Preprocessor& prep,
                                                     const LabeledDataset& ds) {
  std::vector<std::vector<int>> maps(ds.cat_vocab.size());
  for (std::size_t c = 0; c < ds.cat_vocab.size(); ++c) {
    maps[c].resize(ds.cat_vocab[c].size(), -1);
    const auto& pv = prep.vocab[c];
    for (std::size_t code = 0; code < ds.cat_vocab[c].size(); ++code) {
      auto it = std::lower_bound(pv.begin(), pv.end(), ds.cat_vocab[c][code]);
      if (it != pv.end() && *it == ds.cat_vocab[c][code])
        maps[c][code] = static_cast<int>(it - pv.begin());
    }
  }
  return maps;
}

}  // namespace detail

/// Encodes the given rows: continuous -> (x-min)/(max-min) clipped to [0,1]
/// (constant columns map to 0), categorical -> one-hot over the fitted
/// vocabulary, out-of-vocabulary -> all-zero group.
inline Matrix apply_preprocessor(const Preprocessor& prep, const LabeledDataset& ds,
                                 std::span<const Index> rows) {
  require(prep.schema.size() == ds.schema.size(), "schema mismatch: column count");
  for (std::size_t i = 0; i < prep.schema.size(); ++i) {
    require(prep.schema[i].name == ds.schema[i].name && prep.schema[i].kind == ds.schema[i].kind,
            "schema mismatch at column " + prep.schema[i].name);
  }
  for (Index i : rows) require(i < ds.n_rows, "row index out of bounds");

  // column offsets in the encoded matrix, in schema order
  std::vector<std::size_t> offset(prep.schema.size());
  std::size_t pos = 0;
  for (std::size_t c = 0; c < prep.schema.size(); ++c) {
    offset[c] = pos;
    pos += prep.schema[c].kind == ColumnKind::continuous ? 1 : prep.vocab[prep.schema[c].storage].size();
  }

  auto code_maps = detail::build_code_maps(prep, ds);
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(rows.size()),
                            static_cast<Eigen::Index>(prep.encoded_dim));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Index row = rows[r];
    for (std::size_t c = 0; c < prep.schema.size(); ++c) {
      const auto& spec = prep.schema[c];
      if (spec.kind == ColumnKind::continuous) {
        const auto& [lo, hi] = prep.cont_range[spec.storage];
        double v = 0.0;
        if (hi > lo) v = std::clamp((ds.cont_cols[spec.storage][row] - lo) / (hi - lo), 0.0, 1.0);
        out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(offset[c])) = v;
      } else {
        int slot = code_maps[spec.storage][ds.cat_cols[spec.storage][row]];
        if (slot >= 0)
          out(static_cast<Eigen::Index>(r),
              static_cast<Eigen::Index>(offset[c] + static_cast<std::size_t>(slot))) = 1.0;
      }
    }
  }
  return out;
}

inline Matrix apply_preprocessor(const Preprocessor& prep, const LabeledDataset& ds,
                                 const IndexList& rows) {
  return apply_preprocessor(prep, ds, std::span<const Index>(rows));
}

}  // namespace robad
