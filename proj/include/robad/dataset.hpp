#pragma once

#include "robad/csv.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace robad {

enum class DatasetKind { kddcup10, nslkdd, cicids2018, synthetic };

inline std::string to_string(DatasetKind k) {
  switch (k) {
    case DatasetKind::kddcup10: return "kddcup10";
    case DatasetKind::nslkdd: return "nslkdd";
    case DatasetKind::cicids2018: return "cicids2018";
    case DatasetKind::synthetic: return "synthetic";
  }
  return "?";
}

inline DatasetKind dataset_kind_from_string(const std::string& s) {
  if (s == "kddcup10") return DatasetKind::kddcup10;
  if (s == "nslkdd") return DatasetKind::nslkdd;
  if (s == "cicids2018") return DatasetKind::cicids2018;
  if (s == "synthetic") return DatasetKind::synthetic;
  throw PreconditionError("unknown dataset kind: " + s);
}

enum class ColumnKind { continuous, categorical };

struct ColumnSpec {
  std::string name;
  ColumnKind kind;
  std::size_t storage;  // index into cont_cols or cat_cols
};

/// Parsed rows in columnar form. Categorical values are stored as codes into a
/// per-column vocabulary that is sorted, so identical input files always
/// produce identical storage.
struct RawDataset {
  DatasetKind kind = DatasetKind::synthetic;
  std::vector<ColumnSpec> schema;
  std::vector<std::vector<double>> cont_cols;
  std::vector<std::vector<std::uint16_t>> cat_cols;
  std::vector<std::vector<std::string>> cat_vocab;

  std::vector<std::string> class_names;  // sorted distinct class labels
  std::vector<std::uint32_t> class_ids;  // per row, index into class_names
  std::size_t n_rows = 0;
  std::size_t n_dropped = 0;

  const std::string& class_label(std::size_t row) const { return class_names[class_ids[row]]; }
};

/// RawDataset plus the binary class-of-interest label (1 = attack).
struct LabeledDataset {
  DatasetKind kind = DatasetKind::synthetic;
  std::vector<ColumnSpec> schema;
  std::vector<std::vector<double>> cont_cols;
  std::vector<std::vector<std::uint16_t>> cat_cols;
  std::vector<std::vector<std::string>> cat_vocab;

  std::vector<std::string> class_names;
  std::vector<std::uint32_t> class_ids;
  std::vector<std::uint8_t> y;
  std::size_t n_rows = 0;
  std::size_t n_dropped = 0;

  const std::string& class_label(std::size_t row) const { return class_names[class_ids[row]]; }

  IndexList normal_indices() const {
    IndexList out;
    for (std::size_t i = 0; i < n_rows; ++i)
      if (y[i] == 0) out.push_back(static_cast<Index>(i));
    return out;
  }
  IndexList attack_indices() const {
    IndexList out;
    for (std::size_t i = 0; i < n_rows; ++i)
      if (y[i] == 1) out.push_back(static_cast<Index>(i));
    return out;
  }
};

struct DatasetStats {
  std::size_t n_rows = 0;
  std::size_t n_raw_features = 0;  // feature columns + label column
  double attack_ratio = 0.0;
  std::map<std::string, std::size_t> class_counts;
};

namespace detail {

// 41 KDD'99 feature names in file order; also used by NSL-KDD.
inline const std::array<const char*, 41>& kdd_feature_names() {
  static const std::array<const char*, 41> names = {
      "duration", "protocol_type", "service", "flag", "src_bytes", "dst_bytes", "land",
      "wrong_fragment", "urgent", "hot", "num_failed_logins", "logged_in", "num_compromised",
      "root_shell", "su_attempted", "num_root", "num_file_creations", "num_shells",
      "num_access_files", "num_outbound_cmds", "is_host_login", "is_guest_login", "count",
      "srv_count", "serror_rate", "srv_serror_rate", "rerror_rate", "srv_rerror_rate",
      "same_srv_rate", "diff_srv_rate", "srv_diff_host_rate", "dst_host_count",
      "dst_host_srv_count", "dst_host_same_srv_rate", "dst_host_diff_srv_rate",
      "dst_host_same_src_port_rate", "dst_host_srv_diff_host_rate", "dst_host_serror_rate",
      "dst_host_srv_serror_rate", "dst_host_rerror_rate", "dst_host_srv_rerror_rate"};
  return names;
}

inline bool kdd_column_is_categorical(std::size_t i) {
  return i == 1 || i == 2 || i == 3;  // protocol_type, service, flag
}

/// Accumulates rows while vocabularies are still in first-seen order; the
/// finish step re-sorts them so downstream storage is order-independent.
struct DatasetBuilder {
  RawDataset ds;
  std::vector<std::unordered_map<std::string, std::uint16_t>> cat_lookup;
  std::unordered_map<std::string, std::uint32_t> class_lookup;
  std::vector<std::string> class_seen;

  void init_schema(DatasetKind kind, const std::vector<std::pair<std::string, ColumnKind>>& cols) {
    ds.kind = kind;
    for (const auto& [name, colkind] : cols) {
      ColumnSpec spec{name, colkind, 0};
      if (colkind == ColumnKind::continuous) {
        spec.storage = ds.cont_cols.size();
        ds.cont_cols.emplace_back();
      } else {
        spec.storage = ds.cat_cols.size();
        ds.cat_cols.emplace_back();
        ds.cat_vocab.emplace_back();
        cat_lookup.emplace_back();
      }
      ds.schema.push_back(std::move(spec));
    }
  }

  std::uint16_t cat_code(std::size_t cat_slot, std::string_view value) {
    auto& lut = cat_lookup[cat_slot];
    auto it = lut.find(std::string(value));
    if (it != lut.end()) return it->second;
    auto code = static_cast<std::uint16_t>(ds.cat_vocab[cat_slot].size());
    if (ds.cat_vocab[cat_slot].size() >= 65535)
      throw Error("categorical vocabulary overflow in column " + std::to_string(cat_slot));
    ds.cat_vocab[cat_slot].emplace_back(value);
    lut.emplace(std::string(value), code);
    return code;
  }

  void add_class(std::string_view label) {
    auto it = class_lookup.find(std::string(label));
    if (it != class_lookup.end()) {
      ds.class_ids.push_back(it->second);
      return;
    }
    auto id = static_cast<std::uint32_t>(class_seen.size());
    class_seen.emplace_back(label);
    class_lookup.emplace(std::string(label), id);
    ds.class_ids.push_back(id);
  }

  /// Sort vocabularies and class names, remapping the stored codes.
  RawDataset finish() {
    for (std::size_t c = 0; c < ds.cat_vocab.size(); ++c) {
      auto& vocab = ds.cat_vocab[c];
      std::vector<std::uint16_t> order(vocab.size());
      std::vector<std::string> sorted = vocab;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t v = 0; v < vocab.size(); ++v) {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), vocab[v]);
        order[v] = static_cast<std::uint16_t>(it - sorted.begin());
      }
      for (auto& code : ds.cat_cols[c]) code = order[code];
      vocab = std::move(sorted);
    }
    std::vector<std::string> sorted_classes = class_seen;
    std::sort(sorted_classes.begin(), sorted_classes.end());
    std::vector<std::uint32_t> remap(class_seen.size());
    for (std::size_t i = 0; i < class_seen.size(); ++i) {
      auto it = std::lower_bound(sorted_classes.begin(), sorted_classes.end(), class_seen[i]);
      remap[i] = static_cast<std::uint32_t>(it - sorted_classes.begin());
    }
    for (auto& id : ds.class_ids) id = remap[id];
    ds.class_names = std::move(sorted_classes);
    ds.n_rows = ds.class_ids.size();
    return std::move(ds);
  }
};

/// Expands a path into the sorted list of regular files underneath it.
inline std::vector<std::string> source_files(const std::string& path) {
  namespace fs = std::filesystem;
  if (!fs::exists(path)) throw Error("source path does not exist: " + path);
  if (fs::is_regular_file(path)) return {path};
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(path)) {
    if (entry.is_regular_file()) files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw Error("no files under source directory: " + path);
  return files;
}

inline void load_kdd_like(DatasetBuilder& b, const std::string& path, bool has_difficulty) {
  const auto& names = kdd_feature_names();
  const std::size_t expect = 41 + 1 + (has_difficulty ? 1 : 0);
  std::vector<std::string_view> fields;
  std::size_t lineno = 0;
  for_each_line(path, [&](std::string_view line) {
    ++lineno;
    split_csv_line(line, fields);
    if (fields.size() != expect)
      throw Error(path + ":" + std::to_string(lineno) + ": expected " + std::to_string(expect) +
                  " columns, got " + std::to_string(fields.size()));
    for (std::size_t i = 0; i < 41; ++i) {
      const auto& spec = b.ds.schema[i];
      if (spec.kind == ColumnKind::categorical) {
        b.ds.cat_cols[spec.storage].push_back(b.cat_code(spec.storage, fields[i]));
      } else {
        double v;
        if (!parse_number(fields[i], v) || !std::isfinite(v))
          throw Error(path + ":" + std::to_string(lineno) + ": bad numeric field '" +
                      std::string(fields[i]) + "' in column " + std::string(names[i]));
        b.ds.cont_cols[spec.storage].push_back(v);
      }
    }
    if (fields[41].empty())
      throw Error(path + ":" + std::to_string(lineno) + ": empty class label");
    b.add_class(fields[41]);
  });
}

inline bool is_cic_metadata_column(const std::string& name) {
  static const std::array<const char*, 8> meta = {"Flow ID",   "Src IP",   "Source IP",
                                                  "Src Port",  "Source Port", "Dst IP",
                                                  "Destination IP", "Timestamp"};
  return std::find(meta.begin(), meta.end(), name) != meta.end();
}

inline void load_cicids(DatasetBuilder& b, const std::string& path) {
  std::vector<std::string_view> fields;
  std::vector<std::string> header;
  std::vector<int> keep;  // -1 drop, -2 label, >=0 schema index
  int label_col = -1;
  int duration_col = -1;  // position in kept schema, for the negative-duration rule
  bool first = true;
  std::size_t lineno = 0;

  for_each_line(path, [&](std::string_view line) {
    ++lineno;
    split_csv_line(line, fields);
    if (first) {
      first = false;
      bool fresh_schema = b.ds.schema.empty();
      std::size_t schema_pos = 0;
      for (std::size_t i = 0; i < fields.size(); ++i) {
        std::string name(fields[i]);
        if (name == "Label") {
          keep.push_back(-2);
          label_col = static_cast<int>(i);
        } else if (is_cic_metadata_column(name)) {
          keep.push_back(-1);
        } else {
          if (fresh_schema) {
            // ports and protocol numbers included: treated as continuous
            ColumnSpec spec{name, ColumnKind::continuous, b.ds.cont_cols.size()};
            b.ds.cont_cols.emplace_back();
            b.ds.schema.push_back(std::move(spec));
          } else {
            if (schema_pos >= b.ds.schema.size() || b.ds.schema[schema_pos].name != name)
              throw Error(path + ": header does not match previously loaded day files");
          }
          if (name == "Flow Duration") duration_col = static_cast<int>(schema_pos);
          keep.push_back(static_cast<int>(schema_pos));
          ++schema_pos;
        }
      }
      if (label_col < 0) throw Error(path + ": no Label column in header");
      if (!b.ds.schema.empty() && schema_pos != b.ds.schema.size())
        throw Error(path + ": header does not match previously loaded day files");
      return;
    }
    // repeated embedded header lines appear in several official day files
    if (!fields.empty() && fields[0] == "Dst Port") {
      ++b.ds.n_dropped;
      return;
    }
    if (fields.size() != keep.size()) {
      ++b.ds.n_dropped;
      return;
    }
    std::vector<double> row(b.ds.schema.size());
    bool ok = true;
    for (std::size_t i = 0; i < fields.size() && ok; ++i) {
      if (keep[i] < 0) continue;
      double v;
      if (!parse_number(fields[i], v) || !std::isfinite(v)) ok = false;
      else row[static_cast<std::size_t>(keep[i])] = v;
    }
    if (ok && duration_col >= 0 && row[static_cast<std::size_t>(duration_col)] < 0) ok = false;
    if (ok && fields[static_cast<std::size_t>(label_col)].empty()) ok = false;
    if (!ok) {
      ++b.ds.n_dropped;
      return;
    }
    for (std::size_t c = 0; c < row.size(); ++c) b.ds.cont_cols[c].push_back(row[c]);
    b.add_class(fields[static_cast<std::size_t>(label_col)]);
  });
}

inline std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace detail

/// Loads the raw records of one dataset. `source_path` may be a single file or
/// a directory of files (CIC-IDS2018 day files, NSL-KDD train+test).
inline RawDataset load_dataset(const std::string& source_path, DatasetKind kind) {
  detail::DatasetBuilder b;
  auto files = detail::source_files(source_path);
  switch (kind) {
    case DatasetKind::kddcup10:
    case DatasetKind::nslkdd: {
      std::vector<std::pair<std::string, ColumnKind>> cols;
      for (std::size_t i = 0; i < 41; ++i) {
        cols.emplace_back(detail::kdd_feature_names()[i],
                          detail::kdd_column_is_categorical(i) ? ColumnKind::categorical
                                                               : ColumnKind::continuous);
      }
      b.init_schema(kind, cols);
      for (const auto& f : files) detail::load_kdd_like(b, f, kind == DatasetKind::nslkdd);
      break;
    }
    case DatasetKind::cicids2018: {
      b.ds.kind = kind;
      for (const auto& f : files) detail::load_cicids(b, f);
      break;
    }
    case DatasetKind::synthetic:
      throw PreconditionError("synthetic datasets are generated, not loaded");
  }
  RawDataset ds = b.finish();
  if (ds.n_rows == 0) throw Error("no rows parsed from " + source_path);
  return ds;
}

/// Maps class labels to the binary class of interest. KDDCUP swaps: the file's
/// majority "attack" traffic becomes normal and original normal traffic becomes
/// the class of interest, giving the 0.1969 attack ratio.
inline LabeledDataset binarize_labels(RawDataset raw) {
  LabeledDataset out;
  out.kind = raw.kind;
  out.schema = std::move(raw.schema);
  out.cont_cols = std::move(raw.cont_cols);
  out.cat_cols = std::move(raw.cat_cols);
  out.cat_vocab = std::move(raw.cat_vocab);
  out.class_names = std::move(raw.class_names);
  out.class_ids = std::move(raw.class_ids);
  out.n_rows = raw.n_rows;
  out.n_dropped = raw.n_dropped;

  std::vector<std::uint8_t> class_is_attack(out.class_names.size());
  for (std::size_t c = 0; c < out.class_names.size(); ++c) {
    std::string name = out.class_names[c];
    if (name.empty()) throw Error("unmapped empty class label");
    if (!name.empty() && name.back() == '.') name.pop_back();
    name = detail::lower(name);
    bool is_normal = (name == "normal" || name == "benign");
    switch (out.kind) {
      case DatasetKind::kddcup10:
        class_is_attack[c] = is_normal ? 1 : 0;  // label swap
        break;
      default:
        class_is_attack[c] = is_normal ? 0 : 1;
        break;
    }
  }
  out.y.resize(out.n_rows);
  for (std::size_t i = 0; i < out.n_rows; ++i) out.y[i] = class_is_attack[out.class_ids[i]];
  return out;
}

inline DatasetStats dataset_stats(const LabeledDataset& ds) {
  DatasetStats st;
  st.n_rows = ds.n_rows;
  st.n_raw_features = ds.schema.size() + 1;
  std::size_t attacks = 0;
  for (std::size_t i = 0; i < ds.n_rows; ++i) {
    attacks += ds.y[i];
    ++st.class_counts[ds.class_label(i)];
  }
  st.attack_ratio = ds.n_rows ? static_cast<double>(attacks) / static_cast<double>(ds.n_rows) : 0.0;
  return st;
}

/// Table-level expectations used by the prepare sanity gate.
struct KnownStats {
  std::size_t n_rows;
  double attack_ratio;
};

inline std::optional<KnownStats> known_stats(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::kddcup10: return KnownStats{494021, 0.1969};
    case DatasetKind::nslkdd: return KnownStats{148517, 0.4811};
    case DatasetKind::cicids2018: return KnownStats{16232944, 0.1693};
    default: return std::nullopt;
  }
}

}  // namespace robad
