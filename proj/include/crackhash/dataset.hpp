#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "crackhash/codec.hpp"
#include "crackhash/forest.hpp"
#include "crackhash/hash.hpp"
#include "crackhash/io.hpp"
#include "crackhash/parallel.hpp"
#include "crackhash/rng.hpp"
#include "crackhash/version.hpp"

namespace crackhash {

inline const char* label_name(Label l) {
  return l == Label::Cracked ? "cracked" : "uncracked";
}

inline Label label_from_name(const std::string& s) {
  if (s == "cracked") return Label::Cracked;
  if (s == "uncracked") return Label::Uncracked;
  throw std::runtime_error("bad label: '" + s + "'");
}

struct ManifestEntry {
  std::string path;  // relative to the root, forward slashes
  Label label = Label::Uncracked;
};

struct Manifest {
  std::filesystem::path root;
  std::vector<ManifestEntry> entries;

  std::uint64_t count(Label l) const {
    std::uint64_t n = 0;
    for (const auto& e : entries) {
      if (e.label == l) ++n;
    }
    return n;
  }
};

namespace detail {

inline bool is_image_file(const std::filesystem::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

}  // namespace detail

// Builds a manifest from the Özgenel-style layout: class folders `Positive`
// (cracked) and `Negative` (uncracked) under the root, scanned recursively
// for .png/.jpg/.jpeg files. Entries are ordered lexicographically by
// relative path so the manifest is reproducible.
inline Manifest scan(const std::filesystem::path& root) {
  Manifest m;
  m.root = root;
  const std::pair<const char*, Label> classes[2] = {
      {"Positive", Label::Cracked}, {"Negative", Label::Uncracked}};
  for (const auto& [dir, label] : classes) {
    const std::filesystem::path class_dir = root / dir;
    if (!std::filesystem::is_directory(class_dir)) {
      throw std::runtime_error("missing class folder: " + class_dir.string());
    }
    std::uint64_t found = 0;
    for (const auto& entry :
         std::filesystem::recursive_directory_iterator(class_dir)) {
      if (!entry.is_regular_file() || !detail::is_image_file(entry.path())) continue;
      m.entries.push_back(
          {entry.path().lexically_relative(root).generic_string(), label});
      ++found;
    }
    if (found == 0) {
      throw std::runtime_error("class folder has no images: " + class_dir.string());
    }
  }
  std::sort(m.entries.begin(), m.entries.end(),
            [](const ManifestEntry& a, const ManifestEntry& b) { return a.path < b.path; });
  return m;
}

// Stratified seeded split. Each class contributes round(fraction * n_class)
// entries to the train half, so class balance is preserved within one
// sample. Both output manifests are sorted by path.
inline std::pair<Manifest, Manifest> split(const Manifest& m, double train_fraction,
                                           std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("split: fraction must lie strictly in (0, 1)");
  }
  Rng rng(seed);
  Manifest train, test;
  train.root = test.root = m.root;
  for (int c = 0; c < 2; ++c) {
    std::vector<int> idx;
    for (std::size_t i = 0; i < m.entries.size(); ++i) {
      if (static_cast<int>(m.entries[i].label) == c) idx.push_back(static_cast<int>(i));
    }
    rng.shuffle(idx);
    const auto n_train =
        static_cast<std::size_t>(std::llround(train_fraction * idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) {
      (i < n_train ? train : test).entries.push_back(m.entries[idx[i]]);
    }
  }
  auto by_path = [](const ManifestEntry& a, const ManifestEntry& b) {
    return a.path < b.path;
  };
  std::sort(train.entries.begin(), train.entries.end(), by_path);
  std::sort(test.entries.begin(), test.entries.end(), by_path);
  return {std::move(train), std::move(test)};
}

inline void save_manifest(const std::filesystem::path& file, const Manifest& m) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << "path,label\n";
  for (const auto& e : m.entries) {
    out << csv_escape(e.path) << ',' << label_name(e.label) << '\n';
  }
}

inline Manifest load_manifest(const std::filesystem::path& file,
                              const std::filesystem::path& root = {}) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  Manifest m;
  m.root = root;
  std::string line;
  if (!std::getline(in, line) || csv_split(line) != std::vector<std::string>{"path", "label"}) {
    throw std::runtime_error("bad manifest header in " + file.string());
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = csv_split(line);
    if (fields.size() != 2) throw std::runtime_error("bad manifest row: " + line);
    m.entries.push_back({fields[0], label_from_name(fields[1])});
  }
  return m;
}

struct FeatureRow {
  std::string path;
  Label label = Label::Uncracked;
  std::array<std::uint64_t, kFeatureCount> hash_bits{};
  FeatureVector features{};
};

// Run provenance carried by emitted files. created_at stays empty in
// comparison mode (--no-timestamp) so artifacts are byte-comparable.
struct Provenance {
  std::string toolkit_version = kVersion;
  std::uint64_t master_seed = 0;
  std::string created_at;
};

struct FeatureTable {
  std::vector<FeatureRow> rows;
  Provenance provenance;
};

struct SkipEntry {
  std::string path;
  std::string error;
};

struct ExtractResult {
  FeatureTable table;
  std::vector<SkipEntry> skipped;
};

// Extracts the 10 hash features for every manifest entry. Rows keep
// manifest order regardless of worker count. Undecodable files are
// collected into the skip report; the run fails only when more than 1% of
// the manifest is skipped.
inline ExtractResult extract_table(const Manifest& m, int workers,
                                   std::uint64_t master_seed = 0) {
  if (m.entries.empty()) throw std::invalid_argument("extract_table: empty manifest");
  const std::size_t n = m.entries.size();
  std::vector<FeatureRow> rows(n);
  std::vector<std::string> errors(n);
  std::vector<char> failed(n, 0);
  parallel_for(n, workers, [&](std::size_t i) {
    const auto& entry = m.entries[i];
    try {
      const RgbImage img = load_image((m.root / entry.path).string());
      const GrayImage g = to_grayscale(img);
      const auto hashes = compute_hashes(g);
      FeatureRow row;
      row.path = entry.path;
      row.label = entry.label;
      for (int f = 0; f < kFeatureCount; ++f) {
        row.hash_bits[f] = hashes[f].bits;
        row.features[f] = hash_to_float(hashes[f]);
      }
      rows[i] = std::move(row);
    } catch (const std::exception& e) {
      failed[i] = 1;
      errors[i] = e.what();
    }
  });
  ExtractResult result;
  result.table.provenance.master_seed = master_seed;
  for (std::size_t i = 0; i < n; ++i) {
    if (!failed[i]) {
      result.table.rows.push_back(std::move(rows[i]));
    } else {
      result.skipped.push_back({m.entries[i].path, errors[i]});
    }
  }
  if (result.skipped.size() * 100 > n) {
    std::ostringstream msg;
    msg << "extract_table: " << result.skipped.size() << " of " << n
        << " files undecodable (above the 1% threshold); first: "
        << result.skipped.front().path << ": " << result.skipped.front().error;
    throw std::runtime_error(msg.str());
  }
  return result;
}

namespace detail {

inline std::string feature_table_header() {
  std::string h = "path,label";
  for (const char* name : kFeatureNames) h += std::string(",") + name + "_hex";
  for (const char* name : kFeatureNames) h += std::string(",") + name;
  return h;
}

}  // namespace detail

// Feature cache CSV: provenance comment lines, a header row, then one row
// per image with the 10 hashes in hex and as shortest-round-trip decimals.
inline void save_feature_table(const std::filesystem::path& file,
                               const FeatureTable& t) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << "# crackhash_version=" << t.provenance.toolkit_version << '\n';
  out << "# schema_version=" << kSchemaVersion << '\n';
  out << "# master_seed=" << t.provenance.master_seed << '\n';
  if (!t.provenance.created_at.empty()) {
    out << "# created_at=" << t.provenance.created_at << '\n';
  }
  out << detail::feature_table_header() << '\n';
  for (const auto& row : t.rows) {
    out << csv_escape(row.path) << ',' << label_name(row.label);
    for (int f = 0; f < kFeatureCount; ++f) out << ',' << format_hex64(row.hash_bits[f]);
    for (int f = 0; f < kFeatureCount; ++f) out << ',' << format_double(row.features[f]);
    out << '\n';
  }
}

inline FeatureTable load_feature_table(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  FeatureTable t;
  std::string line;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos) {
        const std::string key = line.substr(2, eq - 2);
        const std::string value = line.substr(eq + 1);
        if (key == "crackhash_version") t.provenance.toolkit_version = value;
        else if (key == "master_seed") t.provenance.master_seed = std::stoull(value);
        else if (key == "created_at") t.provenance.created_at = value;
      }
      continue;
    }
    if (!saw_header) {
      if (line != detail::feature_table_header()) {
        throw std::runtime_error("bad feature table header in " + file.string());
      }
      saw_header = true;
      continue;
    }
    const auto fields = csv_split(line);
    if (fields.size() != 2 + 2 * kFeatureCount) {
      throw std::runtime_error("bad feature table row: " + line);
    }
    FeatureRow row;
    row.path = fields[0];
    row.label = label_from_name(fields[1]);
    for (int f = 0; f < kFeatureCount; ++f) {
      row.hash_bits[f] = parse_hex64(fields[2 + f]);
      row.features[f] = parse_double(fields[2 + kFeatureCount + f]);
    }
    t.rows.push_back(std::move(row));
  }
  if (!saw_header) throw std::runtime_error("empty feature table: " + file.string());
  return t;
}

// The pairwise scatter table behind the paper-style feature plots:
// file,label,f1..f10 with decimal features only.
inline void save_scatter_table(const std::filesystem::path& file,
                               const FeatureTable& t) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << "file,label";
  for (int f = 1; f <= kFeatureCount; ++f) out << ",f" << f;
  out << '\n';
  for (const auto& row : t.rows) {
    out << csv_escape(row.path) << ',' << label_name(row.label);
    for (int f = 0; f < kFeatureCount; ++f) out << ',' << format_double(row.features[f]);
    out << '\n';
  }
}

inline std::vector<LabeledSample> to_samples(const FeatureTable& t) {
  std::vector<LabeledSample> samples;
  samples.reserve(t.rows.size());
  for (const auto& row : t.rows) samples.push_back({row.features, row.label});
  return samples;
}

// Stratified seeded split of a feature table, same rounding and ordering
// rules as the manifest split. Lets every downstream command address the
// train or test part of one extracted table (e.g. CV on one half, final
// test on the other) without re-extracting.
inline std::pair<FeatureTable, FeatureTable> split_table(const FeatureTable& t,
                                                         double train_fraction,
                                                         std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("split_table: fraction must lie strictly in (0, 1)");
  }
  Rng rng(seed);
  FeatureTable train, test;
  train.provenance = test.provenance = t.provenance;
  for (int c = 0; c < 2; ++c) {
    std::vector<int> idx;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      if (static_cast<int>(t.rows[i].label) == c) idx.push_back(static_cast<int>(i));
    }
    rng.shuffle(idx);
    const auto n_train =
        static_cast<std::size_t>(std::llround(train_fraction * idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) {
      (i < n_train ? train : test).rows.push_back(t.rows[idx[i]]);
    }
  }
  auto by_path = [](const FeatureRow& a, const FeatureRow& b) { return a.path < b.path; };
  std::sort(train.rows.begin(), train.rows.end(), by_path);
  std::sort(test.rows.begin(), test.rows.end(), by_path);
  return {std::move(train), std::move(test)};
}

}  // namespace crackhash
