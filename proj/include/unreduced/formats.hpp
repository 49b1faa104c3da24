#pragma once

// Dataset manifests, feature matrices and their layout sidecars.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "io.hpp"
#include "synth.hpp"
#include "vectorize.hpp"

namespace unreduced {

struct ManifestEntry {
  std::string file;  // relative to the manifest's directory
  int label = 0;
  std::string label_name;
  std::uint64_t seed = 0;
};

struct DatasetManifest {
  std::string generator = "shapes";
  std::size_t per_class = 0;
  double noise = 0.0;
  std::uint64_t seed = 0;
  std::size_t n_points = 0;
  std::vector<std::string> classes;
  std::vector<ManifestEntry> entries;
};

inline std::string format_manifest(const DatasetManifest& m) {
  nlohmann::ordered_json j;
  j["format"] = "phc-dataset v1";
  j["generator"] = m.generator;
  j["per_class"] = m.per_class;
  j["noise"] = m.noise;
  j["seed"] = m.seed;
  j["n_points"] = m.n_points;
  j["classes"] = m.classes;
  auto& entries = j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : m.entries) {
    entries.push_back({{"file", e.file}, {"label", e.label}, {"label_name", e.label_name},
                       {"seed", e.seed}});
  }
  return j.dump(2) + "\n";
}

inline DatasetManifest parse_manifest(const std::string& text, const std::string& source) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source, 0, e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "phc-dataset v1") {
      throw ParseError(source, 0, "not a phc-dataset v1 manifest");
    }
    DatasetManifest m;
    m.generator = j.value("generator", "");
    m.per_class = j.value("per_class", std::size_t{0});
    m.noise = j.value("noise", 0.0);
    m.seed = j.value("seed", std::uint64_t{0});
    m.n_points = j.value("n_points", std::size_t{0});
    m.classes = j.value("classes", std::vector<std::string>{});
    for (const auto& e : j.at("entries")) {
      m.entries.push_back({e.at("file").get<std::string>(), e.at("label").get<int>(),
                           e.value("label_name", ""), e.value("seed", std::uint64_t{0})});
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(source, 0, std::string("malformed manifest: ") + e.what());
  }
}

/// Dataset of shape clouds with file names `<shape>_<index>.csv`.
inline DatasetManifest shape_manifest(const std::vector<LabeledCloud>& data, std::size_t per_class,
                                      double noise, std::uint64_t seed, std::size_t n_points) {
  DatasetManifest m;
  m.per_class = per_class;
  m.noise = noise;
  m.seed = seed;
  m.n_points = n_points;
  for (auto s : kAllShapes) m.classes.emplace_back(to_string(s));
  std::vector<std::size_t> counter(std::size(kAllShapes), 0);
  for (const auto& e : data) {
    char name[64];
    std::snprintf(name, sizeof name, "%s_%04zu.csv", to_string(e.shape),
                  counter[static_cast<std::size_t>(e.label)]++);
    m.entries.push_back({name, e.label, to_string(e.shape), e.seed});
  }
  return m;
}

inline std::vector<std::string> feature_column_names(const std::vector<LayoutRecord>& layout) {
  std::vector<std::string> names;
  for (const auto& r : layout) {
    for (std::size_t i = 0; i < r.length; ++i) {
      names.push_back(r.key() + ":" + to_string(r.method) + std::to_string(i));
    }
  }
  return names;
}

/// One row per entry with a trailing `label` column.
inline std::string format_feature_csv(const std::vector<std::vector<double>>& rows,
                                      const std::vector<int>& labels,
                                      const std::vector<LayoutRecord>& layout) {
  std::string out;
  for (const auto& name : feature_column_names(layout)) {
    out += name;
    out += ',';
  }
  out += "label\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (double v : rows[i]) {
      out += io::format_double(v);
      out += ',';
    }
    out += std::to_string(labels[i]);
    out += '\n';
  }
  return out;
}

inline nlohmann::ordered_json config_json(VectorMethod method, const DiagramVectorConfig& c) {
  nlohmann::ordered_json j;
  if (method == VectorMethod::pi) {
    j["resolution"] = c.pi.resolution;
    j["bandwidth"] = c.pi.bandwidth;
    j["birth_range"] = {c.pi.birth_range.lo, c.pi.birth_range.hi};
    j["persistence_range"] = {c.pi.persistence_range.lo, c.pi.persistence_range.hi};
    j["weight"] = c.pi.weight == PIWeight::linear ? "linear" : "constant";
    j["p_max"] = c.pi.max_persistence ? nlohmann::ordered_json(*c.pi.max_persistence)
                                      : nlohmann::ordered_json("auto");
  } else {
    j["d_max"] = c.ac.max_death ? nlohmann::ordered_json(*c.ac.max_death)
                                : nlohmann::ordered_json("auto");
  }
  return j;
}

inline std::string format_layout_sidecar(const VectorizeConfig& cfg,
                                         const std::vector<LayoutRecord>& layout,
                                         std::size_t entries, std::size_t clamped,
                                         const std::string& kind_label) {
  nlohmann::ordered_json j;
  j["format"] = "phc-features v1";
  j["kind"] = kind_label;
  j["method"] = to_string(cfg.method);
  j["entries"] = entries;
  std::size_t length = 0;
  for (const auto& r : layout) length += r.length;
  j["length"] = length;
  j["clamped"] = clamped;
  auto& arr = j["layout"] = nlohmann::ordered_json::array();
  for (const auto& r : layout) {
    arr.push_back({{"source", r.source},
                   {"degree", r.degree},
                   {"method", to_string(r.method)},
                   {"offset", r.offset},
                   {"length", r.length},
                   {"config", config_json(r.method, cfg.per_key.at(r.key()))}});
  }
  return j.dump(2) + "\n";
}

}  // namespace unreduced
