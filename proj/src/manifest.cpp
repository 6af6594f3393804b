// Copyright 2026 The fusevos Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <set>

#include "fusevos/io.hpp"
#include "json.hpp"

namespace fusevos {
namespace {

using nlohmann::json;

std::string LineColumn(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

[[noreturn]] void SchemaError(const std::string& what) {
  Fail(ErrorKind::kManifest, "manifest schema: " + what);
}

const json& Require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) SchemaError(where + " is missing \"" + key + "\"");
  return *it;
}

std::string RequireString(const json& obj, const char* key,
                          const std::string& where) {
  const json& v = Require(obj, key, where);
  if (!v.is_string()) SchemaError(where + "." + key + " must be a string");
  return v.get<std::string>();
}

fs::path Resolve(const fs::path& base_dir, const std::string& p) {
  fs::path path(p);
  if (path.is_relative() && !base_dir.empty()) return base_dir / path;
  return path;
}

void WarnUnknownKeys(const json& obj, const std::set<std::string>& known,
                     const std::string& where,
                     std::vector<std::string>& warnings) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!known.count(it.key())) {
      warnings.push_back("ignoring unknown key \"" + it.key() + "\" in " + where);
    }
  }
}

Scalar ToScalar(const json& v, const std::string& where) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) return v.get<double>();
  if (v.is_string()) return v.get<std::string>();
  SchemaError(where + " must be a scalar (bool, number or string)");
}

json FromScalar(const Scalar& s) {
  return std::visit([](const auto& v) { return json(v); }, s);
}

std::string RelativeTo(const fs::path& p, const fs::path& base_dir) {
  if (base_dir.empty()) return p.generic_string();
  fs::path rel = p.lexically_relative(base_dir);
  if (rel.empty() || *rel.begin() == "..") return p.generic_string();
  return rel.generic_string();
}

}  // namespace

std::vector<double> ZooManifest::weights() const {
  std::vector<double> w;
  w.reserve(models.size());
  for (const auto& m : models) w.push_back(m.weight);
  return w;
}

ZooManifest ParseManifest(const std::string& text, const fs::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    Fail(ErrorKind::kManifest, "manifest parse error at " +
                                   LineColumn(text, e.byte == 0 ? 0 : e.byte - 1) +
                                   ": " + e.what());
  }
  if (!doc.is_object()) SchemaError("top level must be an object");

  ZooManifest m;
  WarnUnknownKeys(doc,
                  {"version", "sequence_name", "num_frames", "objects", "models"},
                  "manifest", m.warnings);

  const json& version = Require(doc, "version", "manifest");
  if (!version.is_number_integer() || version.get<int>() != kManifestVersion) {
    SchemaError("unsupported version (expected " +
                std::to_string(kManifestVersion) + ")");
  }
  m.sequence_name = RequireString(doc, "sequence_name", "manifest");

  const json& frames = Require(doc, "num_frames", "manifest");
  if (!frames.is_number_unsigned() || frames.get<std::uint64_t>() > UINT32_MAX) {
    SchemaError("num_frames must be a non-negative integer");
  }
  m.num_frames = frames.get<std::uint32_t>();

  const json& objects = Require(doc, "objects", "manifest");
  if (!objects.is_array()) SchemaError("objects must be an array of ids");
  std::vector<ObjectId> ids;
  for (const auto& id : objects) {
    if (!id.is_number_unsigned() || id.get<std::uint64_t>() > UINT32_MAX) {
      SchemaError("objects must hold positive integers");
    }
    ids.push_back(id.get<ObjectId>());
  }
  try {
    m.objects = ObjectSet(std::move(ids));
  } catch (const Error& e) {
    SchemaError(std::string("objects: ") + e.what());
  }

  const json& models = Require(doc, "models", "manifest");
  if (!models.is_array()) SchemaError("models must be an array");
  for (std::size_t i = 0; i < models.size(); ++i) {
    const json& entry = models[i];
    const std::string where = "models[" + std::to_string(i) + "]";
    if (!entry.is_object()) SchemaError(where + " must be an object");
    WarnUnknownKeys(entry,
                    {"name", "weight", "prediction_dir", "hyperparameters",
                     "tta_flipped_dir"},
                    where, m.warnings);
    ModelEntry model;
    model.name = RequireString(entry, "name", where);
    if (auto it = entry.find("weight"); it != entry.end()) {
      if (!it->is_number()) SchemaError(where + ".weight must be a number");
      model.weight = it->get<double>();
    }
    model.prediction_dir =
        Resolve(base_dir, RequireString(entry, "prediction_dir", where));
    if (auto it = entry.find("hyperparameters"); it != entry.end()) {
      if (!it->is_object()) {
        SchemaError(where + ".hyperparameters must be an object");
      }
      for (auto h = it->begin(); h != it->end(); ++h) {
        model.hyperparameters[h.key()] =
            ToScalar(h.value(), where + ".hyperparameters." + h.key());
      }
    }
    if (auto it = entry.find("tta_flipped_dir");
        it != entry.end() && !it->is_null()) {
      if (!it->is_string()) {
        SchemaError(where + ".tta_flipped_dir must be a string");
      }
      model.tta_flipped_dir = Resolve(base_dir, it->get<std::string>());
    }
    m.models.push_back(std::move(model));
  }
  return m;
}

ZooManifest load_manifest(const fs::path& path) {
  std::vector<std::uint8_t> bytes;
  try {
    bytes = ReadFileBytes(path);
  } catch (const Error& e) {
    Fail(ErrorKind::kManifest, std::string("cannot load manifest: ") + e.what());
  }
  const std::string text(bytes.begin(), bytes.end());
  try {
    return ParseManifest(text, path.parent_path());
  } catch (const Error& e) {
    Fail(e.kind(), path.string() + ": " + e.what());
  }
}

std::string ManifestToJson(const ZooManifest& manifest,
                           const fs::path& base_dir) {
  json doc;
  doc["version"] = kManifestVersion;
  doc["sequence_name"] = manifest.sequence_name;
  doc["num_frames"] = manifest.num_frames;
  doc["objects"] = manifest.objects.ids();
  json models = json::array();
  for (const auto& model : manifest.models) {
    json entry;
    entry["name"] = model.name;
    entry["weight"] = model.weight;
    entry["prediction_dir"] = RelativeTo(model.prediction_dir, base_dir);
    json hyper = json::object();
    for (const auto& [key, value] : model.hyperparameters) {
      hyper[key] = FromScalar(value);
    }
    entry["hyperparameters"] = std::move(hyper);
    if (model.tta_flipped_dir) {
      entry["tta_flipped_dir"] = RelativeTo(*model.tta_flipped_dir, base_dir);
    }
    models.push_back(std::move(entry));
  }
  doc["models"] = std::move(models);
  return doc.dump(2) + "\n";
}

ValidationResult validate_manifest(const ZooManifest& manifest,
                                   ValidationDepth depth) {
  ValidationResult result;
  if (manifest.num_frames == 0) {
    result.add(ViolationKind::kInvalidField, "num_frames must be >= 1");
  }
  if (manifest.objects.empty()) {
    result.add(ViolationKind::kInvalidField, "objects must be nonempty");
  }
  if (manifest.models.empty()) {
    result.add(ViolationKind::kInvalidField, "manifest lists no models");
  }

  // Deep validation also checks that every model agrees on frame size.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> frame_dims(
      manifest.num_frames, {0, 0});
  std::set<std::string> names;
  for (const auto& model : manifest.models) {
    if (!names.insert(model.name).second) {
      result.add(ViolationKind::kDuplicateModelName,
                 "duplicate model name \"" + model.name + "\"");
    }
    if (!std::isfinite(model.weight) || model.weight < 0.0) {
      result.add(ViolationKind::kInvalidField,
                 "model \"" + model.name + "\" has an invalid weight");
    }
    if (model.prediction_dir.empty()) {
      result.add(ViolationKind::kInvalidField,
                 "model \"" + model.name + "\" has an empty prediction_dir");
      continue;
    }

    std::vector<std::pair<fs::path, bool>> dirs{{model.prediction_dir, false}};
    if (model.tta_flipped_dir) dirs.emplace_back(*model.tta_flipped_dir, true);
    for (const auto& [dir, flipped] : dirs) {
      const std::string label =
          "model \"" + model.name + "\"" + (flipped ? " (tta)" : "");
      std::error_code ec;
      if (!fs::is_directory(dir, ec)) {
        result.add(ViolationKind::kMissingDirectory,
                   label + ": missing directory " + dir.string());
        continue;
      }
      for (std::uint32_t f = 0; f < manifest.num_frames; ++f) {
        const fs::path file = dir / VolumeFileName(f);
        if (!fs::is_regular_file(file, ec)) {
          result.add(ViolationKind::kMissingFrame,
                     label + ": missing frame " + VolumeFileName(f) + " of " +
                         std::to_string(manifest.num_frames));
          continue;
        }
        if (depth != ValidationDepth::kContents) continue;
        try {
          auto volume = read_confidence_volume(file, model.name);
          auto& dims = frame_dims[f];
          if (dims == std::pair<std::uint32_t, std::uint32_t>{0, 0}) {
            dims = {volume.width, volume.height};
          } else if (dims != std::pair{volume.width, volume.height}) {
            result.add(ViolationKind::kDimensionMismatch,
                       label + " " + VolumeFileName(f) +
                           ": dimension mismatch with other models");
          }
          for (auto& v : validate_volume(volume, manifest.objects).violations) {
            result.add(v.kind, label + " " + VolumeFileName(f) + ": " + v.message);
          }
        } catch (const Error& e) {
          result.add(ViolationKind::kUnreadableFile, label + ": " + e.what());
        }
      }
    }
  }
  return result;
}

}  // namespace fusevos
