/**
 * Copyright 2026 The GCA Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "gca/dataset.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "gca/error.hpp"
#include "json.hpp"

namespace gca {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

float SwapBytes(float v) {
  auto u = std::bit_cast<std::uint32_t>(v);
  u = (u >> 24) | ((u >> 8) & 0xff00u) | ((u << 8) & 0xff0000u) | (u << 24);
  return std::bit_cast<float>(u);
}

std::ifstream OpenInput(const fs::path &path, bool binary = false) {
  GCA_CHECK(fs::exists(path), ErrorCode::kIo, "missing file: " + path.string());
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  GCA_CHECK(in.good(), ErrorCode::kIo, "cannot open " + path.string());
  return in;
}

std::ofstream OpenOutput(const fs::path &path, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary | std::ios::trunc : std::ios::trunc);
  GCA_CHECK(out.good(), ErrorCode::kIo, "cannot write " + path.string());
  return out;
}

std::uint64_t ReadCount(const json &meta, const char *key, const fs::path &path) {
  GCA_CHECK(meta.contains(key), ErrorCode::kFormat, path.string() + ": missing key \"" + key + "\"");
  const auto &v = meta.at(key);
  GCA_CHECK(v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0), ErrorCode::kFormat,
            path.string() + ": \"" + key + "\" must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

std::uint64_t ParseIndex(const std::string &token, const fs::path &path, std::size_t line) {
  std::size_t used = 0;
  unsigned long long value = 0;
  bool ok = !token.empty() && token[0] != '-';
  if (ok) {
    try {
      value = std::stoull(token, &used);
    } catch (const std::exception &) {
      ok = false;
    }
  }
  GCA_CHECK(ok && used == token.size(), ErrorCode::kFormat,
            path.string() + ":" + std::to_string(line) + ": malformed integer \"" + token + "\"");
  return value;
}

std::vector<Edge> ReadEdges(const fs::path &path, std::size_t num_nodes) {
  auto in = OpenInput(path);
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string a, b, extra;
    GCA_CHECK(static_cast<bool>(fields >> a >> b) && !(fields >> extra), ErrorCode::kFormat,
              path.string() + ":" + std::to_string(line_no) + ": expected \"src<TAB>dst\"");
    const auto src = ParseIndex(a, path, line_no);
    const auto dst = ParseIndex(b, path, line_no);
    GCA_CHECK(src < num_nodes && dst < num_nodes, ErrorCode::kOutOfRange,
              path.string() + ":" + std::to_string(line_no) + ": node id out of range (N=" +
                  std::to_string(num_nodes) + ")");
    edges.push_back({static_cast<NodeId>(src), static_cast<NodeId>(dst)});
  }
  return edges;
}

std::vector<float> ReadFeatures(const fs::path &path, std::size_t n, std::size_t f) {
  auto in = OpenInput(path, true);
  const auto expected = static_cast<std::uintmax_t>(n) * f * sizeof(float);
  const auto actual = fs::file_size(path);
  GCA_CHECK(actual == expected, ErrorCode::kCountMismatch,
            path.string() + ": " + std::to_string(actual) + " bytes, expected " + std::to_string(expected) +
                " for " + std::to_string(n) + "x" + std::to_string(f) + " float32");
  std::vector<float> values(n * f);
  in.read(reinterpret_cast<char *>(values.data()), static_cast<std::streamsize>(expected));
  GCA_CHECK(in.good() || expected == 0, ErrorCode::kIo, "short read on " + path.string());
  if constexpr (std::endian::native == std::endian::big) {
    for (auto &v : values) v = SwapBytes(v);
  }
  return values;
}

std::vector<std::int32_t> ReadLabels(const fs::path &path, std::size_t n, std::size_t num_classes) {
  auto in = OpenInput(path);
  std::vector<std::int32_t> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto l = ParseIndex(line, path, line_no);
    GCA_CHECK(l < num_classes, ErrorCode::kOutOfRange,
              path.string() + ":" + std::to_string(line_no) + ": label " + std::to_string(l) + " >= num_classes " +
                  std::to_string(num_classes));
    labels.push_back(static_cast<std::int32_t>(l));
  }
  GCA_CHECK(labels.size() == n, ErrorCode::kCountMismatch,
            path.string() + ": " + std::to_string(labels.size()) + " labels for " + std::to_string(n) + " nodes");
  return labels;
}

std::vector<std::vector<NodeId>> ReadIdLists(const json &value, const char *key, const fs::path &path,
                                             std::size_t n) {
  GCA_CHECK(value.contains(key) && value.at(key).is_array(), ErrorCode::kFormat,
            path.string() + ": \"" + key + "\" must be an array");
  const auto &arr = value.at(key);
  std::vector<std::vector<NodeId>> lists;
  auto read_one = [&](const json &ids) {
    std::vector<NodeId> out;
    for (const auto &id : ids) {
      GCA_CHECK(id.is_number_integer() && id.get<std::int64_t>() >= 0, ErrorCode::kFormat,
                path.string() + ": node ids must be nonnegative integers");
      const auto v = id.get<std::uint64_t>();
      GCA_CHECK(v < n, ErrorCode::kOutOfRange, path.string() + ": split node id " + std::to_string(v) + " >= N");
      out.push_back(static_cast<NodeId>(v));
    }
    return out;
  };
  if (!arr.empty() && arr.front().is_array()) {
    for (const auto &ids : arr) lists.push_back(read_one(ids));
  } else {
    lists.push_back(read_one(arr));
  }
  return lists;
}

std::vector<Split> ReadSplits(const fs::path &path, std::size_t n) {
  auto in = OpenInput(path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kFormat, path.string() + ": " + e.what());
  }
  auto train = ReadIdLists(doc, "train", path, n);
  auto val = ReadIdLists(doc, "val", path, n);
  auto test = ReadIdLists(doc, "test", path, n);
  const std::size_t count = std::max({train.size(), val.size(), test.size()});
  for (const auto *lists : {&train, &val, &test}) {
    GCA_CHECK(lists->size() == 1 || lists->size() == count, ErrorCode::kCountMismatch,
              path.string() + ": split arrays disagree on the number of splits");
  }
  std::vector<Split> splits(count);
  for (std::size_t r = 0; r < count; ++r) {
    splits[r].train = train[train.size() == 1 ? 0 : r];
    splits[r].val = val[val.size() == 1 ? 0 : r];
    splits[r].test = test[test.size() == 1 ? 0 : r];
    std::vector<char> seen(n, 0);
    for (const auto *part : {&splits[r].train, &splits[r].val, &splits[r].test}) {
      GCA_CHECK(!part->empty(), ErrorCode::kFormat, path.string() + ": split " + std::to_string(r) + " has an empty part");
      for (NodeId id : *part) {
        GCA_CHECK(!seen[id], ErrorCode::kFormat,
                  path.string() + ": node " + std::to_string(id) + " appears twice in split " + std::to_string(r));
        seen[id] = 1;
      }
    }
  }
  return splits;
}

json IdsToJson(const std::vector<Split> &splits, std::vector<NodeId> Split::*member) {
  if (splits.size() == 1) return json(splits.front().*member);
  json arr = json::array();
  for (const auto &s : splits) arr.push_back(s.*member);
  return arr;
}

}  // namespace

Dataset LoadDataset(const fs::path &dir) {
  GCA_CHECK(fs::is_directory(dir), ErrorCode::kIo, "dataset directory not found: " + dir.string());
  const auto meta_path = dir / "meta.json";
  json meta;
  {
    auto in = OpenInput(meta_path);
    try {
      meta = json::parse(in);
    } catch (const json::exception &e) {
      throw Error(ErrorCode::kFormat, meta_path.string() + ": " + e.what());
    }
  }
  const auto n = ReadCount(meta, "num_nodes", meta_path);
  const auto m = ReadCount(meta, "num_edges", meta_path);
  const auto f = ReadCount(meta, "num_features", meta_path);
  const std::uint64_t c = meta.contains("num_classes") && !meta.at("num_classes").is_null()
                              ? ReadCount(meta, "num_classes", meta_path)
                              : 0;
  bool directed = false;
  if (meta.contains("directed")) {
    GCA_CHECK(meta.at("directed").is_boolean(), ErrorCode::kFormat, meta_path.string() + ": \"directed\" must be bool");
    directed = meta.at("directed").get<bool>();
  }

  auto edges = ReadEdges(dir / "edges.tsv", n);
  auto features = ReadFeatures(dir / "features.bin", n, f);
  std::optional<std::vector<std::int32_t>> labels;
  std::optional<std::size_t> classes;
  if (fs::exists(dir / "labels.tsv")) {
    GCA_CHECK(c > 0, ErrorCode::kFormat, meta_path.string() + ": labels.tsv present but num_classes is 0");
    labels = ReadLabels(dir / "labels.tsv", n, c);
    classes = c;
  }

  Dataset ds;
  try {
    ds.graph = BuildGraph(n, directed, edges, std::move(features), f, std::move(labels), classes, &ds.report);
  } catch (const Error &e) {
    throw Error(e.code(), dir.string() + ": " + e.what());
  }
  GCA_CHECK(ds.graph.num_edges() == m, ErrorCode::kCountMismatch,
            dir.string() + ": meta declares " + std::to_string(m) + " edges, found " +
                std::to_string(ds.graph.num_edges()) + " distinct edges");
  if (fs::exists(dir / "splits.json")) ds.splits = ReadSplits(dir / "splits.json", n);
  return ds;
}

void SaveDataset(const fs::path &dir, const Graph &graph, const std::vector<Split> &splits) {
  ValidateGraph(graph);
  std::error_code ec;
  fs::create_directories(dir, ec);
  GCA_CHECK(!ec, ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());

  json meta = {{"num_nodes", graph.num_nodes},
               {"num_edges", graph.num_edges()},
               {"num_features", graph.num_features},
               {"num_classes", graph.num_classes.value_or(0)},
               {"directed", graph.directed}};
  OpenOutput(dir / "meta.json") << meta.dump(2) << "\n";

  {
    auto out = OpenOutput(dir / "edges.tsv");
    for (const Edge &e : EdgeList(graph)) out << e.src << '\t' << e.dst << '\n';
  }
  {
    auto out = OpenOutput(dir / "features.bin", true);
    std::vector<float> buf = graph.features;
    if constexpr (std::endian::native == std::endian::big) {
      for (auto &v : buf) v = SwapBytes(v);
    }
    out.write(reinterpret_cast<const char *>(buf.data()), static_cast<std::streamsize>(buf.size() * sizeof(float)));
  }
  if (graph.labels) {
    auto out = OpenOutput(dir / "labels.tsv");
    for (auto l : *graph.labels) out << l << '\n';
  } else {
    fs::remove(dir / "labels.tsv", ec);
  }
  if (!splits.empty()) {
    json doc = {{"train", IdsToJson(splits, &Split::train)},
                {"val", IdsToJson(splits, &Split::val)},
                {"test", IdsToJson(splits, &Split::test)}};
    OpenOutput(dir / "splits.json") << doc.dump() << "\n";
  } else {
    fs::remove(dir / "splits.json", ec);
  }
}

}  // namespace gca
