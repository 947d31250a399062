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
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>

#include "doctest.h"
#include "gca/dataset.hpp"
#include "gca/error.hpp"
#include "gca/oracle.hpp"

using namespace gca;
namespace fs = std::filesystem;

namespace {

fs::path ScratchDir(const std::string &name) {
  const fs::path dir = fs::temp_directory_path() / ("gca_dataset_test_" + name);
  fs::remove_all(dir);
  return dir;
}

void WriteText(const fs::path &path, const std::string &text) { std::ofstream(path) << text; }

void WriteFloats(const fs::path &path, const std::vector<float> &v) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char *>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(float)));
}

// Three nodes, path 0-1-2, two features, two classes.
fs::path TinyDataset(const std::string &name) {
  const fs::path dir = ScratchDir(name);
  fs::create_directories(dir);
  WriteText(dir / "meta.json",
            R"({"num_nodes":3,"num_edges":2,"num_features":2,"num_classes":2,"directed":false})");
  WriteText(dir / "edges.tsv", "0\t1\n1\t2\n");
  WriteFloats(dir / "features.bin", {1, 0, 0, 1, 1, 1});
  WriteText(dir / "labels.tsv", "0\n1\n1\n");
  return dir;
}

ErrorCode LoadCode(const fs::path &dir) {
  try {
    LoadDataset(dir);
  } catch (const Error &e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

}  // namespace

TEST_SUITE("dataset") {
  TEST_CASE("karate directory loads with 156 stored arcs") {
    const Dataset ds = LoadDataset(fs::path(GCA_SOURCE_DIR) / "data" / "karate");
    CHECK(ds.graph.num_nodes == 34);
    CHECK(ds.graph.num_arcs() == 156);
    CHECK(ds.graph.num_edges() == 78);
    CHECK(ds.graph.num_features == 34);
    CHECK(ds.graph.binary_features);
    REQUIRE(ds.graph.labels.has_value());
    CHECK(*ds.graph.num_classes == 2);
    CHECK(ds.splits.empty());
    const Graph ref = KarateClub();
    CHECK(ds.graph.col_indices == ref.col_indices);
    CHECK(*ds.graph.labels == *ref.labels);
  }

  TEST_CASE("tiny dataset loads") {
    const Dataset ds = LoadDataset(TinyDataset("tiny"));
    CHECK(ds.graph.num_edges() == 2);
    CHECK(ds.graph.feature(1, 1) == 1.0f);
    CHECK((*ds.graph.labels)[2] == 1);
  }

  TEST_CASE("edge-free dataset without labels") {
    const fs::path dir = ScratchDir("empty");
    fs::create_directories(dir);
    WriteText(dir / "meta.json", R"({"num_nodes":3,"num_edges":0,"num_features":1})");
    WriteText(dir / "edges.tsv", "");
    WriteFloats(dir / "features.bin", {0, 1, 0});
    const Dataset ds = LoadDataset(dir);
    CHECK(ds.graph.num_arcs() == 0);
    CHECK_FALSE(ds.graph.labels.has_value());
  }

  TEST_CASE("round trip preserves structure, features, labels and splits") {
    Rng rng(4);
    Graph g = SbmGenerate(10, 2, 0.5, 0.1, 5, 0.2, rng);
    for (auto &f : g.features) f = static_cast<float>(rng.Uniform(-3, 3));
    g.binary_features = false;
    std::vector<Split> splits = {RandomSplit(20, 1), RandomSplit(20, 2)};
    const fs::path dir = ScratchDir("roundtrip");
    SaveDataset(dir, g, splits);
    const Dataset ds = LoadDataset(dir);
    CHECK(ds.graph.row_offsets == g.row_offsets);
    CHECK(ds.graph.col_indices == g.col_indices);
    CHECK(std::memcmp(ds.graph.features.data(), g.features.data(), g.features.size() * sizeof(float)) == 0);
    CHECK(*ds.graph.labels == *g.labels);
    REQUIRE(ds.splits.size() == 2);
    CHECK(ds.splits[1].test == splits[1].test);

    // A single split is written as flat arrays and read back the same.
    const fs::path one = ScratchDir("roundtrip_one");
    SaveDataset(one, g, {splits[0]});
    const Dataset ds1 = LoadDataset(one);
    REQUIRE(ds1.splits.size() == 1);
    CHECK(ds1.splits[0].train == splits[0].train);
  }

  TEST_CASE("duplicate edges are tolerated and counted") {
    const fs::path dir = TinyDataset("dups");
    WriteText(dir / "edges.tsv", "0\t1\n1\t0\n1\t2\n0\t1\n");
    const Dataset ds = LoadDataset(dir);
    CHECK(ds.graph.num_edges() == 2);
    CHECK(ds.report.duplicate_edges == 2);
  }

  TEST_CASE("each failure has its own code") {
    CHECK(LoadCode(ScratchDir("does_not_exist")) == ErrorCode::kIo);

    fs::path dir = TinyDataset("missing_features");
    fs::remove(dir / "features.bin");
    CHECK(LoadCode(dir) == ErrorCode::kIo);

    dir = TinyDataset("bad_meta");
    WriteText(dir / "meta.json", "{not json");
    CHECK(LoadCode(dir) == ErrorCode::kFormat);

    dir = TinyDataset("bad_edge_line");
    WriteText(dir / "edges.tsv", "0\tx\n");
    CHECK(LoadCode(dir) == ErrorCode::kFormat);

    dir = TinyDataset("edge_count");
    WriteText(dir / "edges.tsv", "0\t1\n");
    CHECK(LoadCode(dir) == ErrorCode::kCountMismatch);

    dir = TinyDataset("feature_size");
    WriteFloats(dir / "features.bin", {1, 0, 0});
    CHECK(LoadCode(dir) == ErrorCode::kCountMismatch);

    dir = TinyDataset("label_count");
    WriteText(dir / "labels.tsv", "0\n1\n");
    CHECK(LoadCode(dir) == ErrorCode::kCountMismatch);

    dir = TinyDataset("edge_range");
    WriteText(dir / "edges.tsv", "0\t1\n1\t7\n");
    CHECK(LoadCode(dir) == ErrorCode::kOutOfRange);

    dir = TinyDataset("label_range");
    WriteText(dir / "labels.tsv", "0\n1\n2\n");
    CHECK(LoadCode(dir) == ErrorCode::kOutOfRange);

    dir = TinyDataset("nan_feature");
    WriteFloats(dir / "features.bin", {1, 0, std::nanf(""), 1, 1, 1});
    CHECK(LoadCode(dir) == ErrorCode::kNonFinite);

    dir = TinyDataset("split_overlap");
    WriteText(dir / "splits.json", R"({"train":[0],"val":[0],"test":[2]})");
    CHECK(LoadCode(dir) == ErrorCode::kFormat);

    dir = TinyDataset("split_range");
    WriteText(dir / "splits.json", R"({"train":[0],"val":[1],"test":[9]})");
    CHECK(LoadCode(dir) == ErrorCode::kOutOfRange);
  }

  TEST_CASE("diagnostics name the offending path") {
    const fs::path dir = ScratchDir("named");
    try {
      LoadDataset(dir);
      FAIL("expected an error");
    } catch (const Error &e) {
      CHECK(std::string(e.what()).find(dir.string()) != std::string::npos);
    }
  }
}
