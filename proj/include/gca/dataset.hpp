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
#ifndef GCA_DATASET_HPP
#define GCA_DATASET_HPP

#include <filesystem>
#include <vector>

#include "gca/graph.hpp"

namespace gca {

/// Portable dataset directory:
///
///   meta.json     {"num_nodes","num_edges","num_features","num_classes","directed"}
///   edges.tsv     "src<TAB>dst" per line, undirected pairs listed once
///   features.bin  N*F little-endian float32, row-major, no header
///   labels.tsv    optional, one class id per line
///   splits.json   optional, {"train": ..., "val": ..., "test": ...}; each
///                 entry is either one id array or an array of id arrays
struct Dataset {
  Graph graph;
  std::vector<Split> splits;  // empty when splits.json is absent
  BuildReport report;
};

Dataset LoadDataset(const std::filesystem::path &dir);

void SaveDataset(const std::filesystem::path &dir, const Graph &graph, const std::vector<Split> &splits = {});

}  // namespace gca

#endif  // GCA_DATASET_HPP
