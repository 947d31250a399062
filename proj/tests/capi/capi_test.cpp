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
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "gca/gca.h"

namespace {

std::filesystem::path TempPath(const std::string &name) {
  return std::filesystem::temp_directory_path() / ("gca_capi_" + name);
}

gca_config *SmallConfig(int epochs) {
  gca_config *c = nullptr;
  REQUIRE(gca_config_default(&c) == GCA_OK);
  REQUIRE(gca_config_set(c, "epochs", std::to_string(epochs).c_str()) == GCA_OK);
  REQUIRE(gca_config_set(c, "hidden_dim", "8") == GCA_OK);
  return c;
}

}  // namespace

TEST_SUITE("capi") {
  TEST_CASE("status names and messages") {
    CHECK(std::string(gca_status_name(GCA_OK)) == "ok");
    CHECK(std::string(gca_status_name(GCA_ERR_BUFFER_TOO_SMALL)) == "buffer too small");
    CHECK(std::string(gca_status_name(static_cast<gca_status>(99))) == "unknown status");
    CHECK(std::string(gca_version()).size() > 0);
    gca_graph *g = nullptr;
    CHECK(gca_graph_load("/nonexistent/gca-dataset", &g) == GCA_ERR_IO);
    CHECK(g == nullptr);
    CHECK(std::string(gca_last_error_message()).find("/nonexistent/gca-dataset") != std::string::npos);
    gca_measure m;
    CHECK(gca_measure_parse("pagerank", &m) == GCA_OK);
    CHECK(m == GCA_MEASURE_PAGERANK);
    CHECK(std::string(gca_last_error_message()).empty());
    CHECK(gca_measure_parse("closeness", &m) == GCA_ERR_INVALID_ARGUMENT);
    CHECK(gca_measure_parse(nullptr, &m) == GCA_ERR_INVALID_ARGUMENT);
    CHECK(gca_graph_karate(nullptr) == GCA_ERR_INVALID_ARGUMENT);
  }

  TEST_CASE("karate graph and centrality") {
    gca_graph *g = nullptr;
    REQUIRE(gca_graph_karate(&g) == GCA_OK);
    CHECK(gca_graph_num_nodes(g) == 34);
    CHECK(gca_graph_num_edges(g) == 78);
    CHECK(gca_graph_num_features(g) == 34);
    CHECK(gca_graph_num_classes(g) == 2);
    CHECK(gca_graph_directed(g) == 0);
    CHECK(gca_graph_num_splits(g) == 0);

    std::vector<double> scores(34);
    CHECK(gca_node_centrality(g, GCA_MEASURE_DEGREE, scores.data(), 33) == GCA_ERR_BUFFER_TOO_SMALL);
    REQUIRE(gca_node_centrality(g, GCA_MEASURE_DEGREE, scores.data(), scores.size()) == GCA_OK);
    CHECK(scores[0] == 16.0);
    CHECK(scores[33] == 17.0);

    size_t count = 0;
    REQUIRE(gca_edge_centrality(g, GCA_MEASURE_DEGREE, nullptr, nullptr, nullptr, 0, &count) == GCA_OK);
    CHECK(count == 78);
    std::vector<uint32_t> src(count), dst(count);
    std::vector<double> w(count);
    CHECK(gca_edge_centrality(g, GCA_MEASURE_DEGREE, src.data(), dst.data(), w.data(), 10, &count) ==
          GCA_ERR_BUFFER_TOO_SMALL);
    REQUIRE(gca_edge_centrality(g, GCA_MEASURE_DEGREE, src.data(), dst.data(), w.data(), count, &count) == GCA_OK);
    for (size_t e = 0; e < count; ++e) {
      CHECK(src[e] < dst[e]);
      CHECK(w[e] == doctest::Approx(0.5 * (scores[src[e]] + scores[dst[e]])));
    }
    CHECK(gca_node_centrality(g, static_cast<gca_measure>(7), scores.data(), 34) == GCA_ERR_INVALID_ARGUMENT);
    gca_graph_free(g);
  }

  TEST_CASE("augmentation probabilities") {
    gca_graph *g = nullptr;
    REQUIRE(gca_graph_karate(&g) == GCA_OK);
    gca_augment_stats st{};
    std::vector<double> ep(78), fp(34);
    REQUIRE(gca_augment_probs(g, GCA_MEASURE_PAGERANK, 0.3, 0.1, 0.7, 1, 1, &st, ep.data(), ep.size(), fp.data(),
                              fp.size()) == GCA_OK);
    CHECK(st.num_edges == 78);
    CHECK(st.num_features == 34);
    CHECK(st.edge_prob_min == 0.0);
    CHECK(st.edge_prob_max <= 0.7);
    double mean = 0.0;
    for (double p : ep) mean += p / 78.0;
    CHECK(st.edge_prob_mean == doctest::Approx(mean));
    REQUIRE(gca_augment_probs(g, GCA_MEASURE_DEGREE, 0.3, 0.1, 0.7, 0, 0, &st, nullptr, 0, nullptr, 0) == GCA_OK);
    CHECK(st.edge_prob_min == doctest::Approx(0.3));
    CHECK(st.edge_prob_max == doctest::Approx(0.3));
    CHECK(gca_augment_probs(g, GCA_MEASURE_DEGREE, 0.3, 0.1, 1.5, 1, 1, &st, nullptr, 0, nullptr, 0) ==
          GCA_ERR_INVALID_ARGUMENT);
    gca_graph_free(g);
  }

  TEST_CASE("configuration") {
    gca_config *c = nullptr;
    REQUIRE(gca_config_preset("amazon-photo", &c) == GCA_OK);
    size_t needed = 0;
    REQUIRE(gca_config_format(c, nullptr, 0, &needed) == GCA_OK);
    std::string text(needed, '\0');
    CHECK(gca_config_format(c, text.data(), 4, &needed) == GCA_ERR_BUFFER_TOO_SMALL);
    REQUIRE(gca_config_format(c, text.data(), text.size(), &needed) == GCA_OK);
    CHECK(text.find("tau = 0.3") != std::string::npos);
    CHECK(text.find("activation = relu") != std::string::npos);
    CHECK(gca_config_set(c, "no_such_key", "1") == GCA_ERR_FORMAT);
    CHECK(gca_config_set(c, "tau", "x") == GCA_ERR_FORMAT);
    CHECK(gca_config_variant(c, "gca-t-a") == GCA_OK);
    CHECK(gca_config_variant(c, "gca-z") == GCA_ERR_INVALID_ARGUMENT);
    gca_config *copy = nullptr;
    REQUIRE(gca_config_copy(c, &copy) == GCA_OK);
    REQUIRE(gca_config_format(copy, nullptr, 0, &needed) == GCA_OK);
    text.assign(needed, '\0');
    REQUIRE(gca_config_format(copy, text.data(), text.size(), &needed) == GCA_OK);
    CHECK(std::string(text.c_str()).find("adaptive_topology = false") != std::string::npos);
    gca_config_free(copy);
    gca_config_free(c);
    gca_config *none = nullptr;
    CHECK(gca_config_preset("cora", &none) == GCA_ERR_INVALID_ARGUMENT);
    CHECK(gca_config_load("/nonexistent/gca.cfg", &none) == GCA_ERR_IO);
  }

  TEST_CASE("train, save, load, embed and evaluate") {
    gca_graph *g = nullptr;
    REQUIRE(gca_graph_sbm(30, 2, 0.2, 0.02, 8, 0.2, 5, &g) == GCA_OK);
    CHECK(gca_graph_num_nodes(g) == 60);
    gca_config *c = SmallConfig(6);
    gca_model *m = nullptr;
    std::vector<double> seen;
    REQUIRE(gca_train(
                g, c, [](int, double loss, void *user) { static_cast<std::vector<double> *>(user)->push_back(loss); },
                &seen, &m) == GCA_OK);
    CHECK(gca_model_input_dim(m) == 8);
    CHECK(gca_model_output_dim(m) == 8);
    size_t count = 0;
    REQUIRE(gca_model_loss_history(m, nullptr, 0, &count) == GCA_OK);
    CHECK(count == 6);
    std::vector<double> hist(count);
    REQUIRE(gca_model_loss_history(m, hist.data(), hist.size(), &count) == GCA_OK);
    CHECK(hist == seen);

    std::vector<double> emb(60 * 8);
    CHECK(gca_model_embed(m, g, emb.data(), 10) == GCA_ERR_BUFFER_TOO_SMALL);
    REQUIRE(gca_model_embed(m, g, emb.data(), emb.size()) == GCA_OK);

    const auto path = TempPath("model.bin");
    REQUIRE(gca_model_save(m, path.c_str()) == GCA_OK);
    gca_model *loaded = nullptr;
    REQUIRE(gca_model_load(path.c_str(), &loaded) == GCA_OK);
    REQUIRE(gca_model_loss_history(loaded, nullptr, 0, &count) == GCA_OK);
    CHECK(count == 0);
    std::vector<double> emb2(emb.size());
    REQUIRE(gca_model_embed(loaded, g, emb2.data(), emb2.size()) == GCA_OK);
    CHECK(emb == emb2);
    std::filesystem::remove(path);

    gca_probe_options opt = gca_probe_options_default();
    CHECK(opt.runs == 20);
    opt.runs = 3;
    gca_probe_result *r1 = nullptr, *r2 = nullptr;
    REQUIRE(gca_evaluate(loaded, g, &opt, &r1) == GCA_OK);
    REQUIRE(gca_evaluate_embeddings(emb.data(), 60, 8, g, &opt, &r2) == GCA_OK);
    CHECK(gca_probe_result_runs(r1) == 3);
    for (size_t i = 0; i < 3; ++i) {
      CHECK(gca_probe_result_accuracy(r1, i) == gca_probe_result_accuracy(r2, i));
      CHECK(gca_probe_result_seed(r1, i) == i);
      CHECK(gca_probe_result_l2(r1, i) > 0.0);
    }
    CHECK(gca_probe_result_mean(r1) == gca_probe_result_mean(r2));
    CHECK(gca_probe_result_std(r1) >= 0.0);
    CHECK(gca_evaluate_embeddings(emb.data(), 59, 8, g, &opt, &r2) == GCA_ERR_COUNT_MISMATCH);

    gca_graph *k = nullptr;
    REQUIRE(gca_graph_karate(&k) == GCA_OK);
    CHECK(gca_model_embed(m, k, emb.data(), emb.size()) == GCA_ERR_SHAPE);
    gca_probe_result *raw = nullptr;
    REQUIRE(gca_evaluate(nullptr, k, &opt, &raw) == GCA_OK);
    CHECK(gca_probe_result_mean(raw) > 0.0);

    gca_probe_result_free(raw);
    gca_probe_result_free(r1);
    gca_probe_result_free(r2);
    gca_graph_free(k);
    gca_model_free(loaded);
    gca_model_free(m);
    gca_config_free(c);
    gca_graph_free(g);
  }

  TEST_CASE("dataset save and load") {
    gca_graph *g = nullptr;
    REQUIRE(gca_graph_sbm(20, 2, 0.3, 0.05, 6, 0.1, 9, &g) == GCA_OK);
    const auto dir = TempPath("dataset");
    std::filesystem::remove_all(dir);
    REQUIRE(gca_graph_save(g, dir.c_str()) == GCA_OK);
    gca_graph *back = nullptr;
    REQUIRE(gca_graph_load(dir.c_str(), &back) == GCA_OK);
    CHECK(gca_graph_num_nodes(back) == 40);
    CHECK(gca_graph_num_edges(back) == gca_graph_num_edges(g));
    CHECK(gca_graph_num_classes(back) == 2);
    std::filesystem::remove_all(dir);
    gca_graph_free(back);
    gca_graph_free(g);
  }

  TEST_CASE("training failure reports a status") {
    gca_config *c = SmallConfig(2);
    CHECK(gca_config_set(c, "tau", "0") == GCA_ERR_INVALID_ARGUMENT);
    CHECK(std::string(gca_last_error_message()).find("tau") != std::string::npos);
    // Eigenvector centrality is undefined without edges.
    gca_graph *g = nullptr;
    REQUIRE(gca_graph_sbm(20, 1, 0.0, 0.0, 4, 0.0, 1, &g) == GCA_OK);
    REQUIRE(gca_graph_num_edges(g) == 0);
    REQUIRE(gca_config_set(c, "centrality_measure", "eigenvector") == GCA_OK);
    gca_model *m = nullptr;
    CHECK(gca_train(g, c, nullptr, nullptr, &m) == GCA_ERR_INVALID_ARGUMENT);
    CHECK(m == nullptr);
    CHECK(std::string(gca_last_error_message()).size() > 0);
    gca_config_free(c);
    gca_graph_free(g);
  }

  TEST_CASE("self-checks") {
    int failures = -1;
    int reported = 0;
    REQUIRE(gca_verify(
                0, [](const char *, int, const char *, void *user) { ++*static_cast<int *>(user); }, &reported,
                &failures) == GCA_OK);
    CHECK(failures == 0);
    CHECK(reported >= 5);
  }
}
