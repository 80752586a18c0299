// Copyright 2026 The sliceprof Authors.
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

#include "sliceprof/workflow.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

#include "sliceprof/error.hpp"
#include "sliceprof/mutual_info.hpp"

namespace sliceprof {
namespace {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw ParseError("$", std::string(what) + ": " + e.what());
  }
}

template <typename T>
T get(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(key, "missing required key");
  try {
    return it->get<T>();
  } catch (const json::exception& e) {
    throw ParseError(key, e.what());
  }
}

}  // namespace

std::string_view to_string(ClusterMethod m) { return m == ClusterMethod::kKMeans ? "kmeans" : "hier"; }

std::optional<ClusterMethod> cluster_method_from_string(std::string_view name) {
  if (name == "kmeans") return ClusterMethod::kKMeans;
  if (name == "hier") return ClusterMethod::kHierarchical;
  return std::nullopt;
}

FeatureMatrix featurize_trace(const Trace& trace) {
  const std::vector<UeLogRecord> records = filter_records(trace);
  return aggregate_features(records, trace.scenario_settings.service_catalog);
}

FeatureSelection select_features(const FeatureMatrix& m, const std::string& target, int m_out, int bins) {
  const FeatureMatrix with_target = target == kTotalDataColumn ? with_total_data_column(m) : m;
  FeatureSelection out;
  out.selected = mrmr_select(with_target, target, m_out, bins);
  out.matrix = select_columns(with_target, out.selected);
  return out;
}

std::pair<Standardization, std::optional<std::string>> resolve_standardization(const ClusterConfig& config) {
  const bool jaccard = config.method == ClusterMethod::kHierarchical && config.metric == Metric::kJaccard;
  if (jaccard) {
    if (config.standardization == Standardization::kMinMax) return {Standardization::kMinMax, std::nullopt};
    return {Standardization::kMinMax,
            "metric=jaccard requires non-negative features: minmax standardization applied automatically"};
  }
  return {config.standardization.value_or(Standardization::kZScore), std::nullopt};
}

ClusteringDocument cluster_features(const FeatureMatrix& features, const ClusterConfig& config) {
  features.check();
  if (features.rows() == 0) throw std::invalid_argument("cannot cluster an empty feature matrix");

  const auto [standardization, note] = resolve_standardization(config);
  const Eigen::MatrixXd x = standardize(features, standardization).values;

  ClusteringDocument doc;
  doc.method = config.method;
  doc.k = config.k;
  doc.standardization = standardization;
  doc.seed = config.seed;
  doc.columns = features.columns;
  doc.assignment.ue_ids = features.ue_ids;
  if (note) doc.notes.push_back(*note);

  if (config.method == ClusterMethod::kKMeans) {
    KMeansOptions options;
    options.init = config.init;
    options.max_iter = config.max_iter;
    options.tol = config.tol;
    options.seed = config.seed;
    auto result = kmeans_restarts(x, config.k, config.restarts, options);
    doc.metric = "euclidean";
    doc.init = std::string(to_string(config.init));
    doc.restarts = config.restarts;
    doc.assignment.clusters = std::move(result.assignment);
    doc.centroids = std::move(result.centroids);
    doc.within_cluster_sse = result.sse;
    doc.iterations = result.iterations;
    doc.sse_trace = std::move(result.sse_trace);
    doc.notes.push_back("best restart seed " + std::to_string(result.seed) +
                        (result.converged ? "" : " (stopped at max_iter)"));
  } else {
    const DistanceMatrix d = distance_matrix(x, config.metric);
    Dendrogram dendrogram = agglomerate(d, config.linkage);
    doc.metric = std::string(to_string(config.metric));
    doc.linkage = std::string(to_string(config.linkage));
    doc.assignment.clusters = cut(dendrogram, config.k);
    doc.centroids = cluster_means(x, std::span<const int>(doc.assignment.clusters), config.k);
    doc.within_cluster_sse = within_cluster_sse(x, std::span<const int>(doc.assignment.clusters), config.k);
    doc.dendrogram = std::move(dendrogram);
  }
  return doc;
}

std::string write_clustering(const ClusteringDocument& doc) {
  ordered_json j;
  j["method"] = std::string(to_string(doc.method));
  j["k"] = doc.k;
  j["metric"] = doc.metric;
  if (!doc.linkage.empty()) j["linkage"] = doc.linkage;
  j["standardization"] = std::string(to_string(doc.standardization));
  if (!doc.init.empty()) j["init"] = doc.init;
  j["restarts"] = doc.restarts;
  j["seed"] = doc.seed;
  j["columns"] = doc.columns;
  ordered_json assignment = ordered_json::array();
  for (std::size_t i = 0; i < doc.assignment.ue_ids.size(); ++i) {
    assignment.push_back(ordered_json{{"ue_id", doc.assignment.ue_ids[i]}, {"cluster", doc.assignment.clusters[i]}});
  }
  j["assignment"] = std::move(assignment);
  ordered_json centroids = ordered_json::array();
  for (Eigen::Index r = 0; r < doc.centroids.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < doc.centroids.cols(); ++c) row.push_back(doc.centroids(r, c));
    centroids.push_back(std::move(row));
  }
  j["centroids"] = std::move(centroids);
  j["within_cluster_sse"] = doc.within_cluster_sse;
  if (doc.method == ClusterMethod::kKMeans) {
    j["sse"] = doc.within_cluster_sse;
    j["iterations"] = doc.iterations;
    j["sse_trace"] = doc.sse_trace;
  }
  if (doc.dendrogram) {
    ordered_json merges = ordered_json::array();
    for (const Merge& m : doc.dendrogram->merges) merges.push_back(ordered_json::array({m.a, m.b, m.height, m.size}));
    j["dendrogram"] = ordered_json{{"n", doc.dendrogram->n}, {"merges", std::move(merges)}};
  }
  j["notes"] = doc.notes;
  return j.dump(2) + "\n";
}

ClusteringDocument parse_clustering(std::string_view text) {
  const json j = parse_json(text, "assignment document");
  ClusteringDocument doc;
  const auto method = cluster_method_from_string(get<std::string>(j, "method"));
  if (!method) throw ParseError("method", "unknown clustering method");
  doc.method = *method;
  doc.k = get<int>(j, "k");
  doc.metric = get<std::string>(j, "metric");
  doc.linkage = j.value("linkage", std::string());
  const auto standardization = standardization_from_string(get<std::string>(j, "standardization"));
  if (!standardization) throw ParseError("standardization", "unknown standardization");
  doc.standardization = *standardization;
  doc.init = j.value("init", std::string());
  doc.restarts = j.value("restarts", 0);
  doc.seed = get<std::uint64_t>(j, "seed");
  doc.columns = get<std::vector<std::string>>(j, "columns");
  for (const json& a : get<json>(j, "assignment")) {
    doc.assignment.ue_ids.push_back(get<std::int64_t>(a, "ue_id"));
    doc.assignment.clusters.push_back(get<int>(a, "cluster"));
  }
  const auto rows = get<std::vector<std::vector<double>>>(j, "centroids");
  doc.centroids.resize(static_cast<Eigen::Index>(rows.size()), rows.empty() ? 0 : static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (static_cast<Eigen::Index>(rows[r].size()) != doc.centroids.cols()) throw ParseError("centroids", "ragged rows");
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      doc.centroids(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  doc.within_cluster_sse = get<double>(j, "within_cluster_sse");
  doc.iterations = j.value("iterations", 0);
  doc.sse_trace = j.value("sse_trace", std::vector<double>{});
  if (j.contains("dendrogram")) {
    const json& d = j["dendrogram"];
    Dendrogram dend;
    dend.n = get<int>(d, "n");
    for (const json& m : get<json>(d, "merges")) {
      if (!m.is_array() || m.size() != 4) throw ParseError("dendrogram.merges", "expected [a, b, height, size]");
      dend.merges.push_back({m[0].get<int>(), m[1].get<int>(), m[2].get<double>(), m[3].get<int>()});
    }
    doc.dendrogram = std::move(dend);
  }
  doc.notes = j.value("notes", std::vector<std::string>{});
  return doc;
}

std::string write_homogeneity(const std::vector<HomogeneityPoint>& points) {
  ordered_json arr = ordered_json::array();
  for (const auto& p : points) arr.push_back(ordered_json{{"k", p.k}, {"within_cluster_sse", p.within_cluster_sse}});
  return ordered_json{{"homogeneity_by_k", std::move(arr)}}.dump(2) + "\n";
}

std::vector<HomogeneityPoint> parse_homogeneity(std::string_view text) {
  const json j = parse_json(text, "homogeneity document");
  std::vector<HomogeneityPoint> out;
  for (const json& p : get<json>(j, "homogeneity_by_k")) {
    out.push_back({get<int>(p, "k"), get<double>(p, "within_cluster_sse")});
  }
  return out;
}

Report build_report(const Trace& trace, const FeatureMatrix& features, const ClusteringDocument& clustering,
                    const SliceRules& rules, std::vector<HomogeneityPoint> homogeneity) {
  Report report;
  report.run.method = std::string(to_string(clustering.method));
  report.run.k = clustering.k;
  report.run.metric = clustering.metric;
  report.run.linkage = clustering.linkage;
  report.run.standardization = std::string(to_string(clustering.standardization));
  report.run.init = clustering.init;
  report.run.restarts = clustering.restarts;
  report.run.seed = clustering.seed;
  report.run.feature_columns = clustering.columns;
  report.run.within_cluster_sse = clustering.within_cluster_sse;
  report.run.notes = clustering.notes;
  report.rules = rules;
  report.profiles = profile_clusters(trace, clustering.assignment, features);
  report.templates = recommend_slices(report.profiles, rules);
  report.homogeneity_by_k = std::move(homogeneity);
  return report;
}

}  // namespace sliceprof
