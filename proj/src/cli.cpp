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

#include "sliceprof/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sliceprof/error.hpp"
#include "sliceprof/synth.hpp"
#include "sliceprof/trace_io.hpp"
#include "sliceprof/workflow.hpp"

namespace sliceprof::cli {
namespace {

namespace fs = std::filesystem;

// Flag combinations CLI11 cannot express; reported like parse errors.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create '" + path.parent_path().string() + "': " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

struct GenerateArgs {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string write_scenario;
};

struct FeaturizeArgs {
  std::string trace;
  std::string out;
  int mrmr = 0;
  std::string target{kTotalDataColumn};
  int bins = 8;
  std::string selection_out;
};

struct ClusterArgs {
  std::string features;
  std::string out;
  std::string out_dir;
  std::string method = "kmeans";
  int k = 2;
  std::vector<int> k_sweep;
  std::string metric = "euclidean";
  std::string linkage = "average";
  std::string standardize = "auto";
  std::string init = "kpp";
  int restarts = 10;
  int max_iter = 300;
  double tol = 1e-9;
  std::optional<std::uint64_t> seed;
};

struct ProfileArgs {
  std::string trace;
  std::string features;
  std::string assignment;
  std::string out_dir;
  std::vector<std::string> formats{"json", "csv", "svg"};
  double embb_threshold = SliceRules{}.embb_downlink_kb_per_ue;
  double iot_share = SliceRules{}.iot_share_threshold;
  std::string homogeneity;
};

// --- stages ---------------------------------------------------------------

void stage_generate(const GenerateArgs& a, std::ostream& out) {
  ScenarioSettings settings = a.scenario.empty() ? default_scenario(0) : parse_scenario(read_file(a.scenario));
  if (a.seed) settings.seed = *a.seed;
  if (!a.write_scenario.empty()) write_file(a.write_scenario, write_scenario(settings));
  const Trace trace = generate(settings);
  write_file(a.out, write_trace(trace));
  out << "generate: " << trace.ue_logs.size() << " ue records, " << trace.iot_logs.size() << " iot records, "
      << trace.event_logs.size() << " events -> " << a.out << "\n";
}

void stage_featurize(const FeaturizeArgs& a, std::ostream& out) {
  const Trace trace = parse_trace(read_file(a.trace));
  FeatureMatrix m = featurize_trace(trace);
  if (a.mrmr > 0) {
    FeatureSelection selection = select_features(m, a.target, a.mrmr, a.bins);
    out << "featurize: mRMR selection (target " << a.target << "):";
    for (const auto& c : selection.selected) out << " " << c;
    out << "\n";
    if (!a.selection_out.empty()) {
      std::string text;
      for (const auto& c : selection.selected) text += c + "\n";
      write_file(a.selection_out, text);
    }
    m = std::move(selection.matrix);
  }
  write_file(a.out, write_features_csv(m));
  out << "featurize: " << m.rows() << " UEs x " << m.cols() << " features -> " << a.out << "\n";
}

ClusterConfig make_cluster_config(const ClusterArgs& a) {
  ClusterConfig c;
  c.method = *cluster_method_from_string(a.method);
  c.k = a.k;
  c.metric = *metric_from_string(a.metric);
  c.linkage = *linkage_from_string(a.linkage);
  if (a.standardize != "auto") c.standardization = standardization_from_string(a.standardize);
  c.init = *kmeans_init_from_string(a.init);
  c.restarts = a.restarts;
  c.max_iter = a.max_iter;
  c.tol = a.tol;
  c.seed = a.seed.value_or(0);
  if (c.method == ClusterMethod::kKMeans && c.metric != Metric::kEuclidean) {
    throw UsageError("--metric applies to --method hier only (k-means is squared Euclidean)");
  }
  return c;
}

fs::path sweep_dir(const fs::path& root, int k) { return root / ("k" + std::to_string(k)); }

void stage_cluster(const ClusterArgs& a, std::ostream& out) {
  ClusterConfig config = make_cluster_config(a);
  const FeatureMatrix features = parse_features_csv(read_file(a.features));
  if (a.k_sweep.empty()) {
    const ClusteringDocument doc = cluster_features(features, config);
    write_file(a.out, write_clustering(doc));
    out << "cluster: " << a.method << " k=" << doc.k << " within-cluster SSE " << doc.within_cluster_sse << " -> "
        << a.out << "\n";
    return;
  }
  std::vector<HomogeneityPoint> points;
  for (int k : a.k_sweep) {
    config.k = k;
    const ClusteringDocument doc = cluster_features(features, config);
    const fs::path path = sweep_dir(a.out_dir, k) / "assignment.json";
    write_file(path, write_clustering(doc));
    points.push_back({k, doc.within_cluster_sse});
    out << "cluster: " << a.method << " k=" << k << " within-cluster SSE " << doc.within_cluster_sse << " -> "
        << path.string() << "\n";
  }
  write_file(fs::path(a.out_dir) / "homogeneity_by_k.json", write_homogeneity(points));
}

void stage_profile(const ProfileArgs& a, std::ostream& out) {
  const Trace trace = parse_trace(read_file(a.trace));
  const FeatureMatrix features = parse_features_csv(read_file(a.features));
  const ClusteringDocument clustering = parse_clustering(read_file(a.assignment));
  std::vector<HomogeneityPoint> homogeneity;
  if (!a.homogeneity.empty()) homogeneity = parse_homogeneity(read_file(a.homogeneity));
  const SliceRules rules{a.iot_share, a.embb_threshold};
  const Report report = build_report(trace, features, clustering, rules, std::move(homogeneity));
  std::vector<ReportFormat> formats;
  for (const auto& f : a.formats) formats.push_back(*report_format_from_string(f));
  const auto written = emit_report(report, formats, a.out_dir);
  out << "profile: " << report.profiles.size() << " cluster profiles, " << written.size() << " files -> "
      << a.out_dir << "\n";
}

// --- option wiring ----------------------------------------------------------

void add_cluster_options(CLI::App* cmd, ClusterArgs& a) {
  cmd->add_option("--method", a.method, "Clustering method")
      ->check(CLI::IsMember({"kmeans", "hier"}))
      ->capture_default_str();
  cmd->add_option("--k", a.k, "Number of clusters")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--k-sweep", a.k_sweep, "Comma-separated k values, one run each (e.g. 2,3,4)")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  cmd->add_option("--metric", a.metric, "Dissimilarity for hierarchical clustering")
      ->check(CLI::IsMember({"euclidean", "cosine", "jaccard"}))
      ->capture_default_str();
  cmd->add_option("--linkage", a.linkage, "Linkage for hierarchical clustering")
      ->check(CLI::IsMember({"average", "single", "complete"}))
      ->capture_default_str();
  cmd->add_option("--standardize", a.standardize, "Feature scaling before clustering")
      ->check(CLI::IsMember({"auto", "none", "zscore", "minmax"}))
      ->capture_default_str();
  cmd->add_option("--init", a.init, "K-means initialization")
      ->check(CLI::IsMember({"kpp", "forgy"}))
      ->capture_default_str();
  cmd->add_option("--restarts", a.restarts, "K-means restarts")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--max-iter", a.max_iter, "K-means iteration cap")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--tol", a.tol, "K-means relative objective tolerance")->check(CLI::NonNegativeNumber)->capture_default_str();
}

void add_profile_options(CLI::App* cmd, ProfileArgs& a) {
  cmd->add_option("--formats", a.formats, "Report formats")
      ->delimiter(',')
      ->check(CLI::IsMember({"json", "csv", "svg"}))
      ->capture_default_str();
  cmd->add_option("--embb-threshold", a.embb_threshold, "Per-UE downlink (KB) above which a group is eMBB")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--iot-share", a.iot_share, "iot-sensor session share above which a group is mMTC")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
}

void add_featurize_options(CLI::App* cmd, FeaturizeArgs& a) {
  cmd->add_option("--mrmr", a.mrmr, "Keep this many features chosen by mRMR (0 keeps all)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--target", a.target, "mRMR relevance target column")->capture_default_str();
  cmd->add_option("--bins", a.bins, "Equal-width bins for mutual information")
      ->check(CLI::Range(2, 1 << 16))
      ->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"sliceprof: synthesize service telemetry, cluster user equipments, profile slices", "sliceprof"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate_cmd = app.add_subcommand("generate", "Synthesize a trace from a scenario");
  generate_cmd->add_option("--scenario", gen.scenario, "Scenario file (default: built-in two-population scenario)")
      ->check(CLI::ExistingFile);
  generate_cmd->add_option("--seed", gen.seed, "Generator seed (overrides the scenario's)")->envname("SLICEPROF_SEED");
  generate_cmd->add_option("--out", gen.out, "Trace output path")->required();
  generate_cmd->add_option("--write-scenario", gen.write_scenario, "Also write the effective scenario here");

  FeaturizeArgs feat;
  auto* featurize_cmd = app.add_subcommand("featurize", "Aggregate per-UE features from a trace");
  featurize_cmd->add_option("--trace", feat.trace, "Trace file")->required()->check(CLI::ExistingFile);
  featurize_cmd->add_option("--out", feat.out, "Feature CSV output path")->required();
  featurize_cmd->add_option("--selection-out", feat.selection_out, "Write the mRMR selection order here");
  add_featurize_options(featurize_cmd, feat);

  ClusterArgs clus;
  auto* cluster_cmd = app.add_subcommand("cluster", "Cluster a feature CSV");
  cluster_cmd->add_option("--features", clus.features, "Feature CSV")->required()->check(CLI::ExistingFile);
  cluster_cmd->add_option("--out", clus.out, "Assignment document path (single k)");
  cluster_cmd->add_option("--out-dir", clus.out_dir, "Output directory (with --k-sweep)");
  cluster_cmd->add_option("--seed", clus.seed, "K-means seed")->envname("SLICEPROF_SEED");
  add_cluster_options(cluster_cmd, clus);

  ProfileArgs prof;
  auto* profile_cmd = app.add_subcommand("profile", "Profile clusters and recommend slice templates");
  profile_cmd->add_option("--trace", prof.trace, "Trace file")->required()->check(CLI::ExistingFile);
  profile_cmd->add_option("--features", prof.features, "Feature CSV used for clustering")
      ->required()
      ->check(CLI::ExistingFile);
  profile_cmd->add_option("--assignment", prof.assignment, "Assignment document")->required()->check(CLI::ExistingFile);
  profile_cmd->add_option("--out-dir", prof.out_dir, "Report directory")->required();
  profile_cmd->add_option("--homogeneity", prof.homogeneity, "homogeneity_by_k.json to embed")
      ->check(CLI::ExistingFile);
  add_profile_options(profile_cmd, prof);

  GenerateArgs pgen;
  FeaturizeArgs pfeat;
  ClusterArgs pclus;
  ProfileArgs pprof;
  std::string pipeline_dir;
  auto* pipeline_cmd = app.add_subcommand("pipeline", "generate -> featurize -> cluster -> profile");
  pipeline_cmd->add_option("--scenario", pgen.scenario, "Scenario file (default: built-in)")->check(CLI::ExistingFile);
  pipeline_cmd->add_option("--seed", pgen.seed, "Seed for generation and clustering")->envname("SLICEPROF_SEED");
  pipeline_cmd->add_option("--out-dir", pipeline_dir, "Output directory")->required();
  add_featurize_options(pipeline_cmd, pfeat);
  add_cluster_options(pipeline_cmd, pclus);
  add_profile_options(pipeline_cmd, pprof);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "sliceprof: " << e.what() << "\n" << "Run with --help for usage.\n";
    return kExitUsage;
  }

  std::string stage;
  try {
    if (*generate_cmd) {
      stage = "generate";
      stage_generate(gen, out);
    } else if (*featurize_cmd) {
      stage = "featurize";
      stage_featurize(feat, out);
    } else if (*cluster_cmd) {
      stage = "cluster";
      if (clus.k_sweep.empty() && clus.out.empty()) throw UsageError("cluster: --out is required");
      if (!clus.k_sweep.empty() && clus.out_dir.empty()) throw UsageError("cluster: --k-sweep needs --out-dir");
      make_cluster_config(clus);
      stage_cluster(clus, out);
    } else if (*profile_cmd) {
      stage = "profile";
      stage_profile(prof, out);
    } else if (*pipeline_cmd) {
      const fs::path root(pipeline_dir);
      pclus.seed = pgen.seed;
      make_cluster_config(pclus);

      stage = "generate";
      pgen.out = (root / "trace.json").string();
      stage_generate(pgen, out);

      stage = "featurize";
      pfeat.trace = pgen.out;
      pfeat.out = (root / "features.csv").string();
      if (pfeat.mrmr > 0) pfeat.selection_out = (root / "selection.txt").string();
      stage_featurize(pfeat, out);

      stage = "cluster";
      pclus.features = pfeat.out;
      std::vector<std::pair<fs::path, fs::path>> runs;  // assignment, report dir
      if (pclus.k_sweep.empty()) {
        pclus.out = (root / "assignment.json").string();
        runs.emplace_back(pclus.out, root / "report");
      } else {
        pclus.out_dir = root.string();
        for (int k : pclus.k_sweep) runs.emplace_back(sweep_dir(root, k) / "assignment.json", sweep_dir(root, k) / "report");
      }
      stage_cluster(pclus, out);

      stage = "profile";
      pprof.trace = pgen.out;
      pprof.features = pfeat.out;
      if (!pclus.k_sweep.empty()) pprof.homogeneity = (root / "homogeneity_by_k.json").string();
      for (const auto& [assignment, report_dir] : runs) {
        pprof.assignment = assignment.string();
        pprof.out_dir = report_dir.string();
        stage_profile(pprof, out);
      }
    }
  } catch (const UsageError& e) {
    err << "sliceprof: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "sliceprof: " << stage << " failed: " << e.what() << "\n";
    return kExitStageFailure;
  }
  return kExitOk;
}

}  // namespace sliceprof::cli
