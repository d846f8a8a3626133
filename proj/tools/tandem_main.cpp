// tools/tandem_main.cpp

// Copyright 2026  Tandem Toolkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Command-line harness:
//
//   tandem extract      audio -> feature files + manifest
//   tandem train        features + protocol -> bonafide/spoof GMM pair
//   tandem score        models + features + protocol -> CM score file
//   tandem evaluate     CM + ASV scores -> t-DCF / EER report
//   tandem rank         many submissions -> ranking table + boxplot data
//   tandem simulate-pa  protocol + clean audio -> simulated dataset
//
// Every command is deterministic given its inputs, flags and seeds, and
// exits 0 only when it fully succeeded.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tandem/audio.hpp"
#include "tandem/config.hpp"
#include "tandem/cqcc.hpp"
#include "tandem/features.hpp"
#include "tandem/gmm.hpp"
#include "tandem/lfcc.hpp"
#include "tandem/pa_sim.hpp"
#include "tandem/parallel.hpp"
#include "tandem/protocol.hpp"
#include "tandem/report.hpp"
#include "tandem/tdcf.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tandem;

namespace {

struct UttEntry {
  std::string utt;
  std::string path;
};

// Audio list: `UTT PATH` or bare `PATH` (utt = file stem) per line.
std::vector<UttEntry> ParseAudioList(const std::string &path) {
  std::istringstream in(ReadFileToString(path));
  std::vector<UttEntry> out;
  std::set<std::string> seen;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string a, b;
    if (!(ls >> a)) continue;
    if (a[0] == '#') continue;
    UttEntry e;
    if (ls >> b) {
      e.utt = a;
      e.path = b;
    } else {
      e.path = a;
      e.utt = fs::path(a).stem().string();
    }
    Require(seen.insert(e.utt).second, path, " line ", lineno,
            ": duplicate utterance id '", e.utt, "'");
    out.push_back(std::move(e));
  }
  return out;
}

Subset ParseSubsetName(const std::string &s) {
  if (s == "train") return Subset::kTrain;
  if (s == "dev") return Subset::kDev;
  if (s == "eval") return Subset::kEval;
  Fail("unknown subset '", s, "' (want train/dev/eval)");
}

std::vector<TrialRecord> LoadProtocol(const std::string &path,
                                      const std::string &subset) {
  std::istringstream in(ReadFileToString(path));
  try {
    return ParseProtocol(in, ParseSubsetName(subset));
  } catch (const Error &e) {
    Fail(path, ": ", e.what());
  }
}

ScoreSet LoadScores(const std::string &path, ScoreKind kind) {
  std::istringstream in(ReadFileToString(path));
  try {
    return ParseScores(in, kind);
  } catch (const Error &e) {
    Fail(path, ": ", e.what());
  }
}

// ---------------------------------------------------------------------------
// extract

int CmdExtract(const std::string &list_path, const std::string &feature,
               const std::string &config_path, const std::string &out_dir,
               size_t jobs, bool csv_export) {
  Require(feature == "lfcc" || feature == "cqcc",
          "extract: feature must be lfcc or cqcc, got '", feature, "'");
  KeyValueConfig cfg_file;
  if (!config_path.empty()) cfg_file = KeyValueConfig::FromFile(config_path);
  LfccConfig lfcc_cfg;
  CqccConfig cqcc_cfg;
  if (feature == "lfcc")
    lfcc_cfg = LoadLfccConfig(cfg_file);
  else
    cqcc_cfg = LoadCqccConfig(cfg_file);

  auto entries = ParseAudioList(list_path);
  Require(!entries.empty(), "extract: empty audio list ", list_path);
  fs::create_directories(out_dir);

  struct Extracted {
    size_t frames = 0, dims = 0;
    std::string path;
  };
  std::vector<Extracted> results(entries.size());

  ParallelFor(jobs, entries.size(), [&](size_t i) {
    AudioBuffer audio;
    FeatureMatrix mat;
    try {
      audio = ReadWav(entries[i].path);
      mat = feature == "lfcc" ? Lfcc(audio, lfcc_cfg) : Cqcc(audio, cqcc_cfg);
    } catch (const Error &e) {
      Fail("extract: utterance '", entries[i].utt, "': ", e.what());
    }
    std::string out_path =
        (fs::path(out_dir) / (entries[i].utt + ".fea")).string();
    std::ofstream out(out_path, std::ios::binary);
    Require(out.good(), "cannot open '", out_path, "' for writing");
    WriteFeatures(mat, out);
    if (csv_export) {
      std::ofstream csv((fs::path(out_dir) / (entries[i].utt + ".csv")).string());
      WriteFeaturesCsv(mat, csv);
    }
    results[i] = {mat.frames, mat.dims, out_path};
  });

  json manifest;
  manifest["schema_version"] = kReportSchemaVersion;
  manifest["feature"] = feature;
  char hash_hex[32];
  std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                static_cast<unsigned long long>(cfg_file.Hash()));
  manifest["config_hash"] = hash_hex;
  json list = json::array();
  for (size_t i = 0; i < entries.size(); i++)
    list.push_back({{"utt", entries[i].utt},
                    {"path", results[i].path},
                    {"frames", results[i].frames},
                    {"dims", results[i].dims}});
  manifest["entries"] = list;
  std::string manifest_path = (fs::path(out_dir) / "manifest.json").string();
  WriteStringToFile(manifest_path, manifest.dump(2) + "\n");
  std::cout << "extracted " << entries.size() << " utterances to " << out_dir
            << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// train / score helpers

std::map<std::string, std::string> LoadFeatureManifest(
    const std::string &path) {
  json manifest;
  try {
    manifest = json::parse(ReadFileToString(path));
  } catch (const json::exception &e) {
    Fail(path, ": not a valid manifest: ", e.what());
  }
  Require(manifest.contains("entries"), path, ": manifest has no entries");
  std::map<std::string, std::string> utt2fea;
  for (const auto &e : manifest["entries"])
    utt2fea[e.at("utt").get<std::string>()] = e.at("path").get<std::string>();
  return utt2fea;
}

FeatureMatrix ReadFeatureFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  Require(in.good(), "cannot open feature file '", path, "'");
  return ReadFeatures(in);
}

// Stacks the frames of every listed utterance (protocol order).
FeatureMatrix StackClassFrames(const std::vector<const TrialRecord *> &trials,
                               const std::map<std::string, std::string> &utt2fea) {
  FeatureMatrix out;
  for (const TrialRecord *t : trials) {
    auto it = utt2fea.find(t->trial_id);
    Require(it != utt2fea.end(), "missing features for trial '", t->trial_id,
            "'");
    FeatureMatrix m = ReadFeatureFile(it->second);
    if (out.dims == 0) {
      out.dims = m.dims;
    } else {
      Require(out.dims == m.dims, "trial '", t->trial_id, "': feature dims ",
              m.dims, " differ from earlier trials (", out.dims, ")");
    }
    out.values.insert(out.values.end(), m.values.begin(), m.values.end());
    out.frames += m.frames;
  }
  return out;
}

int CmdTrain(const std::string &manifest_path, const std::string &protocol_path,
             const std::string &subset, const std::string &config_path,
             uint64_t seed_flag, bool seed_set, const std::string &out_prefix,
             bool export_json) {
  KeyValueConfig cfg_file;
  if (!config_path.empty()) cfg_file = KeyValueConfig::FromFile(config_path);
  TrainConfig cfg = LoadTrainConfig(cfg_file);
  if (seed_set) cfg.seed = seed_flag;

  auto protocol = LoadProtocol(protocol_path, subset);
  auto utt2fea = LoadFeatureManifest(manifest_path);

  std::vector<const TrialRecord *> bona, spoof;
  for (const auto &t : protocol)
    (t.key == Key::kBonafide ? bona : spoof).push_back(&t);
  Require(!bona.empty(), "train: protocol has no bonafide class");
  Require(!spoof.empty(), "train: protocol has no spoof class");

  json log;
  log["schema_version"] = kReportSchemaVersion;
  log["components"] = cfg.n_components;
  log["seed"] = cfg.seed;

  for (const auto &[name, trials] :
       std::map<std::string, const std::vector<const TrialRecord *> *>{
           {"bonafide", &bona}, {"spoof", &spoof}}) {
    FeatureMatrix frames = StackClassFrames(*trials, utt2fea);
    TrainResult r = TrainEm(frames, cfg);
    std::string model_path = out_prefix + "." + name + ".gmm";
    std::ofstream out(model_path, std::ios::binary);
    Require(out.good(), "cannot open '", model_path, "' for writing");
    WriteGmm(r.model, out);
    if (export_json) {
      std::ofstream jout(out_prefix + "." + name + ".json");
      WriteGmmJson(r.model, jout);
    }
    log["log_likelihood"][name] = r.log_likelihood;
    log["frames"][name] = frames.frames;
    std::cout << "trained " << name << " model on " << frames.frames
              << " frames (" << r.log_likelihood.size() << " iterations) -> "
              << model_path << "\n";
  }
  WriteStringToFile(out_prefix + ".train.json", log.dump(2) + "\n");
  return 0;
}

int CmdScore(const std::string &models_prefix, const std::string &manifest_path,
             const std::string &protocol_path, const std::string &subset,
             const std::string &out_path, size_t jobs) {
  auto read_model = [](const std::string &p) {
    std::ifstream in(p, std::ios::binary);
    Require(in.good(), "cannot open model '", p, "'");
    return ReadGmm(in);
  };
  GmmModel bona_model = read_model(models_prefix + ".bonafide.gmm");
  GmmModel spoof_model = read_model(models_prefix + ".spoof.gmm");
  Require(bona_model.dims == spoof_model.dims,
          "score: model dims differ (bonafide ", bona_model.dims, ", spoof ",
          spoof_model.dims, ")");

  auto protocol = LoadProtocol(protocol_path, subset);
  auto utt2fea = LoadFeatureManifest(manifest_path);
  Require(!protocol.empty(), "score: empty protocol");

  std::vector<double> scores(protocol.size());
  ParallelFor(jobs, protocol.size(), [&](size_t i) {
    auto it = utt2fea.find(protocol[i].trial_id);
    Require(it != utt2fea.end(), "score: missing features for trial '",
            protocol[i].trial_id, "'");
    try {
      FeatureMatrix m = ReadFeatureFile(it->second);
      scores[i] = LlrScore(bona_model, spoof_model, m);
    } catch (const Error &e) {
      Fail("score: trial '", protocol[i].trial_id, "': ", e.what());
    }
  });

  ScoreSet set;
  set.kind = ScoreKind::kCm;
  for (size_t i = 0; i < protocol.size(); i++)
    set.records.push_back({protocol[i].trial_id, protocol[i].attack_label,
                           protocol[i].key, scores[i]});
  std::ostringstream text;
  EmitScores(set, text);
  WriteStringToFile(out_path, text.str());
  std::cout << "scored " << protocol.size() << " trials -> " << out_path
            << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// evaluate / rank

EvalOptions MakeEvalOptions(const std::string &cost_path,
                            const std::string &normalization,
                            const std::string &pooled_beta,
                            const std::string &asv_dev_path) {
  EvalOptions opt;
  if (!cost_path.empty())
    opt.cost = LoadCostModel(KeyValueConfig::FromFile(cost_path));
  if (!asv_dev_path.empty()) {
    // operating point pinned from a development-partition ASV file
    ScoreSet dev = LoadScores(asv_dev_path, ScoreKind::kAsv);
    std::vector<double> tgt, non;
    for (const auto &r : dev.records) {
      if (r.key == Key::kTarget) tgt.push_back(r.score);
      if (r.key == Key::kNontarget) non.push_back(r.score);
    }
    opt.fixed_asv_threshold = AsvOperatingPoint(tgt, non);
  }
  if (normalization == "eq1")
    opt.normalization = Normalization::kEq1;
  else if (normalization == "min-costs")
    opt.normalization = Normalization::kMinCosts;
  else
    Fail("unknown normalization '", normalization, "' (want eq1/min-costs)");
  if (pooled_beta == "pooled")
    opt.pooled_beta = PooledBetaMode::kPooledRates;
  else if (pooled_beta == "average")
    opt.pooled_beta = PooledBetaMode::kAverageAttackBetas;
  else
    Fail("unknown pooled-beta mode '", pooled_beta, "' (want pooled/average)");
  return opt;
}

int CmdEvaluate(const std::string &cm_path, const std::string &asv_path,
                const std::string &cost_path, const std::string &normalization,
                const std::string &pooled_beta, const std::string &asv_dev_path,
                bool det_svg, const std::string &out_prefix) {
  EvalOptions opt =
      MakeEvalOptions(cost_path, normalization, pooled_beta, asv_dev_path);
  ScoreSet cm = LoadScores(cm_path, ScoreKind::kCm);
  ScoreSet asv = LoadScores(asv_path, ScoreKind::kAsv);
  TandemEvaluation ev = EvaluateTandem(cm, asv, opt);

  WriteStringToFile(out_prefix + ".json",
                    EvaluationToJson(ev, opt).dump(2) + "\n");
  {
    std::ostringstream tsv;
    WriteEvaluationTsv(ev, tsv);
    WriteStringToFile(out_prefix + ".tsv", tsv.str());
    std::cout << tsv.str();
  }
  {
    std::ostringstream csv;
    WriteDetCsv(ev.pooled_cm_curve, csv);
    WriteStringToFile(out_prefix + ".det.csv", csv.str());
  }
  if (det_svg) {
    std::map<std::string, const DetCurve *> curves;
    curves["pooled"] = &ev.pooled_cm_curve;
    std::ostringstream svg;
    WriteDetSvg(curves, svg);
    WriteStringToFile(out_prefix + ".det.svg", svg.str());
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "pooled min t-DCF %.4f, pooled CM EER %.2f%%\n",
                ev.pooled.min_tdcf, 100.0 * ev.cm_eer);
  std::cout << buf;
  return 0;
}

int CmdRank(const std::string &submissions_path, const std::string &asv_path,
            const std::string &cost_path, const std::string &normalization,
            const std::string &pooled_beta, const std::string &asv_dev_path,
            size_t top_n, const std::string &out_prefix) {
  EvalOptions opt =
      MakeEvalOptions(cost_path, normalization, pooled_beta, asv_dev_path);
  std::istringstream subs_in(ReadFileToString(submissions_path));
  auto entries = ParseSubmissionList(subs_in);
  Require(!entries.empty(), "rank: no submissions in ", submissions_path);
  ScoreSet asv = LoadScores(asv_path, ScoreKind::kAsv);

  auto ranked = RankSubmissions(entries, asv, opt);
  std::ostringstream tsv;
  WriteRankingTsv(ranked, tsv);
  WriteStringToFile(out_prefix + ".ranking.tsv", tsv.str());
  std::cout << tsv.str();

  auto box = BoxplotData(ranked, top_n);
  std::ostringstream csv;
  WriteBoxplotCsv(box, csv);
  WriteStringToFile(out_prefix + ".boxplot.csv", csv.str());
  return 0;
}

// ---------------------------------------------------------------------------
// simulate-pa

int CmdSimulatePa(const std::string &protocol_path, const std::string &subset,
                  const std::string &audio_dir, const std::string &category_path,
                  uint64_t seed, const std::string &split_name,
                  const std::string &out_dir, size_t jobs) {
  CategoryTable table;
  if (!category_path.empty())
    table = LoadCategoryTable(KeyValueConfig::FromFile(category_path));
  SeedSplit split;
  if (split_name == "train")
    split = SeedSplit::kTrainDev;
  else if (split_name == "eval")
    split = SeedSplit::kEval;
  else
    Fail("unknown split '", split_name, "' (want train/eval)");

  auto protocol = LoadProtocol(protocol_path, subset);
  Require(!protocol.empty(), "simulate: empty protocol");
  DatasetManifest manifest =
      GenerateDataset(protocol, table, seed, split, audio_dir, out_dir, jobs);

  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["master_seed"] = manifest.master_seed;
  j["split"] = SeedSplitName(manifest.split);
  j["sample_rate"] = manifest.sample_rate;
  json trials = json::array();
  char hex[32];
  for (const auto &t : manifest.trials) {
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(t.config_hash));
    trials.push_back({{"trial", t.trial_id},
                      {"attack", t.attack_label},
                      {"key", KeyName(t.key)},
                      {"acoustic", t.acoustic_id},
                      {"config_hash", hex},
                      {"wav", t.wav_path}});
  }
  j["trials"] = trials;
  WriteStringToFile((fs::path(out_dir) / "manifest.json").string(),
                    j.dump(2) + "\n");
  std::cout << "rendered " << manifest.trials.size() << " trials to "
            << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"tandem: spoofing-countermeasure evaluation toolkit "
               "(t-DCF/EER scoring, GMM baselines, replay simulation)"};
  app.require_subcommand(1);

  // shared flags
  std::string config_path, out_arg;
  uint64_t seed = 0;
  bool seed_set = false;
  size_t jobs = 1;

  auto add_common = [&](CLI::App *cmd, bool with_config = true) {
    if (with_config)
      cmd->add_option("--config", config_path, "key-value config file");
    cmd->add_option("--out", out_arg, "output path or prefix")->required();
    cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 64));
    cmd->add_option("--seed", seed, "random seed")
        ->each([&](const std::string &) { seed_set = true; });
  };

  // extract
  auto *extract = app.add_subcommand("extract", "extract CQCC/LFCC features");
  std::string list_path, feature = "lfcc";
  bool csv_export = false;
  extract->add_option("--list", list_path, "audio list: 'UTT PATH' or 'PATH'")
      ->required();
  extract->add_option("--feature", feature, "lfcc or cqcc");
  extract->add_flag("--csv", csv_export, "also write per-utterance CSV dumps");
  add_common(extract);

  // train
  auto *train = app.add_subcommand("train", "train bonafide/spoof GMM pair");
  std::string manifest_path, protocol_path, subset = "train";
  bool export_json = false;
  train->add_option("--features", manifest_path, "feature manifest.json")
      ->required();
  train->add_option("--protocol", protocol_path, "protocol file")->required();
  train->add_option("--subset", subset, "protocol partition tag");
  train->add_flag("--export-json", export_json,
                  "also write the models as inspectable JSON");
  add_common(train);

  // score
  auto *score = app.add_subcommand("score", "score trials with a model pair");
  std::string models_prefix;
  score->add_option("--models", models_prefix, "model path prefix")->required();
  score->add_option("--features", manifest_path, "feature manifest.json")
      ->required();
  score->add_option("--protocol", protocol_path, "protocol file")->required();
  score->add_option("--subset", subset, "protocol partition tag");
  add_common(score, false);

  // evaluate
  auto *evaluate = app.add_subcommand("evaluate", "tandem t-DCF/EER report");
  std::string cm_path, asv_path, cost_path, asv_dev_path;
  std::string normalization = "eq1", pooled_beta = "pooled";
  bool det_svg = false;
  evaluate->add_option("--cm", cm_path, "countermeasure score file")
      ->required();
  evaluate->add_option("--asv", asv_path, "ASV score file")->required();
  evaluate->add_option("--cost", cost_path, "cost model config");
  evaluate->add_option("--normalization", normalization, "eq1 or min-costs");
  evaluate->add_option("--pooled-beta", pooled_beta, "pooled or average");
  evaluate->add_option("--asv-dev", asv_dev_path,
                       "derive the ASV operating point from this file");
  evaluate->add_flag("--det-svg", det_svg, "also write a DET plot (SVG)");
  add_common(evaluate, false);

  // rank
  auto *rank = app.add_subcommand("rank", "rank multiple submissions");
  std::string submissions_path;
  size_t top_n = 10;
  rank->add_option("--submissions", submissions_path,
                   "list: 'TEAM_ID LABEL PATH'")
      ->required();
  rank->add_option("--asv", asv_path, "ASV score file")->required();
  rank->add_option("--cost", cost_path, "cost model config");
  rank->add_option("--normalization", normalization, "eq1 or min-costs");
  rank->add_option("--pooled-beta", pooled_beta, "pooled or average");
  rank->add_option("--asv-dev", asv_dev_path,
                   "derive the ASV operating point from this file");
  rank->add_option("--top", top_n, "submissions in the boxplot data");
  add_common(rank, false);

  // simulate-pa
  auto *sim = app.add_subcommand("simulate-pa",
                                 "render bona fide + replay presentations");
  std::string audio_dir, split_name = "train";
  sim->add_option("--protocol", protocol_path, "protocol file")->required();
  sim->add_option("--audio-dir", audio_dir, "clean source audio directory")
      ->required();
  sim->add_option("--split", split_name,
                  "seed space: train (known) or eval (unknown)");
  sim->add_option("--subset", subset, "protocol partition tag");
  add_common(sim);

  CLI11_PARSE(app, argc, argv);

  try {
    if (extract->parsed())
      return CmdExtract(list_path, feature, config_path, out_arg, jobs,
                        csv_export);
    if (train->parsed())
      return CmdTrain(manifest_path, protocol_path, subset, config_path, seed,
                      seed_set, out_arg, export_json);
    if (score->parsed())
      return CmdScore(models_prefix, manifest_path, protocol_path, subset,
                      out_arg, jobs);
    if (evaluate->parsed())
      return CmdEvaluate(cm_path, asv_path, cost_path, normalization,
                         pooled_beta, asv_dev_path, det_svg, out_arg);
    if (rank->parsed())
      return CmdRank(submissions_path, asv_path, cost_path, normalization,
                     pooled_beta, asv_dev_path, top_n, out_arg);
    if (sim->parsed())
      return CmdSimulatePa(protocol_path, subset, audio_dir, config_path, seed,
                           split_name, out_arg, jobs);
  } catch (const std::exception &e) {
    std::cerr << "tandem: error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
