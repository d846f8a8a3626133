// tests/test_report.cpp

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

#include <catch2/catch.hpp>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tandem/config.hpp"
#include "tandem/report.hpp"

using namespace tandem;

namespace {

ScoreSet CmSet(const std::vector<double> &bona,
               const std::map<std::string, std::vector<double>> &spoof) {
  ScoreSet s;
  s.kind = ScoreKind::kCm;
  int id = 0;
  for (double v : bona)
    s.records.push_back({"C" + std::to_string(id++), "bonafide",
                         Key::kBonafide, v});
  for (const auto &[a, scores] : spoof)
    for (double v : scores)
      s.records.push_back({"C" + std::to_string(id++), a, Key::kSpoof, v});
  return s;
}

ScoreSet AsvSet(const std::vector<double> &tgt, const std::vector<double> &non,
                const std::map<std::string, std::vector<double>> &spoof) {
  ScoreSet s;
  s.kind = ScoreKind::kAsv;
  int id = 0;
  for (double v : tgt)
    s.records.push_back({"V" + std::to_string(id++), "bonafide", Key::kTarget,
                         v});
  for (double v : non)
    s.records.push_back({"V" + std::to_string(id++), "bonafide",
                         Key::kNontarget, v});
  for (const auto &[a, scores] : spoof)
    for (double v : scores)
      s.records.push_back({"V" + std::to_string(id++), a, Key::kSpoof, v});
  return s;
}

}  // namespace

TEST_CASE("config parsing") {
  SECTION("values, ranges and comments") {
    std::istringstream in("# cost model\npi_tar = 0.9405\n"
                          "talker_mic.a = 0.1 0.5\nflag = 1\n");
    auto cfg = KeyValueConfig::Parse(in);
    CHECK(cfg.GetDouble("pi_tar", 0) == 0.9405);
    Range r = cfg.GetRange("talker_mic.a", {0, 0});
    CHECK(r.lo == 0.1);
    CHECK(r.hi == 0.5);
    CHECK(cfg.GetBool("flag", false));
    CHECK(cfg.GetDouble("absent", 7.0) == 7.0);
  }

  SECTION("malformed lines and duplicates are rejected") {
    std::istringstream a("pi_tar 0.9\n");
    REQUIRE_THROWS(KeyValueConfig::Parse(a));
    std::istringstream b("x = 1\nx = 2\n");
    REQUIRE_THROWS_WITH(KeyValueConfig::Parse(b), Catch::Contains("duplicate"));
    std::istringstream c("x =\n");
    REQUIRE_THROWS(KeyValueConfig::Parse(c));
  }

  SECTION("unknown keys are named") {
    std::istringstream in("pi_tar = 0.9\nmystery_key = 1\n");
    auto cfg = KeyValueConfig::Parse(in);
    REQUIRE_THROWS_WITH(LoadCostModel(cfg), Catch::Contains("mystery_key"));
  }

  SECTION("cost model loader round trips the defaults") {
    std::istringstream in("pi_spoof = 0.05\npi_tar = 0.9405\npi_non = 0.0095\n");
    CostModel m = LoadCostModel(KeyValueConfig::Parse(in));
    CHECK(m.c_fa_cm == 10.0);
    CHECK(m.pi_spoof == 0.05);
  }

  SECTION("category table loader applies overrides") {
    std::istringstream in("t60.b = 0.3 0.4\ndevice.C.drive = 5\n");
    CategoryTable t = LoadCategoryTable(KeyValueConfig::Parse(in));
    CHECK(t.t60_s[1].lo == 0.3);
    CHECK(t.devices[2].nonlinearity_drive == 5.0);
    CHECK(t.room_area_m2[0].lo == 2.0);  // untouched default
  }

  SECTION("sample rate override must keep device passbands legal") {
    std::istringstream bad("sample_rate = 8000\n");
    REQUIRE_THROWS_WITH(LoadCategoryTable(KeyValueConfig::Parse(bad)),
                        Catch::Contains("sample_rate/2"));
    std::istringstream ok("sample_rate = 8000\ndevice.A.passband = 20 4000\n"
                          "device.B.passband = 100 3000\n"
                          "device.C.passband = 300 2000\n");
    CategoryTable t = LoadCategoryTable(KeyValueConfig::Parse(ok));
    CHECK(t.sample_rate == 8000);
    CHECK(t.devices[0].passband_high_hz == 4000.0);
  }

  SECTION("config hash is order independent and content sensitive") {
    std::istringstream a("x = 1\ny = 2\n");
    std::istringstream b("y = 2\nx = 1\n");
    std::istringstream c("y = 2\nx = 3\n");
    CHECK(KeyValueConfig::Parse(a).Hash() == KeyValueConfig::Parse(b).Hash());
    CHECK(KeyValueConfig::Parse(b).Hash() != KeyValueConfig::Parse(c).Hash());
  }
}

TEST_CASE("evaluation report rendering") {
  Rng rng(2019);
  std::vector<double> tgt, non, spoof_asv, bona_cm, spoof_cm;
  for (int i = 0; i < 60; i++) {
    tgt.push_back(2.0 + rng.NextGaussian());
    non.push_back(-2.0 + rng.NextGaussian());
    spoof_asv.push_back(0.5 + rng.NextGaussian());
    bona_cm.push_back(1.0 + rng.NextGaussian());
    spoof_cm.push_back(-1.0 + rng.NextGaussian());
  }
  ScoreSet cm = CmSet(bona_cm, {{"AA", spoof_cm}});
  ScoreSet asv = AsvSet(tgt, non, {{"AA", spoof_asv}});
  EvalOptions opt;
  TandemEvaluation ev = EvaluateTandem(cm, asv, opt);

  SECTION("json carries the evaluation verbatim") {
    nlohmann::json j = EvaluationToJson(ev, opt);
    CHECK(j["schema_version"] == kReportSchemaVersion);
    CHECK(j["pooled"]["min_tdcf"].get<double>() == ev.pooled.min_tdcf);
    CHECK(j["pooled"]["beta"].get<double>() == ev.pooled.beta);
    CHECK(j["attacks"]["AA"]["cm_eer"].get<double>() ==
          ev.attacks.at("AA").cm_eer);
    CHECK(j["asv"]["eer"].get<double>() == ev.asv_eer);
    CHECK(j["cost_model"]["pi_spoof"].get<double>() == 0.05);
  }

  SECTION("tsv formats to the documented precision") {
    std::ostringstream out;
    WriteEvaluationTsv(ev, out);
    std::string tsv = out.str();
    CHECK(tsv.find("attack\tbeta\tmin_tdcf") == 0);
    char expect[64];
    std::snprintf(expect, sizeof(expect), "pooled\t%.6g\t%.4f",
                  ev.pooled.beta, ev.pooled.min_tdcf);
    CHECK(tsv.find(expect) != std::string::npos);
    CHECK(tsv.find("\nAA\t") != std::string::npos);
  }

  SECTION("det csv holds every operating point") {
    std::ostringstream out;
    WriteDetCsv(ev.pooled_cm_curve, out);
    std::string csv = out.str();
    size_t rows = std::count(csv.begin(), csv.end(), '\n');
    CHECK(rows == ev.pooled_cm_curve.size() + 1);
    CHECK(csv.find("threshold,p_miss,p_fa\n") == 0);
    CHECK(csv.find("-inf,") != std::string::npos);
  }

  SECTION("svg plot includes axes and one polyline per curve") {
    std::map<std::string, const DetCurve *> curves{
        {"pooled", &ev.pooled_cm_curve}};
    std::ostringstream out;
    WriteDetSvg(curves, out);
    std::string svg = out.str();
    CHECK(svg.find("<svg") == 0);
    CHECK(std::count(svg.begin(), svg.end(), '\n') > 10);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("Miss rate") != std::string::npos);
  }
}

TEST_CASE("probit") {
  CHECK(Probit(0.5) == Approx(0.0).margin(1e-12));
  CHECK(Probit(0.975) == Approx(1.9599639845400545).margin(1e-9));
  CHECK(Probit(0.025) == Approx(-1.9599639845400545).margin(1e-9));
  double prev = -1e9;
  for (double p = 0.001; p < 0.999; p += 0.001) {
    double v = Probit(p);
    CHECK(v > prev);
    prev = v;
  }
  REQUIRE_THROWS(Probit(0.0));
}

TEST_CASE("submission ranking") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "tandem_rank_test";
  fs::remove_all(dir);
  fs::create_directories(dir);

  // ASV side shared by all submissions
  Rng rng(55);
  std::vector<double> tgt, non, spoof_asv;
  for (int i = 0; i < 50; i++) {
    tgt.push_back(2.0 + 0.5 * rng.NextGaussian());
    non.push_back(-2.0 + 0.5 * rng.NextGaussian());
    spoof_asv.push_back(1.0 + 0.5 * rng.NextGaussian());
  }
  ScoreSet asv = AsvSet(tgt, non, {{"AA", spoof_asv}});

  auto write_cm = [&](const std::string &name, const std::vector<double> &bona,
                      const std::vector<double> &spoof) {
    ScoreSet s = CmSet(bona, {{"AA", spoof}});
    std::ostringstream text;
    EmitScores(s, text);
    std::string p = (dir / name).string();
    WriteStringToFile(p, text.str());
    return p;
  };

  // three submissions with a known quality ordering
  std::vector<double> good_b, good_s, mid_b, mid_s, bad_b, bad_s;
  for (int i = 0; i < 40; i++) {
    double g = rng.NextGaussian();
    good_b.push_back(3.0 + 0.3 * g);
    good_s.push_back(-3.0 + 0.3 * g);
    mid_b.push_back(0.8 + 1.0 * g);
    mid_s.push_back(-0.8 + 1.0 * g);
    bad_b.push_back(0.1 + 1.0 * g);
    bad_s.push_back(-0.1 + 1.0 * g);
  }

  SECTION("sorted by pooled min t-DCF") {
    std::vector<SubmissionEntry> entries{
        {"T2", "primary", write_cm("mid.txt", mid_b, mid_s)},
        {"T3", "primary", write_cm("bad.txt", bad_b, bad_s)},
        {"T1", "primary", write_cm("good.txt", good_b, good_s)},
    };
    auto ranked = RankSubmissions(entries, asv);
    REQUIRE(ranked.size() == 3);
    CHECK(ranked[0].entry.team_id == "T1");
    CHECK(ranked[1].entry.team_id == "T2");
    CHECK(ranked[2].entry.team_id == "T3");
    CHECK(ranked[0].min_tdcf <= ranked[1].min_tdcf);
    CHECK(ranked[1].min_tdcf <= ranked[2].min_tdcf);

    std::ostringstream tsv;
    WriteRankingTsv(ranked, tsv);
    CHECK(tsv.str().find("1\tT1\tprimary\t") != std::string::npos);

    auto box = BoxplotData(ranked, 10);
    REQUIRE(box.size() == 2);  // pooled + AA
    CHECK(box[0].attack == "pooled");
    CHECK(box[0].min == ranked[0].min_tdcf);
    CHECK(box[0].max == ranked[2].min_tdcf);
    CHECK(box[0].median == ranked[1].min_tdcf);
    std::ostringstream csv;
    WriteBoxplotCsv(box, csv);
    CHECK(csv.str().find("attack,min,q1,median,q3,max\n") == 0);
  }

  SECTION("ties break by eer then team id") {
    std::string p = write_cm("same.txt", good_b, good_s);
    std::vector<SubmissionEntry> entries{
        {"TB", "primary", p}, {"TA", "primary", p}};
    auto ranked = RankSubmissions(entries, asv);
    CHECK(ranked[0].entry.team_id == "TA");
  }

  SECTION("single submission ranks alone") {
    std::vector<SubmissionEntry> entries{
        {"T1", "single", write_cm("solo.txt", good_b, good_s)}};
    auto ranked = RankSubmissions(entries, asv);
    REQUIRE(ranked.size() == 1);
    CHECK(BoxplotData(ranked, 10).size() == 2);
  }

  SECTION("unreadable submission names the team") {
    std::vector<SubmissionEntry> entries{
        {"TX", "primary", (dir / "nope.txt").string()}};
    REQUIRE_THROWS_WITH(RankSubmissions(entries, asv), Catch::Contains("TX"));
  }

  SECTION("tdcf and eer rankings can disagree; the table carries both") {
    // A: no bona fide outliers, a few strong spoofs -> clean low-threshold
    // operating point (good t-DCF) but a mediocre crossing (worse EER).
    std::vector<double> a_bona{5, 6, 7, 8, 9, 10};
    std::vector<double> a_spoof{0, 1, 2, 3, 4, 6.5, 7.5};
    // B: interleaved near 5 -> sharp crossing (good EER) but expensive
    // no-miss operating point (worse t-DCF).
    std::vector<double> b_bona{4.9, 6, 7, 8, 9, 10};
    std::vector<double> b_spoof{0, 1, 2, 3, 4, 4.95, 4.96, 4.97};
    std::vector<SubmissionEntry> entries{
        {"A", "primary", write_cm("disA.txt", a_bona, a_spoof)},
        {"B", "primary", write_cm("disB.txt", b_bona, b_spoof)},
    };
    auto ranked = RankSubmissions(entries, asv);
    REQUIRE(ranked[0].entry.team_id == "A");  // better t-DCF wins the rank
    CHECK(ranked[0].min_tdcf < ranked[1].min_tdcf);
    CHECK(ranked[0].cm_eer > ranked[1].cm_eer);  // but worse EER, reported
  }

  fs::remove_all(dir);
}

TEST_CASE("submission list parsing") {
  std::istringstream in("# teams\nT1 primary a.txt\nT2 single b.txt\n");
  auto entries = ParseSubmissionList(in);
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].team_id == "T1");
  CHECK(entries[1].label == "single");

  std::istringstream bad("T1 primar a.txt\n");
  REQUIRE_THROWS(ParseSubmissionList(bad));
  std::istringstream dup("T1 primary a.txt\nT1 primary b.txt\n");
  REQUIRE_THROWS_WITH(ParseSubmissionList(dup), Catch::Contains("duplicate"));
}
