// Copyright 2026 The sreval Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite: one PASS/FAIL line per acceptance criterion. Exits
// non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "sreval/commands.h"
#include "sreval/csv.h"
#include "sreval/dataset.h"
#include "sreval/embedding_metrics.h"
#include "sreval/encoder.h"
#include "sreval/geo.h"
#include "sreval/image_ops.h"
#include "sreval/pixel_metrics.h"
#include "sreval/png_io.h"
#include "sreval/random.h"
#include "sreval/scene.h"
#include "sreval/study.h"
#include "test_support.h"

namespace sreval {
namespace {

using ::sreval::testing::OracleCpsnr;
using ::sreval::testing::OracleSsim;
using ::sreval::testing::RandomRaster;
using ::sreval::testing::TempDir;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

const Encoder& Reference() {
  static const Encoder* encoder = new Encoder(
      Encoder::FromManifest(testing::ModelDir() / "reference_encoder.json"));
  return *encoder;
}

Outcome PixelOracleEquivalence() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(2024);
  double worst_ssim = 0.0;
  int shift_mismatch = 0;
  for (int i = 0; i < 50; ++i) {
    const int w = 11 + static_cast<int>(rng.UniformInt(22));
    const int h = 11 + static_cast<int>(rng.UniformInt(22));
    const int c = rng.Bernoulli(0.5) ? 3 : 1;
    const Raster a = RandomRaster(w, h, c, Depth::kU8, 10000 + i);
    // Half the pairs are correlated: a shifted, noisy copy of `a`.
    Raster b = RandomRaster(w, h, c, Depth::kU8, 20000 + i);
    if (i % 2 == 0) {
      const int dx = static_cast<int>(rng.UniformInt(7)) - 3;
      const int dy = static_cast<int>(rng.UniformInt(7)) - 3;
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          for (int k = 0; k < c; ++k) {
            const float v = a.at(std::clamp(x - dx, 0, w - 1), std::clamp(y - dy, 0, h - 1), k);
            b.at(x, y, k) = std::clamp(v + 20.0f * static_cast<float>(rng.Uniform() - 0.5), 0.f, 255.f);
          }
        }
      }
    }
    worst_ssim = std::max(worst_ssim, std::abs(Ssim(a, b) - OracleSsim(a, b)));
    const CpsnrResult got = CpsnrDetailed(b, a);
    const auto want = OracleCpsnr(b, a, 3, 3);
    if (got.dx != want.dx || got.dy != want.dy) ++shift_mismatch;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst_ssim <= 1e-6 && shift_mismatch == 0 && secs < 10.0,
          Fmt("50 pairs: max |ssim - oracle| = %.3g (tol 1e-6), cpsnr argmax mismatches = %d, "
              "%.2f s (limit 10 s)",
              worst_ssim, shift_mismatch, secs)};
}

Outcome ClosedFormPsnr() {
  const Raster a = Raster::Filled(16, 16, 3, Depth::kU8, 100.0f);
  const double one = Psnr(a, Raster::Filled(16, 16, 3, Depth::kU8, 101.0f));
  const double full = Psnr(Raster::Filled(16, 16, 3, Depth::kU8, 0.0f),
                           Raster::Filled(16, 16, 3, Depth::kU8, 255.0f));
  const double same = Psnr(a, a);
  const bool ok = std::abs(one - 48.1308) <= 1e-3 && std::abs(full) <= 1e-9 &&
                  same == kInfiniteDb && FormatScoreValue("psnr", same) == "inf";
  return {ok, Fmt("diff-1 %.4f dB (48.1308 +- 1e-3), diff-255 %.3g dB (0 +- 1e-9), identity %s",
                  one, full, FormatScoreValue("psnr", same).c_str())};
}

Outcome CpsnrRecovery() {
  const Raster hr = SynthesizeScene(77, 48).ConvertTo(Depth::kF32Unit);
  int recovered = 0;
  double worst_db = kInfiniteDb;
  Rng rng(5);
  for (int dy = -3; dy <= 3; ++dy) {
    for (int dx = -3; dx <= 3; ++dx) {
      Raster sr(hr.width(), hr.height(), 3, Depth::kF32Unit);
      for (int y = 0; y < hr.height(); ++y) {
        for (int x = 0; x < hr.width(); ++x) {
          for (int c = 0; c < 3; ++c) {
            const double v = hr.at(std::clamp(x - dx, 0, hr.width() - 1),
                                   std::clamp(y - dy, 0, hr.height() - 1), c) +
                             1e-4 * (rng.Uniform() - 0.5);
            sr.at(x, y, c) = static_cast<float>(std::clamp(v, 0.0, 1.0));
          }
        }
      }
      const CpsnrResult r = CpsnrDetailed(sr, hr);
      recovered += r.dx == dx && r.dy == dy;
      worst_db = std::min(worst_db, r.db);
    }
  }
  return {recovered == 49 && worst_db >= 60.0,
          Fmt("%d/49 planted shifts recovered (need 49), min aligned cPSNR %.2f dB (need >= 60)",
              recovered, worst_db)};
}

Outcome ClipIdentitySymmetry() {
  std::vector<Raster> fixtures;
  for (int s = 0; s < 20; ++s) fixtures.push_back(SynthesizeScene(500 + s));
  double worst_identity = 0.0, worst_swap = 0.0, worst_batch = 0.0;
  for (int s = 0; s < 20; ++s) {
    const Raster& a = fixtures[s];
    const Raster b = GaussianBlur(fixtures[(s + 1) % 20], 1.0 + s % 3);
    worst_identity = std::max(worst_identity, std::abs(ClipScore(Reference(), a, a) - 1.0));
    worst_swap = std::max(worst_swap,
                          std::abs(ClipScore(Reference(), a, b) - ClipScore(Reference(), b, a)));
  }
  const auto batched = Reference().EmbedBatch(fixtures, 16);
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    const EmbeddingVector one = Reference().Embed(fixtures[i]);
    for (std::size_t k = 0; k < one.values.size(); ++k) {
      worst_batch = std::max(worst_batch,
                             static_cast<double>(std::abs(one.values[k] - batched[i].values[k])));
    }
  }
  return {worst_identity <= 1e-6 && worst_swap <= 1e-6 && worst_batch <= 1e-5,
          Fmt("20 fixtures: max |clip(a,a) - 1| = %.3g (tol 1e-6), max swap diff %.3g (tol 1e-6), "
              "batch-16 vs batch-1 %.3g (tol 1e-5)",
              worst_identity, worst_swap, worst_batch)};
}

Outcome BlurDegradation() {
  int monotone = 0;
  for (int s = 0; s < 50; ++s) {
    const Raster gt = SynthesizeScene(1000 + s);
    const double c1 = ClipScore(Reference(), gt, GaussianBlur(gt, 1.0));
    const double c2 = ClipScore(Reference(), gt, GaussianBlur(gt, 2.0));
    const double c4 = ClipScore(Reference(), gt, GaussianBlur(gt, 4.0));
    monotone += c1 >= c2 && c2 >= c4;
  }
  // Stored fixtures: scenes where PSNR prefers the sigma-4 blur but CLIPScore
  // prefers the 16x down-up-sampled copy (or the reverse).
  const auto fixtures = nlohmann::json::parse(
      ReadTextFile(testing::TestDataDir() / "inversion_fixtures.json"));
  int reproduced = 0;
  for (const auto& f : fixtures) {
    const Raster gt = SynthesizeScene(f.at("seed").get<int>());
    const Raster blur = GaussianBlur(gt, 4.0);
    const Raster downup = Resize(Downsample(gt, 16, ResampleMethod::kBox), gt.width(), gt.height());
    const bool psnr_blur = Psnr(gt, blur) > Psnr(gt, downup);
    const bool clip_blur = ClipScore(Reference(), gt, blur) > ClipScore(Reference(), gt, downup);
    const bool stored_psnr_blur = f.at("psnr_blur").get<double>() > f.at("psnr_downup").get<double>();
    const bool stored_clip_blur =
        f.at("clipscore_blur").get<double>() > f.at("clipscore_downup").get<double>();
    reproduced += psnr_blur != clip_blur && psnr_blur == stored_psnr_blur &&
                  clip_blur == stored_clip_blur;
  }
  return {monotone >= 43 && reproduced >= 1,
          Fmt("clipscore weakly decreasing over sigma {1,2,4} for %d/50 images (need >= 85%%); "
              "%d/%zu stored psnr-vs-clipscore inversions reproduced (need >= 1)",
              monotone, reproduced, fixtures.size())};
}

PreferenceRecord Pref(const std::string& item, const std::string& a, const std::string& b,
                      Side s) {
  return {item, a, b, s, "acc", ParseIso8601("2024-01-01"), ""};
}

Outcome AgreementComputation() {
  Rng rng(11);
  ScoreTable t;
  std::vector<PreferenceRecord> prefs;
  for (int i = 0; i < 1000; ++i) {
    const std::string item = "i" + std::to_string(i);
    const double x = rng.Uniform(), y = rng.Uniform();
    t.Add({item, "x", "ssim", x});
    t.Add({item, "y", "ssim", y});
    t.Add({item, "x", "ext:noise", rng.Uniform()});
    t.Add({item, "y", "ext:noise", rng.Uniform()});
    const bool x_left = rng.Bernoulli(0.5);
    const bool prefer_left = x_left ? x > y : y > x;
    prefs.push_back(Pref(item, x_left ? "x" : "y", x_left ? "y" : "x",
                         prefer_left ? Side::kA : Side::kB));
  }
  const auto r = AgreementAccuracy(prefs, t,
                                   {ParseMetricSpec("ssim"), ParseMetricSpec("ssim:lower"),
                                    ParseMetricSpec("ext:noise:higher")});
  ScoreTable h;
  std::vector<PreferenceRecord> hp;
  for (int i = 0; i < 10; ++i) {
    const std::string item = "h" + std::to_string(i);
    h.Add({item, "a", "psnr", 30.0});
    h.Add({item, "b", "psnr", i == 9 ? 30.0 : 25.0});
    hp.push_back(Pref(item, "a", "b", i == 7 || i == 8 ? Side::kB : Side::kA));
  }
  const double hand = AgreementAccuracy(hp, h, {ParseMetricSpec("psnr")}).metrics[0].accuracy;
  const double oracle = r.metrics[0].accuracy, anti = r.metrics[1].accuracy,
               noise = r.metrics[2].accuracy;
  return {oracle == 1.0 && anti == 0.0 && std::abs(noise - 0.5) <= 0.05 && hand == 0.75,
          Fmt("oracle %.6f (exactly 1), inverted %.6f (exactly 0), random over 1000 prefs %.4f "
              "(0.5 +- 0.05), hand 7/2/1 %.6f (exactly 0.75)",
              oracle, anti, noise, hand)};
}

Outcome BuildingStudy() {
  std::vector<BuildingAnnotation> ann = {
      {"i1", "m", 10, 9, 1}, {"i2", "m", 5, 5, 0}, {"i3", "m", 5, 4, 1}};
  const BuildingStats s = BuildingStudyStats(ann)[0];
  bool invariant = true;
  std::sort(ann.begin(), ann.end(),
            [](const auto& a, const auto& b) { return a.item_id < b.item_id; });
  do {
    const BuildingStats p = BuildingStudyStats(ann)[0];
    invariant &= p.gt_recall == s.gt_recall && p.hallucination_rate == s.hallucination_rate;
  } while (std::next_permutation(ann.begin(), ann.end(), [](const auto& a, const auto& b) {
    return a.item_id < b.item_id;
  }));
  return {std::abs(s.gt_recall - 0.9) <= 1e-12 && std::abs(s.hallucination_rate - 0.6667) <= 1e-4 &&
              invariant,
          Fmt("recall %.6f (0.9), rate %.6f (0.6667 +- 1e-4), invariant over all 6 orderings: %s",
              s.gt_recall, s.hallucination_rate, invariant ? "yes" : "no")};
}

Outcome ManifestAndSplits() {
  const auto dir = testing::TestDataDir() / "manifest";
  const ManifestResult m = BuildManifest(ReadIndexCsv(dir / "hr.csv"), ReadIndexCsv(dir / "lr.csv"));
  // Hand count: in-window LR frames per tile are 20, 17, 18, 17 + one frame on
  // the boundary, 17 + one frame a second past it, 30, 0, 10, 18, 25, 5, 19.
  const bool counts = m.entries.size() == 7 && m.dropped == 5;

  std::vector<TileIndex> tiles;
  for (int i = 0; i < 10000; ++i) tiles.push_back({17, 50000 + i % 125, 30000 + i / 125});
  const std::vector<double> fr{1, 3, 10, 30, 100};
  const SplitAssignment s = MakeSplits(tiles, fr, 20231115);
  bool nested = true;
  for (const SplitMembership& row : s.rows) {
    for (std::size_t i = 1; i < row.member.size(); ++i) nested &= !row.member[i - 1] || row.member[i];
  }
  std::vector<TileIndex> shuffled = tiles;
  Rng rng(1);
  for (std::size_t i = shuffled.size() - 1; i > 0; --i) {
    std::swap(shuffled[i], shuffled[rng.UniformInt(i + 1)]);
  }
  const bool order_invariant =
      FormatSplitsCsv(MakeSplits(shuffled, fr, 20231115)) == FormatSplitsCsv(s);
  const std::size_t ten = s.CountInSplit(10);
  return {counts && nested && order_invariant && ten >= 900 && ten <= 1100,
          Fmt("fixture kept %zu / dropped %zu (hand count 7 / 5); nested %s; order-invariant %s; "
              "10%% of 10000 = %zu (900..1100)",
              m.entries.size(), m.dropped, nested ? "yes" : "no", order_invariant ? "yes" : "no",
              ten)};
}

Outcome TileMath() {
  Rng rng(99);
  int ok = 0;
  for (int i = 0; i < 1000; ++i) {
    const GeoPoint p{rng.Uniform(-180.0, 180.0), rng.Uniform(-85.0, 85.0)};
    const TileIndex t = LonLatToTile(p, 17);
    const auto [sw, ne] = TileToBounds(t);
    const bool inside = sw.lon <= p.lon + 1e-9 && p.lon <= ne.lon + 1e-9 &&
                        sw.lat <= p.lat + 1e-9 && p.lat <= ne.lat + 1e-9;
    ok += inside && LonLatToTile(TileCenter(t), 17) == t;
  }
  const TileIndex origin = LonLatToTile({0.0, 0.0}, 17);
  return {ok == 1000 && origin.x == 65536 && origin.y == 65536,
          Fmt("%d/1000 zoom-17 round trips; (0,0) -> (%lld, %lld)", ok,
              static_cast<long long>(origin.x), static_cast<long long>(origin.y))};
}

Outcome EvaluateDeterminism() {
  TempDir dir;
  std::string csv = "item,gt,model,output\n";
  for (int i = 0; i < 4; ++i) {
    const std::string item = "scene" + std::to_string(i);
    const Raster gt = SynthesizeScene(900 + i, 64);
    std::filesystem::create_directories(dir / item);
    SaveRaster(dir / item / "gt.png", gt);
    SaveRaster(dir / item / "soft.png", GaussianBlur(gt, 2.0));
    SaveRaster(dir / item / "coarse.png",
               Resize(Downsample(gt, 4, ResampleMethod::kBox), gt.width(), gt.height()));
    for (const char* m : {"soft", "coarse"}) {
      csv += item + "," + item + "/gt.png," + m + "," + item + "/" + m + ".png\n";
    }
  }
  testing::WriteFile(dir / "pairs.csv", csv);
  auto run = [&](const std::string& out, const char* jobs) {
    const std::vector<std::string> args = {
        "sreval", "evaluate", "--pairs", (dir / "pairs.csv").string(), "--metrics",
        "psnr,ssim,cpsnr,clipscore", "--encoder",
        (testing::ModelDir() / "reference_encoder.json").string(), "--jobs", jobs, "--out",
        (dir / out).string()};
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream o, e;
    return cli::Main(static_cast<int>(argv.size()), argv.data(), o, e);
  };
  const int codes = run("a.csv", "1") | run("b.csv", "1") | run("c.csv", "8");
  const std::string a = ReadTextFile(dir / "a.csv");
  const bool rerun = a == ReadTextFile(dir / "b.csv");
  const bool parallel = a == ReadTextFile(dir / "c.csv");
  return {codes == 0 && rerun && parallel && ReadScoreFile(dir / "a.csv").size() == 32,
          Fmt("exit codes ok: %s; rerun byte-identical: %s; 8 workers vs 1 identical: %s",
              codes == 0 ? "yes" : "no", rerun ? "yes" : "no", parallel ? "yes" : "no")};
}

}  // namespace
}  // namespace sreval

int main() {
  using sreval::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"pixel-metric oracle equivalence", sreval::PixelOracleEquivalence},
      {"closed-form PSNR", sreval::ClosedFormPsnr},
      {"cPSNR recovery", sreval::CpsnrRecovery},
      {"CLIPScore identity and symmetry", sreval::ClipIdentitySymmetry},
      {"blur degradation", sreval::BlurDegradation},
      {"agreement computation", sreval::AgreementComputation},
      {"building study", sreval::BuildingStudy},
      {"manifest/splits", sreval::ManifestAndSplits},
      {"tile math", sreval::TileMath},
      {"evaluate determinism", sreval::EvaluateDeterminism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    failed += !o.pass;
  }
  std::printf("%zu/%zu acceptance criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
