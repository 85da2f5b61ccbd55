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

#include "sreval/commands.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <functional>
#include <memory>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "sreval/annotation.h"
#include "sreval/csv.h"
#include "sreval/dataset.h"
#include "sreval/embedding_metrics.h"
#include "sreval/errors.h"
#include "sreval/png_io.h"
#include "sreval/study.h"

namespace sreval::cli {

namespace {

// Agreement reached by the strongest metric in the published human study
// (CLIPA-v2 ViT-bigG-14 CLIPScore). Printed as a reference, never asserted.
constexpr double kReferenceBestAgreement = 0.846;

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

void WriteOrPrint(const std::optional<std::filesystem::path>& path, const std::string& content,
                  std::ostream& out) {
  if (path) {
    WriteTextFile(*path, content);
  } else {
    out << content;
  }
}

// Runs a command body and maps the error hierarchy onto exit codes.
int Guarded(std::ostream& err, const std::function<void()>& body) {
  try {
    body();
    return kExitOk;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

void ScorePair(const EvalPair& pair, const EvalConfig& config, const Encoder* encoder,
               std::vector<ScoreRecord>& out) {
  const Raster gt = LoadRaster(pair.gt, Depth::kU8);
  const Raster sr = LoadRaster(pair.output, Depth::kU8);
  RequireSameShape(sr, gt, pair.item.c_str());
  for (const std::string& m : config.metrics) {
    double value = 0.0;
    if (m == kMetricPsnr) {
      value = Psnr(gt, sr);
    } else if (m == kMetricSsim) {
      value = Ssim(gt, sr, config.ssim);
    } else if (m == kMetricCpsnr) {
      value = Cpsnr(sr, gt, config.cpsnr);
    } else if (m == kMetricClipScore) {
      value = ClipScore(*encoder, gt, sr);
    }
    out.push_back(ScoreRecord{pair.item, pair.model, m, value});
  }
}

}  // namespace

std::vector<EvalPair> ReadEvalPairs(const std::filesystem::path& path) {
  const CsvDocument doc = ReadCsv(path);
  ExpectHeader(doc, {"item", "gt", "model", "output"});
  const std::filesystem::path base = path.parent_path();
  std::vector<EvalPair> pairs;
  for (const CsvRow& row : doc.rows) {
    if (row.fields[0].empty() || row.fields[2].empty()) {
      throw ParseError(doc.source, row.line, "empty item or model id");
    }
    auto resolve = [&](const std::string& p) {
      const std::filesystem::path fp(p);
      return fp.is_relative() ? base / fp : fp;
    };
    pairs.push_back(EvalPair{row.fields[0], resolve(row.fields[1]), row.fields[2],
                             resolve(row.fields[3])});
  }
  return pairs;
}

EvalResult Evaluate(const EvalConfig& config) {
  std::set<std::string> seen;
  for (const std::string& m : config.metrics) {
    if (!IsNativeMetric(m)) throw ValidationError("cannot compute metric '" + m + "'");
    if (!seen.insert(m).second) throw ValidationError("metric '" + m + "' requested twice");
  }
  std::unique_ptr<Encoder> encoder;
  if (seen.contains(std::string(kMetricClipScore))) {
    if (!config.encoder_manifest) {
      throw ValidationError("clipscore needs an encoder manifest (--encoder)");
    }
    encoder = std::make_unique<Encoder>(Encoder::FromManifest(*config.encoder_manifest));
  }
  std::set<std::pair<std::string, std::string>> keys;
  for (const EvalPair& p : config.pairs) {
    if (!keys.emplace(p.item, p.model).second) {
      throw ValidationError("pair (" + p.item + ", " + p.model + ") listed twice");
    }
  }

  const std::size_t n = config.pairs.size();
  std::vector<std::vector<ScoreRecord>> rows(n);
  std::vector<std::optional<std::string>> failures(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        ScorePair(config.pairs[i], config, encoder.get(), rows[i]);
      } catch (const Error& e) {
        rows[i].clear();
        failures[i] = e.what();
      }
    }
  };
  int jobs = config.jobs > 0 ? config.jobs : static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(n, 1)));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }

  // Collection in pair order keeps the result independent of scheduling.
  EvalResult result;
  for (std::size_t i = 0; i < n; ++i) {
    if (failures[i]) {
      result.errors.push_back(EvalError{config.pairs[i].item, config.pairs[i].model, *failures[i]});
      continue;
    }
    for (ScoreRecord& r : rows[i]) result.scores.Add(std::move(r));
  }
  return result;
}

int Main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"sreval: super-resolution evaluation, human-study and dataset toolkit"};
  app.require_subcommand(1);

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Score SR outputs against targets");
  std::filesystem::path eval_pairs, eval_out;
  std::string eval_metrics = "psnr,ssim";
  std::optional<std::filesystem::path> encoder_manifest;
  EvalConfig eval_cfg;
  bool strict = false;
  evaluate->add_option("--pairs", eval_pairs, "CSV item,gt,model,output")->required();
  evaluate->add_option("--metrics", eval_metrics, "Comma list of psnr,ssim,cpsnr,clipscore");
  evaluate->add_option("--encoder", encoder_manifest, "Encoder manifest JSON");
  evaluate->add_option("--out", eval_out, "Score CSV to write")->required();
  evaluate->add_option("--jobs", eval_cfg.jobs, "Worker threads (0 = all cores)");
  evaluate->add_option("--cpsnr-radius", eval_cfg.cpsnr.shift_radius, "cPSNR shift radius");
  evaluate->add_option("--cpsnr-crop", eval_cfg.cpsnr.border_crop, "cPSNR border crop");
  evaluate->add_flag("--cpsnr-luminance-bias",
                     [&](std::int64_t) { eval_cfg.cpsnr.bias_mode = BiasMode::kLuminance; },
                     "Share one brightness bias across channels");
  evaluate->add_option("--ssim-window", eval_cfg.ssim.window, "SSIM window size");
  evaluate->add_option("--ssim-sigma", eval_cfg.ssim.sigma, "SSIM Gaussian sigma");
  evaluate->add_option("--ssim-k1", eval_cfg.ssim.k1);
  evaluate->add_option("--ssim-k2", eval_cfg.ssim.k2);
  evaluate->add_flag("--strict", strict, "Exit non-zero when any pair fails");

  // agree
  auto* agree = app.add_subcommand("agree", "Agreement between metrics and human preferences");
  std::filesystem::path agree_prefs, agree_scores;
  std::vector<std::string> agree_metrics;
  std::optional<std::filesystem::path> agree_out;
  agree->add_option("--prefs", agree_prefs, "Preference JSON-lines")->required();
  agree->add_option("--scores", agree_scores, "Score CSV")->required();
  agree->add_option("--metric", agree_metrics, "id[:higher|:lower], repeatable")->required();
  agree->add_option("--out", agree_out, "Report CSV (stdout if omitted)");

  // manifest
  auto* manifest = app.add_subcommand("manifest", "Pair HR tiles with LR time series");
  std::filesystem::path hr_index, lr_index, manifest_out;
  std::optional<std::filesystem::path> cities_file;
  ManifestOptions manifest_opts;
  double max_km = kDefaultCityRadiusKm;
  long long min_pop = kDefaultMinPopulation;
  manifest->add_option("--hr", hr_index, "HR index CSV tile_x,tile_y,path,timestamp")->required();
  manifest->add_option("--lr", lr_index, "LR index CSV tile_x,tile_y,path,timestamp")->required();
  manifest->add_option("--window-days", manifest_opts.window_days, "Half-width of the window");
  manifest->add_option("--min-lr", manifest_opts.min_lr, "Minimum LR frames per HR tile");
  manifest->add_option("--cities", cities_file, "City CSV name,lon,lat,population");
  manifest->add_option("--max-km", max_km, "City distance limit");
  manifest->add_option("--min-pop", min_pop, "City population threshold");
  manifest->add_option("--out", manifest_out, "Manifest JSON-lines")->required();

  // split
  auto* split = app.add_subcommand("split", "Nested percentage splits of a manifest");
  std::filesystem::path split_manifest, split_out;
  std::string fractions_text = "1,3,10,30,100";
  std::uint64_t seed = 0;
  split->add_option("--manifest", split_manifest)->required();
  split->add_option("--fractions", fractions_text, "Comma list of percentages");
  split->add_option("--seed", seed);
  split->add_option("--out", split_out, "CSV tile_x,tile_y,split_pct_min")->required();

  // sample-pairs
  auto* sample = app.add_subcommand("sample-pairs", "Draw blinded comparison tasks");
  std::optional<std::filesystem::path> sample_from;
  std::string sample_items, sample_models;
  std::size_t sample_n = 0;
  std::filesystem::path sample_out;
  sample->add_option("--from-pairs", sample_from, "Take items and models from a pairs CSV");
  sample->add_option("--items", sample_items, "Comma list of item ids");
  sample->add_option("--models", sample_models, "Comma list of model ids");
  sample->add_option("-n,--count", sample_n, "Number of tasks")->required();
  sample->add_option("--seed", seed);
  sample->add_option("--out", sample_out, "Task JSON-lines")->required();

  // serve
  auto* serve = app.add_subcommand("serve", "Run the annotation service");
  std::filesystem::path serve_tasks, serve_images, serve_log;
  std::optional<std::filesystem::path> serve_ui;
  std::string bind = "127.0.0.1:8080";
  serve->add_option("--tasks", serve_tasks, "Task JSON-lines")->required();
  serve->add_option("--images", serve_images, "Directory of <item>/<name>.png")->required();
  serve->add_option("--log", serve_log, "Preference log (append-only)")->required();
  serve->add_option("--bind", bind, "addr:port");
  serve->add_option("--ui", serve_ui, "Static front-end directory");

  // report
  auto* report = app.add_subcommand("report", "Scaling grid or building-study table");
  std::optional<std::filesystem::path> report_scores, report_groups, report_buildings,
      report_out;
  bool macro = false;
  report->add_option("--scores", report_scores, "Score CSV (scaling report)");
  report->add_option("--groups", report_groups, "Grouping CSV (scaling report)");
  report->add_option("--buildings", report_buildings, "Building annotation CSV");
  report->add_flag("--macro", macro, "Per-image (macro) building recall");
  report->add_option("--out", report_out, "Report CSV (stdout if omitted)");

  // export-prefs
  auto* export_prefs = app.add_subcommand("export-prefs", "Validate and export a preference log");
  std::filesystem::path export_log;
  std::optional<std::filesystem::path> export_out;
  export_prefs->add_option("--log", export_log)->required();
  export_prefs->add_option("--out", export_out, "JSON-lines (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  if (*evaluate) {
    return Guarded(err, [&] {
      eval_cfg.pairs = ReadEvalPairs(eval_pairs);
      eval_cfg.metrics = SplitList(eval_metrics);
      eval_cfg.encoder_manifest = encoder_manifest;
      const EvalResult result = Evaluate(eval_cfg);
      WriteScoreFile(eval_out, result.scores);
      for (const EvalError& e : result.errors) {
        err << "error: item=" << e.item << " model=" << e.model << ": " << e.message << "\n";
      }
      out << "evaluate: " << eval_cfg.pairs.size() << " pairs, " << result.scores.size()
          << " scores, " << result.errors.size() << " failed -> " << eval_out.string() << "\n";
      if (strict && !result.errors.empty()) {
        throw IoError(std::to_string(result.errors.size()) + " pair(s) could not be scored");
      }
    });
  }

  if (*agree) {
    return Guarded(err, [&] {
      std::vector<MetricSpec> specs;
      for (const std::string& m : agree_metrics) specs.push_back(ParseMetricSpec(m));
      const auto prefs = ReadPreferences(agree_prefs);
      const auto scores = ReadScoreFile(agree_scores);
      const AgreementReport r = AgreementAccuracy(prefs, scores, specs);
      char ref[128];
      std::snprintf(ref, sizeof(ref),
                    "reference: best metric in the published study reached %.3f agreement",
                    kReferenceBestAgreement);
      WriteOrPrint(agree_out, FormatAgreementCsv(r, {ref}), out);
      if (agree_out) {
        out << "agree: " << prefs.size() << " preferences, " << specs.size() << " metrics -> "
            << agree_out->string() << "\n";
      }
    });
  }

  if (*manifest) {
    return Guarded(err, [&] {
      const ManifestResult built =
          BuildManifest(ReadIndexCsv(hr_index), ReadIndexCsv(lr_index), manifest_opts);
      std::vector<ManifestEntry> entries = built.entries;
      std::size_t far = 0;
      if (cities_file) {
        const auto kept = FilterNearCities(entries, ReadCities(*cities_file), max_km, min_pop);
        far = entries.size() - kept.size();
        entries = kept;
      }
      WriteManifest(manifest_out, entries);
      out << "manifest: kept " << entries.size() << ", dropped " << built.dropped
          << " (fewer than " << manifest_opts.min_lr << " LR frames), dropped " << far
          << " (city filter) -> " << manifest_out.string() << "\n";
    });
  }

  if (*split) {
    return Guarded(err, [&] {
      std::vector<double> fractions;
      for (const std::string& f : SplitList(fractions_text)) {
        fractions.push_back(ParseDouble(f, "--fractions", 1));
      }
      const auto entries = ReadManifest(split_manifest);
      const SplitAssignment s = MakeSplits(entries, fractions, seed);
      bool nested = true;
      for (const SplitMembership& row : s.rows) {
        for (std::size_t i = 1; i < row.member.size(); ++i) {
          if (row.member[i - 1] && !row.member[i]) nested = false;
        }
      }
      if (!nested) throw ValidationError("splits are not nested");
      WriteTextFile(split_out, FormatSplitsCsv(s));
      out << "split: " << s.rows.size() << " tiles;";
      for (double f : s.fractions) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), " %g%%=%zu", f, s.CountInSplit(f));
        out << buf;
      }
      out << "; nested -> " << split_out.string() << "\n";
    });
  }

  if (*sample) {
    return Guarded(err, [&] {
      std::vector<std::string> items, models;
      if (sample_from) {
        std::set<std::string> item_set, model_set;
        for (const EvalPair& p : ReadEvalPairs(*sample_from)) {
          item_set.insert(p.item);
          model_set.insert(p.model);
        }
        items.assign(item_set.begin(), item_set.end());
        models.assign(model_set.begin(), model_set.end());
      } else {
        items = SplitList(sample_items);
        models = SplitList(sample_models);
      }
      const auto tasks = SampleAnnotationPairs(items, models, sample_n, seed);
      WriteTasks(sample_out, tasks);
      out << "sample-pairs: " << tasks.size() << " tasks over " << items.size() << " items, "
          << models.size() << " models -> " << sample_out.string() << "\n";
    });
  }

  if (*serve) {
    return Guarded(err, [&] {
      const std::size_t colon = bind.rfind(':');
      if (colon == std::string::npos) throw ValidationError("--bind must be addr:port");
      const std::string host = bind.substr(0, colon);
      const int port = static_cast<int>(ParseInteger(bind.substr(colon + 1), "--bind", 1));
      ServiceOptions opts{ReadTasks(serve_tasks), serve_images, serve_log, serve_ui};
      const std::size_t n = opts.tasks.size();
      AnnotationService service(std::move(opts));
      out << "serve: " << n << " tasks on " << bind << ", log " << serve_log.string() << "\n";
      out.flush();
      service.Run(host, port);
    });
  }

  if (*report) {
    return Guarded(err, [&] {
      if (report_buildings) {
        const auto stats = BuildingStudyStats(
            ReadBuildingAnnotations(*report_buildings),
            macro ? RecallAveraging::kMacro : RecallAveraging::kMicro);
        WriteOrPrint(report_out, FormatBuildingCsv(stats), out);
        if (report_out) {
          out << "report: " << stats.size() << " models -> " << report_out->string() << "\n";
        }
        return;
      }
      if (!report_scores || !report_groups) {
        throw ValidationError("report needs --buildings, or --scores with --groups");
      }
      const auto cells = ScalingReport(ReadScoreFile(*report_scores),
                                       ReadScalingGroups(*report_groups));
      WriteOrPrint(report_out, FormatScalingCsv(cells), out);
      if (report_out) {
        out << "report: " << cells.size() << " cells -> " << report_out->string() << "\n";
      }
    });
  }

  if (*export_prefs) {
    return Guarded(err, [&] {
      const auto prefs = ExportPreferences(export_log);
      std::string text;
      for (const PreferenceRecord& p : prefs) text += PreferenceToJsonLine(p) + "\n";
      WriteOrPrint(export_out, text, out);
      err << "export-prefs: " << prefs.size() << " records\n";
    });
  }
  return kExitValidation;
}

}  // namespace sreval::cli
