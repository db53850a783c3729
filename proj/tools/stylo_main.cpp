// tools/stylo_main.cpp
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// stylo: stylometric author identification for short microblog texts.
//
// Subcommands: normalize, build-dict, evaluate, sffs, timesplit, bench,
// synth. Every command is reproducible from (inputs, flags, seed); only
// bench timings and the timings block of reports vary between runs.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stylo/evaluation.hpp"
#include "stylo/features.hpp"
#include "stylo/io.hpp"
#include "stylo/matching.hpp"
#include "stylo/parallel.hpp"
#include "stylo/postag.hpp"
#include "stylo/preprocess.hpp"
#include "stylo/selection.hpp"
#include "stylo/synthetic.hpp"

namespace fs = std::filesystem;
using namespace stylo;

namespace {

struct CommonOptions {
  std::string corpus_path;
  std::string format = "jsonl";
  std::vector<std::string> dict_paths;
  std::string lexicon_path;
  std::string out_dir = "out";
  int threads = default_threads();
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool needs_corpus = true) {
  auto* corpus = cmd->add_option("--corpus", opts.corpus_path, "corpus file");
  if (needs_corpus) corpus->required()->check(CLI::ExistingFile);
  cmd->add_option("--format", opts.format, "corpus format")
      ->check(CLI::IsMember({"jsonl", "csv"}));
  cmd->add_option("--dict", opts.dict_paths, "n-gram dictionary file (repeatable)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--lexicon", opts.lexicon_path, "POS lexicon file")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--threads", opts.threads, "worker threads")
      ->check(CLI::PositiveNumber);
}

Corpus load(const CommonOptions& opts) {
  return load_corpus(opts.corpus_path, corpus_format_from_name(opts.format));
}

PosTagger make_tagger(const CommonOptions& opts) {
  return opts.lexicon_path.empty() ? PosTagger::builtin()
                                   : PosTagger::from_file(opts.lexicon_path);
}

std::vector<NgramDictionary> load_dicts(const CommonOptions& opts) {
  std::vector<NgramDictionary> dicts;
  for (const auto& path : opts.dict_paths) dicts.push_back(NgramDictionary::load(path));
  return dicts;
}

FeatureExtractor make_extractor(const CommonOptions& opts, bool selection_layout,
                                bool raw_frequencies) {
  RegistryConfig config;
  config.unigram_space_bin = !selection_layout;
  auto dicts = load_dicts(opts);
  auto registry = build_registry(config, dicts);
  ExtractOptions extract_options;
  extract_options.normalized_frequencies = !raw_frequencies;
  return FeatureExtractor(std::move(registry), std::move(dicts), make_tagger(opts),
                          extract_options);
}

/// `name` is either a named combination or @path to a saved id list.
std::vector<int> resolve_subset(const FeatureRegistry& registry, const std::string& name,
                                const std::string& eval_corpus) {
  if (!name.empty() && name.front() == '@') {
    LoadedSubset loaded = load_subset(name.substr(1));
    if (loaded.layout_hash != registry.layout_hash()) {
      throw std::runtime_error("subset file " + name.substr(1) +
                               " was built for a different registry layout");
    }
    if (!loaded.source.empty() && loaded.source == eval_corpus) {
      std::cerr << "warning: subset was selected on this same corpus (" << eval_corpus
                << "); results may be optimistically biased\n";
    }
    for (int id : loaded.ids) {
      if (id < 0 || static_cast<std::size_t>(id) >= registry.size())
        throw std::runtime_error("subset id " + std::to_string(id) + " out of range");
    }
    return loaded.ids;
  }
  return named_subset(registry, name);
}

std::string curve_name(const char* kind, const ExperimentConfig& config, int fold) {
  return std::string(kind) + "_J" + std::to_string(config.plan.enroll_count) + "_K" +
         std::to_string(config.plan.group_size) + "_M" +
         std::to_string(config.plan.author_count) + "_fold" + std::to_string(fold) +
         ".csv";
}

int cmd_normalize(const CommonOptions& opts) {
  Corpus corpus = load(opts);
  fs::create_directories(opts.out_dir);
  const std::string out_path = (fs::path(opts.out_dir) / "normalized.jsonl").string();
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  std::size_t deleted = 0, total = 0;
  for (const auto& [author, tweets] : corpus.authors) {
    for (const Tweet& tweet : tweets) {
      NormalizedTweet norm = normalize(tweet.raw_text);
      ++total;
      if (norm.deleted) ++deleted;
      nlohmann::json record = normalized_tweet_to_json(norm);
      record["author_id"] = author;
      if (!tweet.tweet_id.empty()) record["tweet_id"] = tweet.tweet_id;
      out << record.dump() << '\n';
    }
  }
  std::cerr << "normalized " << total << " tweets (" << deleted
            << " deleted as pure retweets, " << corpus.dropped_empty
            << " dropped at load for empty text) -> " << out_path << '\n';
  return 0;
}

int cmd_build_dict(const CommonOptions& opts, int n, std::size_t size, int per_author) {
  Corpus corpus = load(opts);
  std::vector<NormalizedTweet> normalized;
  for (const auto& [_, tweets] : corpus.authors) {
    int used = 0;
    for (const Tweet& tweet : tweets) {
      if (per_author > 0 && used >= per_author) break;
      NormalizedTweet norm = normalize(tweet.raw_text);
      if (norm.deleted) continue;
      normalized.push_back(std::move(norm));
      ++used;
    }
  }
  NgramDictionary dict = build_ngram_dictionary(normalized, n, size);
  fs::create_directories(opts.out_dir);
  const std::string path =
      (fs::path(opts.out_dir) / ("dict_" + std::to_string(n) + "gram.txt")).string();
  dict.save(path);
  std::cerr << "built " << n << "-gram dictionary with " << dict.size() << " entries from "
            << normalized.size() << " tweets -> " << path << '\n';
  return 0;
}

int cmd_evaluate(const CommonOptions& opts, const std::vector<int>& train,
                 const std::vector<int>& test, std::vector<int> authors, int folds,
                 const std::string& measure_name_arg, const std::string& subset_name,
                 std::uint64_t seed, bool raw_frequencies) {
  Measure measure = measure_from_name(measure_name_arg);
  Corpus corpus = load(opts);
  FeatureExtractor extractor = make_extractor(opts, false, raw_frequencies);
  if (authors.empty()) authors = {static_cast<int>(corpus.authors.size())};

  fs::create_directories(opts.out_dir);
  extractor.registry().save_manifest(
      (fs::path(opts.out_dir) / "registry_manifest.csv").string());
  auto subset_ids = resolve_subset(extractor.registry(), subset_name, opts.corpus_path);

  FeatureTable table = build_feature_table(corpus, extractor, opts.threads);
  auto reports = run_protocol(table, train, test, authors, folds, seed, measure,
                              subset_name, subset_ids, opts.threads);

  nlohmann::json out = nlohmann::json::array();
  for (const auto& report : reports) {
    nlohmann::json j = report_to_json(report);
    if (!report.skipped) {
      nlohmann::json curves = nlohmann::json::array();
      for (const auto& fold : report.folds) {
        const std::string cmc_file = curve_name("cmc", report.config, fold.fold);
        save_cmc_csv(fold.cmc, (fs::path(opts.out_dir) / cmc_file).string());
        std::string det_file;
        if (fold.eer) {
          det_file = curve_name("det", report.config, fold.fold);
          save_det_csv(fold.det, (fs::path(opts.out_dir) / det_file).string());
        }
        curves.push_back({{"fold", fold.fold}, {"cmc", cmc_file}, {"det", det_file}});
      }
      j["curves"] = std::move(curves);
    }
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
    out.push_back(std::move(j));
  }
  const std::string report_path = (fs::path(opts.out_dir) / "report.json").string();
  std::ofstream rout(report_path, std::ios::binary);
  rout << out.dump(2) << '\n';
  std::cerr << "wrote " << report_path << '\n';
  return 0;
}

int cmd_sffs(const CommonOptions& opts, int train, int test,
             const std::string& measure_name_arg, std::size_t max_size,
             bool no_backward) {
  Measure measure = measure_from_name(measure_name_arg);
  Corpus corpus = load(opts);
  FeatureExtractor extractor = make_extractor(opts, true, false);
  const auto& registry = extractor.registry();
  std::cerr << "selection search space: " << registry.size() << " features\n";

  FeatureTable table = build_feature_table(corpus, extractor, opts.threads);
  Rank1Criterion criterion(table, train, test, measure, 1);
  std::cerr << "criterion corpus: " << criterion.author_count() << " authors, "
            << criterion.test_count() << " test groups\n";

  SffsOptions options;
  options.max_size = max_size == 0 ? registry.size() : max_size;
  options.backward_step = !no_backward;
  options.threads = opts.threads;
  SelectionTrace trace =
      sffs(registry.size(), [&](const std::vector<int>& ids) { return criterion(ids); },
           options);

  fs::create_directories(opts.out_dir);
  registry.save_manifest((fs::path(opts.out_dir) / "registry_manifest.csv").string());
  trace.save_jsonl((fs::path(opts.out_dir) / "trace.jsonl").string());
  const BestSubset& best = trace.overall_best();
  save_subset((fs::path(opts.out_dir) / "subset_best.txt").string(), best.feature_ids,
              registry.layout_hash(), opts.corpus_path);
  nlohmann::json summary;
  summary["criterion_evaluations"] = trace.criterion_evaluations;
  summary["best"] = {{"size", best.feature_ids.size()}, {"criterion", best.criterion}};
  summary["best_per_size"] = nlohmann::json::array();
  for (std::size_t s = 1; s < trace.best_per_size.size(); ++s) {
    if (!trace.best_per_size[s]) continue;
    summary["best_per_size"].push_back(
        {{"size", s}, {"criterion", trace.best_per_size[s]->criterion}});
  }
  std::ofstream sout((fs::path(opts.out_dir) / "sffs_summary.json").string(),
                     std::ios::binary);
  sout << summary.dump(2) << '\n';
  std::cerr << "best subset: " << best.feature_ids.size() << " features, rank-1 "
            << best.criterion << '\n';
  return 0;
}

int cmd_timesplit(const CommonOptions& opts, int train, int test,
                  const std::string& measure_name_arg, const std::string& subset_name,
                  bool raw_frequencies) {
  Measure measure = measure_from_name(measure_name_arg);
  Corpus corpus = load(opts);
  FeatureExtractor extractor = make_extractor(opts, false, raw_frequencies);
  auto subset_ids = resolve_subset(extractor.registry(), subset_name, opts.corpus_path);
  FeatureTable table = build_feature_table(corpus, extractor, opts.threads);
  PermanenceReport report =
      time_permanence(table, train, test, measure, subset_name, subset_ids, opts.threads);
  fs::create_directories(opts.out_dir);
  for (int t = 0; t < 3; ++t) {
    save_cmc_csv(report.per_third[t], (fs::path(opts.out_dir) /
                                       ("cmc_third" + std::to_string(t + 1) + ".csv"))
                                          .string());
  }
  std::ofstream out((fs::path(opts.out_dir) / "permanence.json").string(),
                    std::ios::binary);
  out << permanence_to_json(report).dump(2) << '\n';
  std::cerr << "rank-5 by third: " << report.rank5[0] << " / " << report.rank5[1] << " / "
            << report.rank5[2] << '\n';
  return 0;
}

int cmd_bench(const CommonOptions& opts, int repeats) {
  Corpus corpus = load(opts);
  if (corpus.tweet_count() == 0) throw CLI::ValidationError("bench", "corpus is empty");
  FeatureExtractor extractor = make_extractor(opts, false, false);
  PosTagger tagger = make_tagger(opts);

  std::vector<NormalizedTweet> tweets;
  for (const auto& [_, list] : corpus.authors) {
    for (const Tweet& tweet : list) {
      NormalizedTweet norm = normalize(tweet.raw_text);
      if (!norm.deleted) tweets.push_back(std::move(norm));
    }
  }
  if (tweets.empty()) throw CLI::ValidationError("bench", "no usable tweets");

  using clock = std::chrono::steady_clock;
  auto per_tweet_ms = [&](auto&& fn) {
    std::vector<double> runs;
    for (int r = 0; r < repeats; ++r) {
      const auto start = clock::now();
      fn();
      runs.push_back(std::chrono::duration<double, std::milli>(clock::now() - start)
                         .count() /
                     static_cast<double>(tweets.size()));
    }
    double mean = 0.0;
    for (double v : runs) mean += v;
    mean /= static_cast<double>(runs.size());
    double var = 0.0;
    for (double v : runs) var += (v - mean) * (v - mean);
    var /= static_cast<double>(runs.size());
    return std::pair<double, double>(mean, std::sqrt(var));
  };

  volatile double sink = 0.0;
  std::vector<std::pair<std::string, std::pair<double, double>>> rows;
  rows.emplace_back("preprocess", per_tweet_ms([&] {
                      for (const auto& t : tweets) sink += normalize(t.text).url_count;
                    }));
  rows.emplace_back("char_count", per_tweet_ms([&] {
                      for (const auto& t : tweets) sink += extract_char_counts(t)[0];
                    }));
  rows.emplace_back("char_unigrams", per_tweet_ms([&] {
                      for (const auto& t : tweets) sink += extract_char_unigrams(t)[0];
                    }));
  for (const auto& dict : extractor.dictionaries()) {
    rows.emplace_back(std::to_string(dict.n) + "grams", per_tweet_ms([&] {
                        for (const auto& t : tweets)
                          sink += extract_ngram_freq(t, dict).front();
                      }));
  }
  rows.emplace_back("word", per_tweet_ms([&] {
                      for (const auto& t : tweets) {
                        auto tokens = tokenize(t.text);
                        sink += extract_word_features(t, tokens)[4];
                      }
                    }));
  rows.emplace_back("sentence", per_tweet_ms([&] {
                      for (const auto& t : tweets) {
                        auto tokens = tokenize(t.text);
                        sink += extract_sentence_features(t, tokens)[0];
                      }
                    }));
  rows.emplace_back("pos", per_tweet_ms([&] {
                      for (const auto& t : tweets) {
                        auto tokens = tokenize(t.text);
                        auto tags = tagger.tag_all(tokens);
                        sink += extract_pos_unigrams(tags)[0];
                      }
                    }));
  rows.emplace_back("extract_all", per_tweet_ms([&] {
                      for (const auto& t : tweets) sink += extractor.extract(t).values[0];
                    }));

  // Profile comparison time at full registry width.
  FeatureVector a = extractor.extract(tweets.front());
  FeatureVector b = extractor.extract(tweets.back());
  const int comparisons = 200000;
  const auto start = clock::now();
  for (int i = 0; i < comparisons; ++i)
    sink += chi2_distance(a.values, b.values);
  const double us_per_cmp =
      std::chrono::duration<double, std::micro>(clock::now() - start).count() /
      comparisons;

  fs::create_directories(opts.out_dir);
  const std::string path = (fs::path(opts.out_dir) / "bench.csv").string();
  std::ofstream out(path, std::ios::binary);
  out << "stage,ms_per_tweet,stddev_ms\n";
  std::cerr << "benchmark over " << tweets.size() << " tweets, " << repeats
            << " repeats (registry width " << extractor.registry().size() << ")\n";
  for (const auto& [name, stat] : rows) {
    out << name << ',' << stat.first << ',' << stat.second << '\n';
    std::cerr << "  " << name << ": " << stat.first << " ms/tweet (sd " << stat.second
              << ")\n";
  }
  out << "chi2_compare_us," << us_per_cmp << ",0\n";
  const double total = rows.back().second.first;
  std::cerr << "  chi2 comparison: " << us_per_cmp << " us/pair\n"
            << "  extract_all vs 89.47 ms reference: " << total << " ms ("
            << total / 89.47 * 100.0 << "%)\n";
  (void)sink;
  return 0;
}

int cmd_synth(const std::string& out_path, const std::string& format, int authors,
              int tweets, std::uint64_t seed) {
  SynthConfig config;
  config.authors = authors;
  config.tweets_per_author = tweets;
  config.seed = seed;
  Corpus corpus = synth_corpus(config);
  if (auto parent = fs::path(out_path).parent_path(); !parent.empty())
    fs::create_directories(parent);
  save_corpus(corpus, out_path, corpus_format_from_name(format));
  std::cerr << "wrote " << corpus.tweet_count() << " tweets for " << authors
            << " authors -> " << out_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stylometric author identification for short microblog texts"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value config file; flags override");

  CommonOptions normalize_opts, dict_opts, eval_opts, sffs_opts, time_opts, bench_opts;

  auto* cmd_norm = app.add_subcommand("normalize", "apply normalization, emit JSONL");
  add_common(cmd_norm, normalize_opts);

  auto* cmd_dict = app.add_subcommand("build-dict", "build a character n-gram dictionary");
  add_common(cmd_dict, dict_opts);
  int dict_n = 2;
  std::size_t dict_size = 500;
  int dict_per_author = 0;
  cmd_dict->add_option("--n", dict_n, "n-gram order (2..6)")->check(CLI::Range(2, 6));
  cmd_dict->add_option("--size", dict_size, "dictionary size")->check(CLI::PositiveNumber);
  cmd_dict->add_option("--per-author", dict_per_author,
                       "use only the first N tweets of each author (0 = all)");

  auto* cmd_eval = app.add_subcommand("evaluate", "run the identification protocol grid");
  add_common(cmd_eval, eval_opts);
  std::vector<int> train_grid{100}, test_grid{20}, author_grid;
  int folds = 1;
  std::string measure_arg = "chi2", subset_arg = "all";
  std::uint64_t seed = 1;
  bool raw_frequencies = false;
  cmd_eval->add_option("--train", train_grid, "enrollment tweets per author (J grid)");
  cmd_eval->add_option("--test", test_grid, "test tweets per group (K grid)");
  cmd_eval->add_option("--authors", author_grid, "authors per experiment (M grid)");
  cmd_eval->add_option("--folds", folds, "disjoint author folds (k)")
      ->check(CLI::PositiveNumber);
  cmd_eval->add_option("--measure", measure_arg, "chi2 | cosine | euclidean")
      ->check(CLI::IsMember({"chi2", "cosine", "euclidean"}));
  cmd_eval->add_option("--subset", subset_arg, "named subset or @idfile");
  cmd_eval->add_option("--seed", seed, "fold sampling seed");
  cmd_eval->add_flag("--raw-frequencies", raw_frequencies,
                     "emit raw counts instead of per-tweet frequencies");

  auto* cmd_sel = app.add_subcommand("sffs", "floating feature selection");
  add_common(cmd_sel, sffs_opts);
  int sel_train = 100, sel_test = 20;
  std::string sel_measure = "chi2";
  std::size_t sel_max = 0;
  bool sel_no_backward = false;
  cmd_sel->add_option("--train", sel_train, "enrollment tweets per author (J)");
  cmd_sel->add_option("--test", sel_test, "test tweets per group (K)");
  cmd_sel->add_option("--measure", sel_measure, "criterion measure")
      ->check(CLI::IsMember({"chi2", "cosine", "euclidean"}));
  cmd_sel->add_option("--max-size", sel_max, "stop at this subset size (0 = all)");
  cmd_sel->add_flag("--no-backward", sel_no_backward, "plain forward selection");

  auto* cmd_time = app.add_subcommand("timesplit", "time-permanence analysis");
  add_common(cmd_time, time_opts);
  int time_train = 100, time_test = 20;
  std::string time_measure = "chi2", time_subset = "all";
  bool time_raw = false;
  cmd_time->add_option("--train", time_train, "enrollment tweets per author (J)");
  cmd_time->add_option("--test", time_test, "test tweets per group (K)");
  cmd_time->add_option("--measure", time_measure, "chi2 | cosine | euclidean")
      ->check(CLI::IsMember({"chi2", "cosine", "euclidean"}));
  cmd_time->add_option("--subset", time_subset, "named subset or @idfile");
  cmd_time->add_flag("--raw-frequencies", time_raw, "raw counts mode");

  auto* cmd_b = app.add_subcommand("bench", "extraction and comparison timings");
  add_common(cmd_b, bench_opts);
  int bench_repeats = 3;
  cmd_b->add_option("--repeats", bench_repeats, "timing repetitions")
      ->check(CLI::PositiveNumber);

  auto* cmd_s = app.add_subcommand("synth", "generate a synthetic corpus");
  std::string synth_out = "synthetic.jsonl", synth_format = "jsonl";
  int synth_authors = 50, synth_tweets = 300;
  std::uint64_t synth_seed = 1;
  cmd_s->add_option("--out", synth_out, "output corpus path");
  cmd_s->add_option("--format", synth_format, "jsonl | csv")
      ->check(CLI::IsMember({"jsonl", "csv"}));
  cmd_s->add_option("--authors", synth_authors, "author count")->check(CLI::PositiveNumber);
  cmd_s->add_option("--tweets", synth_tweets, "tweets per author")
      ->check(CLI::PositiveNumber);
  cmd_s->add_option("--seed", synth_seed, "generator seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_norm->parsed()) return cmd_normalize(normalize_opts);
    if (cmd_dict->parsed())
      return cmd_build_dict(dict_opts, dict_n, dict_size, dict_per_author);
    if (cmd_eval->parsed())
      return cmd_evaluate(eval_opts, train_grid, test_grid, author_grid, folds,
                          measure_arg, subset_arg, seed, raw_frequencies);
    if (cmd_sel->parsed())
      return cmd_sffs(sffs_opts, sel_train, sel_test, sel_measure, sel_max,
                      sel_no_backward);
    if (cmd_time->parsed())
      return cmd_timesplit(time_opts, time_train, time_test, time_measure, time_subset,
                           time_raw);
    if (cmd_b->parsed()) return cmd_bench(bench_opts, bench_repeats);
    if (cmd_s->parsed())
      return cmd_synth(synth_out, synth_format, synth_authors, synth_tweets, synth_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
