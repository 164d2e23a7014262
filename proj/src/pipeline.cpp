// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

#include "voicelens/pipeline.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "voicelens/annotation.hpp"
#include "voicelens/codebook.hpp"
#include "voicelens/error.hpp"
#include "voicelens/harmonize.hpp"
#include "voicelens/http_provider.hpp"
#include "voicelens/lexicon.hpp"
#include "voicelens/report.hpp"

namespace voicelens {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;
using ojson = nlohmann::ordered_json;

namespace {

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> kKeys = {
      {"general", {"output_dir"}},
      {"ingest", {"corpus", "format", "codebook", "human_labels"}},
      {"llm",
       {"enabled", "provider", "endpoint", "model", "temperature", "style", "seed", "max_retries",
        "max_in_flight", "sentiment"}},
      {"lda",
       {"enabled", "num_topics", "alpha", "beta", "iterations", "burn_in", "sample_lag", "seed",
        "min_term_count", "label_map", "search_k", "holdout_fraction", "holdout_seed"}},
      {"lexicon", {"enabled", "dir"}},
      {"evaluate",
       {"bootstrap_iters", "bootstrap_seed", "shuffle_repeats", "shuffle_seed",
        "include_parent_only", "count_empty_human", "execution"}},
      {"pipeline", {"stages"}},
  };
  return kKeys;
}

class Section {
 public:
  Section(const pt::ptree* tree, std::string name) : tree_(tree), name_(std::move(name)) {}

  std::optional<std::string> str(const std::string& key) const {
    if (!tree_) return std::nullopt;
    const auto v = tree_->get_optional<std::string>(key);
    if (!v) return std::nullopt;
    return std::string(trim(*v));
  }
  std::string str(const std::string& key, const std::string& fallback) const {
    return str(key).value_or(fallback);
  }
  bool flag(const std::string& key, bool fallback) const {
    const auto v = str(key);
    if (!v) return fallback;
    const auto s = to_lower_ascii(*v);
    if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
    if (s == "false" || s == "no" || s == "off" || s == "0") return false;
    throw bad(key, *v);
  }
  template <typename T>
  T number(const std::string& key, T fallback) const {
    const auto v = str(key);
    if (!v) return fallback;
    try {
      std::size_t used = 0;
      T out{};
      if constexpr (std::is_floating_point_v<T>) {
        out = static_cast<T>(std::stod(*v, &used));
      } else if constexpr (std::is_unsigned_v<T>) {
        out = static_cast<T>(std::stoull(*v, &used));
      } else {
        out = static_cast<T>(std::stoll(*v, &used));
      }
      if (used != v->size()) throw bad(key, *v);
      return out;
    } catch (const std::logic_error&) {
      throw bad(key, *v);
    }
  }
  fs::path path(const std::string& key, const fs::path& base) const {
    const auto v = str(key);
    if (!v || v->empty()) return {};
    const fs::path p(*v);
    return p.is_absolute() ? p : (base / p).lexically_normal();
  }

 private:
  Error bad(const std::string& key, const std::string& value) const {
    return Error(Errc::kParseError, "[" + name_ + "] " + key + ": bad value '" + value + "'");
  }
  const pt::ptree* tree_;
  std::string name_;
};

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& part : split(text, ',')) {
    const auto t = trim(part);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

std::string file_name(const std::optional<fs::path>& p) {
  return p && !p->empty() ? p->filename().string() : std::string();
}

}  // namespace

PipelineConfig PipelineConfig::parse(std::string_view ini_text, const fs::path& base_dir) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(ini_text)};
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(Errc::kParseError, std::string("config: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    const auto it = known_keys().find(section);
    if (it == known_keys().end()) throw Error(Errc::kParseError, "unknown section [" + section + "]");
    if (body.empty() && !body.data().empty()) {
      throw Error(Errc::kParseError, "key '" + section + "' outside a section");
    }
    for (const auto& [key, _] : body) {
      if (!it->second.count(key)) {
        throw Error(Errc::kParseError, "unknown key '" + key + "' in [" + section + "]");
      }
    }
  }
  const auto section = [&](const std::string& name) {
    return Section(tree.get_child_optional(name).get_ptr(), name);
  };

  PipelineConfig c;
  const auto general = section("general");
  c.output_dir = general.path("output_dir", base_dir);
  if (c.output_dir.empty()) throw Error(Errc::kParseError, "[general] output_dir is required");

  const auto ingest = section("ingest");
  c.corpus_path = ingest.path("corpus", base_dir);
  c.codebook_path = ingest.path("codebook", base_dir);
  if (c.corpus_path.empty()) throw Error(Errc::kParseError, "[ingest] corpus is required");
  if (c.codebook_path.empty()) throw Error(Errc::kParseError, "[ingest] codebook is required");
  if (const auto f = ingest.str("format"); f && !f->empty()) {
    c.corpus_format = parse_corpus_format(*f);
    if (!c.corpus_format) throw Error(Errc::kParseError, "[ingest] format: " + *f);
  }
  if (auto p = ingest.path("human_labels", base_dir); !p.empty()) c.human_labels_path = p;

  const auto llm_s = section("llm");
  c.llm_enabled = llm_s.flag("enabled", false);
  c.llm_provider = llm_s.str("provider", "mock");
  if (c.llm_provider != "mock" && c.llm_provider != "http") {
    throw Error(Errc::kParseError, "[llm] provider must be mock or http");
  }
  c.llm_endpoint = llm_s.str("endpoint", "");
  c.llm.provider_id = c.llm_provider;
  c.llm.model_name = llm_s.str("model", c.llm.model_name);
  c.llm.temperature = llm_s.number("temperature", c.llm.temperature);
  if (const auto s = llm_s.str("style")) {
    const auto style = llm::parse_prompt_style(*s);
    if (!style || !llm::is_thematic(*style)) {
      throw Error(Errc::kParseError, "[llm] style must be cot or zero_shot");
    }
    c.llm.style = *style;
  }
  if (llm_s.str("seed")) c.llm.seed = llm_s.number<std::uint64_t>("seed", 0);
  c.llm.max_retries = llm_s.number("max_retries", c.llm.max_retries);
  c.llm.max_in_flight = llm_s.number("max_in_flight", c.llm.max_in_flight);
  c.llm_sentiment = llm_s.flag("sentiment", true);
  c.llm.validate();

  const auto lda_s = section("lda");
  c.lda_enabled = lda_s.flag("enabled", false);
  c.lda_fit.num_topics = lda_s.number("num_topics", c.lda_fit.num_topics);
  if (lda_s.str("alpha")) c.lda_fit.alpha = lda_s.number("alpha", 0.0);
  c.lda_fit.beta = lda_s.number("beta", c.lda_fit.beta);
  c.lda_fit.iterations = lda_s.number("iterations", c.lda_fit.iterations);
  c.lda_fit.burn_in = lda_s.number("burn_in", c.lda_fit.burn_in);
  c.lda_fit.sample_lag = lda_s.number("sample_lag", c.lda_fit.sample_lag);
  c.lda_fit.seed = lda_s.number<std::uint64_t>("seed", c.lda_fit.seed);
  c.lda_min_term_count = lda_s.number("min_term_count", c.lda_min_term_count);
  if (auto p = lda_s.path("label_map", base_dir); !p.empty()) c.lda_label_map = p;
  for (const auto& k : split_list(lda_s.str("search_k", ""))) {
    try {
      c.lda_search_k.push_back(std::stoi(k));
    } catch (const std::logic_error&) {
      throw Error(Errc::kParseError, "[lda] search_k: bad entry '" + k + "'");
    }
  }
  c.lda_holdout_fraction = lda_s.number("holdout_fraction", c.lda_holdout_fraction);
  c.lda_holdout_seed = lda_s.number<std::uint64_t>("holdout_seed", c.lda_holdout_seed);
  if (c.lda_enabled) c.lda_fit.validate();

  const auto lex = section("lexicon");
  c.lexicon_enabled = lex.flag("enabled", false);
  c.lexicon_dir = lex.path("dir", base_dir);
  if (c.lexicon_enabled && c.lexicon_dir.empty()) {
    throw Error(Errc::kParseError, "[lexicon] dir is required when enabled");
  }

  const auto ev = section("evaluate");
  c.eval.bootstrap_iters = ev.number("bootstrap_iters", c.eval.bootstrap_iters);
  c.eval.bootstrap_seed = ev.number<std::uint64_t>("bootstrap_seed", c.eval.bootstrap_seed);
  c.eval.shuffle_repeats = ev.number("shuffle_repeats", c.eval.shuffle_repeats);
  c.eval.shuffle_seed = ev.number<std::uint64_t>("shuffle_seed", c.eval.shuffle_seed);
  c.eval.include_parent_only = ev.flag("include_parent_only", c.eval.include_parent_only);
  c.eval.hit_rate.count_empty_human = ev.flag("count_empty_human", true);
  const auto exec = ev.str("execution", "parallel");
  if (exec != "parallel" && exec != "serial") {
    throw Error(Errc::kParseError, "[evaluate] execution must be parallel or serial");
  }
  c.eval.exec = exec == "serial" ? Execution::kSerial : Execution::kParallel;

  if (const auto stages = section("pipeline").str("stages")) {
    c.stages = split_list(*stages);
    for (const auto& s : c.stages) {
      if (std::find(std::begin(kStageNames), std::end(kStageNames), s) == std::end(kStageNames)) {
        throw Error(Errc::kParseError, "[pipeline] unknown stage '" + s + "'");
      }
    }
  }
  return c;
}

PipelineConfig PipelineConfig::load(const fs::path& path) {
  return parse(read_file(path), path.parent_path().empty() ? fs::path(".") : path.parent_path());
}

ojson PipelineConfig::to_json() const {
  ojson j;
  j["ingest"] = {{"corpus", file_name(corpus_path)},
                 {"format", corpus_format ? ojson(to_string(*corpus_format)) : ojson(nullptr)},
                 {"codebook", file_name(codebook_path)},
                 {"human_labels", file_name(human_labels_path)}};
  j["llm"] = {{"enabled", llm_enabled},
              {"provider", llm_provider},
              {"endpoint", llm_endpoint},
              {"annotator", llm.to_json()},
              {"sentiment", llm_sentiment}};
  j["lda"] = {{"enabled", lda_enabled},
              {"num_topics", lda_fit.num_topics},
              {"alpha", lda_fit.alpha_value()},
              {"beta", lda_fit.beta},
              {"iterations", lda_fit.iterations},
              {"burn_in", lda_fit.burn_in},
              {"sample_lag", lda_fit.sample_lag},
              {"seed", lda_fit.seed},
              {"min_term_count", lda_min_term_count},
              {"label_map", file_name(lda_label_map)},
              {"search_k", lda_search_k},
              {"holdout_fraction", lda_holdout_fraction},
              {"holdout_seed", lda_holdout_seed}};
  j["lexicon"] = {{"enabled", lexicon_enabled}, {"dir", file_name(lexicon_dir)}};
  j["evaluate"] = {{"bootstrap_iters", eval.bootstrap_iters},
                   {"bootstrap_seed", eval.bootstrap_seed},
                   {"shuffle_repeats", eval.shuffle_repeats},
                   {"shuffle_seed", eval.shuffle_seed},
                   {"include_parent_only", eval.include_parent_only},
                   {"count_empty_human", eval.hit_rate.count_empty_human}};
  j["stages"] = stages;
  return j;
}

std::string artifact_digest(const fs::path& path) {
  const auto text = read_file(path);
  if (path.extension() == ".jsonl" && text.rfind("{\"type\":\"run_header\"", 0) == 0) {
    auto run = run_from_jsonl(text);
    run.started_at.clear();
    run.finished_at.clear();
    return sha256_hex(run_to_jsonl(run));
  }
  return sha256_hex(text);
}

namespace {

constexpr const char* kOwnedEntries[] = {"ingest", "runs", "lda", "harmonized", "eval", "report",
                                         "manifest.json", "checkpoint.json"};

class Runner {
 public:
  Runner(const PipelineConfig& config, const PipelineOptions& options)
      : c_(config), o_(options), out_(config.output_dir) {}

  PipelineResult run() {
    const auto config_hash = sha256_hex(c_.to_json().dump());
    std::set<std::string> done;
    if (o_.resume) {
      done = read_checkpoint(config_hash);
    } else {
      for (const auto* entry : kOwnedEntries) fs::remove_all(out_ / entry);
    }
    fs::create_directories(out_);

    PipelineResult result;
    for (const auto& stage : c_.stages) {
      if (done.count(stage)) {
        result.skipped.push_back(stage);
        continue;
      }
      if (o_.fail_at && *o_.fail_at == stage) {
        throw Error(Errc::kStageFailed, stage + ": injected failure");
      }
      try {
        run_stage(stage);
      } catch (const Error& e) {
        throw Error(Errc::kStageFailed, stage + ": " + e.what());
      }
      done.insert(stage);
      write_checkpoint(config_hash, done);
      result.ran.push_back(stage);
    }
    result.manifest = out_ / "manifest.json";
    write_file(result.manifest, manifest().dump(2) + "\n");
    return result;
  }

 private:
  std::set<std::string> read_checkpoint(const std::string& config_hash) const {
    const auto path = out_ / "checkpoint.json";
    if (!fs::exists(path)) return {};
    const auto j = nlohmann::json::parse(read_file(path), nullptr, false);
    if (j.is_discarded() || !j.contains("config_sha256") || !j.contains("completed")) {
      throw Error(Errc::kCorruptState, path.string() + ": unreadable checkpoint");
    }
    if (j["config_sha256"] != config_hash) {
      throw Error(Errc::kInvalidArgument, "configuration changed since the checkpoint was written");
    }
    return j["completed"].get<std::set<std::string>>();
  }

  void write_checkpoint(const std::string& config_hash, const std::set<std::string>& done) const {
    ojson j;
    j["config_sha256"] = config_hash;
    j["completed"] = ojson::array();
    for (const auto& s : c_.stages) {
      if (done.count(s)) j["completed"].push_back(s);
    }
    write_file(out_ / "checkpoint.json", j.dump(2) + "\n");
  }

  void run_stage(const std::string& stage) {
    if (stage == "ingest") {
      ingest();
    } else if (stage == "annotate") {
      annotate();
    } else if (stage == "harmonize") {
      harmonize();
    } else if (stage == "evaluate") {
      evaluate();
    } else if (stage == "report") {
      report();
    }
  }

  // ---- state on disk ----

  fs::path run_path(const std::string& run_id, RunKind kind) const {
    return out_ / "runs" / (run_id + "." + std::string(to_string(kind)) + ".jsonl");
  }
  std::optional<AnnotationRun> maybe_run(const std::string& run_id, RunKind kind) const {
    const auto p = run_path(run_id, kind);
    if (!fs::exists(p)) return std::nullopt;
    return load_run(p);
  }
  Corpus corpus() const {
    const auto p = out_ / "ingest" / "corpus.jsonl";
    if (!fs::exists(p)) throw Error(Errc::kCorruptState, "ingest output missing; run ingest first");
    return parse_corpus_jsonl(read_file(p), p.string(), o_.warn);
  }
  Codebook codebook() const { return load_codebook(out_ / "ingest" / "codebook.csv"); }

  // Thematic runs in a fixed order: human, llm, lda.
  std::vector<AnnotationRun> thematic_runs() const {
    std::vector<AnnotationRun> out;
    for (const auto* id : {"human", "llm", "lda"}) {
      if (auto r = maybe_run(id, RunKind::kThematic)) out.push_back(std::move(*r));
    }
    return out;
  }
  std::vector<AnnotationRun> sentiment_runs() const {
    std::vector<AnnotationRun> out;
    for (const auto* id : {"human", "llm", "lexicon"}) {
      if (auto r = maybe_run(id, RunKind::kSentiment)) out.push_back(std::move(*r));
    }
    return out;
  }

  // ---- stages ----

  void ingest() {
    const auto format = c_.corpus_format ? *c_.corpus_format : corpus_format_for(c_.corpus_path);
    const auto corpus = load_corpus(c_.corpus_path, format, o_.warn);
    const auto cb = load_codebook(c_.codebook_path);
    write_file(out_ / "ingest" / "corpus.jsonl", to_jsonl(corpus));
    write_file(out_ / "ingest" / "codebook.csv", codebook_to_prompt_csv(cb));
    if (c_.human_labels_path) {
      const auto human = load_human_labels(*c_.human_labels_path, cb, "human");
      labeled_from_run(human.themes, corpus);  // rejects ids outside the corpus
      save_run(human.themes, run_path("human", RunKind::kThematic));
      if (!human.sentiment.records.empty()) {
        sentiments_in_order(human.sentiment, corpus);
        save_run(human.sentiment, run_path("human", RunKind::kSentiment));
      }
    }
  }

  void annotate() {
    const auto corpus = this->corpus();
    const auto cb = codebook();
    if (c_.llm_enabled) {
      std::shared_ptr<llm::LlmProvider> provider = o_.provider;
      if (!provider) {
        if (c_.llm_provider == "mock") {
          provider = llm::mock_keyword_annotator(cb);
        } else {
          provider = std::make_shared<llm::HttpChatProvider>(
              llm::HttpChatProvider::from_env(c_.llm_endpoint));
        }
      }
      save_run(llm::annotate_corpus(*provider, corpus, cb, c_.llm, "llm", o_.warn),
               run_path("llm", RunKind::kThematic));
      if (c_.llm_sentiment) {
        auto cfg = c_.llm;
        cfg.style = llm::PromptStyle::kSentiment;
        save_run(llm::annotate_corpus(*provider, corpus, cb, cfg, "llm", o_.warn),
                 run_path("llm", RunKind::kSentiment));
      }
    }
    if (c_.lda_enabled) {
      lda::DtmOptions opts;
      opts.min_term_count = c_.lda_min_term_count;
      const auto dtm = lda::build_dtm(corpus, opts);
      const auto model = lda::fit_lda(dtm, c_.lda_fit);
      lda::save_model(model, out_ / "lda" / "model.json");
      write_file(out_ / "lda" / "worksheet.csv", lda::labeling_worksheet(model));
      if (!c_.lda_search_k.empty()) {
        lda::SearchConfig search;
        search.fit = c_.lda_fit;
        search.fit.alpha.reset();
        if (c_.lda_fit.alpha) search.fit.alpha = c_.lda_fit.alpha;
        search.holdout_fraction = c_.lda_holdout_fraction;
        search.holdout_seed = c_.lda_holdout_seed;
        const auto rows = lda::search_k(dtm, c_.lda_search_k, search);
        write_file(out_ / "lda" / "diagnostics.csv", lda::diagnostics_csv(rows));
      }
      if (c_.lda_label_map) {
        const auto map = lda::parse_label_map(read_file(*c_.lda_label_map), cb);
        save_run(lda::assign_all(model, map, "lda"), run_path("lda", RunKind::kThematic));
      } else {
        o_.warn("lda: no label map configured; fill in lda/worksheet.csv and set [lda] label_map");
      }
    }
    if (c_.lexicon_enabled) {
      const auto lex = lexicon::load_lexicon_dir(c_.lexicon_dir, o_.warn);
      save_run(lexicon::annotate_corpus(lex, corpus, "lexicon", c_.eval.exec),
               run_path("lexicon", RunKind::kSentiment));
    }
  }

  void harmonize() {
    const auto corpus = this->corpus();
    const auto cb = codebook();
    const auto original = code_universe(cb, LabelLevel::kOriginal, c_.eval.include_parent_only);
    const auto parents = code_universe(cb, LabelLevel::kParent);
    for (const auto& run : thematic_runs()) {
      auto lc = labeled_from_run(run, corpus);
      const auto stem = out_ / "harmonized" / run.run_id;
      write_file(stem.string() + ".original.csv", one_hot_csv(one_hot(restrict_to(lc, original), original)));
      write_file(stem.string() + ".parent.csv", one_hot_csv(one_hot(to_parent_level(lc, cb), parents)));
    }
  }

  void write_eval(const metrics::EvalReport& r) const {
    const auto stem = out_ / "eval" / r.source_pair();
    write_file(stem.string() + ".json", metrics::to_json(r).dump(2) + "\n");
    write_file(stem.string() + ".csv", metrics::to_csv(r));
  }

  void evaluate() {
    const auto corpus = this->corpus();
    const auto cb = codebook();
    const auto human = maybe_run("human", RunKind::kThematic);
    if (!human) throw Error(Errc::kInvalidArgument, "evaluate needs [ingest] human_labels");
    const auto human_sent = maybe_run("human", RunKind::kSentiment);
    for (const auto* id : {"llm", "lda"}) {
      const auto machine = maybe_run(id, RunKind::kThematic);
      if (!machine) continue;
      const auto machine_sent = maybe_run(id, RunKind::kSentiment);
      write_eval(metrics::evaluate(corpus, cb, *machine, *human,
                                   machine_sent ? &*machine_sent : nullptr,
                                   human_sent ? &*human_sent : nullptr, c_.eval));
    }
    if (const auto lex = maybe_run("lexicon", RunKind::kSentiment)) {
      if (human_sent) {
        write_eval(metrics::evaluate_sentiment(corpus, *lex, *human_sent, &*human, c_.eval));
      } else {
        o_.warn("evaluate: no human sentiment labels; lexicon run not evaluated");
      }
    }
  }

  void report() {
    const auto corpus = this->corpus();
    const auto cb = codebook();
    const auto themes = thematic_runs();
    for (const auto& run : themes) {
      const auto lc = labeled_from_run(run, corpus);
      auto tables = report::frequency_by_role(lc, cb, corpus);
      tables.insert(tables.begin(), report::frequency_report(lc, cb));
      write_file(out_ / "report" / ("frequency." + run.run_id + ".csv"), report::frequency_csv(tables));
    }
    if (themes.empty()) return;
    // Sentiment by theme uses the human themes when present.
    const auto lc = labeled_from_run(themes.front(), corpus);
    for (const auto& run : sentiment_runs()) {
      const auto s = sentiments_in_order(run, corpus);
      auto tables = report::sentiment_by_role(s, lc, corpus);
      tables.insert(tables.begin(), report::sentiment_report(s, lc));
      write_file(out_ / "report" / ("sentiment." + run.run_id + ".csv"), report::sentiment_csv(tables));
    }
  }

  ojson manifest() const {
    ojson j;
    j["tool"] = "voicelens";
    j["config"] = c_.to_json();
    ojson inputs = ojson::object();
    const auto add_input = [&](const std::string& name, const fs::path& p) {
      if (!p.empty() && fs::is_regular_file(p)) {
        inputs[name] = {{"file", p.filename().string()}, {"sha256", sha256_hex(read_file(p))}};
      }
    };
    add_input("corpus", c_.corpus_path);
    add_input("codebook", c_.codebook_path);
    if (c_.human_labels_path) add_input("human_labels", *c_.human_labels_path);
    if (c_.lda_label_map) add_input("lda_label_map", *c_.lda_label_map);
    if (c_.lexicon_enabled) {
      for (const auto* f : {"valence.tsv", "boosters.tsv", "negators.txt"}) {
        add_input(std::string("lexicon_") + f, c_.lexicon_dir / f);
      }
    }
    j["inputs"] = std::move(inputs);
    j["seeds"] = {{"llm", c_.llm.seed ? ojson(*c_.llm.seed) : ojson(nullptr)},
                  {"lda", c_.lda_fit.seed},
                  {"lda_holdout", c_.lda_holdout_seed},
                  {"bootstrap", c_.eval.bootstrap_seed},
                  {"shuffle", c_.eval.shuffle_seed}};
    std::vector<std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(out_)) {
      if (!e.is_regular_file()) continue;
      const auto rel = fs::relative(e.path(), out_).generic_string();
      if (rel == "manifest.json" || rel == "checkpoint.json") continue;
      if (rel.find(".tmp") != std::string::npos) continue;
      files.push_back(rel);
    }
    std::sort(files.begin(), files.end());
    ojson outputs = ojson::object();
    for (const auto& f : files) outputs[f] = artifact_digest(out_ / f);
    j["outputs"] = std::move(outputs);
    return j;
  }

  const PipelineConfig& c_;
  const PipelineOptions& o_;
  fs::path out_;
};

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config, const PipelineOptions& options) {
  return Runner(config, options).run();
}

}  // namespace voicelens
