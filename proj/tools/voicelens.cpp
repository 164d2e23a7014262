// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end for the voicelens library.

#include <csignal>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "voicelens/annotation.hpp"
#include "voicelens/codebook.hpp"
#include "voicelens/corpus.hpp"
#include "voicelens/error.hpp"
#include "voicelens/harmonize.hpp"
#include "voicelens/http_provider.hpp"
#include "voicelens/lda.hpp"
#include "voicelens/lexicon.hpp"
#include "voicelens/llm_annotator.hpp"
#include "voicelens/metrics.hpp"
#include "voicelens/pipeline.hpp"
#include "voicelens/report.hpp"
#include "voicelens/service.hpp"

namespace fs = std::filesystem;
using namespace voicelens;

namespace {

Corpus read_corpus(const std::string& path, const std::string& format) {
  const auto fmt = format.empty() ? corpus_format_for(path) : parse_corpus_format(format);
  if (!fmt) throw Error(Errc::kInvalidArgument, "unknown corpus format '" + format + "'");
  return load_corpus(path, *fmt);
}

// Human labels CSV, or a run file written by this tool.
AnnotationRun read_themes(const std::string& path, const Codebook& cb) {
  if (fs::path(path).extension() == ".csv") return load_human_labels(path, cb).themes;
  return load_run(path);
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

struct ProviderOptions {
  std::string provider = "mock";
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
};

std::shared_ptr<llm::LlmProvider> make_provider(const ProviderOptions& o, const Codebook& cb) {
  if (o.provider == "mock") return llm::mock_keyword_annotator(cb);
  if (o.provider == "http") {
    return std::make_shared<llm::HttpChatProvider>(llm::HttpChatProvider::from_env(o.endpoint));
  }
  throw Error(Errc::kInvalidArgument, "provider must be mock or http");
}

void add_annotator_options(CLI::App* cmd, llm::AnnotatorConfig& cfg, std::string& style,
                           ProviderOptions& prov) {
  cmd->add_option("--style", style, "cot, zero_shot or sentiment")->capture_default_str();
  cmd->add_option("--provider", prov.provider, "mock or http")->capture_default_str();
  cmd->add_option("--endpoint", prov.endpoint, "chat completions URL for --provider http")
      ->capture_default_str();
  cmd->add_option("--model", cfg.model_name)->capture_default_str();
  cmd->add_option("--temperature", cfg.temperature)->capture_default_str();
  cmd->add_option("--retries", cfg.max_retries)->capture_default_str();
  cmd->add_option("--in-flight", cfg.max_in_flight)->capture_default_str();
}

void finish_annotator_config(llm::AnnotatorConfig& cfg, const std::string& style,
                             const ProviderOptions& prov) {
  const auto s = llm::parse_prompt_style(style);
  if (!s) throw Error(Errc::kInvalidArgument, "unknown style '" + style + "'");
  cfg.style = *s;
  cfg.provider_id = prov.provider;
  cfg.validate();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"voicelens: machine-assisted qualitative coding and its evaluation"};
  app.require_subcommand(1);

  // ingest
  std::string corpus_path, corpus_format, out_path;
  auto* ingest = app.add_subcommand("ingest", "Validate a corpus and write it as JSONL or CSV");
  ingest->add_option("corpus", corpus_path)->required();
  ingest->add_option("--format", corpus_format, "csv or jsonl (default: by extension)");
  ingest->add_option("-o,--out", out_path, "output file (.jsonl or .csv; default stdout JSONL)");

  // codebook check
  std::string codebook_path, prompt_csv;
  auto* codebook_cmd = app.add_subcommand("codebook", "Codebook utilities");
  codebook_cmd->require_subcommand(1);
  auto* check = codebook_cmd->add_subcommand("check", "Validate a codebook CSV");
  check->add_option("codebook", codebook_path)->required();
  check->add_option("--prompt-csv", prompt_csv, "also write the CSV embedded in prompts");

  // annotate
  auto* annotate = app.add_subcommand("annotate", "Label a corpus");
  annotate->require_subcommand(1);

  llm::AnnotatorConfig llm_cfg;
  std::string style = "cot";
  ProviderOptions prov;
  std::string run_id;
  std::uint64_t llm_seed = 0;
  auto* ann_llm = annotate->add_subcommand("llm", "Prompt a language model for themes or sentiment");
  ann_llm->add_option("--corpus", corpus_path)->required();
  ann_llm->add_option("--codebook", codebook_path)->required();
  ann_llm->add_option("--seed", llm_seed, "recorded in the run configuration");
  ann_llm->add_option("--run-id", run_id, "default: llm");
  ann_llm->add_option("-o,--out", out_path)->required();
  add_annotator_options(ann_llm, llm_cfg, style, prov);

  lda::FitConfig fit;
  double alpha = 0.0;
  int min_term_count = 2;
  std::string model_out, label_map, diagnostics_out;
  std::vector<int> search_k;
  auto* ann_lda = annotate->add_subcommand("lda", "Fit a topic model (and assign labeled topics)");
  ann_lda->add_option("--corpus", corpus_path)->required();
  ann_lda->add_option("-k,--topics", fit.num_topics)->capture_default_str();
  ann_lda->add_option("--alpha", alpha, "default 50/K");
  ann_lda->add_option("--beta", fit.beta)->capture_default_str();
  ann_lda->add_option("--iterations", fit.iterations)->capture_default_str();
  ann_lda->add_option("--burn-in", fit.burn_in)->capture_default_str();
  ann_lda->add_option("--sample-lag", fit.sample_lag)->capture_default_str();
  ann_lda->add_option("--seed", fit.seed)->capture_default_str();
  ann_lda->add_option("--min-term-count", min_term_count)->capture_default_str();
  ann_lda->add_option("--model-out", model_out, "write the fitted model JSON");
  ann_lda->add_option("--codebook", codebook_path, "needed with --label-map");
  ann_lda->add_option("--label-map", label_map, "completed labeling worksheet");
  ann_lda->add_option("-o,--out", out_path, "run file (needs --label-map)");
  ann_lda->add_option("--search-k", search_k, "also compute diagnostics for these K")->delimiter(',');
  ann_lda->add_option("--diagnostics", diagnostics_out, "diagnostics CSV for --search-k");

  std::string lexicon_dir;
  auto* ann_lex = annotate->add_subcommand("lexicon", "Rule-based lexicon sentiment");
  ann_lex->add_option("--corpus", corpus_path)->required();
  ann_lex->add_option("--lexicon-dir", lexicon_dir, "directory with valence.tsv, boosters.tsv, negators.txt")
      ->required();
  ann_lex->add_option("-o,--out", out_path)->required();

  // label-topics
  std::string model_path;
  int n_words = 10, n_docs = 20;
  auto* label_topics = app.add_subcommand("label-topics", "Human topic labeling worksheet");
  label_topics->require_subcommand(1);
  auto* lt_export = label_topics->add_subcommand("export", "Write a worksheet for a fitted model");
  lt_export->add_option("--model", model_path)->required();
  lt_export->add_option("--words", n_words)->capture_default_str();
  lt_export->add_option("--docs", n_docs)->capture_default_str();
  lt_export->add_option("-o,--out", out_path);
  auto* lt_import = label_topics->add_subcommand("import", "Assign labeled topics to paragraphs");
  lt_import->add_option("--model", model_path)->required();
  lt_import->add_option("--codebook", codebook_path)->required();
  lt_import->add_option("--map", label_map, "completed worksheet")->required();
  lt_import->add_option("-o,--out", out_path)->required();

  // evaluate
  std::string machine_path, human_path, machine_sentiment_path, csv_out;
  metrics::EvalConfig eval_cfg;
  bool exclude_parent_only = false, serial = false;
  auto* evaluate = app.add_subcommand("evaluate", "Compare a machine run with human labels");
  evaluate->add_option("--corpus", corpus_path)->required();
  evaluate->add_option("--codebook", codebook_path)->required();
  evaluate->add_option("--machine", machine_path, "thematic or sentiment run")->required();
  evaluate->add_option("--human", human_path, "human labels CSV or run file")->required();
  evaluate->add_option("--machine-sentiment", machine_sentiment_path, "sentiment run of the same machine");
  evaluate->add_option("--iters", eval_cfg.bootstrap_iters)->capture_default_str();
  evaluate->add_option("--seed", eval_cfg.bootstrap_seed)->capture_default_str();
  evaluate->add_option("--shuffle-repeats", eval_cfg.shuffle_repeats)->capture_default_str();
  evaluate->add_option("--shuffle-seed", eval_cfg.shuffle_seed)->capture_default_str();
  evaluate->add_flag("--exclude-parent-only", exclude_parent_only,
                     "original-level universe without parent-only codes");
  evaluate->add_flag("--serial", serial, "use the serial reference kernels");
  evaluate->add_option("-o,--out", out_path, "report JSON (default stdout)");
  evaluate->add_option("--csv", csv_out, "flat CSV report");

  // report
  std::string labels_path, sentiment_path, out_dir;
  auto* report_cmd = app.add_subcommand("report", "Frequency and sentiment tables");
  report_cmd->add_option("--corpus", corpus_path)->required();
  report_cmd->add_option("--codebook", codebook_path)->required();
  report_cmd->add_option("--labels", labels_path, "human labels CSV or thematic run")->required();
  report_cmd->add_option("--sentiment", sentiment_path, "sentiment run (default: from --labels CSV)");
  report_cmd->add_option("--out-dir", out_dir)->required();

  // repro-check
  std::size_t sample_size = 50;
  int repeats = 2;
  std::uint64_t sample_seed = 1;
  auto* repro = app.add_subcommand("repro-check", "Share of paragraphs with identical repeated annotations");
  repro->add_option("--corpus", corpus_path)->required();
  repro->add_option("--codebook", codebook_path)->required();
  repro->add_option("--sample", sample_size)->capture_default_str();
  repro->add_option("--repeats", repeats)->capture_default_str();
  repro->add_option("--seed", sample_seed)->capture_default_str();
  add_annotator_options(repro, llm_cfg, style, prov);

  // serve
  std::string state_dir, host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "HTTP API over a pipeline output directory");
  serve->add_option("--state-dir", state_dir)->required();
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port)->capture_default_str();

  // run
  std::string config_path, fail_at;
  bool resume = false;
  auto* run = app.add_subcommand("run", "Run the configured pipeline");
  run->add_option("config", config_path)->required();
  run->add_flag("--resume", resume, "skip stages completed by an earlier run");
  run->add_option("--fail-at", fail_at, "simulate a failure before this stage");

  CLI11_PARSE(app, argc, argv);

  try {
    if (ingest->parsed()) {
      const auto corpus = read_corpus(corpus_path, corpus_format);
      const bool as_csv = fs::path(out_path).extension() == ".csv";
      write_or_print(out_path, as_csv ? to_csv(corpus) : to_jsonl(corpus));
      std::cerr << corpus.size() << " paragraphs";
      for (const auto& [role, ids] : group_by_role(corpus)) {
        std::cerr << ", " << to_string(role) << " " << ids.size();
      }
      std::cerr << '\n';
    } else if (check->parsed()) {
      const auto cb = load_codebook(codebook_path);
      std::cout << cb.parents().size() << " parent codes, " << cb.children().size()
                << " child codes\n";
      if (!prompt_csv.empty()) write_file(prompt_csv, codebook_to_prompt_csv(cb));
    } else if (ann_llm->parsed()) {
      finish_annotator_config(llm_cfg, style, prov);
      if (ann_llm->count("--seed")) llm_cfg.seed = llm_seed;
      const auto corpus = read_corpus(corpus_path, corpus_format);
      const auto cb = load_codebook(codebook_path);
      const auto provider = make_provider(prov, cb);
      const auto result = llm::annotate_corpus(*provider, corpus, cb, llm_cfg,
                                               run_id.empty() ? "llm" : run_id);
      save_run(result, out_path);
      std::cerr << result.records.size() << " annotated, " << result.failures.size()
                << " failed\n";
    } else if (ann_lda->parsed()) {
      if (ann_lda->count("--alpha")) fit.alpha = alpha;
      const auto corpus = read_corpus(corpus_path, corpus_format);
      lda::DtmOptions opts;
      opts.min_term_count = min_term_count;
      const auto dtm = lda::build_dtm(corpus, opts);
      std::cerr << dtm.num_docs() << " documents, " << dtm.vocab_size() << " terms, "
                << dtm.total_tokens() << " tokens\n";
      if (!search_k.empty()) {
        lda::SearchConfig search;
        search.fit = fit;
        write_or_print(diagnostics_out, lda::diagnostics_csv(lda::search_k(dtm, search_k, search)));
      }
      const auto model = lda::fit_lda(dtm, fit);
      if (!model_out.empty()) lda::save_model(model, model_out);
      if (!label_map.empty()) {
        if (codebook_path.empty() || out_path.empty()) {
          throw Error(Errc::kInvalidArgument, "--label-map needs --codebook and --out");
        }
        const auto cb = load_codebook(codebook_path);
        save_run(lda::assign_all(model, lda::parse_label_map(read_file(label_map), cb)), out_path);
      } else if (search_k.empty() && model_out.empty()) {
        write_or_print("", lda::labeling_worksheet(model));
      }
    } else if (ann_lex->parsed()) {
      const auto corpus = read_corpus(corpus_path, corpus_format);
      const auto lex = lexicon::load_lexicon_dir(lexicon_dir);
      save_run(lexicon::annotate_corpus(lex, corpus), out_path);
    } else if (lt_export->parsed()) {
      write_or_print(out_path, lda::labeling_worksheet(lda::load_model(model_path), n_words, n_docs));
    } else if (lt_import->parsed()) {
      const auto model = lda::load_model(model_path);
      const auto cb = load_codebook(codebook_path);
      save_run(lda::assign_all(model, lda::parse_label_map(read_file(label_map), cb)), out_path);
    } else if (evaluate->parsed()) {
      eval_cfg.include_parent_only = !exclude_parent_only;
      eval_cfg.exec = serial ? Execution::kSerial : Execution::kParallel;
      const auto corpus = read_corpus(corpus_path, corpus_format);
      const auto cb = load_codebook(codebook_path);
      const auto machine = load_run(machine_path);
      metrics::EvalReport report;
      if (fs::path(human_path).extension() == ".csv") {
        const auto human = load_human_labels(human_path, cb);
        if (machine.kind == RunKind::kSentiment) {
          report = metrics::evaluate_sentiment(corpus, machine, human.sentiment, &human.themes, eval_cfg);
        } else {
          std::optional<AnnotationRun> ms;
          if (!machine_sentiment_path.empty()) ms = load_run(machine_sentiment_path);
          report = metrics::evaluate(corpus, cb, machine, human.themes, ms ? &*ms : nullptr,
                                     ms ? &human.sentiment : nullptr, eval_cfg);
        }
      } else {
        const auto human = load_run(human_path);
        report = machine.kind == RunKind::kSentiment
                     ? metrics::evaluate_sentiment(corpus, machine, human, nullptr, eval_cfg)
                     : metrics::evaluate(corpus, cb, machine, human, nullptr, nullptr, eval_cfg);
      }
      write_or_print(out_path, metrics::to_json(report).dump(2) + "\n");
      if (!csv_out.empty()) write_file(csv_out, metrics::to_csv(report));
    } else if (report_cmd->parsed()) {
      const auto corpus = read_corpus(corpus_path, corpus_format);
      const auto cb = load_codebook(codebook_path);
      AnnotationRun themes, sentiment;
      if (fs::path(labels_path).extension() == ".csv") {
        auto human = load_human_labels(labels_path, cb);
        themes = std::move(human.themes);
        sentiment = std::move(human.sentiment);
      } else {
        themes = load_run(labels_path);
      }
      if (!sentiment_path.empty()) sentiment = load_run(sentiment_path);
      const auto lc = labeled_from_run(themes, corpus);
      auto freq = report::frequency_by_role(lc, cb, corpus);
      freq.insert(freq.begin(), report::frequency_report(lc, cb));
      write_file(fs::path(out_dir) / "frequency.csv", report::frequency_csv(freq));
      if (!sentiment.records.empty()) {
        const auto s = sentiments_in_order(sentiment, corpus);
        auto tables = report::sentiment_by_role(s, lc, corpus);
        tables.insert(tables.begin(), report::sentiment_report(s, lc));
        write_file(fs::path(out_dir) / "sentiment.csv", report::sentiment_csv(tables));
      }
    } else if (repro->parsed()) {
      finish_annotator_config(llm_cfg, style, prov);
      const auto corpus = read_corpus(corpus_path, corpus_format);
      const auto cb = load_codebook(codebook_path);
      const auto provider = make_provider(prov, cb);
      const double share = llm::reproducibility_check(*provider, corpus, cb, llm_cfg, sample_size,
                                                      repeats, sample_seed);
      std::cout << "reproducible: " << share << '\n';
    } else if (serve->parsed()) {
      Service service(state_dir);
      const int bound = service.bind(host, port);
      std::cerr << "listening on http://" << host << ":" << bound << '\n';
      service.listen_after_bind();
    } else if (run->parsed()) {
      const auto config = PipelineConfig::load(config_path);
      PipelineOptions options;
      options.resume = resume;
      if (!fail_at.empty()) options.fail_at = fail_at;
      const auto result = run_pipeline(config, options);
      for (const auto& s : result.skipped) std::cerr << "skipped " << s << " (checkpoint)\n";
      for (const auto& s : result.ran) std::cerr << "ran " << s << '\n';
      std::cerr << "manifest: " << result.manifest.string() << '\n';
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
