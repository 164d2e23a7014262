// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

#include "voicelens/annotation.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>

#include "voicelens/csv.hpp"
#include "voicelens/error.hpp"
#include "voicelens/text.hpp"

namespace voicelens {

using ojson = nlohmann::ordered_json;

std::string_view to_string(Sentiment s) {
  switch (s) {
    case Sentiment::kPositive: return "Positive";
    case Sentiment::kNegative: return "Negative";
    case Sentiment::kNeutral: return "Neutral";
  }
  return "Neutral";
}

std::optional<Sentiment> parse_sentiment(std::string_view text) {
  const auto t = to_lower_ascii(trim(text));
  if (t == "positive") return Sentiment::kPositive;
  if (t == "negative") return Sentiment::kNegative;
  if (t == "neutral") return Sentiment::kNeutral;
  return std::nullopt;
}

std::string_view to_string(AnnotationSource s) {
  switch (s) {
    case AnnotationSource::kHuman: return "human";
    case AnnotationSource::kLlm: return "llm";
    case AnnotationSource::kLda: return "lda";
    case AnnotationSource::kLexicon: return "lexicon";
  }
  return "human";
}

std::optional<AnnotationSource> parse_source(std::string_view text) {
  const auto t = to_lower_ascii(trim(text));
  if (t == "human") return AnnotationSource::kHuman;
  if (t == "llm") return AnnotationSource::kLlm;
  if (t == "lda") return AnnotationSource::kLda;
  if (t == "lexicon") return AnnotationSource::kLexicon;
  return std::nullopt;
}

std::string_view to_string(RunKind k) { return k == RunKind::kThematic ? "thematic" : "sentiment"; }

std::vector<CodeRef> compact_labels(std::vector<CodeRef> labels) {
  std::vector<CodeRef> out;
  for (auto& l : labels) {
    if (out.size() == kMaxThemeLabels) break;
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(std::move(l));
  }
  return out;
}

const AnnotationRecord* AnnotationRun::find(std::string_view paragraph_id) const {
  for (const auto& r : records) {
    if (r.paragraph_id == paragraph_id) return &r;
  }
  return nullptr;
}

std::vector<ThemeLabelSet> AnnotationRun::theme_sets() const {
  std::vector<ThemeLabelSet> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    out.push_back({r.paragraph_id, r.labels, r.reasoning, source, run_id});
  }
  return out;
}

std::vector<SentimentAnnotation> AnnotationRun::sentiments() const {
  std::vector<SentimentAnnotation> out;
  for (const auto& r : records) {
    if (r.sentiment) out.push_back({r.paragraph_id, *r.sentiment, r.reasoning, source, run_id});
  }
  return out;
}

bool AnnotationRun::same_content(const AnnotationRun& other) const {
  return run_id == other.run_id && source == other.source && kind == other.kind &&
         config == other.config && records == other.records && failures == other.failures;
}

ojson labels_to_json(const std::vector<CodeRef>& labels) {
  ojson arr = ojson::array();
  for (const auto& l : labels) {
    ojson o;
    o["level"] = to_string(l.level);
    o["label"] = l.label;
    arr.push_back(std::move(o));
  }
  return arr;
}

std::vector<CodeRef> labels_from_json(const nlohmann::json& j) {
  std::vector<CodeRef> out;
  if (!j.is_array()) throw Error(Errc::kParseError, "labels must be an array");
  for (const auto& o : j) {
    if (!o.is_object() || !o.contains("level") || !o.contains("label") ||
        !o["level"].is_string() || !o["label"].is_string()) {
      throw Error(Errc::kParseError, "label entries need string 'level' and 'label'");
    }
    const auto level = parse_code_level(o["level"].get<std::string>());
    if (!level) throw Error(Errc::kParseError, "bad label level " + o["level"].dump());
    out.push_back({*level, o["label"].get<std::string>()});
  }
  return out;
}

std::string run_to_jsonl(const AnnotationRun& run) {
  ojson header;
  header["type"] = "run_header";
  header["run_id"] = run.run_id;
  header["source"] = to_string(run.source);
  header["kind"] = to_string(run.kind);
  header["config"] = run.config;
  header["started_at"] = run.started_at;
  header["finished_at"] = run.finished_at;
  ojson failures = ojson::array();
  for (const auto& f : run.failures) {
    failures.push_back(
        ojson{{"paragraph_id", f.paragraph_id}, {"error", f.error}, {"raw_text", f.raw_text}});
  }
  header["failures"] = std::move(failures);
  std::string out = header.dump() + "\n";
  for (const auto& r : run.records) {
    ojson o;
    o["paragraph_id"] = r.paragraph_id;
    o["labels"] = labels_to_json(r.labels);
    if (r.sentiment) o["sentiment"] = to_string(*r.sentiment);
    o["reasoning"] = r.reasoning;
    o["raw_text"] = r.raw_text;
    if (!r.unmatched.empty()) o["unmatched"] = r.unmatched;
    out += o.dump();
    out.push_back('\n');
  }
  return out;
}

AnnotationRun run_from_jsonl(std::string_view text) {
  AnnotationRun run;
  bool have_header = false;
  const auto lines = split(text, '\n');
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const auto line = trim(lines[ln]);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(ln + 1);
    ojson o;
    try {
      o = ojson::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::kParseError, where + ": " + e.what());
    }
    try {
      if (!have_header) {
        if (o.value("type", "") != "run_header") {
          throw Error(Errc::kParseError, where + ": expected run_header first");
        }
        run.run_id = o.at("run_id").get<std::string>();
        const auto src = parse_source(o.at("source").get<std::string>());
        if (!src) throw Error(Errc::kParseError, where + ": bad source");
        run.source = *src;
        run.kind = o.at("kind").get<std::string>() == "sentiment" ? RunKind::kSentiment
                                                                  : RunKind::kThematic;
        run.config = o.value("config", ojson::object());
        run.started_at = o.value("started_at", "");
        run.finished_at = o.value("finished_at", "");
        for (const auto& f : o.value("failures", ojson::array())) {
          run.failures.push_back({f.at("paragraph_id").get<std::string>(),
                                  f.value("error", ""), f.value("raw_text", "")});
        }
        have_header = true;
        continue;
      }
      AnnotationRecord r;
      r.paragraph_id = o.at("paragraph_id").get<std::string>();
      r.labels = labels_from_json(o.at("labels"));
      if (o.contains("sentiment") && !o["sentiment"].is_null()) {
        const auto s = parse_sentiment(o["sentiment"].get<std::string>());
        if (!s) throw Error(Errc::kParseError, where + ": bad sentiment");
        r.sentiment = *s;
      }
      r.reasoning = o.value("reasoning", "");
      r.raw_text = o.value("raw_text", "");
      if (o.contains("unmatched")) r.unmatched = o["unmatched"].get<std::vector<std::string>>();
      run.records.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::kParseError, where + ": " + e.what());
    }
  }
  if (!have_header) throw Error(Errc::kParseError, "annotation run has no header line");
  return run;
}

void save_run(const AnnotationRun& run, const std::filesystem::path& path) {
  write_file(path, run_to_jsonl(run));
}

AnnotationRun load_run(const std::filesystem::path& path) {
  return run_from_jsonl(read_file(path));
}

namespace {

CodeRef resolve_human_label(std::string_view cell, const Codebook& cb, int line) {
  const auto t = trim(cell);
  const auto colon = t.find(':');
  if (colon != std::string_view::npos) {
    if (const auto level = parse_code_level(t.substr(0, colon))) {
      const auto label = trim(t.substr(colon + 1));
      auto m = *level == CodeLevel::kChild ? cb.match_child(label) : cb.match_parent(label);
      if (m) return *m;
      throw Error(Errc::kUnknownLabel, "line " + std::to_string(line) + ": " + std::string(t));
    }
  }
  if (auto m = cb.match_any(t)) return *m;
  throw Error(Errc::kUnknownLabel, "line " + std::to_string(line) + ": " + std::string(t));
}

}  // namespace

HumanLabels parse_human_labels(std::string_view csv_text, const Codebook& cb,
                               const std::string& run_id) {
  const auto records = csv::parse(csv_text);
  if (records.empty()) throw Error(Errc::kMissingColumn, "paragraph_id");
  const auto& header = records.front().fields;
  const int id_col = csv::column_index(header, "paragraph_id");
  if (id_col < 0) throw Error(Errc::kMissingColumn, "paragraph_id");
  int theme_cols[3];
  for (int k = 0; k < 3; ++k) {
    theme_cols[k] = csv::column_index(header, "theme_" + std::to_string(k + 1));
  }
  const int sent_col = csv::column_index(header, "sentiment");

  HumanLabels out;
  out.themes.run_id = run_id;
  out.themes.source = AnnotationSource::kHuman;
  out.themes.kind = RunKind::kThematic;
  out.sentiment.run_id = run_id;
  out.sentiment.source = AnnotationSource::kHuman;
  out.sentiment.kind = RunKind::kSentiment;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != header.size()) {
      throw Error(Errc::kParseError, "line " + std::to_string(rec.line) + ": field count");
    }
    AnnotationRecord themes;
    themes.paragraph_id = std::string(trim(rec.fields[id_col]));
    std::vector<CodeRef> labels;
    for (int col : theme_cols) {
      if (col < 0 || trim(rec.fields[col]).empty()) continue;
      labels.push_back(resolve_human_label(rec.fields[col], cb, rec.line));
    }
    themes.labels = compact_labels(std::move(labels));
    if (sent_col >= 0 && !trim(rec.fields[sent_col]).empty()) {
      const auto s = parse_sentiment(rec.fields[sent_col]);
      if (!s) throw Error(Errc::kUnknownSentiment, rec.fields[sent_col]);
      AnnotationRecord srec;
      srec.paragraph_id = themes.paragraph_id;
      srec.sentiment = *s;
      out.sentiment.records.push_back(std::move(srec));
    }
    out.themes.records.push_back(std::move(themes));
  }
  return out;
}

HumanLabels load_human_labels(const std::filesystem::path& path, const Codebook& cb,
                              const std::string& run_id) {
  return parse_human_labels(read_file(path), cb, run_id);
}

std::string human_labels_to_csv(const AnnotationRun& themes, const AnnotationRun* sentiment,
                                const Corpus& corpus) {
  std::string out = csv::format_row({"paragraph_id", "theme_1", "theme_2", "theme_3", "sentiment"});
  for (const auto& p : corpus.paragraphs()) {
    std::vector<std::string> row = {p.id, "", "", "", ""};
    if (const auto* r = themes.find(p.id)) {
      for (std::size_t i = 0; i < r->labels.size() && i < 3; ++i) {
        row[1 + i] = to_string(r->labels[i]);
      }
    }
    if (sentiment) {
      if (const auto* s = sentiment->find(p.id); s && s->sentiment) {
        row[4] = std::string(to_string(*s->sentiment));
      }
    }
    out += csv::format_row(row);
  }
  return out;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace voicelens
