// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

#include "voicelens/llm_annotator.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <numeric>
#include <random>
#include <regex>
#include <set>
#include <thread>

#include "voicelens/error.hpp"

namespace voicelens::llm {

using ojson = nlohmann::ordered_json;

void AnnotatorConfig::validate() const {
  if (!(temperature >= 0.0 && temperature <= 1.0)) {
    throw Error(Errc::kInvalidArgument, "temperature must be in [0,1]");
  }
  if (max_retries < 0) throw Error(Errc::kInvalidArgument, "max_retries must be >= 0");
  if (max_in_flight < 1) throw Error(Errc::kInvalidArgument, "max_in_flight must be >= 1");
}

ojson AnnotatorConfig::to_json() const {
  ojson j;
  j["provider_id"] = provider_id;
  j["model_name"] = model_name;
  j["temperature"] = temperature;
  j["style"] = to_string(style);
  if (seed) {
    j["seed"] = *seed;
  } else {
    j["seed"] = nullptr;
  }
  j["max_retries"] = max_retries;
  j["max_in_flight"] = max_in_flight;
  return j;
}

AnnotatorConfig AnnotatorConfig::from_json(const nlohmann::json& j) {
  AnnotatorConfig c;
  c.provider_id = j.value("provider_id", c.provider_id);
  c.model_name = j.value("model_name", c.model_name);
  c.temperature = j.value("temperature", c.temperature);
  if (j.contains("style")) {
    const auto s = parse_prompt_style(j["style"].get<std::string>());
    if (!s) throw Error(Errc::kInvalidArgument, "unknown prompt style");
    c.style = *s;
  }
  if (j.contains("seed") && !j["seed"].is_null()) c.seed = j["seed"].get<std::uint64_t>();
  c.max_retries = j.value("max_retries", c.max_retries);
  c.max_in_flight = j.value("max_in_flight", c.max_in_flight);
  return c;
}

// ---------------------------------------------------------------------------
// Response parsing

namespace {

// End index (inclusive) of the balanced object starting at text[start], or npos.
std::size_t matching_brace(std::string_view text, std::size_t start) {
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = start; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{') {
      ++depth;
    } else if (c == '}') {
      if (--depth == 0) return i;
    }
  }
  return std::string_view::npos;
}

std::optional<nlohmann::json> first_object_in(std::string_view text) {
  for (std::size_t pos = text.find('{'); pos != std::string_view::npos;
       pos = text.find('{', pos + 1)) {
    const auto end = matching_brace(text, pos);
    if (end == std::string_view::npos) continue;
    auto parsed = nlohmann::json::parse(text.substr(pos, end - pos + 1), nullptr, false);
    if (!parsed.is_discarded() && parsed.is_object()) return parsed;
  }
  return std::nullopt;
}

std::string key_of(std::string_view key) {
  std::string out;
  for (char c : key) {
    if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) out.push_back(c);
    if (c >= 'A' && c <= 'Z') out.push_back(static_cast<char>(c - 'A' + 'a'));
  }
  return out;
}

bool is_none(std::string_view v) {
  const auto n = normalize_label(v);
  return n.empty() || n == "none" || n == "null" || n == "n/a" || n == "na";
}

struct Fields {
  std::map<std::string, std::string> values;  // normalized key -> non-empty value

  std::optional<std::string> get(const std::string& key) const {
    const auto it = values.find(key);
    if (it == values.end()) return std::nullopt;
    return it->second;
  }
  bool has(const std::string& key) const { return values.count(key) > 0; }
};

Fields collect(const nlohmann::json& obj) {
  Fields f;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!it->is_string()) continue;
    const auto v = it->get<std::string>();
    f.values[key_of(it.key())] = std::string(trim(v));
  }
  return f;
}

}  // namespace

std::optional<nlohmann::json> extract_json_object(std::string_view raw) {
  static const std::regex fence(R"(```(?:json|JSON)?\s*([\s\S]*?)```)");
  const std::string text(raw);
  for (std::sregex_iterator it(text.begin(), text.end(), fence), end; it != end; ++it) {
    if (auto obj = first_object_in((*it)[1].str())) return obj;
  }
  return first_object_in(raw);
}

ParsedThemes parse_thematic_response(std::string_view raw, const Codebook& cb,
                                     const WarningSink& warn) {
  const auto obj = extract_json_object(raw);
  if (!obj) throw Error(Errc::kNoJsonFound, "no JSON object in thematic response");
  const Fields f = collect(*obj);

  ParsedThemes out;
  out.reasoning = f.get("reasoning").value_or("");
  std::vector<CodeRef> labels;
  int claimed = 0;
  const auto unmatched = [&](const std::string& value) {
    warn("unmatched label '" + value + "' dropped");
    out.unmatched.push_back(value);
  };
  const auto present = [&](const std::optional<std::string>& v) { return v && !is_none(*v); };

  for (int i = 1; i <= static_cast<int>(kMaxThemeLabels); ++i) {
    const auto parent = f.get("parent" + std::to_string(i));
    const auto child = f.get("child" + std::to_string(i));
    const auto theme = f.get("theme" + std::to_string(i));
    if (present(child)) {
      ++claimed;
      if (auto m = cb.match_child(*child)) {
        labels.push_back(*m);
        continue;
      }
      unmatched(*child);
      // Fall through to the parent: the model named a valid broad theme even
      // if its child label is unusable.
    }
    if (present(parent)) {
      ++claimed;
      if (auto m = cb.match_parent(*parent)) {
        labels.push_back(*m);
      } else {
        unmatched(*parent);
      }
    }
    if (present(theme)) {
      ++claimed;
      if (auto m = cb.match_any(*theme)) {
        labels.push_back(*m);
      } else {
        unmatched(*theme);
      }
    }
  }
  out.labels = compact_labels(std::move(labels));
  if (out.labels.empty() && claimed > 0) {
    throw Error(Errc::kAllLabelsUnmatched, join(out.unmatched, "; "));
  }
  return out;
}

ParsedSentiment parse_sentiment_response(std::string_view raw) {
  const auto obj = extract_json_object(raw);
  if (!obj) throw Error(Errc::kNoJsonFound, "no JSON object in sentiment response");
  const Fields f = collect(*obj);
  const auto value = f.get("sentiment");
  if (!value) throw Error(Errc::kUnknownSentiment, "(missing)");
  const auto s = parse_sentiment(*value);
  if (!s) throw Error(Errc::kUnknownSentiment, *value);
  return {*s, f.get("reasoning").value_or("")};
}

// ---------------------------------------------------------------------------
// Providers

RateLimitedProvider::RateLimitedProvider(std::shared_ptr<LlmProvider> inner, int max_in_flight,
                                         std::chrono::milliseconds min_interval)
    : inner_(std::move(inner)), max_in_flight_(std::max(1, max_in_flight)),
      min_interval_(min_interval) {}

LlmResponse RateLimitedProvider::complete(const LlmRequest& request) {
  {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return in_flight_ < max_in_flight_; });
    ++in_flight_;
    const auto now = std::chrono::steady_clock::now();
    auto start = now;
    if (last_start_.time_since_epoch().count() != 0) {
      start = std::max(now, last_start_ + min_interval_);
    }
    last_start_ = start;
    if (start > now) {
      lock.unlock();
      std::this_thread::sleep_until(start);
    }
  }
  struct Release {
    RateLimitedProvider* self;
    ~Release() {
      {
        std::lock_guard lock(self->mu_);
        --self->in_flight_;
      }
      self->cv_.notify_one();
    }
  } release{this};
  return inner_->complete(request);
}

int count_keyword(std::string_view haystack, std::string_view needle) {
  const auto hay = to_lower_ascii(haystack);
  const auto ndl = to_lower_ascii(trim(needle));
  if (ndl.empty()) return 0;
  const auto word = [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return (u >= 'a' && u <= 'z') || (u >= '0' && u <= '9') || u >= 0x80;
  };
  int count = 0;
  std::size_t pos = 0;
  while ((pos = hay.find(ndl, pos)) != std::string::npos) {
    const bool left_ok = pos == 0 || !word(hay[pos - 1]);
    const std::size_t after = pos + ndl.size();
    const bool right_ok = after >= hay.size() || !word(hay[after]);
    if (left_ok && right_ok) {
      ++count;
      pos = after;
    } else {
      ++pos;
    }
  }
  return count;
}

std::string KeywordMockProvider::thematic_reply(std::string_view paragraph_text) const {
  std::vector<std::pair<int, std::size_t>> scored;  // (hits, child index)
  const auto& children = cb_.children();
  for (std::size_t i = 0; i < children.size(); ++i) {
    int hits = 0;
    for (const auto& kw : children[i].keywords) hits += count_keyword(paragraph_text, kw);
    if (hits > 0) scored.emplace_back(hits, i);
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  ojson j;
  std::vector<std::string> why;
  for (std::size_t slot = 0; slot < kMaxThemeLabels; ++slot) {
    const auto n = std::to_string(slot + 1);
    if (slot < scored.size()) {
      const auto& c = children[scored[slot].second];
      j["Parent " + n] = c.parent_label;
      j["Child " + n] = c.label;
      why.push_back(c.label + " (" + std::to_string(scored[slot].first) + " keyword hits)");
    } else {
      j["Parent " + n] = "None";
      j["Child " + n] = "None";
    }
  }
  j["Reasoning"] = why.empty() ? std::string("No codebook keywords found.")
                               : "Keyword matches: " + join(why, ", ") + ".";
  return j.dump();
}

std::string KeywordMockProvider::sentiment_reply(std::string_view paragraph_text) {
  static const std::set<std::string, std::less<>> kPositive = {
      "good",     "great",   "improve", "improved", "improvement", "benefit",
      "success",  "support", "effective", "positive", "progress",   "better",
      "excellent", "helpful", "appreciate", "enhance", "enhanced",   "equitable"};
  static const std::set<std::string, std::less<>> kNegative = {
      "bad",     "lack",     "problem", "problems", "challenge", "challenges",
      "barrier", "barriers", "fail",    "failed",   "poor",      "inequitable",
      "inadequate", "worse", "difficult", "concern", "issue",    "issues"};
  int score = 0;
  for (const auto& tok : tokenize_words(paragraph_text)) {
    if (kPositive.count(tok)) ++score;
    if (kNegative.count(tok)) --score;
  }
  const auto label = score > 0 ? "Positive" : score < 0 ? "Negative" : "Neutral";
  ojson j;
  j["Sentiment"] = label;
  j["Reasoning"] = "Word-list score " + std::to_string(score) + ".";
  return j.dump();
}

LlmResponse KeywordMockProvider::complete(const LlmRequest& request) {
  PromptStyle style = PromptStyle::kCoTThematic;
  const auto text = paragraph_from_prompt(request.prompt_text, &style);
  if (!text) return {"I could not find a paragraph to analyze."};
  return {style == PromptStyle::kSentiment ? sentiment_reply(*text) : thematic_reply(*text)};
}

std::unique_ptr<LlmProvider> mock_keyword_annotator(const Codebook& cb) {
  return std::make_unique<KeywordMockProvider>(cb);
}

// ---------------------------------------------------------------------------
// Annotation

namespace {

struct Outcome {
  std::optional<AnnotationRecord> record;
  Errc code = Errc::kProviderError;
  std::string error;
  std::string raw_text;
};

Outcome try_annotate(LlmProvider& provider, const Paragraph& p, const Codebook& cb,
                     const AnnotatorConfig& config, const WarningSink& warn) {
  LlmRequest req{config.model_name, config.temperature,
                 config.style == PromptStyle::kSentiment
                     ? build_sentiment_prompt(p)
                     : build_thematic_prompt(cb, p, config.style)};
  Outcome out;
  for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
    try {
      out.raw_text.clear();
      out.raw_text = provider.complete(req).text;
      AnnotationRecord rec;
      rec.paragraph_id = p.id;
      rec.raw_text = out.raw_text;
      if (config.style == PromptStyle::kSentiment) {
        auto parsed = parse_sentiment_response(out.raw_text);
        rec.sentiment = parsed.label;
        rec.reasoning = std::move(parsed.reasoning);
      } else {
        auto parsed = parse_thematic_response(out.raw_text, cb, warn);
        rec.labels = std::move(parsed.labels);
        rec.reasoning = std::move(parsed.reasoning);
        rec.unmatched = std::move(parsed.unmatched);
      }
      out.record = std::move(rec);
      return out;
    } catch (const Error& e) {
      if (e.code() == Errc::kProviderUnavailable) throw;
      out.code = e.code();
      out.error = e.what();
    } catch (const std::exception& e) {
      out.code = Errc::kProviderError;
      out.error = e.what();
    }
  }
  return out;
}

}  // namespace

AnnotationRecord annotate_paragraph(LlmProvider& provider, const Paragraph& p,
                                    const Codebook& cb, const AnnotatorConfig& config,
                                    const WarningSink& warn) {
  auto out = try_annotate(provider, p, cb, config, warn);
  if (!out.record) throw Error(out.code, p.id + ": " + out.error);
  return std::move(*out.record);
}

AnnotationRun annotate_corpus(LlmProvider& provider, const Corpus& corpus, const Codebook& cb,
                              const AnnotatorConfig& config, std::string run_id,
                              const WarningSink& warn) {
  config.validate();
  AnnotationRun run;
  run.run_id = std::move(run_id);
  run.source = AnnotationSource::kLlm;
  run.kind = config.style == PromptStyle::kSentiment ? RunKind::kSentiment : RunKind::kThematic;
  run.config = config.to_json();
  run.started_at = utc_timestamp();

  const auto& paragraphs = corpus.paragraphs();
  std::vector<Outcome> outcomes(paragraphs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::mutex err_mu;
  std::exception_ptr fatal;
  // Warnings from worker threads are funneled through one lock.
  const WarningSink locked_warn = [&](const std::string& msg) {
    std::lock_guard lock(err_mu);
    warn(msg);
  };

  const auto worker = [&] {
    while (!abort.load()) {
      const auto i = next.fetch_add(1);
      if (i >= paragraphs.size()) return;
      try {
        outcomes[i] = try_annotate(provider, paragraphs[i], cb, config, locked_warn);
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!fatal) fatal = std::current_exception();
        abort = true;
      }
    }
  };

  const auto workers = std::max<std::size_t>(
      1, std::min<std::size_t>(static_cast<std::size_t>(config.max_in_flight), paragraphs.size()));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  if (fatal) std::rethrow_exception(fatal);

  for (std::size_t i = 0; i < paragraphs.size(); ++i) {
    auto& o = outcomes[i];
    if (o.record) {
      run.records.push_back(std::move(*o.record));
    } else {
      run.failures.push_back({paragraphs[i].id, o.error, o.raw_text});
    }
  }
  run.finished_at = utc_timestamp();
  return run;
}

double reproducibility_check(LlmProvider& provider, const Corpus& corpus, const Codebook& cb,
                             const AnnotatorConfig& config, std::size_t sample_size, int repeats,
                             std::uint64_t rng_seed, const WarningSink& warn) {
  config.validate();
  if (sample_size == 0 || sample_size > corpus.size()) {
    throw Error(Errc::kInvalidArgument, "sample_size must be in [1, corpus size]");
  }
  if (repeats < 2) throw Error(Errc::kInvalidArgument, "repeats must be >= 2");

  std::vector<std::size_t> all(corpus.size());
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::size_t> sample;
  std::mt19937_64 rng(rng_seed);
  std::sample(all.begin(), all.end(), std::back_inserter(sample), sample_size, rng);

  std::size_t stable = 0;
  for (const auto idx : sample) {
    const auto& p = corpus.paragraphs()[idx];
    std::optional<std::vector<CodeRef>> first_labels;
    std::optional<Sentiment> first_sentiment;
    bool same = true;
    for (int r = 0; r < repeats; ++r) {
      auto out = try_annotate(provider, p, cb, config, warn);
      if (!out.record) {
        same = false;
        continue;
      }
      auto labels = out.record->labels;
      std::sort(labels.begin(), labels.end());
      if (r == 0) {
        first_labels = labels;
        first_sentiment = out.record->sentiment;
      } else if (!first_labels || labels != *first_labels ||
                 out.record->sentiment != first_sentiment) {
        same = false;
      }
    }
    if (same) ++stable;
  }
  return static_cast<double>(stable) / static_cast<double>(sample.size());
}

}  // namespace voicelens::llm
