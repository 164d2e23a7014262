// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

#include "voicelens/lexicon.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "voicelens/error.hpp"

namespace voicelens::lexicon {
namespace {

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;
    fn(line, line_no);
  }
}

std::unordered_map<std::string, double> parse_pairs(std::string_view text, const char* what,
                                                    const WarningSink& warn) {
  std::unordered_map<std::string, double> out;
  for_each_line(text, [&](std::string_view line, std::size_t n) {
    const auto where = std::string(what) + " line " + std::to_string(n);
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) throw Error(Errc::kParseError, where + ": expected token<TAB>value");
    const auto token = to_lower_ascii(trim(line.substr(0, tab)));
    auto number = trim(line.substr(tab + 1));
    if (const auto tab2 = number.find('\t'); tab2 != std::string_view::npos) {
      number = trim(number.substr(0, tab2));
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != number.data() + number.size()) {
      throw Error(Errc::kParseError, where + ": malformed entry");
    }
    if (out.count(token)) warn(where + ": duplicate token '" + token + "' overrides earlier value");
    out[token] = value;
  });
  return out;
}

}  // namespace

SentimentLexicon parse_lexicon(std::string_view valence_tsv, std::string_view booster_tsv,
                               std::string_view negator_list, const WarningSink& warn) {
  SentimentLexicon lex;
  lex.valence = parse_pairs(valence_tsv, "valence", warn);
  lex.boosters = parse_pairs(booster_tsv, "booster", warn);
  for_each_line(negator_list, [&](std::string_view line, std::size_t n) {
    const auto token = to_lower_ascii(trim(line));
    if (token.find_first_of(" \t") != std::string::npos) {
      throw Error(Errc::kParseError, "negator line " + std::to_string(n) + ": one token per line");
    }
    if (!lex.negators.insert(token).second) {
      warn("negator line " + std::to_string(n) + ": duplicate token '" + token + "'");
    }
  });
  return lex;
}

SentimentLexicon load_lexicon(const std::filesystem::path& valence_path,
                              const std::filesystem::path& booster_path,
                              const std::filesystem::path& negator_path, const WarningSink& warn) {
  return parse_lexicon(read_file(valence_path), read_file(booster_path), read_file(negator_path),
                       warn);
}

SentimentLexicon load_lexicon_dir(const std::filesystem::path& dir, const WarningSink& warn) {
  return load_lexicon(dir / "valence.tsv", dir / "boosters.tsv", dir / "negators.txt", warn);
}

double normalize(double raw_sum) {
  return raw_sum / std::sqrt(raw_sum * raw_sum + kNormalizationAlpha);
}

bool is_negator(const SentimentLexicon& lex, std::string_view token) {
  if (lex.negators.count(std::string(token))) return true;
  return token.size() > 3 && token.substr(token.size() - 3) == "n't";
}

ScoredSentiment score_tokens(const SentimentLexicon& lex, const std::vector<std::string>& tokens) {
  static constexpr double kDamping[kWindow] = {1.0, 0.95, 0.9};
  ScoredSentiment out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto hit = lex.valence.find(tokens[i]);
    if (hit == lex.valence.end()) continue;
    double v = hit->second;
    const std::size_t lo = i >= kWindow ? i - kWindow : 0;
    bool negated = false;
    for (std::size_t j = lo; j < i; ++j) negated = negated || is_negator(lex, tokens[j]);
    if (negated) v *= kNegationScalar;
    for (std::size_t j = lo; j < i; ++j) {
      const auto b = lex.boosters.find(tokens[j]);
      if (b == lex.boosters.end()) continue;
      const double sign = v < 0.0 ? -1.0 : 1.0;
      v += sign * b->second * kDamping[i - j - 1];
    }
    out.raw_sum += v;
    ++out.hit_count;
  }
  out.compound = out.hit_count > 0 ? normalize(out.raw_sum) : 0.0;
  return out;
}

ScoredSentiment score_paragraph(const SentimentLexicon& lex, std::string_view text) {
  return score_tokens(lex, tokenize_words(text));
}

Sentiment classify(double compound) {
  if (compound >= kPositiveCutoff) return Sentiment::kPositive;
  if (compound <= kNegativeCutoff) return Sentiment::kNegative;
  return Sentiment::kNeutral;
}

std::vector<ScoredSentiment> score_corpus(const SentimentLexicon& lex, const Corpus& corpus,
                                          Execution exec) {
  const auto& paras = corpus.paragraphs();
  const auto n = static_cast<std::ptrdiff_t>(paras.size());
  std::vector<ScoredSentiment> out(paras.size());
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = score_paragraph(lex, paras[i].text);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = score_paragraph(lex, paras[i].text);
  }
  return out;
}

AnnotationRun annotate_corpus(const SentimentLexicon& lex, const Corpus& corpus,
                              const std::string& run_id, Execution exec) {
  AnnotationRun run;
  run.run_id = run_id;
  run.source = AnnotationSource::kLexicon;
  run.kind = RunKind::kSentiment;
  run.config["alpha"] = kNormalizationAlpha;
  run.config["negation_scalar"] = kNegationScalar;
  run.config["positive_cutoff"] = kPositiveCutoff;
  run.config["negative_cutoff"] = kNegativeCutoff;
  run.config["valence_entries"] = lex.valence.size();
  const auto scores = score_corpus(lex, corpus, exec);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    AnnotationRecord rec;
    rec.paragraph_id = corpus.paragraphs()[i].id;
    rec.sentiment = classify(scores[i].compound);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "compound=%.4f raw_sum=%.4f hits=%d", scores[i].compound,
                  scores[i].raw_sum, scores[i].hit_count);
    rec.reasoning = buf;
    run.records.push_back(std::move(rec));
  }
  return run;
}

}  // namespace voicelens::lexicon
