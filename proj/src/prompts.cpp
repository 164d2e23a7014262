// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

#include "voicelens/llm_annotator.hpp"

namespace voicelens::llm {

namespace {

constexpr std::string_view kCoTThematic =
    R"(Task: As a policy researcher, you’ve been provided with a paragraph extracted from an interview with an education policy stakeholder. Utilize the provided Codebook (in CSV format) to code the paragraph. The Codebook comprises four columns: ‘Parent’, ‘Child’, ‘Child_description’, and ‘Key words’.

Steps:

1. Identify Salient Themes:
- Understand the paragraph’s content within the context of the Washington State K-12 public school system.
- Refer to the ‘Parent’ column in the Codebook for broader thematic categories.
- Pinpoint up to three salient themes from these ‘Parent’ categories.
- These themes should highlight the most significant ideas in the paragraph.
- Label the paragraph with the chosen ‘Parent’ themes.

2. Dive into Child Themes:

- The ‘Child’ column in the Codebook lists detailed thematic subcategories, which fall under the broader ‘Parent’ categories.
- The ‘Child_description’ elaborates on the ‘Child’ categories, and the ‘Key words’ column lists pertinent terms for each ‘Child’ category.

3. Associate with Child Categories:

- Revisit the paragraph, keeping the Washington State K-12 public school system context in mind.
- For each previously identified ‘Parent’ theme, pinpoint the appropriate ‘Child’ subcategories from the Codebook. The ‘Child_description’ and ‘Key words’ columns can aid your decision.
- Ensure the ‘Child’ categories align with the paragraph’s content. If there’s no fit or you’re uncertain, label it as ‘None’.
- From your identified ‘Parent’ and ‘Child’ pairs, pick the top three pairs that encapsulate the paragraph’s central ideas.
- Label the paragraph with these three ‘Parent’ and corresponding ‘Child’ pairs.

Codebook:
{codebook}

Paragraph for Analysis:
[[[TEXTGOHERE]]]

Response Format:
Frame your answer as a JSON object containing the keys: ‘Parent 1’, ‘Child 1’, ‘Parent 2’, ‘Child 2’, ‘Parent 3’, ‘Child 3’, and ‘Reasoning’.
)";

// Single-instruction variant: same context and response keys, no step
// decomposition.
constexpr std::string_view kZeroShotThematic =
    R"(Task: As a policy researcher, you’ve been provided with a paragraph extracted from an interview with an education policy stakeholder. Utilize the provided Codebook (in CSV format) to code the paragraph. The Codebook comprises four columns: ‘Parent’, ‘Child’, ‘Child_description’, and ‘Key words’.

Considering the context of the Washington State K-12 public school system, use the Codebook to label up to three ‘Child’ and/or ‘Parent’ codes for the paragraph. If no ‘Child’ code fits, label only the ‘Parent’ code and set the ‘Child’ to ‘None’.

Codebook:
{codebook}

Paragraph for Analysis:
[[[TEXTGOHERE]]]

Response Format:
Frame your answer as a JSON object containing the keys: ‘Parent 1’, ‘Child 1’, ‘Parent 2’, ‘Child 2’, ‘Parent 3’, ‘Child 3’, and ‘Reasoning’.
)";

constexpr std::string_view kSentiment =
    R"(Act as a policy researcher, you will classify the sentiment in the interviews of educational policy stakeholders as: “Positive”, “Negative”, or “Neutral”. Here is a statement from a policy stakeholder: 

[TextGoHere]

To warrant “Positive” sentiment, the statement has to: (1) include the interviewee’s satisfaction about an educational policy (policies) and program(s), or (2) express an enhancement or potential to enhance the quality or equity of student learning or school system, or (3) identify an improvement from past practice. To warrant “Negative”, the statement describes the interviewees’ dissatisfactions, or identifies problems/issues/challenges, or suggests areas needed for further improvement. When the interviewee just states the fact without expressing either positive or negative sentiment, you can classify as “neutral”. When multiple sentiments are observed in one statement, identify the most prevailing sentiment. Explain your reasoning for your analysis.)";

struct Segments {
  std::string_view before_codebook, before_text, after_text;
};

Segments thematic_segments(std::string_view tmpl) {
  const auto cb = tmpl.find(kCodebookSlot);
  const auto tx = tmpl.find(kThematicTextSlot);
  return {tmpl.substr(0, cb), tmpl.substr(cb + kCodebookSlot.size(), tx - cb - kCodebookSlot.size()),
          tmpl.substr(tx + kThematicTextSlot.size())};
}

std::string_view strip_final_newline(std::string_view s) {
  return (!s.empty() && s.back() == '\n') ? s.substr(0, s.size() - 1) : s;
}

}  // namespace

std::string_view to_string(PromptStyle style) {
  switch (style) {
    case PromptStyle::kZeroShotThematic: return "zero_shot";
    case PromptStyle::kCoTThematic: return "cot";
    case PromptStyle::kSentiment: return "sentiment";
  }
  return "cot";
}

std::optional<PromptStyle> parse_prompt_style(std::string_view text) {
  const auto t = to_lower_ascii(trim(text));
  if (t == "zero_shot" || t == "zeroshot" || t == "zero-shot") return PromptStyle::kZeroShotThematic;
  if (t == "cot" || t == "chain_of_thought") return PromptStyle::kCoTThematic;
  if (t == "sentiment") return PromptStyle::kSentiment;
  return std::nullopt;
}

std::string_view thematic_template(PromptStyle style) {
  return style == PromptStyle::kZeroShotThematic ? kZeroShotThematic : kCoTThematic;
}

std::string_view sentiment_template() { return kSentiment; }

std::string build_thematic_prompt(const Codebook& cb, const Paragraph& p, PromptStyle style) {
  const auto seg = thematic_segments(thematic_template(style));
  const auto codebook_csv = codebook_to_prompt_csv(cb);
  std::string out;
  out.reserve(seg.before_codebook.size() + codebook_csv.size() + seg.before_text.size() +
              p.text.size() + seg.after_text.size());
  out.append(seg.before_codebook);
  out.append(strip_final_newline(codebook_csv));
  out.append(seg.before_text);
  out.append(p.text);
  out.append(seg.after_text);
  return out;
}

std::string build_sentiment_prompt(const Paragraph& p) {
  const auto pos = kSentiment.find(kSentimentTextSlot);
  std::string out(kSentiment.substr(0, pos));
  out.append(p.text);
  out.append(kSentiment.substr(pos + kSentimentTextSlot.size()));
  return out;
}

std::optional<std::string> paragraph_from_prompt(std::string_view prompt, PromptStyle* style) {
  const auto spos = kSentiment.find(kSentimentTextSlot);
  const auto s_prefix = kSentiment.substr(0, spos);
  const auto s_suffix = kSentiment.substr(spos + kSentimentTextSlot.size());
  if (prompt.starts_with(s_prefix) && prompt.ends_with(s_suffix) &&
      prompt.size() >= s_prefix.size() + s_suffix.size()) {
    if (style) *style = PromptStyle::kSentiment;
    return std::string(
        prompt.substr(s_prefix.size(), prompt.size() - s_prefix.size() - s_suffix.size()));
  }
  for (auto st : {PromptStyle::kCoTThematic, PromptStyle::kZeroShotThematic}) {
    const auto seg = thematic_segments(thematic_template(st));
    if (!prompt.starts_with(seg.before_codebook) || !prompt.ends_with(seg.after_text)) continue;
    // The codebook CSV never contains the paragraph marker line, so the first
    // occurrence after the prefix delimits the paragraph.
    const auto mid = prompt.find(seg.before_text, seg.before_codebook.size());
    if (mid == std::string_view::npos) continue;
    const auto start = mid + seg.before_text.size();
    const auto end = prompt.size() - seg.after_text.size();
    if (end < start) continue;
    if (style) *style = st;
    return std::string(prompt.substr(start, end - start));
  }
  return std::nullopt;
}

}  // namespace voicelens::llm
