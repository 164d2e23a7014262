// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

#include "voicelens/service.hpp"

#include <algorithm>
#include <cstdio>
#include <mutex>
#include <regex>

#include <unistd.h>

#include <httplib.h>

#include "voicelens/error.hpp"

namespace voicelens {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::kAcceptMachine: return "accept_machine";
    case Decision::kAcceptHuman: return "accept_human";
    case Decision::kRevised: return "revised";
  }
  return "revised";
}

std::optional<Decision> parse_decision(std::string_view text) {
  const auto t = to_lower_ascii(trim(text));
  if (t == "accept_machine") return Decision::kAcceptMachine;
  if (t == "accept_human") return Decision::kAcceptHuman;
  if (t == "revised") return Decision::kRevised;
  return std::nullopt;
}

ojson to_json(const AdjudicationRecord& r) {
  ojson j;
  j["paragraph_id"] = r.paragraph_id;
  j["final_labels"] = labels_to_json(r.final_labels);
  j["final_sentiment"] = r.final_sentiment ? ojson(to_string(*r.final_sentiment)) : ojson(nullptr);
  j["adjudicator_id"] = r.adjudicator_id;
  j["decision"] = to_string(r.decision);
  j["note"] = r.note;
  j["timestamp"] = r.timestamp;
  return j;
}

AdjudicationRecord adjudication_from_json(const nlohmann::json& j) {
  try {
    AdjudicationRecord r;
    r.paragraph_id = j.at("paragraph_id").get<std::string>();
    r.final_labels = labels_from_json(j.at("final_labels"));
    if (j.contains("final_sentiment") && !j["final_sentiment"].is_null()) {
      const auto s = parse_sentiment(j["final_sentiment"].get<std::string>());
      if (!s) throw Error(Errc::kParseError, "bad final_sentiment");
      r.final_sentiment = *s;
    }
    r.adjudicator_id = j.at("adjudicator_id").get<std::string>();
    const auto d = parse_decision(j.at("decision").get<std::string>());
    if (!d) throw Error(Errc::kParseError, "bad decision");
    r.decision = *d;
    r.note = j.value("note", "");
    r.timestamp = j.value("timestamp", "");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kParseError, std::string("adjudication record: ") + e.what());
  }
}

namespace {

std::size_t symmetric_difference(const std::vector<CodeRef>& a, const std::vector<CodeRef>& b) {
  const std::set<CodeRef> sa(a.begin(), a.end());
  const std::set<CodeRef> sb(b.begin(), b.end());
  std::size_t n = 0;
  for (const auto& x : sa) n += !sb.count(x);
  for (const auto& x : sb) n += !sa.count(x);
  return n;
}

void order_queue(std::vector<QueueItem>& q) {
  std::stable_sort(q.begin(), q.end(), [](const QueueItem& x, const QueueItem& y) {
    return x.distance > y.distance;
  });
}

}  // namespace

std::vector<QueueItem> disagreement_queue(const LabeledCorpus& a, const LabeledCorpus& b) {
  require_aligned(a, b);
  std::vector<QueueItem> q;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto d = symmetric_difference(a.sets[i], b.sets[i]);
    if (d > 0) q.push_back({a.ids[i], i, d});
  }
  order_queue(q);
  return q;
}

std::vector<QueueItem> disagreement_queue(const metrics::SentimentList& a,
                                          const metrics::SentimentList& b,
                                          const std::vector<std::string>& ids) {
  if (a.size() != b.size() || a.size() != ids.size()) {
    throw Error(Errc::kShapeMismatch, "sentiment lists are not aligned");
  }
  std::vector<QueueItem> q;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) q.push_back({ids[i], i, 1});
  }
  return q;
}

GoldState apply_adjudications(const AnnotationRun& human_themes,
                              const AnnotationRun& human_sentiment, const Corpus& corpus,
                              const std::vector<AdjudicationRecord>& log) {
  std::map<std::string, const AdjudicationRecord*> latest;
  for (const auto& r : log) latest[r.paragraph_id] = &r;

  GoldState gold;
  gold.themes.run_id = gold.sentiment.run_id = "adjudicated";
  gold.themes.source = gold.sentiment.source = AnnotationSource::kHuman;
  gold.themes.kind = RunKind::kThematic;
  gold.sentiment.kind = RunKind::kSentiment;
  for (const auto& p : corpus.paragraphs()) {
    const auto it = latest.find(p.id);
    const AdjudicationRecord* adj = it == latest.end() ? nullptr : it->second;
    if (adj) gold.adjudicated.insert(p.id);

    if (adj) {
      AnnotationRecord rec;
      rec.paragraph_id = p.id;
      rec.labels = adj->final_labels;
      rec.reasoning = adj->note;
      gold.themes.records.push_back(std::move(rec));
    } else if (const auto* h = human_themes.find(p.id)) {
      gold.themes.records.push_back(*h);
    }

    if (adj && adj->final_sentiment) {
      AnnotationRecord rec;
      rec.paragraph_id = p.id;
      rec.sentiment = adj->final_sentiment;
      gold.sentiment.records.push_back(std::move(rec));
    } else if (const auto* h = human_sentiment.find(p.id)) {
      gold.sentiment.records.push_back(*h);
    }
  }
  return gold;
}

namespace {

struct HttpError {
  int status;
  std::string code;
  std::string message;
};

std::string error_body(const std::string& code, const std::string& message) {
  return ojson{{"code", code}, {"message", message}}.dump();
}

int status_for(Errc code) {
  switch (code) {
    case Errc::kInvalidArgument:
    case Errc::kParseError:
    case Errc::kUnknownLabel:
    case Errc::kUnknownSentiment:
    case Errc::kLabelOutsideUniverse:
    case Errc::kNoEligibleParagraphs:
    case Errc::kMissingAnnotation:
      return 422;
    default:
      return 500;
  }
}

std::optional<std::string> param(const Service::Query& q, const std::string& key) {
  const auto it = q.find(key);
  if (it == q.end()) return std::nullopt;
  return it->second;
}

std::string required(const Service::Query& q, const std::string& key) {
  auto v = param(q, key);
  if (!v || v->empty()) throw HttpError{400, "BadRequest", "missing query parameter '" + key + "'"};
  return *v;
}

ojson record_json(const AnnotationRecord& r) {
  ojson j;
  j["paragraph_id"] = r.paragraph_id;
  j["labels"] = labels_to_json(r.labels);
  j["sentiment"] = r.sentiment ? ojson(to_string(*r.sentiment)) : ojson(nullptr);
  j["reasoning"] = r.reasoning;
  return j;
}

void append_durably(const fs::path& path, const std::string& line) {
  std::FILE* f = std::fopen(path.c_str(), "ab");
  if (!f) throw Error(Errc::kIo, "cannot open " + path.string());
  const bool ok = std::fwrite(line.data(), 1, line.size(), f) == line.size() &&
                  std::fflush(f) == 0 && ::fsync(fileno(f)) == 0;
  std::fclose(f);
  if (!ok) throw Error(Errc::kIo, "cannot append to " + path.string());
}

}  // namespace

Service::Service(fs::path state_dir, WarningSink warn)
    : state_dir_(std::move(state_dir)), warn_(std::move(warn)) {
  try {
    const auto corpus_path = state_dir_ / "ingest" / "corpus.jsonl";
    const auto codebook_path = state_dir_ / "ingest" / "codebook.csv";
    if (!fs::exists(corpus_path) || !fs::exists(codebook_path)) {
      throw Error(Errc::kCorruptState, state_dir_.string() + " has no ingest output");
    }
    corpus_ = parse_corpus_jsonl(read_file(corpus_path), corpus_path.string(), warn_);
    codebook_ = load_codebook(codebook_path);
    if (fs::is_directory(state_dir_ / "runs")) {
      for (const auto& e : fs::directory_iterator(state_dir_ / "runs")) {
        if (e.path().extension() != ".jsonl") continue;
        auto run = load_run(e.path());
        const auto key = run.run_id + "." + std::string(to_string(run.kind));
        runs_.emplace(key, std::move(run));
      }
    }
    if (fs::exists(log_path())) {
      const auto text = read_file(log_path());
      std::size_t start = 0, line_no = 0;
      while (start < text.size()) {
        const auto nl = text.find('\n', start);
        const bool complete = nl != std::string::npos;
        const auto line = text.substr(start, complete ? nl - start : std::string::npos);
        start = complete ? nl + 1 : text.size();
        ++line_no;
        if (trim(line).empty()) continue;
        const auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) {
          if (!complete) {
            warn_("adjudication log: ignoring truncated final line");
            break;
          }
          throw Error(Errc::kCorruptState, "adjudication log line " + std::to_string(line_no));
        }
        log_.push_back(adjudication_from_json(j));
      }
    }
  } catch (const Error& e) {
    if (e.code() == Errc::kCorruptState) throw;
    throw Error(Errc::kCorruptState, e.what());
  }
}

Service::~Service() { stop(); }

std::vector<AdjudicationRecord> Service::adjudications() const {
  std::shared_lock lock(mu_);
  return log_;
}

HttpResponse Service::handle(const std::string& method, const std::string& path, const Query& query,
                             const std::string& body) {
  static const std::regex kAnnotations(R"(^/runs/([^/]+)/annotations/?$)");
  try {
    std::smatch m;
    if (method == "POST") {
      if (path != "/adjudications") throw HttpError{404, "NotFound", "no route " + path};
      return {201, adjudicate(body).dump()};
    }
    if (method != "GET") throw HttpError{405, "MethodNotAllowed", method};
    std::shared_lock lock(mu_);
    if (path == "/paragraphs") return {200, paragraphs(query).dump()};
    if (path == "/runs") return {200, runs().dump()};
    if (std::regex_match(path, m, kAnnotations)) return {200, annotations(m[1]).dump()};
    if (path == "/disagreements") return {200, disagreements(query).dump()};
    if (path == "/gold") return {200, gold().dump()};
    if (path == "/metrics") return {200, metrics(query).dump()};
    if (path == "/adjudications") return {405, error_body("MethodNotAllowed", "use POST")};
    throw HttpError{404, "NotFound", "no route " + path};
  } catch (const HttpError& e) {
    return {e.status, error_body(e.code, e.message)};
  } catch (const Error& e) {
    return {status_for(e.code()), error_body(std::string(to_string(e.code())), e.detail())};
  } catch (const std::exception& e) {
    return {500, error_body("Internal", e.what())};
  }
}

ojson Service::paragraphs(const Query& q) const {
  std::optional<RoleGroup> role;
  if (const auto r = param(q, "role")) {
    for (const auto g : {RoleGroup::kAdministratorPolicymaker, RoleGroup::kEducator,
                         RoleGroup::kNonProfitAdvocate, RoleGroup::kOther}) {
      if (normalize_label(to_string(g)) == normalize_label(*r)) role = g;
    }
    if (!role) role = parse_role(*r);
    if (!role) throw HttpError{422, "InvalidArgument", "unknown role '" + *r + "'"};
  }
  ojson out = ojson::array();
  for (const auto& p : corpus_.paragraphs()) {
    if (role && p.role_group != *role) continue;
    ojson j;
    j["id"] = p.id;
    j["text"] = p.text;
    j["interviewee_id"] = p.interviewee_id;
    j["role_group"] = to_string(p.role_group);
    j["location"] = p.location ? ojson(*p.location) : ojson(nullptr);
    out.push_back(std::move(j));
  }
  return out;
}

ojson Service::runs() const {
  ojson out = ojson::array();
  for (const auto& [key, run] : runs_) {
    out.push_back(ojson{{"id", key},
                        {"run_id", run.run_id},
                        {"source", to_string(run.source)},
                        {"kind", to_string(run.kind)},
                        {"records", run.records.size()},
                        {"failures", run.failures.size()},
                        {"config", run.config}});
  }
  return out;
}

const AnnotationRun& Service::find_run(const std::string& id, std::optional<RunKind> kind) const {
  if (const auto it = runs_.find(id); it != runs_.end()) {
    if (!kind || it->second.kind == *kind) return it->second;
  }
  for (const auto k : {RunKind::kThematic, RunKind::kSentiment}) {
    if (kind && k != *kind) continue;
    if (const auto it = runs_.find(id + "." + std::string(to_string(k))); it != runs_.end()) {
      return it->second;
    }
  }
  throw HttpError{404, "NotFound", "no run '" + id + "'"};
}

ojson Service::annotations(const std::string& id) const {
  const auto& run = find_run(id, std::nullopt);
  ojson out;
  out["id"] = run.run_id + "." + std::string(to_string(run.kind));
  out["records"] = ojson::array();
  for (const auto& r : run.records) out["records"].push_back(record_json(r));
  out["failures"] = ojson::array();
  for (const auto& f : run.failures) {
    out["failures"].push_back(ojson{{"paragraph_id", f.paragraph_id}, {"error", f.error}});
  }
  return out;
}

GoldState Service::gold_state() const {
  static const AnnotationRun kEmpty;
  const auto themes = runs_.find("human.thematic");
  const auto sentiment = runs_.find("human.sentiment");
  return apply_adjudications(themes == runs_.end() ? kEmpty : themes->second,
                             sentiment == runs_.end() ? kEmpty : sentiment->second, corpus_, log_);
}

ojson Service::disagreements(const Query& q) const {
  const auto a_id = required(q, "a");
  const auto b_id = required(q, "b");
  const auto level = param(q, "level").value_or("original");
  const bool sentiment = level == "sentiment";
  const auto kind = sentiment ? RunKind::kSentiment : RunKind::kThematic;
  std::optional<GoldState> gold;
  const auto run_for = [&](const std::string& id) -> const AnnotationRun& {
    if (id != "adjudicated") return find_run(id, kind);
    if (!gold) gold = gold_state();
    return sentiment ? gold->sentiment : gold->themes;
  };
  const auto& a = run_for(a_id);
  const auto& b = run_for(b_id);

  std::vector<QueueItem> queue;
  std::vector<std::vector<CodeRef>> a_sets, b_sets;
  metrics::SentimentList a_sent, b_sent;
  if (sentiment) {
    a_sent = sentiments_in_order(a, corpus_);
    b_sent = sentiments_in_order(b, corpus_);
    std::vector<std::string> ids;
    for (const auto& p : corpus_.paragraphs()) ids.push_back(p.id);
    queue = disagreement_queue(a_sent, b_sent, ids);
  } else {
    auto la = labeled_from_run(a, corpus_);
    auto lb = labeled_from_run(b, corpus_);
    if (level == "parent") {
      la = to_parent_level(la, codebook_);
      lb = to_parent_level(lb, codebook_);
    } else if (level != "original") {
      throw HttpError{422, "InvalidArgument", "level must be original, parent or sentiment"};
    }
    queue = disagreement_queue(la, lb);
    a_sets = std::move(la.sets);
    b_sets = std::move(lb.sets);
  }
  ojson out = ojson::array();
  for (const auto& item : queue) {
    ojson j;
    j["paragraph_id"] = item.paragraph_id;
    j["distance"] = item.distance;
    j["text"] = corpus_.paragraphs()[item.index].text;
    if (sentiment) {
      const auto s = [](const std::optional<Sentiment>& x) {
        return x ? ojson(to_string(*x)) : ojson(nullptr);
      };
      j["a"] = s(a_sent[item.index]);
      j["b"] = s(b_sent[item.index]);
    } else {
      j["a"] = labels_to_json(a_sets[item.index]);
      j["b"] = labels_to_json(b_sets[item.index]);
    }
    if (const auto* rec = a.find(item.paragraph_id)) j["a_reasoning"] = rec->reasoning;
    out.push_back(std::move(j));
  }
  return out;
}

ojson Service::adjudicate(const std::string& body) {
  const auto j = nlohmann::json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw HttpError{422, "ParseError", "body must be a JSON object"};
  }
  const auto invalid = [](const std::string& code, const std::string& msg) {
    return HttpError{422, code, msg};
  };
  AdjudicationRecord r;
  if (!j.contains("paragraph_id") || !j["paragraph_id"].is_string()) {
    throw invalid("InvalidArgument", "paragraph_id is required");
  }
  r.paragraph_id = j["paragraph_id"].get<std::string>();
  if (!corpus_.index_of(r.paragraph_id)) {
    throw invalid("InvalidArgument", "unknown paragraph '" + r.paragraph_id + "'");
  }
  if (!j.contains("final_labels") || !j["final_labels"].is_array()) {
    throw invalid("InvalidArgument", "final_labels must be an array");
  }
  for (const auto& item : j["final_labels"]) {
    std::optional<CodeRef> ref;
    std::string shown;
    if (item.is_string()) {
      shown = item.get<std::string>();
      std::string_view text = shown;
      if (text.rfind("parent:", 0) == 0) {
        ref = codebook_.match_parent(text.substr(7));
      } else if (text.rfind("child:", 0) == 0) {
        ref = codebook_.match_child(text.substr(6));
      } else {
        ref = codebook_.match_any(text);
      }
    } else if (item.is_object() && item.contains("label") && item["label"].is_string()) {
      shown = item["label"].get<std::string>();
      const auto level = item.contains("level") && item["level"].is_string()
                             ? parse_code_level(item["level"].get<std::string>())
                             : std::nullopt;
      ref = !level                          ? codebook_.match_any(shown)
            : *level == CodeLevel::kChild ? codebook_.match_child(shown)
                                          : codebook_.match_parent(shown);
    } else {
      throw invalid("InvalidArgument", "label entries are strings or {level,label} objects");
    }
    if (!ref) throw invalid("UnknownLabel", "'" + shown + "' is not a codebook label");
    if (std::find(r.final_labels.begin(), r.final_labels.end(), *ref) == r.final_labels.end()) {
      r.final_labels.push_back(*ref);
    }
  }
  if (r.final_labels.size() > kMaxThemeLabels) {
    throw invalid("InvalidArgument", "at most 3 labels per paragraph");
  }
  if (j.contains("final_sentiment") && !j["final_sentiment"].is_null()) {
    const auto s = j["final_sentiment"].is_string()
                       ? parse_sentiment(j["final_sentiment"].get<std::string>())
                       : std::nullopt;
    if (!s) throw invalid("UnknownSentiment", "final_sentiment must be Positive, Negative or Neutral");
    r.final_sentiment = *s;
  }
  if (!j.contains("adjudicator_id") || !j["adjudicator_id"].is_string() ||
      trim(j["adjudicator_id"].get<std::string>()).empty()) {
    throw invalid("InvalidArgument", "adjudicator_id is required");
  }
  r.adjudicator_id = j["adjudicator_id"].get<std::string>();
  const auto decision = j.contains("decision") && j["decision"].is_string()
                            ? parse_decision(j["decision"].get<std::string>())
                            : std::nullopt;
  if (!decision) {
    throw invalid("InvalidArgument", "decision must be accept_machine, accept_human or revised");
  }
  r.decision = *decision;
  if (j.contains("note")) {
    if (!j["note"].is_string()) throw invalid("InvalidArgument", "note must be a string");
    r.note = j["note"].get<std::string>();
  }
  r.timestamp = utc_timestamp();

  const auto json = to_json(r);
  std::unique_lock lock(mu_);
  append_durably(log_path(), json.dump() + "\n");
  log_.push_back(std::move(r));
  return json;
}

ojson Service::gold() const {
  const auto g = gold_state();
  const auto sentiments = sentiments_in_order(g.sentiment, corpus_);
  const auto themes = labeled_from_run(g.themes, corpus_);
  ojson out = ojson::array();
  for (std::size_t i = 0; i < corpus_.size(); ++i) {
    const auto& id = corpus_.paragraphs()[i].id;
    out.push_back(ojson{{"paragraph_id", id},
                        {"labels", labels_to_json(themes.sets[i])},
                        {"sentiment", sentiments[i] ? ojson(to_string(*sentiments[i])) : ojson(nullptr)},
                        {"adjudicated", g.adjudicated.count(id) > 0}});
  }
  return out;
}

ojson Service::metrics(const Query& q) const {
  const auto machine_id = required(q, "machine");
  const auto gold_kind = param(q, "gold").value_or("human");
  if (gold_kind != "human" && gold_kind != "adjudicated") {
    throw HttpError{422, "InvalidArgument", "gold must be human or adjudicated"};
  }
  metrics::EvalConfig cfg;
  if (const auto iters = param(q, "iters")) {
    try {
      cfg.bootstrap_iters = std::stoi(*iters);
    } catch (const std::logic_error&) {
      throw HttpError{422, "InvalidArgument", "iters must be an integer"};
    }
  }
  GoldState g;
  if (gold_kind == "adjudicated") {
    g = gold_state();
  } else {
    if (const auto it = runs_.find("human.thematic"); it != runs_.end()) g.themes = it->second;
    if (const auto it = runs_.find("human.sentiment"); it != runs_.end()) g.sentiment = it->second;
  }
  const auto* sentiment_gold = g.sentiment.records.empty() ? nullptr : &g.sentiment;

  const auto themes = runs_.find(machine_id + ".thematic");
  const auto sent = runs_.find(machine_id + ".sentiment");
  metrics::EvalReport report;
  if (themes != runs_.end()) {
    if (g.themes.records.empty()) throw HttpError{422, "InvalidArgument", "no gold theme labels"};
    report = metrics::evaluate(corpus_, codebook_, themes->second, g.themes,
                               sent != runs_.end() ? &sent->second : nullptr, sentiment_gold, cfg);
  } else if (sent != runs_.end()) {
    if (!sentiment_gold) throw HttpError{422, "InvalidArgument", "no gold sentiment labels"};
    report = metrics::evaluate_sentiment(corpus_, sent->second, *sentiment_gold,
                                         g.themes.records.empty() ? nullptr : &g.themes, cfg);
  } else {
    throw HttpError{404, "NotFound", "no run '" + machine_id + "'"};
  }
  auto j = metrics::to_json(report);
  j["gold"] = gold_kind;
  return j;
}

int Service::bind(const std::string& host, int port) {
  server_ = std::make_unique<httplib::Server>();
  const auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
    Query q(req.params.begin(), req.params.end());
    const auto r = handle(req.method, req.path, q, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json; charset=utf-8");
  };
  server_->Get(R"(/.*)", dispatch);
  server_->Post(R"(/.*)", dispatch);
  int bound = port;
  if (port == 0) {
    bound = server_->bind_to_any_port(host);
  } else if (!server_->bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) {
    server_.reset();
    throw Error(Errc::kBindFailure, host + ":" + std::to_string(port));
  }
  return bound;
}

void Service::listen_after_bind() {
  if (!server_) throw Error(Errc::kBindFailure, "bind() was not called");
  server_->listen_after_bind();
}

void Service::stop() {
  if (server_) server_->stop();
}

}  // namespace voicelens
