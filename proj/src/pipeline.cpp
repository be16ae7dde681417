#include "cascade/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "cascade/classify.hpp"
#include "cascade/common.hpp"
#include "cascade/csv.hpp"
#include "cascade/events.hpp"
#include "cascade/metrics.hpp"
#include "cascade/network.hpp"
#include "cascade/parallel.hpp"
#include "cascade/rng.hpp"
#include "cascade/sha256.hpp"
#include "cascade/sources.hpp"
#include "cascade/stats.hpp"
#include "cascade/text.hpp"
#include "cascade/topics.hpp"
#include "cascade/tree.hpp"
#include "json.hpp"

namespace cascade {

namespace {

constexpr const char* kStageOrder[] = {"ingest",  "metrics", "stats",
                                       "affect",  "topics",  "network",
                                       "sources", "classify"};

bool known_stage(const std::string& s) {
  for (const char* name : kStageOrder) {
    if (s == name) return true;
  }
  return false;
}

void set_field(PipelineConfig& cfg, const std::string& key,
               const std::string& value, const std::string& where) {
  auto bad = [&](const std::string& why) {
    throw std::invalid_argument(where + ": " + why + " for key '" + key + "'");
  };
  auto as_u64 = [&]() {
    const auto v = parse_int64(value);
    if (!v || *v < 0) bad("expected a non-negative integer");
    return static_cast<uint64_t>(*v);
  };
  auto as_int = [&]() {
    const auto v = parse_int64(value);
    if (!v) bad("expected an integer");
    return static_cast<int>(*v);
  };
  auto as_real = [&]() {
    const auto v = parse_double(value);
    if (!v) bad("expected a number");
    return *v;
  };

  if (key == "posts") {
    cfg.posts = value;
  } else if (key == "comments") {
    cfg.comments = value;
  } else if (key == "events") {
    cfg.events = value;
  } else if (key == "bots") {
    cfg.bots = value;
  } else if (key == "lexicon") {
    cfg.lexicon = value;
  } else if (key == "domain_map") {
    cfg.domain_map = value;
  } else if (key == "out_dir") {
    cfg.out_dir = value;
  } else if (key == "stages") {
    cfg.stages = value;
  } else if (key == "positive") {
    cfg.positive = value;
  } else if (key == "grid") {
    cfg.grid = value;
  } else if (key == "vocab_cap") {
    cfg.vocab_cap = as_u64();
  } else if (key == "topics") {
    cfg.topics = as_int();
  } else if (key == "lda_iterations") {
    cfg.lda_iterations = as_int();
  } else if (key == "lda_alpha") {
    cfg.lda_alpha = as_real();
  } else if (key == "lda_beta") {
    cfg.lda_beta = as_real();
  } else if (key == "forest_trees") {
    cfg.forest_trees = as_int();
  } else if (key == "trials") {
    cfg.trials = as_int();
  } else if (key == "split") {
    cfg.split = as_real();
  } else if (key == "seed") {
    cfg.seed = as_u64();
  } else if (key == "threads") {
    cfg.threads = as_int();
  } else {
    throw std::invalid_argument(where + ": unknown key '" + key + "'");
  }
}

}  // namespace

PipelineConfig load_pipeline_config(const std::string& path) {
  PipelineConfig cfg;
  const std::string body = read_file(path);
  size_t lineno = 0;
  size_t pos = 0;
  while (pos <= body.size()) {
    const size_t nl = body.find('\n', pos);
    std::string_view line(body.data() + pos,
                          (nl == std::string::npos ? body.size() : nl) - pos);
    pos = nl == std::string::npos ? body.size() + 1 : nl + 1;
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key = value");
    }
    const std::string key{trim(line.substr(0, eq))};
    const std::string value{trim(line.substr(eq + 1))};
    set_field(cfg, key, value, path + ":" + std::to_string(lineno));
  }
  return cfg;
}

void apply_config_override(PipelineConfig& cfg, const std::string& assignment) {
  const size_t eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw std::invalid_argument("override must be key=value, got '" +
                                assignment + "'");
  }
  const std::string key{trim(std::string_view(assignment).substr(0, eq))};
  const std::string value{trim(std::string_view(assignment).substr(eq + 1))};
  set_field(cfg, key, value, "override '" + assignment + "'");
}

std::vector<std::string> resolve_stages(const PipelineConfig& cfg) {
  std::unordered_set<std::string> wanted;
  if (trim(cfg.stages) == "all") {
    for (const char* s : kStageOrder) wanted.insert(s);
  } else {
    for (const auto& part : split(cfg.stages, ',')) {
      const std::string name{trim(part)};
      if (name.empty()) continue;
      if (!known_stage(name)) {
        throw std::invalid_argument("unknown stage '" + name + "'");
      }
      wanted.insert(name);
    }
  }
  if (wanted.empty()) throw std::invalid_argument("no stages enabled");

  auto on = [&](const char* s) { return wanted.count(s) > 0; };
  if (on("ingest")) {
    if (cfg.posts.empty() || cfg.comments.empty()) {
      throw std::invalid_argument(
          "ingest stage needs both posts and comments inputs");
    }
  } else if (cfg.events.empty()) {
    throw std::invalid_argument(
        "without the ingest stage an events file must be given");
  }
  if (on("affect") && cfg.lexicon.empty()) {
    throw std::invalid_argument("affect stage needs a lexicon path");
  }
  if (on("sources") && cfg.domain_map.empty()) {
    throw std::invalid_argument("sources stage needs a domain map path");
  }
  for (const char* dep : {"stats", "network", "sources", "classify"}) {
    if (on(dep) && !on("metrics")) {
      throw std::invalid_argument(std::string(dep) +
                                  " stage needs the metrics stage");
    }
  }
  if (on("classify")) {
    for (const char* dep : {"affect", "topics"}) {
      if (!on(dep)) {
        throw std::invalid_argument(std::string("classify stage needs the ") +
                                    dep + " stage");
      }
    }
    if (cfg.topics != 20) {
      throw std::invalid_argument(
          "classify stage needs the 20-topic block (topics = 20)");
    }
    if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (!(cfg.split > 0.0 && cfg.split < 1.0)) {
      throw std::invalid_argument("split must be in (0,1)");
    }
  }
  if (on("topics")) {
    if (cfg.topics < 1) throw std::invalid_argument("topics must be >= 1");
    if (cfg.lda_iterations < 1) {
      throw std::invalid_argument("lda_iterations must be >= 1");
    }
  }
  if (on("network")) parse_grid(cfg.grid);  // reject bad grids up front

  std::vector<std::string> ordered;
  for (const char* s : kStageOrder) {
    if (wanted.count(s)) ordered.push_back(s);
  }
  return ordered;
}

namespace {

struct StageContext {
  const PipelineConfig& cfg;
  int threads;
  std::filesystem::path out_dir;
  nlohmann::json manifest;

  std::vector<ThreadEvent> events;
  std::vector<CascadeTree> trees;
  std::vector<CascadeMetrics> metrics;
  std::vector<AffectScores> affect;          // parallel to events
  std::vector<std::string> post_theta_ids;   // doc order of the posts model
  std::vector<DocTopics> post_theta;
  int post_theta_k = 0;

  void emit(const std::string& name, std::string_view content) {
    const auto path = out_dir / name;
    write_file_atomic(path.string(), content);
    manifest["outputs"][name] = sha256_hex(content);
  }
  void note_binary(const std::string& name) {
    manifest["outputs"][name] = sha256_hex_file((out_dir / name).string());
  }
};

std::unordered_set<std::string> bot_set(const std::string& bots) {
  std::unordered_set<std::string> out;
  for (const auto& part : split(bots, ',')) {
    const auto name = trim(part);
    if (!name.empty()) out.emplace(name);
  }
  return out;
}

void stage_ingest(StageContext& ctx) {
  IngestReport report;
  auto sink = [&](ThreadEvent&& ev) { ctx.events.push_back(std::move(ev)); };
  const IngestReport posts =
      parse_dump_file(ctx.cfg.posts, EventKind::post, sink);
  const IngestReport comments =
      parse_dump_file(ctx.cfg.comments, EventKind::comment, sink);
  report.malformed_lines = posts.malformed_lines + comments.malformed_lines;
  filter_events(ctx.events, bot_set(ctx.cfg.bots), report);
  report.events_accepted = ctx.events.size();

  std::string out;
  out.reserve(ctx.events.size() * 128);
  for (const auto& ev : ctx.events) {
    out += event_to_json(ev);
    out += '\n';
  }
  ctx.emit("events.jsonl", out);
  ctx.manifest["ingest_report"] = {
      {"events_accepted", report.events_accepted},
      {"malformed_lines", report.malformed_lines},
      {"bot_comments_dropped", report.bot_comments_dropped},
  };
}

void stage_metrics(StageContext& ctx) {
  BuildStats stats;
  ctx.trees = build_cascades(ctx.events, stats);
  ctx.metrics.resize(ctx.trees.size());
  parallel_for(ctx.trees.size(), ctx.threads, [&](size_t i) {
    ctx.metrics[i] = compute_metrics(ctx.trees[i]);
  });
  ctx.emit("metrics.csv", metrics_csv(ctx.metrics));

  std::string monthly;
  write_csv_row(monthly, {"month", "cascades"});
  for (const auto& [month, count] : monthly_counts(ctx.metrics)) {
    write_csv_row(monthly, {month, std::to_string(count)});
  }
  ctx.emit("monthly_counts.csv", monthly);
  ctx.manifest["cascade_report"] = {
      {"cascades", ctx.trees.size()},
      {"orphan_comments", stats.orphans},
      {"duplicate_ids", stats.duplicates},
  };
}

void stage_stats(StageContext& ctx) {
  struct Column {
    const char* name;
    bool log_transform;
  };
  constexpr Column kColumns[] = {
      {"size", true},           {"unique_users", true}, {"depth", true},
      {"virality", true},       {"lifetime_minutes", true},
      {"burstiness", false},
  };
  std::string out;
  write_csv_row(out, {"metric", "count", "mean_log", "std_log",
                      "ci95_halfwidth", "min", "q1", "median", "q3", "max",
                      "tukey_outliers"});
  for (const auto& col : kColumns) {
    std::vector<double> sample;
    sample.reserve(ctx.metrics.size());
    for (const auto& m : ctx.metrics) {
      if (std::string_view(col.name) == "size") {
        sample.push_back(static_cast<double>(m.size));
      } else if (std::string_view(col.name) == "unique_users") {
        sample.push_back(static_cast<double>(m.unique_users));
      } else if (std::string_view(col.name) == "depth") {
        sample.push_back(static_cast<double>(m.depth));
      } else if (std::string_view(col.name) == "virality") {
        sample.push_back(m.virality);
      } else if (std::string_view(col.name) == "lifetime_minutes") {
        sample.push_back(m.lifetime_minutes);
      } else if (m.burstiness_defined) {
        sample.push_back(m.burstiness);
      }
    }
    if (sample.empty()) continue;
    const SummaryStats st = summary_stats(std::move(sample), col.log_transform);
    write_csv_row(out, {col.name, std::to_string(st.count),
                        format_double(st.mean_log), format_double(st.std_log),
                        format_double(st.ci95_halfwidth),
                        format_double(st.min), format_double(st.q1),
                        format_double(st.median), format_double(st.q3),
                        format_double(st.max),
                        std::to_string(st.tukey_outlier_count)});
  }
  ctx.emit("summary.csv", out);

  std::vector<double> sizes;
  sizes.reserve(ctx.metrics.size());
  for (const auto& m : ctx.metrics) sizes.push_back(static_cast<double>(m.size));
  std::string ccdf_out;
  write_csv_row(ccdf_out, {"value", "probability"});
  if (!sizes.empty()) {
    for (const auto& p : ccdf(std::move(sizes)).points) {
      write_csv_row(ccdf_out,
                    {format_double(p.value), format_double(p.probability)});
    }
  }
  ctx.emit("ccdf_size.csv", ccdf_out);
}

void stage_affect(StageContext& ctx) {
  const Lexicon lexicon = load_lexicon_file(ctx.cfg.lexicon);
  ctx.affect.resize(ctx.events.size());
  parallel_for(ctx.events.size(), ctx.threads, [&](size_t i) {
    ctx.affect[i] = score_affect(tokenize(ctx.events[i].text), lexicon);
  });
  std::string out;
  std::vector<std::string> header = {"id"};
  for (const auto label : kAffectLabels) header.emplace_back(label);
  write_csv_row(out, header);
  for (size_t i = 0; i < ctx.events.size(); ++i) {
    std::vector<std::string> row = {ctx.events[i].id};
    for (double v : ctx.affect[i].scores) row.push_back(format_double(v));
    write_csv_row(out, row);
  }
  ctx.emit("affect.csv", out);
}

std::string theta_csv(const std::vector<std::string>& ids,
                      const std::vector<DocTopics>& theta, int k) {
  std::string out;
  std::vector<std::string> header = {"doc_id"};
  for (int t = 0; t < k; ++t) header.push_back("topic" + std::to_string(t));
  write_csv_row(out, header);
  for (size_t d = 0; d < ids.size(); ++d) {
    std::vector<std::string> row = {ids[d]};
    for (double v : theta[d].theta) row.push_back(format_double(v));
    write_csv_row(out, row);
  }
  return out;
}

void stage_topics(StageContext& ctx) {
  const double alpha = ctx.cfg.lda_alpha > 0.0
                           ? ctx.cfg.lda_alpha
                           : lda_default_alpha(ctx.cfg.topics);
  const auto& stops = default_stopwords();

  for (const EventKind kind : {EventKind::post, EventKind::comment}) {
    const bool is_post = kind == EventKind::post;
    std::vector<std::string> ids;
    std::vector<std::vector<std::string>> token_docs;
    for (const auto& ev : ctx.events) {
      if (ev.kind != kind) continue;
      auto tokens = tokenize(ev.text);
      remove_stopwords(tokens, stops);
      ids.push_back(ev.id);
      token_docs.push_back(std::move(tokens));
    }
    if (ids.empty()) {
      throw std::runtime_error(std::string("no ") +
                               (is_post ? "posts" : "comments") +
                               " to model");
    }
    const Vocabulary vocab = build_vocabulary(token_docs, ctx.cfg.vocab_cap);
    std::vector<std::vector<int32_t>> docs(token_docs.size());
    for (size_t d = 0; d < token_docs.size(); ++d) {
      for (const auto& w : token_docs[d]) {
        const auto it = vocab.index.find(w);
        if (it != vocab.index.end()) docs[d].push_back(it->second);
      }
    }
    std::vector<std::string> words;
    words.reserve(vocab.ranked.size());
    for (const auto& [word, weight] : vocab.ranked) words.push_back(word);

    const LdaResult fit =
        fit_lda(docs, std::move(words), ctx.cfg.topics, alpha, ctx.cfg.lda_beta,
                ctx.cfg.lda_iterations,
                derive_seed(ctx.cfg.seed, is_post ? 1 : 2));
    const char* base = is_post ? "posts" : "comments";
    const std::string model_name = std::string("lda_") + base + ".bin";
    save_model((ctx.out_dir / model_name).string(), fit.model);
    ctx.note_binary(model_name);
    ctx.emit(std::string("theta_") + base + ".csv",
             theta_csv(ids, fit.doc_topics, ctx.cfg.topics));
    if (is_post) {
      ctx.post_theta_ids = std::move(ids);
      ctx.post_theta = fit.doc_topics;
      ctx.post_theta_k = ctx.cfg.topics;
    }
  }
}

void stage_network(StageContext& ctx) {
  const CommentNetwork net = build_comment_network(ctx.trees);
  if (net.nodes.empty()) {
    throw std::runtime_error("comment network is empty");
  }
  save_network((ctx.out_dir / "network.bin").string(), net);
  ctx.note_binary("network.bin");

  const auto deg = degrees(net);
  uint64_t total = 0;
  for (uint32_t d : deg) total += d;
  std::string stats;
  write_csv_row(stats, {"nodes", "edges", "mean_degree"});
  write_csv_row(stats, {std::to_string(net.nodes.size()),
                        std::to_string(net.edges.size()),
                        format_double(static_cast<double>(total) /
                                      static_cast<double>(net.nodes.size()))});
  ctx.emit("network_stats.csv", stats);

  std::string deg_out;
  write_csv_row(deg_out, {"value", "probability"});
  for (const auto& p : degree_distribution(net).points) {
    write_csv_row(deg_out,
                  {format_double(p.value), format_double(p.probability)});
  }
  ctx.emit("degrees.csv", deg_out);

  const PercolationTrace trace =
      percolate(net, parse_grid(ctx.cfg.grid), false);
  std::string trace_out;
  write_csv_row(trace_out, {"q", "g"});
  for (const auto& p : trace.points) {
    write_csv_row(trace_out, {format_double(p.q), format_double(p.g)});
  }
  ctx.emit("percolation.csv", trace_out);
}

void stage_sources(StageContext& ctx) {
  const DomainMap map = load_domain_map(ctx.cfg.domain_map);
  std::vector<SourceAssignment> assignments;
  for (const auto& ev : ctx.events) {
    if (ev.kind == EventKind::post) {
      assignments.push_back(classify_source(ev, map));
    }
  }
  ctx.emit("subgroups.csv", subgroup_report_csv(assignments, ctx.metrics));
}

void stage_classify(StageContext& ctx) {
  std::unordered_map<std::string_view, size_t> metric_at;
  for (size_t i = 0; i < ctx.metrics.size(); ++i) {
    metric_at.emplace(ctx.metrics[i].root_id, i);
  }
  std::unordered_map<std::string_view, size_t> affect_at;
  for (size_t i = 0; i < ctx.events.size(); ++i) {
    if (ctx.events[i].kind == EventKind::post) {
      affect_at.emplace(ctx.events[i].id, i);
    }
  }
  std::unordered_map<std::string_view, size_t> theta_at;
  for (size_t i = 0; i < ctx.post_theta_ids.size(); ++i) {
    theta_at.emplace(ctx.post_theta_ids[i], i);
  }

  Dataset full;
  full.feature_names = {"size", "depth", "virality", "lifetime_minutes",
                        "unique_users"};
  for (const auto label : kAffectLabels) {
    full.feature_names.emplace_back(label);
  }
  for (int t = 0; t < ctx.post_theta_k; ++t) {
    full.feature_names.push_back("topic" + std::to_string(t));
  }

  std::vector<std::string> row_ids;
  std::vector<std::string> row_labels;
  uint64_t dropped = 0;
  for (const auto& ev : ctx.events) {
    if (ev.kind != EventKind::post) continue;
    const auto m = metric_at.find(ev.id);
    const auto a = affect_at.find(ev.id);
    const auto t = theta_at.find(ev.id);
    if (m == metric_at.end() || a == affect_at.end() || t == theta_at.end()) {
      ++dropped;
      continue;
    }
    const CascadeMetrics& cm = ctx.metrics[m->second];
    std::vector<double> row;
    row.reserve(full.feature_names.size());
    row.push_back(static_cast<double>(cm.size));
    row.push_back(static_cast<double>(cm.depth));
    row.push_back(cm.virality);
    row.push_back(cm.lifetime_minutes);
    row.push_back(static_cast<double>(cm.unique_users));
    for (double v : ctx.affect[a->second].scores) row.push_back(v);
    for (double v : ctx.post_theta[t->second].theta) row.push_back(v);
    full.rows.push_back(std::move(row));
    full.labels.push_back(ev.community == ctx.cfg.positive ? 1 : 0);
    row_ids.push_back(ev.id);
    row_labels.push_back(ev.community);
  }
  if (full.rows.empty()) throw std::runtime_error("no complete feature rows");

  std::string features;
  {
    std::vector<std::string> header = {"root_id"};
    header.insert(header.end(), full.feature_names.begin(),
                  full.feature_names.end());
    header.push_back("label");
    write_csv_row(features, header);
    for (size_t i = 0; i < full.rows.size(); ++i) {
      std::vector<std::string> row = {row_ids[i]};
      for (double v : full.rows[i]) row.push_back(format_double(v));
      row.push_back(row_labels[i]);
      write_csv_row(features, row);
    }
  }
  ctx.emit("features.csv", features);
  ctx.manifest["feature_report"] = {{"rows", full.rows.size()},
                                    {"dropped_posts", dropped}};

  ForestConfig fc;
  fc.trees = ctx.cfg.forest_trees;
  fc.seed = derive_seed(ctx.cfg.seed, 3);
  fc.threads = ctx.threads;
  const auto reports = run_trials(full, all_combinations(), ctx.cfg.trials,
                                  ctx.cfg.split, fc);
  std::string out;
  write_csv_row(out, {"combination", "trial", "auc"});
  for (const auto& r : reports) {
    for (size_t i = 0; i < r.aucs.size(); ++i) {
      write_csv_row(out, {r.combination, std::to_string(i + 1),
                          format_double(r.aucs[i])});
    }
  }
  for (const auto& r : reports) {
    write_csv_row(out, {r.combination, "mean", format_double(r.mean_auc)});
    write_csv_row(out, {r.combination, "stderr", format_double(r.stderr_auc)});
  }
  ctx.emit("auc.csv", out);
}

}  // namespace

void run_pipeline(const PipelineConfig& cfg) {
  const std::vector<std::string> stages = resolve_stages(cfg);
  const int threads = cfg.threads > 0 ? cfg.threads : default_thread_count();

  StageContext ctx{cfg, threads, std::filesystem::path(cfg.out_dir), {}, {},
                   {}, {}, {}, {}, {}, 0};
  std::filesystem::create_directories(ctx.out_dir);

  ctx.manifest["version"] = std::string(kToolVersion);
  ctx.manifest["seed"] = cfg.seed;
  ctx.manifest["threads"] = threads;
  ctx.manifest["stages"] = stages;
  ctx.manifest["config"] = {
      {"bots", cfg.bots},
      {"forest_trees", cfg.forest_trees},
      {"grid", cfg.grid},
      {"lda_alpha", cfg.lda_alpha},
      {"lda_beta", cfg.lda_beta},
      {"lda_iterations", cfg.lda_iterations},
      {"positive", cfg.positive},
      {"split", cfg.split},
      {"topics", cfg.topics},
      {"trials", cfg.trials},
      {"vocab_cap", cfg.vocab_cap},
  };

  auto enabled = [&](const char* s) {
    return std::find(stages.begin(), stages.end(), s) != stages.end();
  };
  auto record_input = [&](const std::string& path) {
    if (!path.empty()) ctx.manifest["inputs"][path] = sha256_hex_file(path);
  };
  const bool ingesting = enabled("ingest");
  if (ingesting) {
    record_input(cfg.posts);
    record_input(cfg.comments);
  } else {
    record_input(cfg.events);
  }
  if (enabled("affect")) record_input(cfg.lexicon);
  if (enabled("sources")) record_input(cfg.domain_map);

  if (!ingesting) ctx.events = read_events(cfg.events);

  for (const auto& stage : stages) {
    try {
      if (stage == "ingest") stage_ingest(ctx);
      if (stage == "metrics") stage_metrics(ctx);
      if (stage == "stats") stage_stats(ctx);
      if (stage == "affect") stage_affect(ctx);
      if (stage == "topics") stage_topics(ctx);
      if (stage == "network") stage_network(ctx);
      if (stage == "sources") stage_sources(ctx);
      if (stage == "classify") stage_classify(ctx);
    } catch (const std::exception& e) {
      throw std::runtime_error("stage " + stage + ": " + e.what());
    }
  }

  ctx.emit("manifest.json", ctx.manifest.dump(2) + "\n");
}

}  // namespace cascade
