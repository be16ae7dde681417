#include <cstdio>
#include <exception>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "CLI11.hpp"
#include "cascade/classify.hpp"
#include "cascade/common.hpp"
#include "cascade/csv.hpp"
#include "cascade/events.hpp"
#include "cascade/metrics.hpp"
#include "cascade/network.hpp"
#include "cascade/parallel.hpp"
#include "cascade/pipeline.hpp"
#include "cascade/rng.hpp"
#include "cascade/sources.hpp"
#include "cascade/stats.hpp"
#include "cascade/text.hpp"
#include "cascade/topics.hpp"
#include "cascade/tree.hpp"
#include "json.hpp"

using namespace cascade;

namespace {

int g_threads = 0;

int threads() { return g_threads > 0 ? g_threads : default_thread_count(); }

std::unordered_set<std::string> parse_bots(const std::string& bots) {
  std::unordered_set<std::string> out;
  for (const auto& part : split(bots, ',')) {
    const auto name = trim(part);
    if (!name.empty()) out.emplace(name);
  }
  return out;
}

std::vector<ThreadEvent> load_events(const std::string& path) {
  return read_events(path);
}

struct CascadeBundle {
  std::vector<CascadeTree> trees;
  std::vector<CascadeMetrics> metrics;
  BuildStats stats;
};

CascadeBundle cascades_from_events(const std::vector<ThreadEvent>& events) {
  CascadeBundle b;
  b.trees = build_cascades(events, b.stats);
  b.metrics.resize(b.trees.size());
  parallel_for(b.trees.size(), threads(), [&](size_t i) {
    b.metrics[i] = compute_metrics(b.trees[i]);
  });
  return b;
}

// Numeric column from a CSV, skipping blank cells (undefined burstiness).
std::vector<double> csv_column(const std::string& path,
                               const std::string& column) {
  const CsvTable table = CsvTable::read_file(path);
  const size_t col = table.column(column);
  std::vector<double> out;
  out.reserve(table.rows());
  for (size_t r = 0; r < table.rows(); ++r) {
    const std::string& cell = table.cell(r, col);
    if (cell.empty()) continue;
    const auto v = parse_double(cell);
    if (!v) {
      throw io_error(path + ": non-numeric value '" + cell + "' in column " +
                     column);
    }
    out.push_back(*v);
  }
  return out;
}

std::string ccdf_csv(const Ccdf& c) {
  std::string out;
  write_csv_row(out, {"value", "probability"});
  for (const auto& p : c.points) {
    write_csv_row(out, {format_double(p.value), format_double(p.probability)});
  }
  return out;
}

void emit(const std::string& path, std::string_view content) {
  if (path == "-") {
    std::fwrite(content.data(), 1, content.size(), stdout);
  } else {
    write_file_atomic(path, content);
  }
}

// Token documents either from a tokens.jsonl file ({"id","tokens"} per line)
// or from an events file, tokenized with stop words removed.
struct TokenDocs {
  std::vector<std::string> ids;
  std::vector<std::vector<std::string>> docs;
};

TokenDocs load_token_docs(const std::string& tokens_path,
                          const std::string& events_path,
                          const std::string& kind) {
  TokenDocs out;
  if (!tokens_path.empty()) {
    LineReader reader(tokens_path);
    std::string line;
    size_t lineno = 0;
    while (reader.next(line)) {
      ++lineno;
      if (trim(line).empty()) continue;
      const auto where = tokens_path + ":" + std::to_string(lineno);
      nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
      if (!j.is_object() || !j.contains("id") || !j["id"].is_string() ||
          !j.contains("tokens") || !j["tokens"].is_array()) {
        throw io_error(where + ": expected {\"id\",\"tokens\"}");
      }
      std::vector<std::string> doc;
      for (const auto& t : j["tokens"]) {
        if (!t.is_string()) throw io_error(where + ": non-string token");
        doc.push_back(t.get<std::string>());
      }
      out.ids.push_back(j["id"].get<std::string>());
      out.docs.push_back(std::move(doc));
    }
    return out;
  }
  const EventKind want = kind == "comment" ? EventKind::comment : EventKind::post;
  const auto& stops = default_stopwords();
  for (const auto& ev : load_events(events_path)) {
    if (ev.kind != want) continue;
    auto tokens = tokenize(ev.text);
    remove_stopwords(tokens, stops);
    out.ids.push_back(ev.id);
    out.docs.push_back(std::move(tokens));
  }
  return out;
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

void write_percolation(const std::string& net_path, const std::string& grid,
                       bool adaptive, const std::string& out_path) {
  const CommentNetwork net = load_network(net_path);
  const PercolationTrace trace = percolate(net, parse_grid(grid), adaptive);
  std::string out;
  write_csv_row(out, {"q", "g"});
  for (const auto& p : trace.points) {
    write_csv_row(out, {format_double(p.q), format_double(p.g)});
  }
  emit(out_path, out);
}

// ---- subcommand bodies ----

void cmd_ingest(const std::string& posts, const std::string& comments,
                const std::string& bots, const std::string& out_path) {
  std::vector<ThreadEvent> events;
  auto sink = [&](ThreadEvent&& ev) { events.push_back(std::move(ev)); };
  const IngestReport post_report = parse_dump_file(posts, EventKind::post, sink);
  const IngestReport comment_report =
      parse_dump_file(comments, EventKind::comment, sink);
  IngestReport report;
  filter_events(events, parse_bots(bots), report);
  write_events(out_path, events);
  std::fprintf(stderr,
               "ingest: %zu events, %llu malformed lines, %llu bot comments "
               "dropped\n",
               events.size(),
               static_cast<unsigned long long>(post_report.malformed_lines +
                                               comment_report.malformed_lines),
               static_cast<unsigned long long>(report.bot_comments_dropped));
}

void cmd_metrics(const std::string& events_path, const std::string& out_path,
                 const std::string& jsonl_path, const std::string& monthly_path) {
  const CascadeBundle b = cascades_from_events(load_events(events_path));
  emit(out_path, metrics_csv(b.metrics));
  if (!jsonl_path.empty()) emit(jsonl_path, metrics_jsonl(b.metrics));
  if (!monthly_path.empty()) {
    std::string out;
    write_csv_row(out, {"month", "cascades"});
    for (const auto& [month, count] : monthly_counts(b.metrics)) {
      write_csv_row(out, {month, std::to_string(count)});
    }
    emit(monthly_path, out);
  }
  std::fprintf(stderr, "metrics: %zu cascades, %llu orphans, %llu duplicates\n",
               b.trees.size(), static_cast<unsigned long long>(b.stats.orphans),
               static_cast<unsigned long long>(b.stats.duplicates));
}

void cmd_growth(const std::string& events_path, const std::string& out_path,
                size_t max_index) {
  const std::vector<ThreadEvent> events = load_events(events_path);
  BuildStats stats;
  const std::vector<CascadeTree> trees = build_cascades(events, stats);
  std::vector<GrowthCurves> curves(trees.size());
  parallel_for(trees.size(), threads(), [&](size_t i) {
    curves[i] = growth_curves(trees[i], max_index);
  });

  // mean +- normal-approximation ci over the cascades that reach each index
  struct Acc {
    std::vector<std::vector<double>> at;
    void add(size_t idx, double v) {
      if (at.size() <= idx) at.resize(idx + 1);
      at[idx].push_back(v);
    }
  };
  Acc users, tdepth, tsize, vsize;
  for (const auto& c : curves) {
    for (size_t d = 0; d < c.users_at_depth.size(); ++d) {
      users.add(d, static_cast<double>(c.users_at_depth[d]));
    }
    for (size_t d = 0; d < c.time_to_depth.size(); ++d) {
      tdepth.add(d, c.time_to_depth[d]);
    }
    for (size_t s = 0; s < c.time_to_size.size(); ++s) {
      tsize.add(s + 1, c.time_to_size[s]);
    }
    for (size_t s = 0; s < c.virality_at_size.size(); ++s) {
      vsize.add(s + 1, c.virality_at_size[s]);
    }
  }

  std::string out;
  write_csv_row(out, {"curve", "index", "count", "mean", "ci95_halfwidth"});
  const std::pair<const char*, Acc*> sections[] = {
      {"users_at_depth", &users},
      {"time_to_depth_minutes", &tdepth},
      {"time_to_size_minutes", &tsize},
      {"virality_at_size", &vsize}};
  for (const auto& [name, acc] : sections) {
    for (size_t i = 0; i < acc->at.size(); ++i) {
      if (acc->at[i].empty()) continue;
      const SummaryStats st = summary_stats(acc->at[i], false);
      write_csv_row(out, {name, std::to_string(i), std::to_string(st.count),
                          format_double(st.mean_log),
                          format_double(st.ci95_halfwidth)});
    }
  }
  emit(out_path, out);
}

void cmd_ccdf(const std::string& column, const std::string& in_path,
              const std::string& out_path) {
  emit(out_path, ccdf_csv(ccdf(csv_column(in_path, column))));
}

void cmd_kstest(const std::string& column, const std::string& a_path,
                const std::string& b_path, const std::string& out_path) {
  const KsResult r =
      ks_two_sample(csv_column(a_path, column), csv_column(b_path, column));
  std::string out;
  write_csv_row(out, {"column", "d", "p", "n", "m"});
  write_csv_row(out, {column, format_double(r.d_statistic),
                      format_double(r.p_value), std::to_string(r.n),
                      std::to_string(r.m)});
  emit(out_path, out);
}

void cmd_affect(const std::string& lexicon_path, const std::string& events_path,
                const std::string& out_path) {
  const Lexicon lexicon = load_lexicon_file(lexicon_path);
  const std::vector<ThreadEvent> events = load_events(events_path);
  std::vector<AffectScores> scores(events.size());
  parallel_for(events.size(), threads(), [&](size_t i) {
    scores[i] = score_affect(tokenize(events[i].text), lexicon);
  });
  std::string out;
  std::vector<std::string> header = {"id"};
  for (const auto label : kAffectLabels) header.emplace_back(label);
  write_csv_row(out, header);
  for (size_t i = 0; i < events.size(); ++i) {
    std::vector<std::string> row = {events[i].id};
    for (double v : scores[i].scores) row.push_back(format_double(v));
    write_csv_row(out, row);
  }
  emit(out_path, out);
}

void cmd_lda_fit(const TokenDocs& input, int k, uint64_t vocab_cap,
                 double alpha, double beta, int iterations, uint64_t seed,
                 const std::string& model_path, const std::string& theta_path) {
  const Vocabulary vocab = build_vocabulary(input.docs, vocab_cap);
  std::vector<std::vector<int32_t>> docs(input.docs.size());
  for (size_t d = 0; d < input.docs.size(); ++d) {
    for (const auto& w : input.docs[d]) {
      const auto it = vocab.index.find(w);
      if (it != vocab.index.end()) docs[d].push_back(it->second);
    }
  }
  std::vector<std::string> words;
  words.reserve(vocab.ranked.size());
  for (const auto& entry : vocab.ranked) words.push_back(entry.first);
  const double a = alpha > 0.0 ? alpha : lda_default_alpha(k);
  const LdaResult fit =
      fit_lda(docs, std::move(words), k, a, beta, iterations, seed);
  save_model(model_path, fit.model);
  if (!theta_path.empty()) {
    emit(theta_path, theta_csv(input.ids, fit.doc_topics, k));
  }
}

void cmd_lda_infer(const TokenDocs& input, const std::string& model_path,
                   int iterations, uint64_t seed,
                   const std::string& theta_path) {
  const TopicModel model = load_model(model_path);
  std::unordered_map<std::string, int32_t> index;
  for (size_t w = 0; w < model.vocab.size(); ++w) {
    index.emplace(model.vocab[w], static_cast<int32_t>(w));
  }
  std::vector<std::vector<int32_t>> docs(input.docs.size());
  for (size_t d = 0; d < input.docs.size(); ++d) {
    for (const auto& w : input.docs[d]) {
      const auto it = index.find(w);
      if (it != index.end()) docs[d].push_back(it->second);
    }
  }
  std::vector<DocTopics> theta(docs.size());
  parallel_for(docs.size(), threads(), [&](size_t d) {
    theta[d] = infer_topics(model, docs[d], iterations,
                            derive_seed(seed, static_cast<uint64_t>(d)));
  });
  emit(theta_path, theta_csv(input.ids, theta, model.k));
}

void cmd_network_build(const std::string& events_path,
                       const std::string& out_path) {
  const CascadeBundle b = cascades_from_events(load_events(events_path));
  const CommentNetwork net = build_comment_network(b.trees);
  save_network(out_path, net);
  uint64_t total = 0;
  for (uint32_t d : degrees(net)) total += d;
  std::fprintf(stderr, "network: %zu nodes, %zu edges, mean degree %s\n",
               net.nodes.size(), net.edges.size(),
               net.nodes.empty()
                   ? "0"
                   : format_double(static_cast<double>(total) /
                                   static_cast<double>(net.nodes.size()))
                         .c_str());
}

void cmd_network_degrees(const std::string& net_path,
                         const std::string& out_path) {
  emit(out_path, ccdf_csv(degree_distribution(load_network(net_path))));
}

void cmd_features(const std::string& metrics_path, const std::string& affect_path,
                  const std::string& theta_path, const std::string& events_path,
                  const std::string& out_path) {
  const CsvTable metrics = CsvTable::read_file(metrics_path);
  const CsvTable affect = CsvTable::read_file(affect_path);
  const CsvTable theta = CsvTable::read_file(theta_path);

  std::unordered_map<std::string, std::string> label_of;
  for (const auto& ev : load_events(events_path)) {
    if (ev.kind == EventKind::post) label_of.emplace(ev.id, ev.community);
  }

  const char* kDynamic[] = {"size", "depth", "virality", "lifetime_minutes",
                            "unique_users"};
  std::vector<size_t> mcols;
  for (const char* c : kDynamic) mcols.push_back(metrics.column(c));
  const size_t m_id = metrics.column("root_id");

  std::vector<size_t> acols;
  for (const auto label : kAffectLabels) {
    acols.push_back(affect.column(std::string(label)));
  }
  const size_t a_id = affect.column("id");

  std::vector<size_t> tcols;
  for (int t = 0;; ++t) {
    const std::string name = "topic" + std::to_string(t);
    if (!theta.has_column(name)) break;
    tcols.push_back(theta.column(name));
  }
  if (tcols.empty()) throw io_error(theta_path + ": no topic columns");
  const size_t t_id = theta.column("doc_id");

  std::unordered_map<std::string, size_t> affect_row, theta_row;
  for (size_t r = 0; r < affect.rows(); ++r) {
    affect_row.emplace(affect.cell(r, a_id), r);
  }
  for (size_t r = 0; r < theta.rows(); ++r) {
    theta_row.emplace(theta.cell(r, t_id), r);
  }

  std::string out;
  {
    std::vector<std::string> header = {"root_id"};
    for (const char* c : kDynamic) header.emplace_back(c);
    for (const auto label : kAffectLabels) header.emplace_back(label);
    for (size_t t = 0; t < tcols.size(); ++t) {
      header.push_back("topic" + std::to_string(t));
    }
    header.emplace_back("label");
    write_csv_row(out, header);
  }

  uint64_t rows = 0, dropped = 0;
  for (size_t r = 0; r < metrics.rows(); ++r) {
    const std::string& id = metrics.cell(r, m_id);
    const auto a = affect_row.find(id);
    const auto t = theta_row.find(id);
    const auto l = label_of.find(id);
    if (a == affect_row.end() || t == theta_row.end() || l == label_of.end()) {
      ++dropped;
      continue;
    }
    std::vector<std::string> row = {id};
    for (size_t c : mcols) row.push_back(metrics.cell(r, c));
    for (size_t c : acols) row.push_back(affect.cell(a->second, c));
    for (size_t c : tcols) row.push_back(theta.cell(t->second, c));
    row.push_back(l->second);
    write_csv_row(out, row);
    ++rows;
  }
  emit(out_path, out);
  std::fprintf(stderr, "features: %llu rows, %llu posts dropped\n",
               static_cast<unsigned long long>(rows),
               static_cast<unsigned long long>(dropped));
}

void cmd_classify(const std::string& features_path,
                  const std::string& combination, int trials,
                  double split_fraction, int trees, uint64_t seed,
                  const std::string& positive, const std::string& report_path) {
  const CsvTable table = CsvTable::read_file(features_path);

  Dataset full;
  full.feature_names = {"size", "depth", "virality", "lifetime_minutes",
                        "unique_users"};
  for (const auto label : kAffectLabels) {
    full.feature_names.emplace_back(label);
  }
  for (int t = 0; t < 20; ++t) {
    full.feature_names.push_back("topic" + std::to_string(t));
  }
  std::vector<size_t> cols;
  for (const auto& name : full.feature_names) cols.push_back(table.column(name));
  const size_t label_col = table.column("label");

  for (size_t r = 0; r < table.rows(); ++r) {
    std::vector<double> row;
    row.reserve(cols.size());
    for (size_t c : cols) {
      const auto v = parse_double(table.cell(r, c));
      if (!v) {
        throw io_error(features_path + ": non-numeric feature '" +
                       table.cell(r, c) + "'");
      }
      row.push_back(*v);
    }
    full.rows.push_back(std::move(row));
    full.labels.push_back(table.cell(r, label_col) == positive ? 1 : 0);
  }

  std::vector<std::string> combos;
  if (combination == "all") {
    combos = all_combinations();
  } else {
    for (const auto& part : split(combination, ',')) {
      const auto name = trim(part);
      if (!name.empty()) combos.emplace_back(name);
    }
    if (combos.empty()) {
      throw std::invalid_argument("no combinations in '" + combination + "'");
    }
  }

  ForestConfig fc;
  fc.trees = trees;
  fc.seed = seed;
  fc.threads = threads();
  const auto reports = run_trials(full, combos, trials, split_fraction, fc);

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
  emit(report_path, out);
}

void cmd_sources(const std::string& map_path, const std::string& events_path,
                 const std::string& metrics_path, const std::string& out_path) {
  const DomainMap map = load_domain_map(map_path);
  std::vector<SourceAssignment> assignments;
  for (const auto& ev : load_events(events_path)) {
    if (ev.kind == EventKind::post) {
      assignments.push_back(classify_source(ev, map));
    }
  }

  const CsvTable table = CsvTable::read_file(metrics_path);
  const size_t id_col = table.column("root_id");
  const size_t size_col = table.column("size");
  const size_t depth_col = table.column("depth");
  const size_t vir_col = table.column("virality");
  std::vector<CascadeMetrics> metrics;
  metrics.reserve(table.rows());
  for (size_t r = 0; r < table.rows(); ++r) {
    CascadeMetrics m;
    m.root_id = table.cell(r, id_col);
    const auto size = parse_int64(table.cell(r, size_col));
    const auto depth = parse_int64(table.cell(r, depth_col));
    const auto virality = parse_double(table.cell(r, vir_col));
    if (!size || !depth || !virality) {
      throw io_error(metrics_path + ": bad metrics row " + std::to_string(r + 2));
    }
    m.size = static_cast<uint32_t>(*size);
    m.depth = static_cast<uint32_t>(*depth);
    m.virality = *virality;
    metrics.push_back(std::move(m));
  }
  emit(out_path, subgroup_report_csv(assignments, metrics));
}

void cmd_report(const std::string& metrics_path, const std::string& compare_path,
                const std::string& out_path) {
  struct Column {
    const char* name;
    bool log_transform;
  };
  constexpr Column kColumns[] = {
      {"size", true},     {"unique_users", true},      {"depth", true},
      {"virality", true}, {"lifetime_minutes", true},  {"burstiness", false},
  };
  const bool comparing = !compare_path.empty();
  std::string out;
  std::vector<std::string> header = {
      "metric", "count", "mean_log", "std_log", "ci95_halfwidth", "min",
      "q1",     "median", "q3",      "max",     "tukey_outliers"};
  if (comparing) {
    header.insert(header.end(), {"count_b", "mean_log_b", "ks_d", "ks_p"});
  }
  write_csv_row(out, header);
  for (const auto& col : kColumns) {
    const std::vector<double> a = csv_column(metrics_path, col.name);
    if (a.empty()) continue;
    const SummaryStats st = summary_stats(a, col.log_transform);
    std::vector<std::string> row = {
        col.name,
        std::to_string(st.count),
        format_double(st.mean_log),
        format_double(st.std_log),
        format_double(st.ci95_halfwidth),
        format_double(st.min),
        format_double(st.q1),
        format_double(st.median),
        format_double(st.q3),
        format_double(st.max),
        std::to_string(st.tukey_outlier_count)};
    if (comparing) {
      const std::vector<double> b = csv_column(compare_path, col.name);
      if (b.empty()) {
        row.insert(row.end(), {"0", "", "", ""});
      } else {
        const SummaryStats sb = summary_stats(b, col.log_transform);
        const KsResult ks = ks_two_sample(a, b);
        row.insert(row.end(),
                   {std::to_string(sb.count), format_double(sb.mean_log),
                    format_double(ks.d_statistic), format_double(ks.p_value)});
      }
    }
    write_csv_row(out, row);
  }
  emit(out_path, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discussion cascade analytics"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--threads", g_threads,
                 "worker threads (default: CASCADE_THREADS or hardware)");

  // ingest
  std::string posts, comments, bots = std::string(kDefaultBotName), out;
  auto* ingest = app.add_subcommand("ingest", "normalize raw dumps to events");
  ingest->add_option("--posts", posts, "post dump (jsonl, optionally .gz)")
      ->required();
  ingest->add_option("--comments", comments, "comment dump")->required();
  ingest->add_option("--bots", bots, "comma-separated bot usernames to drop");
  ingest->add_option("--out", out, "events output path")->required();

  // metrics
  std::string events_path, jsonl_path, monthly_path;
  auto* metrics = app.add_subcommand("metrics", "per-cascade indicator table");
  metrics->add_option("--events", events_path, "events file")->required();
  metrics->add_option("--out", out, "metrics csv")->required();
  metrics->add_option("--jsonl", jsonl_path, "also write line-delimited json");
  metrics->add_option("--monthly", monthly_path, "also write monthly counts");

  // growth
  size_t max_index = 100;
  auto* growth = app.add_subcommand("growth", "aggregated growth curves");
  growth->add_option("--events", events_path, "events file")->required();
  growth->add_option("--out", out, "growth csv")->required();
  growth->add_option("--max-index", max_index, "cap depth/size indices");

  // ccdf
  std::string column, in_path;
  auto* ccdf_cmd = app.add_subcommand("ccdf", "complementary cdf of a column");
  ccdf_cmd->add_option("--column", column, "column name")->required();
  ccdf_cmd->add_option("input", in_path, "metrics csv")->required();
  ccdf_cmd->add_option("--out", out, "ccdf csv")->required();

  // kstest
  std::string b_path;
  auto* kstest = app.add_subcommand("kstest", "two-sample K-S test on a column");
  kstest->add_option("--column", column, "column name")->required();
  kstest->add_option("a", in_path, "first csv")->required();
  kstest->add_option("b", b_path, "second csv")->required();
  kstest->add_option("--out", out, "result csv (default stdout)");

  // affect
  std::string lexicon_path;
  auto* affect = app.add_subcommand("affect", "lexicon sentiment/emotion scores");
  affect->add_option("--lexicon", lexicon_path, "word-emotion lexicon")
      ->required();
  affect->add_option("--events", events_path, "events file")->required();
  affect->add_option("--out", out, "affect csv")->required();

  // lda fit / infer
  std::string tokens_path, model_path, theta_path, kind = "post";
  int k = 20, iterations = kLdaDefaultIterations;
  uint64_t vocab_cap = 10000, seed = 1;
  double alpha = 0.0, beta = kLdaDefaultBeta;
  auto* lda = app.add_subcommand("lda", "topic modeling");
  lda->require_subcommand(1);
  auto* fit = lda->add_subcommand("fit", "fit a topic model");
  fit->add_option("--k", k, "topic count");
  fit->add_option("--vocab", vocab_cap, "vocabulary cap");
  fit->add_option("--in", tokens_path, "tokens.jsonl ({\"id\",\"tokens\"})");
  fit->add_option("--events", events_path, "events file (tokenized here)");
  fit->add_option("--kind", kind, "post|comment when reading events")
      ->check(CLI::IsMember({"post", "comment"}));
  fit->add_option("--alpha", alpha, "doc-topic prior (default 50/k)");
  fit->add_option("--beta", beta, "topic-word prior");
  fit->add_option("--iterations", iterations, "gibbs sweeps");
  fit->add_option("--seed", seed, "rng seed");
  fit->add_option("--model", model_path, "model output")->required();
  fit->add_option("--theta", theta_path, "document-topic csv");
  auto* infer = lda->add_subcommand("infer", "infer theta with a frozen model");
  infer->add_option("--model", model_path, "fitted model")->required();
  infer->add_option("--in", tokens_path, "tokens.jsonl");
  infer->add_option("--events", events_path, "events file");
  infer->add_option("--kind", kind, "post|comment when reading events")
      ->check(CLI::IsMember({"post", "comment"}));
  infer->add_option("--iterations", iterations, "gibbs sweeps");
  infer->add_option("--seed", seed, "rng seed");
  infer->add_option("--theta", theta_path, "document-topic csv")->required();

  // network build / degrees / percolate
  std::string net_path, grid = "0:0.5:0.005";
  bool adaptive = false;
  auto* network = app.add_subcommand("network", "comment network tools");
  network->require_subcommand(1);
  auto* nbuild = network->add_subcommand("build", "events to network file");
  nbuild->add_option("--events", events_path, "events file")->required();
  nbuild->add_option("--out", out, "network file")->required();
  auto* ndeg = network->add_subcommand("degrees", "degree ccdf");
  ndeg->add_option("--net", net_path, "network file")->required();
  ndeg->add_option("--out", out, "ccdf csv")->required();
  auto* nperc = network->add_subcommand("percolate", "targeted degree removal");
  nperc->add_option("--net", net_path, "network file")->required();
  nperc->add_option("--grid", grid, "q grid start:end:step");
  nperc->add_flag("--adaptive", adaptive, "recompute degrees after removals");
  nperc->add_option("--out", out, "trace csv")->required();

  // percolate (shorthand for network percolate)
  auto* perc = app.add_subcommand("percolate", "targeted degree removal");
  perc->add_option("--net", net_path, "network file")->required();
  perc->add_option("--grid", grid, "q grid start:end:step");
  perc->add_flag("--adaptive", adaptive, "recompute degrees after removals");
  perc->add_option("--out", out, "trace csv")->required();

  // features
  std::string metrics_path, affect_path;
  auto* features = app.add_subcommand("features", "join feature blocks by post");
  features->add_option("--metrics", metrics_path, "metrics csv")->required();
  features->add_option("--affect", affect_path, "affect csv")->required();
  features->add_option("--theta", theta_path, "post theta csv")->required();
  features->add_option("--events", events_path, "events file (labels)")
      ->required();
  features->add_option("--out", out, "features csv")->required();

  // classify
  std::string combination = "all", positive = "conspiracy", report_path;
  int trials = 10, trees = 200;
  double split_fraction = 0.8;
  auto* classify = app.add_subcommand("classify", "random-forest auc trials");
  classify->add_option("--features", in_path, "features csv")->required();
  classify->add_option("--combination", combination,
                       "all or comma list (dynamic, emotion+topic, ...)");
  classify->add_option("--trials", trials, "split repetitions");
  classify->add_option("--split", split_fraction, "training fraction");
  classify->add_option("--trees", trees, "forest size");
  classify->add_option("--seed", seed, "rng seed");
  classify->add_option("--positive", positive, "label of the positive class");
  classify->add_option("--report", report_path, "auc csv")->required();

  // sources
  std::string map_path;
  auto* sources = app.add_subcommand("sources", "per-subgroup cascade report");
  sources->add_option("--map", map_path, "domain,subgroup csv")->required();
  sources->add_option("--events", events_path, "events file")->required();
  sources->add_option("--metrics", metrics_path, "metrics csv")->required();
  sources->add_option("--out", out, "subgroup report csv")->required();

  // report
  std::string compare_path;
  auto* report = app.add_subcommand("report", "summary statistics table");
  report->add_option("--metrics", metrics_path, "metrics csv")->required();
  report->add_option("--compare", compare_path, "second metrics csv (adds K-S)");
  report->add_option("--out", out, "report csv")->required();

  // pipeline
  std::string config_path, out_dir;
  std::vector<std::string> overrides;
  auto* pipeline = app.add_subcommand("pipeline", "run configured stages");
  pipeline->add_option("--config", config_path, "key = value config file")
      ->required();
  pipeline->add_option("--set", overrides, "override, key=value (repeatable)");
  pipeline->add_option("--out-dir", out_dir, "output directory override");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) {
      cmd_ingest(posts, comments, bots, out);
    } else if (*metrics) {
      cmd_metrics(events_path, out, jsonl_path, monthly_path);
    } else if (*growth) {
      cmd_growth(events_path, out, max_index);
    } else if (*ccdf_cmd) {
      cmd_ccdf(column, in_path, out);
    } else if (*kstest) {
      cmd_kstest(column, in_path, b_path, out.empty() ? "-" : out);
    } else if (*affect) {
      cmd_affect(lexicon_path, events_path, out);
    } else if (*fit) {
      if (tokens_path.empty() == events_path.empty()) {
        throw std::invalid_argument("lda fit needs exactly one of --in/--events");
      }
      cmd_lda_fit(load_token_docs(tokens_path, events_path, kind), k, vocab_cap,
                  alpha, beta, iterations, seed, model_path, theta_path);
    } else if (*infer) {
      if (tokens_path.empty() == events_path.empty()) {
        throw std::invalid_argument(
            "lda infer needs exactly one of --in/--events");
      }
      cmd_lda_infer(load_token_docs(tokens_path, events_path, kind), model_path,
                    iterations, seed, theta_path);
    } else if (*nbuild) {
      cmd_network_build(events_path, out);
    } else if (*ndeg) {
      cmd_network_degrees(net_path, out);
    } else if (*nperc || *perc) {
      write_percolation(net_path, grid, adaptive, out);
    } else if (*features) {
      cmd_features(metrics_path, affect_path, theta_path, events_path, out);
    } else if (*classify) {
      cmd_classify(in_path, combination, trials, split_fraction, trees, seed,
                   positive, report_path);
    } else if (*sources) {
      cmd_sources(map_path, events_path, metrics_path, out);
    } else if (*report) {
      cmd_report(metrics_path, compare_path, out);
    } else if (*pipeline) {
      PipelineConfig cfg = load_pipeline_config(config_path);
      for (const auto& o : overrides) apply_config_override(cfg, o);
      if (!out_dir.empty()) cfg.out_dir = out_dir;
      if (g_threads > 0) cfg.threads = g_threads;
      run_pipeline(cfg);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "cascade: %s\n", e.what());
    return 1;
  }
  return 0;
}
