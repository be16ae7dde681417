#include "cascade/events.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstring>

#include "cascade/common.hpp"
#include "json.hpp"

namespace cascade {

using nlohmann::json;

std::string normalize_id(std::string_view raw) {
  if (raw.size() >= 3 && raw[0] == 't' && raw[1] >= '0' && raw[1] <= '9' &&
      raw[2] == '_') {
    raw.remove_prefix(3);
  }
  return std::string(raw);
}

namespace {

bool get_required_string(const json& j, const char* key, std::string& out) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) return false;
  out = it->get<std::string>();
  return true;
}

// Dumps carry created_utc as an integer, an integral float, or a numeric
// string depending on the export vintage; all three are accepted.
bool get_created_utc(const json& j, int64_t& out) {
  auto it = j.find("created_utc");
  if (it == j.end()) return false;
  if (it->is_number_integer() || it->is_number_unsigned()) {
    out = it->get<int64_t>();
    return true;
  }
  if (it->is_number_float()) {
    const double v = it->get<double>();
    if (v != static_cast<double>(static_cast<int64_t>(v))) return false;
    out = static_cast<int64_t>(v);
    return true;
  }
  if (it->is_string()) {
    auto parsed = parse_int64(it->get<std::string>());
    if (!parsed) return false;
    out = *parsed;
    return true;
  }
  return false;
}

std::string normalize_author(std::string author) {
  if (author == kDeletedMarker) return std::string();
  return author;
}

}  // namespace

bool parse_dump_line(std::string_view line, EventKind kind, ThreadEvent& out) {
  const json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return false;

  std::string id, author, community;
  if (!get_required_string(j, "id", id)) return false;
  if (!get_required_string(j, "author", author)) return false;
  if (!get_required_string(j, "subreddit", community)) return false;
  int64_t created = 0;
  if (!get_created_utc(j, created) || created <= 0) return false;

  out = ThreadEvent{};
  out.id = normalize_id(id);
  if (out.id.empty()) return false;
  out.kind = kind;
  out.author = normalize_author(std::move(author));
  out.created_utc = created;
  out.community = std::move(community);

  if (kind == EventKind::post) {
    std::string title, selftext;
    if (!get_required_string(j, "title", title)) return false;
    if (!get_required_string(j, "selftext", selftext)) return false;
    out.root_id = out.id;
    out.text = std::move(title);
    if (!selftext.empty()) {
      out.text += '\n';
      out.text += selftext;
    }
    std::string url;
    if (auto it = j.find("url"); it != j.end() && it->is_string()) {
      out.url = it->get<std::string>();
    }
  } else {
    std::string parent, link, body;
    if (!get_required_string(j, "parent_id", parent)) return false;
    if (!get_required_string(j, "link_id", link)) return false;
    if (!get_required_string(j, "body", body)) return false;
    out.parent_id = normalize_id(parent);
    out.root_id = normalize_id(link);
    if (out.parent_id.empty() || out.root_id.empty()) return false;
    out.text = std::move(body);
  }
  return true;
}

LineReader::LineReader(const std::string& path)
    : path_(path), buf_(1 << 16) {
  gzFile f = gzopen(path.c_str(), "rb");
  if (f == nullptr) throw io_error("cannot open " + path);
  gzbuffer(f, 1 << 17);
  file_ = f;
}

LineReader::~LineReader() {
  if (file_ != nullptr) gzclose(static_cast<gzFile>(file_));
}

bool LineReader::next(std::string& line) {
  line.clear();
  for (;;) {
    if (pos_ == len_) {
      if (eof_) break;
      const int got = gzread(static_cast<gzFile>(file_), buf_.data(),
                             static_cast<unsigned>(buf_.size()));
      if (got < 0) throw io_error("read error in " + path_);
      if (got == 0) {
        eof_ = true;
        break;
      }
      pos_ = 0;
      len_ = static_cast<size_t>(got);
    }
    const char* start = buf_.data() + pos_;
    const char* nl = static_cast<const char*>(
        std::memchr(start, '\n', len_ - pos_));
    if (nl == nullptr) {
      line.append(start, len_ - pos_);
      pos_ = len_;
      continue;
    }
    line.append(start, static_cast<size_t>(nl - start));
    pos_ += static_cast<size_t>(nl - start) + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return !line.empty();
}

IngestReport parse_dump_file(const std::string& path, EventKind kind,
                             const std::function<void(ThreadEvent&&)>& sink) {
  LineReader reader(path);
  IngestReport report;
  std::string line;
  ThreadEvent ev;
  while (reader.next(line)) {
    if (parse_dump_line(line, kind, ev)) {
      ++report.events_accepted;
      sink(std::move(ev));
    } else {
      ++report.malformed_lines;
    }
  }
  return report;
}

bool keep_event(const ThreadEvent& ev,
                const std::unordered_set<std::string>& bot_names) {
  if (ev.kind != EventKind::comment) return true;
  if (ev.author.empty()) return true;
  return bot_names.find(ev.author) == bot_names.end();
}

void filter_events(std::vector<ThreadEvent>& events,
                   const std::unordered_set<std::string>& bot_names,
                   IngestReport& report) {
  auto keep_end = std::stable_partition(
      events.begin(), events.end(),
      [&](const ThreadEvent& ev) { return keep_event(ev, bot_names); });
  report.bot_comments_dropped +=
      static_cast<uint64_t>(events.end() - keep_end);
  events.erase(keep_end, events.end());
}

std::string event_to_json(const ThreadEvent& ev) {
  json j;
  j["id"] = ev.id;
  j["kind"] = ev.kind == EventKind::post ? "post" : "comment";
  if (!ev.parent_id.empty()) j["parent_id"] = ev.parent_id;
  j["root_id"] = ev.root_id;
  if (!ev.author.empty()) j["author"] = ev.author;
  j["created_utc"] = ev.created_utc;
  j["text"] = ev.text;
  if (!ev.url.empty()) j["url"] = ev.url;
  j["community"] = ev.community;
  return j.dump();
}

void write_events(const std::string& path,
                  const std::vector<ThreadEvent>& events) {
  std::string out;
  for (const auto& ev : events) {
    out += event_to_json(ev);
    out += '\n';
  }
  write_file_atomic(path, out);
}

std::vector<ThreadEvent> read_events(const std::string& path) {
  LineReader reader(path);
  std::vector<ThreadEvent> events;
  std::string line;
  uint64_t lineno = 0;
  while (reader.next(line)) {
    ++lineno;
    const json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw io_error(path + ":" + std::to_string(lineno) +
                     ": bad event record");
    }
    ThreadEvent ev;
    std::string kind;
    if (!get_required_string(j, "id", ev.id) ||
        !get_required_string(j, "kind", kind) ||
        !get_required_string(j, "root_id", ev.root_id) ||
        !get_created_utc(j, ev.created_utc)) {
      throw io_error(path + ":" + std::to_string(lineno) +
                     ": bad event record");
    }
    if (kind == "post") {
      ev.kind = EventKind::post;
    } else if (kind == "comment") {
      ev.kind = EventKind::comment;
    } else {
      throw io_error(path + ":" + std::to_string(lineno) +
                     ": bad event kind");
    }
    if (auto it = j.find("parent_id"); it != j.end() && it->is_string())
      ev.parent_id = it->get<std::string>();
    if (auto it = j.find("author"); it != j.end() && it->is_string())
      ev.author = it->get<std::string>();
    if (auto it = j.find("url"); it != j.end() && it->is_string())
      ev.url = it->get<std::string>();
    if (auto it = j.find("text"); it != j.end() && it->is_string())
      ev.text = it->get<std::string>();
    if (auto it = j.find("community"); it != j.end() && it->is_string())
      ev.community = it->get<std::string>();
    events.push_back(std::move(ev));
  }
  return events;
}

}  // namespace cascade
