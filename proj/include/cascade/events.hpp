#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace cascade {

enum class EventKind { post, comment };

// One validated record from a dump. Empty strings stand in for absent
// optional fields (parent_id, author, url).
struct ThreadEvent {
  std::string id;
  EventKind kind = EventKind::post;
  std::string parent_id;  // empty for posts
  std::string root_id;    // == id for posts
  std::string author;     // empty when deleted/unidentifiable
  int64_t created_utc = 0;
  std::string text;  // title+body for posts, body for comments
  std::string url;   // posts only
  std::string community;
};

struct IngestReport {
  uint64_t events_accepted = 0;
  uint64_t malformed_lines = 0;
  uint64_t bot_comments_dropped = 0;
  uint64_t orphan_comments_dropped = 0;
};

inline constexpr std::string_view kDefaultBotName = "AutoModerator";
inline constexpr std::string_view kDeletedMarker = "[deleted]";

// Dump ids arrive prefixed by record type ("t3_abc", "t1_xyz"); references
// only join once the prefix is gone.
std::string normalize_id(std::string_view raw);

// Parse one dump line (post or comment schema). Returns false when the line
// is not valid JSON or a required field is missing/ill-typed.
bool parse_dump_line(std::string_view line, EventKind kind, ThreadEvent& out);

// Line-oriented reader over a plain or gzip-compressed file; one pass,
// memory bounded by the longest line.
class LineReader {
 public:
  explicit LineReader(const std::string& path);
  ~LineReader();
  LineReader(const LineReader&) = delete;
  LineReader& operator=(const LineReader&) = delete;

  // Next line with the trailing newline (and any \r) stripped.
  bool next(std::string& line);

 private:
  void* file_ = nullptr;  // gzFile
  std::string path_;
  std::vector<char> buf_;
  size_t pos_ = 0;
  size_t len_ = 0;
  bool eof_ = false;
};

// Stream a dump file through sink, counting accepted and malformed lines.
IngestReport parse_dump_file(const std::string& path, EventKind kind,
                             const std::function<void(ThreadEvent&&)>& sink);

// true when the event survives bot filtering (posts always do).
bool keep_event(const ThreadEvent& ev,
                const std::unordered_set<std::string>& bot_names);

// Drop bot comments in place, preserving order.
void filter_events(std::vector<ThreadEvent>& events,
                   const std::unordered_set<std::string>& bot_names,
                   IngestReport& report);

// Intermediate event files: line-delimited JSON with sorted keys, one event
// per line. Reading is strict (we wrote the file).
std::string event_to_json(const ThreadEvent& ev);
void write_events(const std::string& path, const std::vector<ThreadEvent>& events);
std::vector<ThreadEvent> read_events(const std::string& path);

}  // namespace cascade
