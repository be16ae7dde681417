#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cascade {

inline constexpr std::string_view kToolVersion = "1.0.0";

// Unreadable inputs and malformed reference files (lexicon, domain map, CSV
// headers). Dump lines are never fatal; see ingest.
class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

std::string lower_ascii(std::string_view s);
std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

// Shortest round-trip decimal form via std::to_chars, so serialized numbers
// do not depend on locale or printf quirks.
std::string format_double(double v);

std::optional<int64_t> parse_int64(std::string_view s);
std::optional<double> parse_double(std::string_view s);

// UTC calendar month "YYYY-MM" of an epoch timestamp.
std::string month_bucket_utc(int64_t epoch_seconds);

std::string read_file(const std::string& path);
void write_file_atomic(const std::string& path, std::string_view content);

// Raw little-endian POD serialization for the binary cache formats
// (host-endianness; the caches are machine-local artifacts).
template <typename T>
void append_pod(std::string& out, const T& v) {
  static_assert(std::is_trivially_copyable_v<T>);
  out.append(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::string_view buf, size_t& off, const std::string& what) {
  static_assert(std::is_trivially_copyable_v<T>);
  if (off + sizeof(T) > buf.size()) throw io_error(what + ": truncated file");
  T v;
  __builtin_memcpy(&v, buf.data() + off, sizeof(T));
  off += sizeof(T);
  return v;
}

}  // namespace cascade
