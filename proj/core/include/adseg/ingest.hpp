#ifndef ADSEG_INGEST_HPP
#define ADSEG_INGEST_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "adseg/record.hpp"
#include "adseg/registry.hpp"

namespace adseg {

enum class LogFormat { Jsonl, Csv };

std::optional<LogFormat> parse_log_format(std::string_view text);

// Canonical CSV header, Table-order columns. The app list field is
// pipe-delimited inside one column.
std::string_view csv_header();

struct ParseOptions {
  LogFormat format = LogFormat::Jsonl;
  // Inclusive study window; records outside it are rejected.
  std::optional<Timestamp> window_start;
  std::optional<Timestamp> window_end;
};

// Parses one logical line. Throws ParseError (MalformedLine,
// InvalidTimestamp, UnknownStage, EmptyUserId) carrying line number and
// field name. line_no is used only for error reporting.
InteractionRecord parse_record(std::string_view line, const ParseOptions& opts,
                               std::size_t line_no = 0);

// Validates that `line` matches the canonical CSV header.
void check_csv_header(std::string_view line, std::size_t line_no = 1);

// First-occurrence reduction keyed by (user, advert, stage): earliest
// timestamp wins, ties keep the record folded in first. Also accumulates
// each user's app union over ALL records seen, including discarded
// duplicates. Interns strings, so large stores stay compact; the record
// view reports the user's study-wide app union as the app list.
class FirstOccurrenceStore {
public:
  struct Entry {
    std::uint32_t user;
    std::uint32_t advert;
    InteractionStage stage;
    Timestamp ts;
    std::uint32_t publisher;
    std::uint32_t site;
  };

  void add(const InteractionRecord& rec);

  // Equivalent to dedup of the concatenation self-then-other.
  void merge(const FirstOccurrenceStore& other);

  std::size_t size() const { return entries_.size(); }
  std::size_t user_count() const { return user_names_.size(); }

  // Sorted unique app identifiers seen for the user across the study.
  std::vector<std::string> user_apps(std::string_view user) const;

  std::optional<InteractionRecord> find(std::string_view user,
                                        std::string_view advert,
                                        InteractionStage stage) const;

  // All kept records, sorted by (user, advert, stage ordinal); app lists
  // are the per-user unions.
  std::vector<InteractionRecord> to_records() const;

  // Sorted user ids.
  std::vector<std::string> users() const;

  void for_each_entry(
      const std::function<void(const Entry&)>& fn) const;

  const std::string& user_name(std::uint32_t id) const { return user_names_[id]; }
  const std::string& advert_name(std::uint32_t id) const { return advert_names_[id]; }
  std::size_t advert_count() const { return advert_names_.size(); }

  // Sorted unique app ids of user by intern id (empty if none recorded).
  const std::vector<std::uint32_t>& user_app_ids(std::uint32_t user) const {
    return user_apps_[user];
  }
  const std::string& app_name(std::uint32_t id) const { return app_names_[id]; }

  void save_json(const std::string& path,
                 std::optional<std::uint64_t> seed = std::nullopt) const;
  static FirstOccurrenceStore load_json(const std::string& path);

private:
  std::uint32_t intern(std::unordered_map<std::string, std::uint32_t>& pool,
                       std::vector<std::string>& names, const std::string& s);

  std::unordered_map<std::string, std::uint32_t> user_pool_, advert_pool_,
      app_pool_, publisher_pool_, site_pool_;
  std::vector<std::string> user_names_, advert_names_, app_names_,
      publisher_names_, site_names_;
  std::vector<std::vector<std::uint32_t>> user_apps_;  // indexed by user id

  std::unordered_map<std::uint64_t, Entry> entries_;  // key packs (user,advert,stage)

  static std::uint64_t pack_key(std::uint32_t user, std::uint32_t advert,
                                InteractionStage stage);
};

// Folds a record stream into a store.
FirstOccurrenceStore dedup_first(const std::vector<InteractionRecord>& records);

// Diagnostic only: counts, per advert, stages whose first-occurrence user
// count exceeds the preceding stage's. Lossy logs make this legal; it is
// reported, never enforced.
struct FunnelGap {
  std::string advert;
  InteractionStage stage;
  std::size_t stage_users;
  std::size_t prev_stage_users;
};

std::vector<FunnelGap> funnel_report(const FirstOccurrenceStore& store);

struct IngestStats {
  std::size_t lines_in = 0;
  std::size_t records_ok = 0;
  std::size_t parse_errors = 0;    // counted and skipped under lenient mode
  std::size_t skipped_unregistered = 0;
};

struct IngestOptions {
  ParseOptions parse;
  bool lenient = false;
  const AdvertRegistry* registry = nullptr;  // optional advert validation
};

// Reads one log file (JSONL or CSV per options) into the store. Strict
// mode throws on the first bad line; lenient mode counts, reports to
// on_error (if set) and continues.
IngestStats ingest_file(const std::string& path, const IngestOptions& opts,
                        FirstOccurrenceStore& store,
                        const std::function<void(const ParseError&)>& on_error = {});

}  // namespace adseg

#endif  // ADSEG_INGEST_HPP
