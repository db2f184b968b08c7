#include "adseg/ingest.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>

#include <nlohmann/json.hpp>

#include "adseg/error.hpp"

namespace adseg {
namespace {

using nlohmann::json;

std::string_view trim_cr(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(s.substr(start));
  return out;
}

std::string_view trim_spaces(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

std::vector<std::string> parse_app_list(std::string_view field, char sep) {
  std::vector<std::string> apps;
  if (trim_spaces(field).empty()) return apps;
  for (auto part : split(field, sep)) {
    part = trim_spaces(part);
    if (!part.empty()) apps.emplace_back(part);
  }
  std::sort(apps.begin(), apps.end());
  apps.erase(std::unique(apps.begin(), apps.end()), apps.end());
  return apps;
}

Timestamp parse_ts_field(std::string_view text, std::size_t line_no,
                         const char* field, const ParseOptions& opts) {
  auto ts = Timestamp::parse(trim_spaces(text));
  if (!ts)
    throw ParseError(ErrorKind::InvalidTimestamp, line_no, field,
                     "invalid timestamp '" + std::string(text) + "'");
  if ((opts.window_start && *ts < *opts.window_start) ||
      (opts.window_end && *ts > *opts.window_end))
    throw ParseError(ErrorKind::InvalidTimestamp, line_no, field,
                     "timestamp " + ts->to_iso() + " outside study window");
  return *ts;
}

InteractionStage parse_stage_field(std::string_view text, std::size_t line_no,
                                   const char* field) {
  auto stage = parse_stage(trim_spaces(text));
  if (!stage)
    throw ParseError(ErrorKind::UnknownStage, line_no, field,
                     "unknown interaction stage '" + std::string(text) + "'");
  return *stage;
}

InteractionRecord parse_jsonl(std::string_view line, const ParseOptions& opts,
                              std::size_t line_no) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw ParseError(ErrorKind::MalformedLine, line_no, "line", "bad JSON");

  static constexpr const char* kFields[] = {"user", "apps",      "ts",  "stage",
                                            "advert", "publisher", "site"};
  for (const char* f : kFields)
    if (!j.contains(f))
      throw ParseError(ErrorKind::MalformedLine, line_no, f,
                       "missing field");
  if (!j["user"].is_string() || !j["apps"].is_array() ||
      !j["ts"].is_string() || !j["stage"].is_string() ||
      !j["advert"].is_string() || !j["publisher"].is_string() ||
      !j["site"].is_string())
    throw ParseError(ErrorKind::MalformedLine, line_no, "line",
                     "field has wrong JSON type");

  InteractionRecord rec;
  rec.user_id = j["user"].get<std::string>();
  if (rec.user_id.empty())
    throw ParseError(ErrorKind::EmptyUserId, line_no, "user", "empty user id");
  for (const auto& a : j["apps"]) {
    if (!a.is_string())
      throw ParseError(ErrorKind::MalformedLine, line_no, "apps",
                       "app list entries must be strings");
    std::string app = a.get<std::string>();
    if (!app.empty()) rec.app_list.push_back(std::move(app));
  }
  std::sort(rec.app_list.begin(), rec.app_list.end());
  rec.app_list.erase(std::unique(rec.app_list.begin(), rec.app_list.end()),
                     rec.app_list.end());
  rec.ts = parse_ts_field(j["ts"].get<std::string>(), line_no, "ts", opts);
  rec.stage = parse_stage_field(j["stage"].get<std::string>(), line_no, "stage");
  rec.advert = j["advert"].get<std::string>();
  if (rec.advert.empty())
    throw ParseError(ErrorKind::MalformedLine, line_no, "advert",
                     "empty advert id");
  rec.publisher = j["publisher"].get<std::string>();
  rec.site = j["site"].get<std::string>();
  return rec;
}

InteractionRecord parse_csv(std::string_view line, const ParseOptions& opts,
                            std::size_t line_no) {
  auto fields = split(line, ',');
  if (fields.size() != 7)
    throw ParseError(ErrorKind::MalformedLine, line_no, "line",
                     "expected 7 columns, got " + std::to_string(fields.size()));

  InteractionRecord rec;
  rec.user_id = std::string(trim_spaces(fields[0]));
  if (rec.user_id.empty())
    throw ParseError(ErrorKind::EmptyUserId, line_no, "user_id",
                     "empty user id");
  rec.app_list = parse_app_list(fields[1], '|');
  rec.ts = parse_ts_field(fields[2], line_no, "date", opts);
  rec.stage = parse_stage_field(fields[3], line_no, "interaction");
  rec.advert = std::string(trim_spaces(fields[4]));
  if (rec.advert.empty())
    throw ParseError(ErrorKind::MalformedLine, line_no, "advert",
                     "empty advert id");
  rec.publisher = std::string(trim_spaces(fields[5]));
  rec.site = std::string(trim_spaces(fields[6]));
  return rec;
}

}  // namespace

std::optional<LogFormat> parse_log_format(std::string_view text) {
  if (text == "jsonl") return LogFormat::Jsonl;
  if (text == "csv") return LogFormat::Csv;
  return std::nullopt;
}

std::string_view csv_header() {
  return "user_id,app_list,date,interaction,advert,publisher,site";
}

void check_csv_header(std::string_view line, std::size_t line_no) {
  std::string got;
  for (char c : trim_cr(line))
    if (c != ' ')
      got.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (got != csv_header())
    throw ParseError(ErrorKind::MalformedLine, line_no, "header",
                     "CSV header row required: " + std::string(csv_header()));
}

InteractionRecord parse_record(std::string_view line, const ParseOptions& opts,
                               std::size_t line_no) {
  line = trim_cr(line);
  switch (opts.format) {
    case LogFormat::Jsonl: return parse_jsonl(line, opts, line_no);
    case LogFormat::Csv: return parse_csv(line, opts, line_no);
  }
  throw Error(ErrorKind::BadConfig, "unknown log format");
}

std::uint64_t FirstOccurrenceStore::pack_key(std::uint32_t user,
                                             std::uint32_t advert,
                                             InteractionStage stage) {
  return (static_cast<std::uint64_t>(user) << 32) |
         (static_cast<std::uint64_t>(advert) << 3) |
         static_cast<std::uint64_t>(stage_ordinal(stage));
}

std::uint32_t FirstOccurrenceStore::intern(
    std::unordered_map<std::string, std::uint32_t>& pool,
    std::vector<std::string>& names, const std::string& s) {
  auto it = pool.find(s);
  if (it != pool.end()) return it->second;
  const auto id = static_cast<std::uint32_t>(names.size());
  names.push_back(s);
  pool.emplace(s, id);
  return id;
}

void FirstOccurrenceStore::add(const InteractionRecord& rec) {
  const std::uint32_t user = intern(user_pool_, user_names_, rec.user_id);
  if (user_apps_.size() <= user) user_apps_.resize(user + 1);

  // app union accumulates over every record, kept or not
  auto& apps = user_apps_[user];
  for (const auto& app : rec.app_list) {
    const std::uint32_t id = intern(app_pool_, app_names_, app);
    auto pos = std::lower_bound(apps.begin(), apps.end(), id,
                                [this](std::uint32_t a, std::uint32_t b) {
                                  return app_names_[a] < app_names_[b];
                                });
    if (pos == apps.end() || *pos != id) apps.insert(pos, id);
  }

  const std::uint32_t advert = intern(advert_pool_, advert_names_, rec.advert);
  const std::uint64_t key = pack_key(user, advert, rec.stage);
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    Entry e;
    e.user = user;
    e.advert = advert;
    e.stage = rec.stage;
    e.ts = rec.ts;
    e.publisher = intern(publisher_pool_, publisher_names_, rec.publisher);
    e.site = intern(site_pool_, site_names_, rec.site);
    entries_.emplace(key, e);
  } else if (rec.ts < it->second.ts) {
    // strictly earlier wins; equal timestamps keep the first record seen
    it->second.ts = rec.ts;
    it->second.publisher = intern(publisher_pool_, publisher_names_, rec.publisher);
    it->second.site = intern(site_pool_, site_names_, rec.site);
  }
}

void FirstOccurrenceStore::merge(const FirstOccurrenceStore& other) {
  // fold other's users even when they carry no entries (apps-only users)
  for (std::uint32_t u = 0; u < other.user_names_.size(); ++u) {
    InteractionRecord apps_only;
    apps_only.user_id = other.user_names_[u];
    for (auto app_id : other.user_apps_[u])
      apps_only.app_list.push_back(other.app_names_[app_id]);
    const std::uint32_t user = intern(user_pool_, user_names_, apps_only.user_id);
    if (user_apps_.size() <= user) user_apps_.resize(user + 1);
    auto& apps = user_apps_[user];
    for (const auto& app : apps_only.app_list) {
      const std::uint32_t id = intern(app_pool_, app_names_, app);
      auto pos = std::lower_bound(apps.begin(), apps.end(), id,
                                  [this](std::uint32_t a, std::uint32_t b) {
                                    return app_names_[a] < app_names_[b];
                                  });
      if (pos == apps.end() || *pos != id) apps.insert(pos, id);
    }
  }
  for (const auto& rec : other.to_records()) {
    InteractionRecord r = rec;
    r.app_list.clear();  // unions already folded above
    add(r);
  }
}

std::vector<std::string> FirstOccurrenceStore::user_apps(
    std::string_view user) const {
  std::vector<std::string> out;
  auto it = user_pool_.find(std::string(user));
  if (it == user_pool_.end()) return out;
  for (auto id : user_apps_[it->second]) out.push_back(app_names_[id]);
  return out;
}

std::optional<InteractionRecord> FirstOccurrenceStore::find(
    std::string_view user, std::string_view advert,
    InteractionStage stage) const {
  auto uit = user_pool_.find(std::string(user));
  auto ait = advert_pool_.find(std::string(advert));
  if (uit == user_pool_.end() || ait == advert_pool_.end()) return std::nullopt;
  auto eit = entries_.find(pack_key(uit->second, ait->second, stage));
  if (eit == entries_.end()) return std::nullopt;
  const Entry& e = eit->second;
  InteractionRecord rec;
  rec.user_id = user_names_[e.user];
  for (auto id : user_apps_[e.user]) rec.app_list.push_back(app_names_[id]);
  rec.ts = e.ts;
  rec.stage = e.stage;
  rec.advert = advert_names_[e.advert];
  rec.publisher = publisher_names_[e.publisher];
  rec.site = site_names_[e.site];
  return rec;
}

std::vector<InteractionRecord> FirstOccurrenceStore::to_records() const {
  std::vector<const Entry*> sorted;
  sorted.reserve(entries_.size());
  for (const auto& [key, e] : entries_) sorted.push_back(&e);
  std::sort(sorted.begin(), sorted.end(), [this](const Entry* a, const Entry* b) {
    if (user_names_[a->user] != user_names_[b->user])
      return user_names_[a->user] < user_names_[b->user];
    if (advert_names_[a->advert] != advert_names_[b->advert])
      return advert_names_[a->advert] < advert_names_[b->advert];
    return stage_ordinal(a->stage) < stage_ordinal(b->stage);
  });
  std::vector<InteractionRecord> out;
  out.reserve(sorted.size());
  for (const Entry* e : sorted) {
    InteractionRecord rec;
    rec.user_id = user_names_[e->user];
    for (auto id : user_apps_[e->user]) rec.app_list.push_back(app_names_[id]);
    rec.ts = e->ts;
    rec.stage = e->stage;
    rec.advert = advert_names_[e->advert];
    rec.publisher = publisher_names_[e->publisher];
    rec.site = site_names_[e->site];
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<std::string> FirstOccurrenceStore::users() const {
  std::vector<std::string> out = user_names_;
  std::sort(out.begin(), out.end());
  return out;
}

void FirstOccurrenceStore::for_each_entry(
    const std::function<void(const Entry&)>& fn) const {
  for (const auto& [key, e] : entries_) fn(e);
}

FirstOccurrenceStore dedup_first(const std::vector<InteractionRecord>& records) {
  FirstOccurrenceStore store;
  for (const auto& rec : records) store.add(rec);
  return store;
}

std::vector<FunnelGap> funnel_report(const FirstOccurrenceStore& store) {
  // counts[advert][stage]
  std::unordered_map<std::uint32_t, std::array<std::size_t, kStageCount>> counts;
  store.for_each_entry([&](const FirstOccurrenceStore::Entry& e) {
    counts[e.advert][stage_ordinal(e.stage)]++;
  });
  std::vector<FunnelGap> gaps;
  for (const auto& [advert, per_stage] : counts) {
    for (int s = 1; s < kStageCount; ++s) {
      if (per_stage[s] > per_stage[s - 1]) {
        gaps.push_back({store.advert_name(advert),
                        static_cast<InteractionStage>(s), per_stage[s],
                        per_stage[s - 1]});
      }
    }
  }
  std::sort(gaps.begin(), gaps.end(), [](const FunnelGap& a, const FunnelGap& b) {
    if (a.advert != b.advert) return a.advert < b.advert;
    return stage_ordinal(a.stage) < stage_ordinal(b.stage);
  });
  return gaps;
}

IngestStats ingest_file(const std::string& path, const IngestOptions& opts,
                        FirstOccurrenceStore& store,
                        const std::function<void(const ParseError&)>& on_error) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open log file: " + path);

  IngestStats stats;
  std::string line;
  std::size_t line_no = 0;

  if (opts.parse.format == LogFormat::Csv) {
    if (!std::getline(in, line))
      throw ParseError(ErrorKind::MalformedLine, 1, "header",
                       "empty CSV file (header row required)");
    ++line_no;
    check_csv_header(line, line_no);
  }

  while (std::getline(in, line)) {
    ++line_no;
    if (trim_cr(line).empty()) continue;
    ++stats.lines_in;
    try {
      InteractionRecord rec = parse_record(line, opts.parse, line_no);
      if (opts.registry && !opts.registry->genre_of(rec.advert)) {
        throw ParseError(ErrorKind::UnregisteredAdvert, line_no, "advert",
                         "advert '" + rec.advert + "' not in registry");
      }
      store.add(rec);
      ++stats.records_ok;
    } catch (const ParseError& e) {
      if (!opts.lenient) throw;
      if (e.kind() == ErrorKind::UnregisteredAdvert)
        ++stats.skipped_unregistered;
      else
        ++stats.parse_errors;
      if (on_error) on_error(e);
    }
  }
  return stats;
}

namespace {

json store_meta(const FirstOccurrenceStore& store,
                std::optional<std::uint64_t> seed) {
  json meta;
  meta["format"] = "adseg-store";
  meta["version"] = 1;
  meta["entries"] = store.size();
  meta["users"] = store.user_count();
  if (seed) meta["seed"] = *seed;
  return meta;
}

}  // namespace

void FirstOccurrenceStore::save_json(const std::string& path,
                                     std::optional<std::uint64_t> seed) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, "cannot write store: " + path);

  // streamed by hand: stores can be large and element order must be stable
  out << "{\"meta\":" << store_meta(*this, seed).dump() << ",\n\"users\":{";
  auto sorted_users = users();
  bool first = true;
  for (const auto& user : sorted_users) {
    if (!first) out << ",";
    first = false;
    out << '\n' << json(user).dump() << ":" << json(user_apps(user)).dump();
  }
  out << "},\n\"records\":[";
  first = true;
  for (const auto& rec : to_records()) {
    if (!first) out << ",";
    first = false;
    json j;
    j["user"] = rec.user_id;
    j["advert"] = rec.advert;
    j["stage"] = stage_item_name(rec.stage);
    j["ts"] = rec.ts.to_iso();
    j["publisher"] = rec.publisher;
    j["site"] = rec.site;
    out << '\n' << j.dump();
  }
  out << "]}\n";
  if (!out) throw Error(ErrorKind::IoError, "write failed: " + path);
}

FirstOccurrenceStore FirstOccurrenceStore::load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open store: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::IoError,
                "store file is not valid JSON: " + path + " (" + e.what() + ")");
  }
  if (!j.contains("meta") || j["meta"].value("format", "") != "adseg-store")
    throw Error(ErrorKind::IoError, "not an adseg store file: " + path);

  FirstOccurrenceStore store;
  for (const auto& [user, apps] : j.at("users").items()) {
    const std::uint32_t uid =
        store.intern(store.user_pool_, store.user_names_, user);
    if (store.user_apps_.size() <= uid) store.user_apps_.resize(uid + 1);
    for (const auto& app : apps) {
      const std::uint32_t app_id =
          store.intern(store.app_pool_, store.app_names_, app.get<std::string>());
      auto& vec = store.user_apps_[uid];
      auto pos = std::lower_bound(vec.begin(), vec.end(), app_id,
                                  [&store](std::uint32_t a, std::uint32_t b) {
                                    return store.app_names_[a] < store.app_names_[b];
                                  });
      if (pos == vec.end() || *pos != app_id) vec.insert(pos, app_id);
    }
  }
  for (const auto& r : j.at("records")) {
    InteractionRecord rec;
    rec.user_id = r.at("user").get<std::string>();
    rec.advert = r.at("advert").get<std::string>();
    auto stage = parse_stage(r.at("stage").get<std::string>());
    if (!stage)
      throw Error(ErrorKind::IoError, "store has unknown stage: " + path);
    rec.stage = *stage;
    auto ts = Timestamp::parse_iso(r.at("ts").get<std::string>());
    if (!ts)
      throw Error(ErrorKind::IoError, "store has bad timestamp: " + path);
    rec.ts = *ts;
    rec.publisher = r.at("publisher").get<std::string>();
    rec.site = r.at("site").get<std::string>();
    store.add(rec);
  }
  return store;
}

}  // namespace adseg
