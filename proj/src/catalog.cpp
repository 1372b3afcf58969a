#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>

#include "ag/catalog.hpp"

namespace ag::cat {

const char* to_string(Stage s) {
  switch (s) {
    case Stage::Scheduled: return "SCHEDULED";
    case Stage::Recorded: return "RECORDED";
    case Stage::Inspected: return "INSPECTED";
    case Stage::Segmented: return "SEGMENTED";
  }
  return "?";
}

const char* to_string(StoryKind k) {
  return k == StoryKind::News ? "NEWS" : "NON_NEWS";
}

const char* to_string(FlawType f) {
  switch (f) {
    case FlawType::F1: return "F1";
    case FlawType::F2: return "F2";
    case FlawType::F3: return "F3";
    case FlawType::F4: return "F4";
  }
  return "?";
}

const char* to_string(AnnKind k) {
  switch (k) {
    case AnnKind::StoryLink: return "STORY_LINK";
    case AnnKind::FirstStory: return "FIRST_STORY";
    case AnnKind::NamedEntitySpan: return "NAMED_ENTITY_SPAN";
    case AnnKind::Generic: return "GENERIC";
  }
  return "?";
}

Stage stage_from_string(std::string_view s) {
  if (s == "SCHEDULED") return Stage::Scheduled;
  if (s == "RECORDED") return Stage::Recorded;
  if (s == "INSPECTED") return Stage::Inspected;
  if (s == "SEGMENTED") return Stage::Segmented;
  throw Error(ErrorKind::InvalidArgument, "unknown stage '" + std::string(s) + "'");
}

StoryKind story_kind_from_string(std::string_view s) {
  if (s == "NEWS") return StoryKind::News;
  if (s == "NON_NEWS") return StoryKind::NonNews;
  throw Error(ErrorKind::InvalidArgument,
              "unknown story kind '" + std::string(s) + "'");
}

FlawType flaw_from_string(std::string_view s) {
  if (s == "F1") return FlawType::F1;
  if (s == "F2") return FlawType::F2;
  if (s == "F3") return FlawType::F3;
  if (s == "F4") return FlawType::F4;
  throw Error(ErrorKind::InvalidArgument,
              "flaw type must be one of F1..F4, got '" + std::string(s) + "'");
}

AnnKind ann_kind_from_string(std::string_view s) {
  if (s == "STORY_LINK") return AnnKind::StoryLink;
  if (s == "FIRST_STORY") return AnnKind::FirstStory;
  if (s == "NAMED_ENTITY_SPAN") return AnnKind::NamedEntitySpan;
  if (s == "GENERIC") return AnnKind::Generic;
  throw Error(ErrorKind::InvalidArgument,
              "unknown annotation kind '" + std::string(s) + "'");
}

namespace {

int parse_int(std::string_view s, const char* what) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isdigit(c);
      })) {
    throw Error(ErrorKind::InvalidArgument,
                std::string("bad ") + what + " '" + std::string(s) + "'");
  }
  return std::stoi(std::string(s));
}

std::string pad(int value, int width) {
  std::string s = std::to_string(value);
  while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
  return s;
}

}  // namespace

Date parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    throw Error(ErrorKind::InvalidArgument,
                "date must be YYYY-MM-DD, got '" + std::string(text) + "'");
  }
  Date d{parse_int(text.substr(0, 4), "year"), parse_int(text.substr(5, 2), "month"),
         parse_int(text.substr(8, 2), "day")};
  if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > 31) {
    throw Error(ErrorKind::InvalidArgument,
                "date out of range: '" + std::string(text) + "'");
  }
  return d;
}

std::string to_string(const Date& d) {
  return pad(d.year, 4) + "-" + pad(d.month, 2) + "-" + pad(d.day, 2);
}

TimeOfDay parse_time_of_day(std::string_view text) {
  if (text.size() != 5 || text[2] != ':') {
    throw Error(ErrorKind::InvalidArgument,
                "time of day must be HH:MM, got '" + std::string(text) + "'");
  }
  TimeOfDay t{parse_int(text.substr(0, 2), "hour"),
              parse_int(text.substr(3, 2), "minute")};
  if (t.hour > 23 || t.minute > 59) {
    throw Error(ErrorKind::InvalidArgument,
                "time of day out of range: '" + std::string(text) + "'");
  }
  return t;
}

std::string to_string(const TimeOfDay& t) {
  return pad(t.hour, 2) + ":" + pad(t.minute, 2);
}

std::string derive_story_id(const FileKey& key, long offset_seconds) {
  return key.source + "_" + pad(key.date.year, 4) + pad(key.date.month, 2) +
         pad(key.date.day, 2) + "_" + pad(key.broadcast_start.hour, 2) +
         pad(key.broadcast_start.minute, 2) + "_" + std::to_string(offset_seconds);
}

void Catalog::record(const std::string& kind, const std::string& fields) {
  ++clock_;
  if (!replaying_) {
    events_.push_back(std::to_string(clock_) + "\t" + kind + "\t" + fields);
  }
}

FileEntry& Catalog::entry(const FileKey& key) {
  auto it = files_.find(key);
  if (it == files_.end()) {
    throw Error(ErrorKind::NotFound,
                "no catalog entry for " + key.source + " " + to_string(key.date) +
                    " " + to_string(key.broadcast_start));
  }
  return it->second;
}

const FileEntry* Catalog::find_file(const FileKey& key) const {
  auto it = files_.find(key);
  return it == files_.end() ? nullptr : &it->second;
}

const StoryUnit* Catalog::find_story(const std::string& story_id) const {
  auto it = stories_.find(story_id);
  return it == stories_.end() ? nullptr : &it->second;
}

std::vector<StoryUnit> Catalog::stories_of(const FileKey& key) const {
  std::vector<StoryUnit> out;
  for (const auto& [id, story] : stories_) {
    if (story.file == key) out.push_back(story);
  }
  std::sort(out.begin(), out.end(), [](const StoryUnit& a, const StoryUnit& b) {
    return a.offset_seconds < b.offset_seconds;
  });
  return out;
}

const FileEntry& Catalog::register_recording(const std::string& source, Date date,
                                             TimeOfDay broadcast_start,
                                             int duration_minutes, bool newswire) {
  if (source.empty()) {
    throw Error(ErrorKind::InvalidArgument, "source must be non-empty");
  }
  if (duration_minutes != 30 && duration_minutes != 60) {
    throw Error(ErrorKind::InvalidArgument,
                "file duration must be 30 or 60 minutes, got " +
                    std::to_string(duration_minutes));
  }
  FileKey key{source, date, broadcast_start};
  if (files_.count(key)) {
    throw Error(ErrorKind::Conflict,
                "recording already registered: " + source + " " + to_string(date) +
                    " " + to_string(broadcast_start));
  }
  record("REGISTER", source + "\t" + to_string(date) + "\t" +
                         to_string(broadcast_start) + "\t" +
                         std::to_string(duration_minutes) + "\t" +
                         (newswire ? "newswire" : "broadcast"));
  FileEntry entry;
  entry.key = key;
  entry.stage = Stage::Scheduled;
  entry.duration_minutes = duration_minutes;
  entry.newswire = newswire;
  entry.history.push_back({Stage::Scheduled, clock_});
  return files_.emplace(key, std::move(entry)).first->second;
}

const FileEntry& Catalog::advance_stage(const FileKey& key, Stage next) {
  FileEntry& file = entry(key);
  if (next == Stage::Segmented) {
    throw Error(ErrorKind::InvalidTransition,
                "SEGMENTED is reached through segment_file, not advance_stage");
  }
  if (file.newswire) {
    throw Error(ErrorKind::InvalidTransition,
                "newswire entries are automated and skip " +
                    std::string(to_string(next)));
  }
  int cur = static_cast<int>(file.stage);
  if (static_cast<int>(next) != cur + 1) {
    throw Error(ErrorKind::InvalidTransition,
                std::string("cannot advance from ") + to_string(file.stage) +
                    " to " + to_string(next));
  }
  record("ADVANCE", key.source + "\t" + to_string(key.date) + "\t" +
                        to_string(key.broadcast_start) + "\t" + to_string(next));
  file.stage = next;
  file.history.push_back({next, clock_});
  return file;
}

namespace {

std::string render_boundaries(const std::vector<Boundary>& boundaries) {
  std::string out;
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(boundaries[i].offset_seconds);
    out += ':';
    out += to_string(boundaries[i].kind);
  }
  return out;
}

}  // namespace

std::vector<StoryUnit> Catalog::segment_file(const FileKey& key,
                                             const std::vector<Boundary>& boundaries) {
  FileEntry& file = entry(key);
  Stage required = file.newswire ? Stage::Scheduled : Stage::Inspected;
  if (file.stage != required) {
    throw Error(ErrorKind::InvalidTransition,
                std::string("segmentation requires stage ") + to_string(required) +
                    ", entry is " + to_string(file.stage));
  }
  long duration_s = file.duration_minutes * 60L;
  if (boundaries.empty() || boundaries.front().offset_seconds != 0) {
    throw Error(ErrorKind::InvalidArgument,
                "boundaries must start at offset 0 to tile the file");
  }
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    if (boundaries[i].offset_seconds < 0 ||
        boundaries[i].offset_seconds >= duration_s) {
      throw Error(ErrorKind::InvalidArgument,
                  "boundary " + std::to_string(boundaries[i].offset_seconds) +
                      " outside [0, " + std::to_string(duration_s) + ")");
    }
    if (i > 0 && boundaries[i].offset_seconds <= boundaries[i - 1].offset_seconds) {
      throw Error(ErrorKind::InvalidArgument,
                  "boundaries must be strictly increasing");
    }
  }
  record("SEGMENT", key.source + "\t" + to_string(key.date) + "\t" +
                        to_string(key.broadcast_start) + "\t" +
                        render_boundaries(boundaries));

  std::vector<StoryUnit> units;
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    StoryUnit unit;
    unit.file = key;
    unit.offset_seconds = boundaries[i].offset_seconds;
    unit.end_offset_seconds =
        i + 1 < boundaries.size() ? boundaries[i + 1].offset_seconds : duration_s;
    unit.kind = boundaries[i].kind;
    unit.story_id = derive_story_id(key, unit.offset_seconds);
    stories_[unit.story_id] = unit;
    units.push_back(std::move(unit));
  }
  file.stage = Stage::Segmented;
  file.history.push_back({Stage::Segmented, clock_});
  refresh_annotation_status();
  return units;
}

const FlawReport& Catalog::report_flaw(const std::string& story_id, FlawType flaw,
                                       const std::string& reporter) {
  if (!stories_.count(story_id)) {
    throw Error(ErrorKind::NotFound, "unknown story '" + story_id + "'");
  }
  record("FLAW", story_id + "\t" + to_string(flaw) + "\t" + reporter);
  flaws_.push_back({story_id, flaw, reporter, clock_});
  return flaws_.back();
}

const DependentAnnotation& Catalog::add_annotation(
    const std::string& id, AnnKind kind, const std::vector<std::string>& story_ids) {
  if (annotations_.count(id)) {
    throw Error(ErrorKind::Conflict, "annotation '" + id + "' already exists");
  }
  if (story_ids.empty()) {
    throw Error(ErrorKind::InvalidArgument,
                "annotation must reference at least one story");
  }
  if (kind == AnnKind::StoryLink && story_ids.size() != 2) {
    throw Error(ErrorKind::InvalidArgument,
                "story links reference exactly two stories");
  }
  if (kind == AnnKind::FirstStory && story_ids.size() != 1) {
    throw Error(ErrorKind::InvalidArgument,
                "first-story annotations reference exactly one story");
  }
  std::string joined;
  for (std::size_t i = 0; i < story_ids.size(); ++i) {
    if (i) joined += ',';
    joined += story_ids[i];
  }
  record("ANNOTATE", id + "\t" + std::string(to_string(kind)) + "\t" + joined);
  DependentAnnotation ann{id, kind, story_ids, AnnStatus::Valid};
  for (const std::string& sid : story_ids) {
    if (!stories_.count(sid)) {
      ann.status = AnnStatus::Invalidated;
      break;
    }
  }
  return annotations_.emplace(id, std::move(ann)).first->second;
}

void Catalog::refresh_annotation_status() {
  for (auto& [id, ann] : annotations_) {
    bool dangling = false;
    for (const std::string& sid : ann.story_ids) {
      if (!stories_.count(sid)) {
        dangling = true;
        break;
      }
    }
    // Invalidation is flagging, never deletion, and never un-flagging: an
    // id that later reappears denotes a different unit.
    if (dangling) ann.status = AnnStatus::Invalidated;
  }
}

std::pair<std::vector<StoryUnit>, InvalidationReport> Catalog::apply_resegmentation(
    const FileKey& key, const std::vector<Boundary>& boundaries) {
  FileEntry& file = entry(key);
  if (file.stage != Stage::Segmented) {
    throw Error(ErrorKind::InvalidTransition,
                "resegmentation requires a SEGMENTED entry, got " +
                    std::string(to_string(file.stage)));
  }
  long duration_s = file.duration_minutes * 60L;
  if (boundaries.empty() || boundaries.front().offset_seconds != 0) {
    throw Error(ErrorKind::InvalidArgument,
                "boundaries must start at offset 0 to tile the file");
  }
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    if (boundaries[i].offset_seconds < 0 ||
        boundaries[i].offset_seconds >= duration_s) {
      throw Error(ErrorKind::InvalidArgument,
                  "boundary " + std::to_string(boundaries[i].offset_seconds) +
                      " outside [0, " + std::to_string(duration_s) + ")");
    }
    if (i > 0 && boundaries[i].offset_seconds <= boundaries[i - 1].offset_seconds) {
      throw Error(ErrorKind::InvalidArgument,
                  "boundaries must be strictly increasing");
    }
  }
  record("RESEGMENT", key.source + "\t" + to_string(key.date) + "\t" +
                          to_string(key.broadcast_start) + "\t" +
                          render_boundaries(boundaries));

  InvalidationReport report;
  auto old_units = stories_of(key);
  for (const StoryUnit& unit : old_units) stories_.erase(unit.story_id);

  std::vector<StoryUnit> units;
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    StoryUnit unit;
    unit.file = key;
    unit.offset_seconds = boundaries[i].offset_seconds;
    unit.end_offset_seconds =
        i + 1 < boundaries.size() ? boundaries[i + 1].offset_seconds : duration_s;
    unit.kind = boundaries[i].kind;
    unit.story_id = derive_story_id(key, unit.offset_seconds);
    stories_[unit.story_id] = unit;
    units.push_back(unit);
  }

  std::map<std::string, const StoryUnit*> new_by_id;
  for (const StoryUnit& u : units) new_by_id[u.story_id] = &u;
  for (const StoryUnit& old_unit : old_units) {
    auto found = new_by_id.find(old_unit.story_id);
    bool survived = found != new_by_id.end() &&
                    found->second->end_offset_seconds == old_unit.end_offset_seconds &&
                    found->second->kind == old_unit.kind;
    if (!survived) report.removed_story_ids.push_back(old_unit.story_id);
  }
  std::map<std::string, const StoryUnit*> old_by_id;
  for (const StoryUnit& u : old_units) old_by_id[u.story_id] = &u;
  for (const StoryUnit& u : units) {
    auto found = old_by_id.find(u.story_id);
    bool preexisting = found != old_by_id.end() &&
                       found->second->end_offset_seconds == u.end_offset_seconds &&
                       found->second->kind == u.kind;
    if (!preexisting) report.added_story_ids.push_back(u.story_id);
  }

  // A changed story id must invalidate dependents even when the id string
  // happens to survive with different extent; drop such ids from the live
  // set for status purposes by re-deriving against removed ids.
  report.total_annotations = annotations_.size();
  for (auto& [id, ann] : annotations_) {
    if (ann.status == AnnStatus::Invalidated) continue;
    bool hit = false;
    for (const std::string& sid : ann.story_ids) {
      if (!stories_.count(sid) ||
          std::find(report.removed_story_ids.begin(),
                    report.removed_story_ids.end(),
                    sid) != report.removed_story_ids.end()) {
        hit = true;
        break;
      }
    }
    if (hit) {
      ann.status = AnnStatus::Invalidated;
      report.invalidated_annotations.push_back(id);
    }
  }
  return {std::move(units), std::move(report)};
}

std::vector<std::string> Catalog::diff(const Catalog& other) const {
  std::vector<std::string> out;
  for (const auto& [id, story] : stories_) {
    auto it = other.stories_.find(id);
    if (it == other.stories_.end() ||
        it->second.end_offset_seconds != story.end_offset_seconds ||
        it->second.kind != story.kind) {
      out.push_back(id);
    }
  }
  for (const auto& [id, story] : other.stories_) {
    (void)story;
    if (!stories_.count(id)) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ConsistencyScan Catalog::check() const {
  ConsistencyScan scan;
  scan.total_annotations = annotations_.size();
  for (const auto& [id, ann] : annotations_) {
    if (ann.status == AnnStatus::Invalidated) {
      ++scan.invalidated;
      continue;
    }
    for (const std::string& sid : ann.story_ids) {
      if (!stories_.count(sid)) {
        scan.dangling_valid.push_back(id);
        break;
      }
    }
  }
  return scan;
}

void Catalog::save(std::ostream& out, bool snapshot_header) const {
  if (snapshot_header) out << "catalog-snapshot 1\n";
  for (const std::string& line : events_) out << line << '\n';
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    std::size_t next = line.find('\t', pos);
    if (next == std::string::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, next - pos));
    pos = next + 1;
  }
  return fields;
}

std::vector<Boundary> parse_boundaries(const std::string& text) {
  std::vector<Boundary> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(',', pos);
    std::string item = next == std::string::npos ? text.substr(pos)
                                                 : text.substr(pos, next - pos);
    if (!item.empty()) {
      std::size_t colon = item.find(':');
      if (colon == std::string::npos) {
        throw Error(ErrorKind::Parse, "bad boundary '" + item + "'");
      }
      out.push_back({std::stol(item.substr(0, colon)),
                     story_kind_from_string(item.substr(colon + 1))});
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

}  // namespace

Catalog Catalog::load(std::istream& in) {
  Catalog catalog;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first && line.rfind("catalog-snapshot", 0) == 0) {
      first = false;
      continue;
    }
    first = false;
    auto fields = split_tabs(line);
    if (fields.size() < 3) {
      throw ParseError("expected TIMESTAMP<TAB>KIND<TAB>FIELDS", line_no);
    }
    const std::string& kind = fields[1];
    catalog.replaying_ = true;
    try {
      if (kind == "REGISTER" && fields.size() == 7) {
        catalog.register_recording(fields[2], parse_date(fields[3]),
                                   parse_time_of_day(fields[4]),
                                   parse_int(fields[5], "duration"),
                                   fields[6] == "newswire");
      } else if (kind == "ADVANCE" && fields.size() == 6) {
        catalog.advance_stage(
            {fields[2], parse_date(fields[3]), parse_time_of_day(fields[4])},
            stage_from_string(fields[5]));
      } else if (kind == "SEGMENT" && fields.size() == 6) {
        catalog.segment_file(
            {fields[2], parse_date(fields[3]), parse_time_of_day(fields[4])},
            parse_boundaries(fields[5]));
      } else if (kind == "RESEGMENT" && fields.size() == 6) {
        catalog.apply_resegmentation(
            {fields[2], parse_date(fields[3]), parse_time_of_day(fields[4])},
            parse_boundaries(fields[5]));
      } else if (kind == "FLAW" && fields.size() == 5) {
        catalog.report_flaw(fields[2], flaw_from_string(fields[3]), fields[4]);
      } else if (kind == "ANNOTATE" && fields.size() == 5) {
        std::vector<std::string> ids;
        std::size_t pos = 0;
        const std::string& joined = fields[4];
        while (pos <= joined.size()) {
          std::size_t next = joined.find(',', pos);
          ids.push_back(next == std::string::npos ? joined.substr(pos)
                                                  : joined.substr(pos, next - pos));
          if (next == std::string::npos) break;
          pos = next + 1;
        }
        catalog.add_annotation(fields[2], ann_kind_from_string(fields[3]), ids);
      } else {
        throw Error(ErrorKind::Parse, "unknown event kind '" + kind + "'");
      }
    } catch (const Error& e) {
      catalog.replaying_ = false;
      throw ParseError(std::string("replaying ledger: ") + e.what(), line_no);
    }
    catalog.replaying_ = false;
    catalog.events_.push_back(line);
  }
  return catalog;
}

}  // namespace ag::cat
