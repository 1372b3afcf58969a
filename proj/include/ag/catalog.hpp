#ifndef AG_CATALOG_HPP
#define AG_CATALOG_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ag/error.hpp"

namespace ag::cat {

enum class Stage { Scheduled, Recorded, Inspected, Segmented };
enum class StoryKind { News, NonNews };
enum class FlawType { F1, F2, F3, F4 };
enum class AnnKind { StoryLink, FirstStory, NamedEntitySpan, Generic };
enum class AnnStatus { Valid, Invalidated };

const char* to_string(Stage s);
const char* to_string(StoryKind k);
const char* to_string(FlawType f);
const char* to_string(AnnKind k);
Stage stage_from_string(std::string_view s);
StoryKind story_kind_from_string(std::string_view s);
FlawType flaw_from_string(std::string_view s);
AnnKind ann_kind_from_string(std::string_view s);

struct Date {
  int year = 0, month = 0, day = 0;
  auto operator<=>(const Date&) const = default;
};
Date parse_date(std::string_view text);  // YYYY-MM-DD
std::string to_string(const Date& d);

struct TimeOfDay {
  int hour = 0, minute = 0;
  auto operator<=>(const TimeOfDay&) const = default;
};
TimeOfDay parse_time_of_day(std::string_view text);  // HH:MM
std::string to_string(const TimeOfDay& t);

struct FileKey {
  std::string source;
  Date date;
  TimeOfDay broadcast_start;
  auto operator<=>(const FileKey&) const = default;
};

struct FileEntry {
  FileKey key;
  Stage stage = Stage::Scheduled;
  int duration_minutes = 30;  // 30 or 60
  bool newswire = false;      // automated lifecycle, skips RECORDED/INSPECTED
  std::vector<std::pair<Stage, std::uint64_t>> history;  // (stage, event seq)
};

struct StoryUnit {
  FileKey file;
  long offset_seconds = 0;
  long end_offset_seconds = 0;
  StoryKind kind = StoryKind::News;
  std::string story_id;
};

struct FlawReport {
  std::string story_id;
  FlawType flaw = FlawType::F1;
  std::string reporter;
  std::uint64_t timestamp = 0;  // logical event sequence number
};

struct DependentAnnotation {
  std::string id;
  AnnKind kind = AnnKind::Generic;
  std::vector<std::string> story_ids;
  AnnStatus status = AnnStatus::Valid;
};

struct Boundary {
  long offset_seconds = 0;
  StoryKind kind = StoryKind::News;
};

/// Canonical story-unit identifier: SOURCE_YYYYMMDD_HHMM_OFFSETSECONDS.
std::string derive_story_id(const FileKey& key, long offset_seconds);

struct InvalidationReport {
  std::vector<std::string> removed_story_ids;
  std::vector<std::string> added_story_ids;
  std::vector<std::string> invalidated_annotations;  // newly invalidated
  std::size_t total_annotations = 0;

  double rate() const {
    return total_annotations == 0
               ? 0.0
               : static_cast<double>(invalidated_annotations.size()) /
                     static_cast<double>(total_annotations);
  }
};

struct ConsistencyScan {
  std::size_t total_annotations = 0;
  std::size_t invalidated = 0;
  std::vector<std::string> dangling_valid;  // VALID but referencing missing stories

  bool consistent() const { return dangling_valid.empty(); }
  double invalidation_rate() const {
    return total_annotations == 0
               ? 0.0
               : static_cast<double>(invalidated) /
                     static_cast<double>(total_annotations);
  }
};

/// Corpus catalog backed by an append-only event ledger. Every command
/// appends one event and updates the replayed state; loading a ledger
/// replays it through the same command paths, so any snapshot is
/// reproducible. Timestamps are logical sequence numbers, which keeps
/// ledgers and reports byte-deterministic.
///
/// Single writer; snapshots are plain value copies and safe to read
/// concurrently with further writes to the live catalog.
class Catalog {
 public:
  // Commands.
  const FileEntry& register_recording(const std::string& source, Date date,
                                      TimeOfDay broadcast_start,
                                      int duration_minutes,
                                      bool newswire = false);
  const FileEntry& advance_stage(const FileKey& key, Stage next);
  std::vector<StoryUnit> segment_file(const FileKey& key,
                                      const std::vector<Boundary>& boundaries);
  const FlawReport& report_flaw(const std::string& story_id, FlawType flaw,
                                const std::string& reporter);
  const DependentAnnotation& add_annotation(const std::string& id, AnnKind kind,
                                            const std::vector<std::string>& story_ids);
  std::pair<std::vector<StoryUnit>, InvalidationReport> apply_resegmentation(
      const FileKey& key, const std::vector<Boundary>& boundaries);

  // Queries.
  Catalog snapshot() const { return *this; }
  /// Story ids present in exactly one of the two catalogs.
  std::vector<std::string> diff(const Catalog& other) const;
  ConsistencyScan check() const;

  const FileEntry* find_file(const FileKey& key) const;
  const StoryUnit* find_story(const std::string& story_id) const;
  std::vector<StoryUnit> stories_of(const FileKey& key) const;
  const std::map<std::string, DependentAnnotation>& annotations() const {
    return annotations_;
  }
  const std::vector<FlawReport>& flaws() const { return flaws_; }
  std::uint64_t clock() const { return clock_; }

  // Ledger persistence: TIMESTAMP<TAB>EVENT_KIND<TAB>FIELDS... lines.
  void save(std::ostream& out, bool snapshot_header = false) const;
  static Catalog load(std::istream& in);
  const std::vector<std::string>& events() const { return events_; }

 private:
  FileEntry& entry(const FileKey& key);
  void refresh_annotation_status();
  void record(const std::string& kind, const std::string& fields);

  std::uint64_t clock_ = 0;
  std::vector<std::string> events_;
  std::map<FileKey, FileEntry> files_;
  std::map<std::string, StoryUnit> stories_;
  std::map<std::string, DependentAnnotation> annotations_;
  std::vector<FlawReport> flaws_;
  bool replaying_ = false;
};

}  // namespace ag::cat

#endif  // AG_CATALOG_HPP
