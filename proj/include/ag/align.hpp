#ifndef AG_ALIGN_HPP
#define AG_ALIGN_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ag/error.hpp"
#include "ag/formats.hpp"
#include "ag/time.hpp"

namespace ag::align {

// ---------------------------------------------------------------------------
// Token normalization.

/// Normalization policy for transcript comparison. Defaults cover the
/// conventions of conversational-speech scoring: case folding, attached
/// punctuation stripping, '-' fragment markers, the uh-hum/uh-huh
/// non-lexical equivalence, and clitic contraction splits.
struct NormPolicy {
  bool case_fold = true;
  bool strip_attached_punct = true;
  std::vector<std::string> fragment_suffixes = {"-"};
  std::vector<std::vector<std::string>> nonlexical_classes = {
      {"uh-hum", "uh-huh"}};
  std::map<std::string, std::vector<std::string>> contraction_splits = {
      {"one's", {"one", "'s"}},
      {"we're", {"we", "'re"}},
  };

  /// Throws Error(InvalidArgument) when equivalence classes overlap.
  void check() const;
};

enum class TokenClass { Lexical, Fragment, NonLexical };

struct NormToken {
  std::string text;
  TokenClass cls = TokenClass::Lexical;
};

/// Deterministic, idempotent normalization. May emit several tokens
/// (contraction splits) or none (punctuation-only input).
std::vector<NormToken> normalize(std::string_view token, const NormPolicy& policy);

/// Single-string comparison key: normalized pieces joined by a space.
/// Empty when the token is pure punctuation.
std::string norm_key(std::string_view token, const NormPolicy& policy);

// ---------------------------------------------------------------------------
// Dynamic-programming alignment.

enum class OpKind { Cor, Sub, Ins, Del };

const char* to_string(OpKind kind);

struct EditOp {
  OpKind kind;
  std::optional<std::size_t> ref_index;  // absent for Ins
  std::optional<std::size_t> hyp_index;  // absent for Del
};

struct EditScript {
  std::vector<EditOp> ops;
  long long total_cost = 0;

  long long count(OpKind kind) const;
};

/// Positive alignment costs; correct matches are free. The defaults are
/// the classical speech-scoring weights.
struct Costs {
  int sub = 4;
  int ins = 3;
  int del = 3;
};

enum class FragmentMode { Strict, Lenient };

/// Minimal-cost alignment of hyp against ref. Token equality uses
/// normalized keys; tokens that normalize to nothing compare by their raw
/// spelling. Ties prefer Cor > Sub > Del > Ins at each cell, scanning
/// ref-major, so the script is deterministic. In Lenient mode a reference
/// fragment ("mea-") matches any hypothesis token sharing its prefix.
EditScript align(const std::vector<std::string>& ref,
                 const std::vector<std::string>& hyp,
                 const NormPolicy& policy = {}, Costs costs = {},
                 FragmentMode fragments = FragmentMode::Strict);

// ---------------------------------------------------------------------------
// Corpus scoring.

/// Integer tenths of a percent (e.g. 948 == 94.8%), rounded half-up.
int pct_tenths(long long numer, long long denom);
std::string render_tenths(int tenths);

struct PerFileCounts {
  std::string file_id;
  long long correct = 0;
  long long substitutions = 0;
  long long deletions = 0;
  long long insertions = 0;

  long long ref_count() const { return correct + substitutions + deletions; }
  long long hyp_count() const { return correct + substitutions + insertions; }
};

struct TenthsRange {
  int min = 0;
  int max = 0;

  void widen(int v) {
    if (v < min) min = v;
    if (v > max) max = v;
  }
};

struct WerReport {
  std::vector<PerFileCounts> files;

  // Aggregate counts.
  long long correct = 0;
  long long substitutions = 0;
  long long deletions = 0;
  long long insertions = 0;
  long long ref_total = 0;
  long long hyp_total = 0;

  // Aggregate percentages over the reference count, in tenths.
  int correct_t = 0;
  int substitutions_t = 0;
  int deletions_t = 0;
  int insertions_t = 0;
  int all_errors_t = 0;
  int accuracy_t = 0;  // 100% minus (sub + del + ins)

  // Per-file percentage ranges.
  TenthsRange correct_range;
  TenthsRange errors_range;
  TenthsRange substitutions_range;
  TenthsRange deletions_range;
  TenthsRange insertions_range;

  // Phrase-level rows, filled when segment scoring ran.
  bool has_phrases = false;
  long long phrases_correct = 0;
  long long phrases_with_errors = 0;
  int phrases_correct_t = 0;
  int phrases_with_errors_t = 0;
  TenthsRange phrase_errors_range;
};

/// Aggregates per-file edit scripts into the word-error rows. Requires at
/// least one file.
WerReport score(const std::vector<std::pair<std::string, EditScript>>& files);

/// Plain-text table mirroring the classic units/status/K/%/range layout.
std::string render_table(const WerReport& report);

/// Machine-readable key-value records, one line per file plus "ALL".
std::string render_records(const WerReport& report);

// ---------------------------------------------------------------------------
// Phrase segments.

/// Phrase-level region of a token stream: [begin, end) token indices.
struct Segment {
  std::string id;
  Channel channel = Channel::A;
  std::size_t begin = 0;
  std::size_t end = 0;
  std::optional<Time> start_time;
  std::optional<Time> end_time;
};

struct SegmentOutcome {
  long long correct = 0;
  long long with_errors = 0;
  std::vector<std::string> error_segment_ids;
};

/// A segment is correct iff every reference index in its span aligned as
/// Cor and no insertion falls strictly inside the span. Segments must tile
/// [0, ref_len).
SegmentOutcome segment_score(const std::vector<Segment>& segments,
                             const EditScript& script, std::size_t ref_len);

/// Adds phrase rows to a word-level report (per-file outcomes in file order).
void add_phrase_rows(WerReport& report,
                     const std::vector<SegmentOutcome>& per_file);

/// Projects word-level time marks onto segments: start of the first timed
/// token, end of the last timed token; all-untimed spans get no times.
std::vector<Segment> project_phrase_times(const std::vector<formats::Token>& tokens,
                                          std::vector<Segment> segments);

struct CoverageReport {
  int contained_t = 0;
  int omissions_t = 0;
  int substitutions_t = 0;
};

/// Asymmetric containment of hyp in ref: contained = Cor/|ref|,
/// omissions = Del/|ref|, substitutions = Sub/|ref|.
CoverageReport coverage(const std::vector<std::string>& ref,
                        const std::vector<std::string>& hyp,
                        const NormPolicy& policy = {});

}  // namespace ag::align

#endif  // AG_ALIGN_HPP
