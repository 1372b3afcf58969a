#include <algorithm>

#include "ag/align.hpp"

namespace ag::align {

SegmentOutcome segment_score(const std::vector<Segment>& segments,
                             const EditScript& script, std::size_t ref_len) {
  std::vector<const Segment*> ordered;
  ordered.reserve(segments.size());
  for (const Segment& s : segments) ordered.push_back(&s);
  std::sort(ordered.begin(), ordered.end(),
            [](const Segment* a, const Segment* b) { return a->begin < b->begin; });

  std::size_t expected = 0;
  for (const Segment* s : ordered) {
    if (s->begin != expected || s->end < s->begin) {
      throw Error(ErrorKind::InvalidArgument,
                  "segments do not tile the reference stream at index " +
                      std::to_string(expected) + " (segment '" + s->id + "')");
    }
    expected = s->end;
  }
  if (expected != ref_len) {
    throw Error(ErrorKind::InvalidArgument,
                "segments cover " + std::to_string(expected) + " of " +
                    std::to_string(ref_len) + " reference tokens");
  }

  // Per reference index: did it align as Cor? Per boundary position p
  // (tokens consumed before an insertion): does an Ins sit there?
  std::vector<bool> ref_correct(ref_len, false);
  std::vector<bool> ins_at(ref_len + 1, false);
  std::size_t ref_pos = 0;
  for (const EditOp& op : script.ops) {
    switch (op.kind) {
      case OpKind::Cor:
        ref_correct[*op.ref_index] = true;
        ++ref_pos;
        break;
      case OpKind::Sub:
      case OpKind::Del:
        ++ref_pos;
        break;
      case OpKind::Ins:
        ins_at[ref_pos] = true;
        break;
    }
  }
  if (ref_pos != ref_len) {
    throw Error(ErrorKind::InvalidArgument,
                "edit script covers " + std::to_string(ref_pos) + " of " +
                    std::to_string(ref_len) + " reference tokens");
  }

  SegmentOutcome outcome;
  for (const Segment* s : ordered) {
    bool ok = true;
    for (std::size_t i = s->begin; i < s->end && ok; ++i) {
      ok = ref_correct[i];
    }
    // An insertion only damns the segment when it falls strictly between
    // two of the segment's own tokens, not at its edges.
    if (s->end > s->begin + 1) {
      for (std::size_t p = s->begin + 1; ok && p <= s->end - 1; ++p) {
        if (ins_at[p]) ok = false;
      }
    }
    if (ok) {
      ++outcome.correct;
    } else {
      ++outcome.with_errors;
      outcome.error_segment_ids.push_back(s->id);
    }
  }
  return outcome;
}

void add_phrase_rows(WerReport& report,
                     const std::vector<SegmentOutcome>& per_file) {
  report.has_phrases = true;
  report.phrases_correct = 0;
  report.phrases_with_errors = 0;
  bool first = true;
  for (const SegmentOutcome& o : per_file) {
    report.phrases_correct += o.correct;
    report.phrases_with_errors += o.with_errors;
    int err_t = pct_tenths(o.with_errors, o.correct + o.with_errors);
    if (first) {
      report.phrase_errors_range = {err_t, err_t};
      first = false;
    } else {
      report.phrase_errors_range.widen(err_t);
    }
  }
  long long total = report.phrases_correct + report.phrases_with_errors;
  report.phrases_correct_t = pct_tenths(report.phrases_correct, total);
  report.phrases_with_errors_t = pct_tenths(report.phrases_with_errors, total);
}

std::vector<Segment> project_phrase_times(const std::vector<formats::Token>& tokens,
                                          std::vector<Segment> segments) {
  for (Segment& s : segments) {
    if (s.begin > s.end || s.end > tokens.size()) {
      throw Error(ErrorKind::InvalidArgument,
                  "segment '" + s.id + "' spans [" + std::to_string(s.begin) +
                      ", " + std::to_string(s.end) + ") outside the " +
                      std::to_string(tokens.size()) + "-token stream");
    }
    s.start_time.reset();
    s.end_time.reset();
    for (std::size_t i = s.begin; i < s.end; ++i) {
      if (!tokens[i].timed()) continue;
      if (!s.start_time) s.start_time = tokens[i].start;
      s.end_time = tokens[i].end();
    }
  }
  return segments;
}

}  // namespace ag::align
