#include <algorithm>
#include <iomanip>
#include <sstream>

#include "ag/align.hpp"

namespace ag::align {

WerReport score(const std::vector<std::pair<std::string, EditScript>>& files) {
  if (files.empty()) {
    throw Error(ErrorKind::InvalidArgument, "score requires at least one file");
  }
  WerReport report;
  for (const auto& [file_id, script] : files) {
    PerFileCounts counts;
    counts.file_id = file_id;
    counts.correct = script.count(OpKind::Cor);
    counts.substitutions = script.count(OpKind::Sub);
    counts.deletions = script.count(OpKind::Del);
    counts.insertions = script.count(OpKind::Ins);
    report.files.push_back(counts);
  }
  // Aggregation is a fold ordered by file id, independent of input order.
  std::stable_sort(report.files.begin(), report.files.end(),
                   [](const PerFileCounts& a, const PerFileCounts& b) {
                     return a.file_id < b.file_id;
                   });

  bool first = true;
  for (const PerFileCounts& f : report.files) {
    report.correct += f.correct;
    report.substitutions += f.substitutions;
    report.deletions += f.deletions;
    report.insertions += f.insertions;
    report.ref_total += f.ref_count();
    report.hyp_total += f.hyp_count();

    long long n = f.ref_count();
    int correct_t = pct_tenths(f.correct, n);
    int sub_t = pct_tenths(f.substitutions, n);
    int del_t = pct_tenths(f.deletions, n);
    int ins_t = pct_tenths(f.insertions, n);
    int err_t = pct_tenths(f.substitutions + f.deletions + f.insertions, n);
    if (first) {
      report.correct_range = {correct_t, correct_t};
      report.substitutions_range = {sub_t, sub_t};
      report.deletions_range = {del_t, del_t};
      report.insertions_range = {ins_t, ins_t};
      report.errors_range = {err_t, err_t};
      first = false;
    } else {
      report.correct_range.widen(correct_t);
      report.substitutions_range.widen(sub_t);
      report.deletions_range.widen(del_t);
      report.insertions_range.widen(ins_t);
      report.errors_range.widen(err_t);
    }
  }

  report.correct_t = pct_tenths(report.correct, report.ref_total);
  report.substitutions_t = pct_tenths(report.substitutions, report.ref_total);
  report.deletions_t = pct_tenths(report.deletions, report.ref_total);
  report.insertions_t = pct_tenths(report.insertions, report.ref_total);
  report.all_errors_t = pct_tenths(
      report.substitutions + report.deletions + report.insertions,
      report.ref_total);
  report.accuracy_t =
      1000 - report.substitutions_t - report.deletions_t - report.insertions_t;
  return report;
}

namespace {

long long thousands(long long count) { return (count + 500) / 1000; }

std::string range_str(const TenthsRange& r) {
  return render_tenths(r.min) + " - " + render_tenths(r.max);
}

void row(std::ostringstream& out, const std::string& units,
         const std::string& status, const std::string& k, const std::string& pct,
         const std::string& range) {
  out << std::left << std::setw(10) << units << std::setw(12) << status
      << std::right << std::setw(8) << k << std::setw(8) << pct << "   "
      << range << '\n';
}

}  // namespace

std::string render_table(const WerReport& report) {
  std::ostringstream out;
  row(out, "Units", "Status", "K", "%", "Per-file % range");
  if (report.has_phrases) {
    row(out, "phrases", "correct", std::to_string(thousands(report.phrases_correct)),
        render_tenths(report.phrases_correct_t), "");
    row(out, "", "w/errors", std::to_string(thousands(report.phrases_with_errors)),
        render_tenths(report.phrases_with_errors_t),
        range_str(report.phrase_errors_range));
  }
  row(out, "words", "correct", std::to_string(thousands(report.correct)),
      render_tenths(report.correct_t), range_str(report.correct_range));
  row(out, "", "accuracy", "", render_tenths(report.accuracy_t), "");
  row(out, "", "all errors",
      std::to_string(thousands(report.substitutions + report.deletions +
                               report.insertions)),
      render_tenths(report.all_errors_t), range_str(report.errors_range));
  row(out, "", "substit.", std::to_string(thousands(report.substitutions)),
      render_tenths(report.substitutions_t), range_str(report.substitutions_range));
  row(out, "", "deleted", std::to_string(thousands(report.deletions)),
      render_tenths(report.deletions_t), range_str(report.deletions_range));
  row(out, "", "inserted", std::to_string(thousands(report.insertions)),
      render_tenths(report.insertions_t), range_str(report.insertions_range));
  return out.str();
}

std::string render_records(const WerReport& report) {
  std::ostringstream out;
  auto emit = [&](const std::string& id, long long cor, long long sub,
                  long long del, long long ins) {
    long long ref = cor + sub + del;
    long long hyp = cor + sub + ins;
    out << "file=" << id << " ref=" << ref << " hyp=" << hyp << " cor=" << cor
        << " sub=" << sub << " del=" << del << " ins=" << ins
        << " correct_pct=" << render_tenths(pct_tenths(cor, ref))
        << " sub_pct=" << render_tenths(pct_tenths(sub, ref))
        << " del_pct=" << render_tenths(pct_tenths(del, ref))
        << " ins_pct=" << render_tenths(pct_tenths(ins, ref)) << '\n';
  };
  for (const PerFileCounts& f : report.files) {
    emit(f.file_id, f.correct, f.substitutions, f.deletions, f.insertions);
  }
  out << "file=ALL ref=" << report.ref_total << " hyp=" << report.hyp_total
      << " cor=" << report.correct << " sub=" << report.substitutions
      << " del=" << report.deletions << " ins=" << report.insertions
      << " correct_pct=" << render_tenths(report.correct_t)
      << " sub_pct=" << render_tenths(report.substitutions_t)
      << " del_pct=" << render_tenths(report.deletions_t)
      << " ins_pct=" << render_tenths(report.insertions_t)
      << " accuracy=" << render_tenths(report.accuracy_t) << '\n';
  if (report.has_phrases) {
    out << "phrases=ALL correct=" << report.phrases_correct
        << " with_errors=" << report.phrases_with_errors
        << " correct_pct=" << render_tenths(report.phrases_correct_t)
        << " with_errors_pct=" << render_tenths(report.phrases_with_errors_t)
        << '\n';
  }
  return out.str();
}

}  // namespace ag::align
