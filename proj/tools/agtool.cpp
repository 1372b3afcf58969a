// agtool: command-line front end for the annotation-graph toolkit.
//
// Subcommands: parse, merge, score, repair, query, export, catalog.
// Exit codes: 0 success, 1 data error, 2 usage error. Diagnostics go to
// stderr, data to stdout or the -o path.

#include <CLI11.hpp>

#include <cctype>
#include <set>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "ag/align.hpp"
#include "ag/catalog.hpp"
#include "ag/formats.hpp"
#include "ag/graph.hpp"
#include "ag/integrate.hpp"
#include "ag/xml_io.hpp"

namespace {

struct Config {
  ag::align::NormPolicy policy;
  ag::align::Costs costs;
  ag::align::FragmentMode fragment_mode = ag::align::FragmentMode::Strict;
  ag::Time tolerance = ag::Time::from_centis(0);
  double min_match = 0.5;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ag::Error(ag::ErrorKind::Io, "cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ag::Error(ag::ErrorKind::Io, "cannot write '" + path + "'");
  }
  out << data;
}

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ag::Error(ag::ErrorKind::InvalidArgument,
                  "config key '" + key + "' expects a boolean, got '" + value + "'");
}

std::vector<std::string> split_on(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(sep, pos);
    if (next == std::string::npos) {
      out.push_back(text.substr(pos));
      break;
    }
    out.push_back(text.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

// Plain-text key=value config; later keys override earlier ones, flags
// override the file. Repeatable keys: fragment_suffix, nonlexical_class,
// split.
Config load_config(const std::string& path) {
  Config config;
  if (path.empty()) return config;
  std::string text = read_file(path);
  bool suffixes_cleared = false, classes_cleared = false, splits_cleared = false;
  std::size_t line_no = 0;
  for (const std::string& raw : split_on(text, '\n')) {
    ++line_no;
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
      line.pop_back();
    }
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ag::ParseError("expected key=value in config", line_no);
    }
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    if (key == "case_fold") {
      config.policy.case_fold = parse_bool(value, key);
    } else if (key == "strip_punct") {
      config.policy.strip_attached_punct = parse_bool(value, key);
    } else if (key == "fragment_suffix") {
      if (!suffixes_cleared) {
        config.policy.fragment_suffixes.clear();
        suffixes_cleared = true;
      }
      config.policy.fragment_suffixes.push_back(value);
    } else if (key == "nonlexical_class") {
      if (!classes_cleared) {
        config.policy.nonlexical_classes.clear();
        classes_cleared = true;
      }
      config.policy.nonlexical_classes.push_back(split_on(value, ','));
    } else if (key == "split") {
      if (!splits_cleared) {
        config.policy.contraction_splits.clear();
        splits_cleared = true;
      }
      std::size_t colon = value.find(':');
      if (colon == std::string::npos) {
        throw ag::ParseError("split expects WORD:PIECE PIECE...", line_no);
      }
      std::vector<std::string> pieces;
      for (const std::string& piece : split_on(value.substr(colon + 1), ' ')) {
        if (!piece.empty()) pieces.push_back(piece);
      }
      config.policy.contraction_splits[value.substr(0, colon)] = pieces;
    } else if (key == "cost_sub") {
      config.costs.sub = std::stoi(value);
    } else if (key == "cost_ins") {
      config.costs.ins = std::stoi(value);
    } else if (key == "cost_del") {
      config.costs.del = std::stoi(value);
    } else if (key == "fragment_mode") {
      if (value == "strict") {
        config.fragment_mode = ag::align::FragmentMode::Strict;
      } else if (value == "lenient") {
        config.fragment_mode = ag::align::FragmentMode::Lenient;
      } else {
        throw ag::ParseError("fragment_mode must be strict or lenient", line_no);
      }
    } else if (key == "tolerance") {
      config.tolerance = ag::Time::parse(value);
    } else if (key == "min_match") {
      config.min_match = std::stod(value);
    } else {
      throw ag::ParseError("unknown config key '" + key + "'", line_no);
    }
  }
  return config;
}

std::string basename_of(const std::string& path) {
  std::size_t slash = path.find_last_of("/\\");
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  return base.empty() ? "stdin" : base;
}

std::string timeline_from_path(const std::string& path) {
  std::string base = basename_of(path);
  std::size_t dot = base.find_last_of('.');
  if (dot != std::string::npos && dot > 0) base.resize(dot);
  return base;
}

ag::AnnotationGraph parse_to_graph(const std::string& format,
                                   const std::string& text,
                                   const std::string& timeline,
                                   const std::string& provenance) {
  using namespace ag::formats;
  if (format == "aligned-words") {
    return tokens_to_graph(parse_aligned_words(text), timeline, provenance);
  }
  if (format == "pos") {
    return pos_to_graph(parse_pos(text), timeline, provenance);
  }
  if (format == "disfluency") {
    return disfluency_to_graph(parse_disfluency(text), timeline, provenance);
  }
  if (format == "treebank") {
    return treebank_to_graph(parse_treebank(text), timeline, provenance);
  }
  throw CLI::ValidationError("--format",
                             "unknown format '" + format +
                                 "' (expected aligned-words, pos, disfluency, "
                                 "or treebank)");
}

std::vector<std::string> tokens_of(const std::string& text, const std::string& format) {
  std::vector<std::string> tokens;
  if (format == "aligned-words") {
    for (const auto& tok : ag::formats::parse_aligned_words(text)) {
      tokens.push_back(tok.text);
    }
    return tokens;
  }
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) tokens.push_back(text.substr(start, i - start));
  }
  return tokens;
}

std::vector<ag::align::Segment> parse_segments_file(const std::string& text) {
  std::vector<ag::align::Segment> segments;
  std::size_t line_no = 0;
  for (const std::string& raw : split_on(text, '\n')) {
    ++line_no;
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream in(line);
    ag::align::Segment seg;
    std::string channel;
    if (!(in >> seg.id >> channel >> seg.begin >> seg.end)) {
      throw ag::ParseError("expected ID CHANNEL BEGIN END", line_no);
    }
    if (channel != "A" && channel != "B") {
      throw ag::ParseError("channel must be A or B", line_no);
    }
    seg.channel = ag::channel_from_char(channel[0]);
    segments.push_back(std::move(seg));
  }
  return segments;
}

// ---------------------------------------------------------------------------

int cmd_parse(const std::string& format, const std::string& input,
              const std::string& output, std::string timeline,
              std::string provenance) {
  std::string text = read_file(input);
  if (timeline.empty()) timeline = timeline_from_path(input);
  if (provenance.empty()) provenance = basename_of(input);
  try {
    ag::AnnotationGraph graph = parse_to_graph(format, text, timeline, provenance);
    write_output(output, ag::xmlio::write_xml(graph));
  } catch (const ag::ParseError& e) {
    // file:line:position diagnostics for scripts.
    throw ag::Error(ag::ErrorKind::Parse, input + ": " + e.what());
  }
  return 0;
}

int cmd_merge(const std::vector<std::string>& inputs, const std::string& output,
              const Config& config, bool anchor) {
  std::vector<ag::AnnotationGraph> graphs;
  for (const std::string& path : inputs) {
    graphs.push_back(ag::xmlio::read_xml(read_file(path)));
  }
  if (anchor) {
    // Anchor fully-unanchored stream graphs against the timed graph first.
    auto is_timed = [](const ag::AnnotationGraph& g) {
      for (const ag::Node& n : g.nodes()) {
        if (n.anchor) return true;
      }
      return false;
    };
    int timed_index = -1;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      if (is_timed(graphs[i])) {
        if (timed_index != -1) {
          throw ag::Error(ag::ErrorKind::InvalidArgument,
                          "--anchor needs exactly one timed input graph");
        }
        timed_index = static_cast<int>(i);
      }
    }
    if (timed_index == -1) {
      throw ag::Error(ag::ErrorKind::InvalidArgument,
                      "--anchor needs one timed input graph");
    }
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      if (static_cast<int>(i) == timed_index) continue;
      graphs[i] = ag::integrate::anchor_by_alignment(
          graphs[timed_index], graphs[i], config.policy, config.min_match);
    }
  }
  ag::AnnotationGraph merged = ag::integrate::integrate(graphs, config.tolerance);
  write_output(output, ag::xmlio::write_xml(merged));
  return 0;
}

struct ScoredFile {
  std::string id;
  ag::align::EditScript script;
  std::optional<ag::align::SegmentOutcome> phrases;
};

int cmd_score(const std::string& ref_path, const std::string& hyp_path,
              const std::string& pairs_path, const std::string& segments_path,
              const std::string& format, const Config& config, bool records,
              unsigned jobs, const std::string& exclude,
              const std::string& output) {
  // Files with known speaker-label errors can be kept out of the tally.
  std::set<std::string> excluded;
  for (const std::string& id : split_on(exclude, ',')) {
    if (!id.empty()) excluded.insert(id);
  }
  struct Job {
    std::string id, ref, hyp;
  };
  std::vector<Job> todo;
  if (!pairs_path.empty()) {
    std::size_t line_no = 0;
    for (const std::string& raw : split_on(read_file(pairs_path), '\n')) {
      ++line_no;
      std::string line = raw;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      auto fields = split_on(line, '\t');
      if (fields.size() != 3) {
        throw ag::ParseError("expected FILE_ID<TAB>REF<TAB>HYP", line_no);
      }
      if (excluded.count(fields[0])) continue;
      todo.push_back({fields[0], fields[1], fields[2]});
    }
  } else {
    if (ref_path.empty() || hyp_path.empty()) {
      throw CLI::ValidationError("score", "need --ref and --hyp, or --pairs");
    }
    todo.push_back({timeline_from_path(ref_path), ref_path, hyp_path});
  }

  auto run_one = [&](const Job& job) {
    ScoredFile result;
    result.id = job.id;
    auto ref_tokens = tokens_of(read_file(job.ref), format);
    auto hyp_tokens = tokens_of(read_file(job.hyp), format);
    result.script = ag::align::align(ref_tokens, hyp_tokens, config.policy,
                                     config.costs, config.fragment_mode);
    if (!segments_path.empty()) {
      auto segments = parse_segments_file(read_file(segments_path));
      result.phrases =
          ag::align::segment_score(segments, result.script, ref_tokens.size());
    }
    return result;
  };

  std::vector<ScoredFile> scored(todo.size());
  if (jobs > 1 && todo.size() > 1) {
    std::vector<std::future<ScoredFile>> futures;
    futures.reserve(todo.size());
    for (const Job& job : todo) {
      futures.push_back(std::async(std::launch::async, run_one, job));
    }
    for (std::size_t i = 0; i < futures.size(); ++i) scored[i] = futures[i].get();
  } else {
    for (std::size_t i = 0; i < todo.size(); ++i) scored[i] = run_one(todo[i]);
  }

  std::vector<std::pair<std::string, ag::align::EditScript>> for_report;
  for (ScoredFile& f : scored) for_report.emplace_back(f.id, std::move(f.script));
  ag::align::WerReport report = ag::align::score(for_report);
  if (!segments_path.empty()) {
    std::vector<ag::align::SegmentOutcome> outcomes;
    for (const ScoredFile& f : scored) {
      if (f.phrases) outcomes.push_back(*f.phrases);
    }
    ag::align::add_phrase_rows(report, outcomes);
  }

  std::string rendered = ag::align::render_table(report);
  if (records) rendered += ag::align::render_records(report);
  write_output(output, rendered);
  return 0;
}

int cmd_repair(const std::string& graph_path, const std::string& ledger_path,
               const std::string& output, const std::string& impact_path) {
  ag::AnnotationGraph graph = ag::xmlio::read_xml(read_file(graph_path));
  auto events = ag::integrate::parse_repair_ledger(read_file(ledger_path));
  std::string impact_text;
  for (const auto& event : events) {
    auto result = ag::integrate::apply_repair(graph, event);
    impact_text += ag::integrate::render_impact(graph, result.impact);
    graph = std::move(result.graph);
  }
  if (events.empty()) impact_text = "impact total=0\n";
  write_output(output, ag::xmlio::write_xml(graph));
  if (!impact_path.empty()) {
    write_output(impact_path, impact_text);
  } else {
    std::cerr << impact_text;
  }
  return 0;
}

int cmd_query(const std::string& graph_path, const std::string& from,
              const std::string& to, const std::string& type,
              const std::string& output) {
  ag::AnnotationGraph graph = ag::xmlio::read_xml(read_file(graph_path));
  std::optional<std::string> filter;
  if (!type.empty()) filter = type;
  auto brackets = graph.node_brackets();
  auto hits = graph.arcs_in_interval(ag::Time::parse(from), ag::Time::parse(to), filter);
  std::ostringstream out;
  for (ag::ArcId id : hits) {
    const ag::Arc& a = graph.arc(id);
    auto span = graph.arc_span(id, brackets);
    out << (span.lo ? span.lo->str() : "*") << '\t'
        << (span.hi ? span.hi->str() : "*") << '\t' << a.type << '\t' << a.label
        << '\t' << a.provenance;
    if (a.channel) out << '\t' << ag::to_char(*a.channel);
    out << '\n';
  }
  write_output(output, out.str());
  return 0;
}

int cmd_export(const std::string& graph_path, const std::string& output) {
  ag::AnnotationGraph graph = ag::xmlio::read_xml(read_file(graph_path));
  write_output(output, ag::xmlio::write_xml(graph));
  return 0;
}

// ---------------------------------------------------------------------------

ag::cat::Catalog load_catalog(const std::string& ledger_path, bool must_exist) {
  std::ifstream in(ledger_path);
  if (!in) {
    if (must_exist) {
      throw ag::Error(ag::ErrorKind::Io, "cannot open ledger '" + ledger_path + "'");
    }
    return ag::cat::Catalog();
  }
  return ag::cat::Catalog::load(in);
}

void store_catalog(const ag::cat::Catalog& catalog, const std::string& ledger_path) {
  std::ofstream out(ledger_path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw ag::Error(ag::ErrorKind::Io, "cannot write ledger '" + ledger_path + "'");
  }
  catalog.save(out);
}

std::vector<ag::cat::Boundary> parse_boundary_arg(const std::string& text) {
  std::vector<ag::cat::Boundary> boundaries;
  for (const std::string& item : split_on(text, ',')) {
    if (item.empty()) continue;
    std::size_t colon = item.find(':');
    ag::cat::Boundary b;
    if (colon == std::string::npos) {
      b.offset_seconds = std::stol(item);
    } else {
      b.offset_seconds = std::stol(item.substr(0, colon));
      b.kind = ag::cat::story_kind_from_string(item.substr(colon + 1));
    }
    boundaries.push_back(b);
  }
  return boundaries;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"annotation-graph toolkit for multi-tier speech corpora"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path,
                 "key=value config file (normalization policy, costs, tolerance)");

  // parse
  auto* parse = app.add_subcommand("parse", "parse an annotation file into graph XML");
  std::string parse_format, parse_input, parse_output, parse_timeline, parse_prov;
  parse->add_option("--format", parse_format,
                    "aligned-words, pos, disfluency, or treebank")->required();
  parse->add_option("input", parse_input, "input file ('-' for stdin)")->required();
  parse->add_option("-o,--output", parse_output, "output XML path (default stdout)");
  parse->add_option("--timeline", parse_timeline,
                    "timeline id (default: input basename)");
  parse->add_option("--provenance", parse_prov,
                    "stream id recorded on arcs (default: input basename)");

  // merge
  auto* merge = app.add_subcommand("merge", "integrate graph XML files over one timeline");
  std::vector<std::string> merge_inputs;
  std::string merge_output, merge_tolerance;
  bool merge_anchor = false;
  merge->add_option("inputs", merge_inputs, "graph XML files")->required();
  merge->add_option("-o,--output", merge_output, "output XML path");
  merge->add_option("--tolerance", merge_tolerance,
                    "anchor unification tolerance in seconds (default 0.00)");
  merge->add_flag("--anchor", merge_anchor,
                  "time-anchor unanchored inputs against the timed input first");

  // score
  auto* score = app.add_subcommand("score", "score a hypothesis transcript against a reference");
  std::string score_ref, score_hyp, score_pairs, score_segments, score_format = "plain";
  std::string score_output, score_exclude;
  bool score_records = false;
  unsigned score_jobs = 1;
  score->add_option("--ref", score_ref, "reference token file");
  score->add_option("--hyp", score_hyp, "hypothesis token file");
  score->add_option("--pairs", score_pairs,
                    "multi-file corpus: FILE_ID<TAB>REF<TAB>HYP per line");
  score->add_option("--segments", score_segments,
                    "phrase segments over the reference: ID CHANNEL BEGIN END");
  score->add_option("--format", score_format, "plain (default) or aligned-words");
  score->add_flag("--records", score_records, "append machine-readable records");
  score->add_option("--exclude", score_exclude,
                    "comma-separated file ids left out of --pairs scoring");
  score->add_option("--jobs", score_jobs, "parallel per-file scoring");
  score->add_option("-o,--output", score_output, "output path (default stdout)");

  // repair
  auto* repair = app.add_subcommand("repair", "apply a repair ledger to a graph");
  std::string repair_graph, repair_ledger, repair_output, repair_impact;
  repair->add_option("graph", repair_graph, "graph XML")->required();
  repair->add_option("ledger", repair_ledger,
                     "repair ledger: KIND<TAB>START:END<TAB>PAYLOAD")->required();
  repair->add_option("-o,--output", repair_output, "repaired graph XML path");
  repair->add_option("--impact", repair_impact,
                     "impact report path (default: stderr)");

  // query
  auto* query = app.add_subcommand("query", "list arcs in a time interval");
  std::string query_graph, query_from, query_to, query_type, query_output;
  query->add_option("graph", query_graph, "graph XML")->required();
  query->add_option("--from", query_from, "interval start, seconds")->required();
  query->add_option("--to", query_to, "interval end, seconds")->required();
  query->add_option("--type", query_type, "restrict to one namespace (e.g. W/)");
  query->add_option("-o,--output", query_output, "output path");

  // export
  auto* exp = app.add_subcommand("export", "re-serialize a graph in canonical form");
  std::string export_graph, export_output;
  exp->add_option("graph", export_graph, "graph XML")->required();
  exp->add_option("-o,--output", export_output, "output path");

  // catalog
  auto* catalog = app.add_subcommand("catalog", "TDT-style corpus catalog over an event ledger");
  catalog->require_subcommand(1);
  std::string ledger_path;
  catalog->add_option("--ledger", ledger_path, "ledger file")->required();
  std::string cat_source, cat_date, cat_start, cat_stage, cat_boundaries;
  std::string cat_story, cat_flaw, cat_reporter = "unknown";
  std::string cat_ann_id, cat_ann_kind = "GENERIC", cat_ann_stories, cat_output;
  int cat_duration = 30;
  bool cat_newswire = false;

  auto* reg = catalog->add_subcommand("register", "schedule a recording");
  reg->add_option("--source", cat_source)->required();
  reg->add_option("--date", cat_date, "YYYY-MM-DD")->required();
  reg->add_option("--start", cat_start, "HH:MM broadcast start")->required();
  reg->add_option("--duration", cat_duration, "30 or 60 minutes");
  reg->add_flag("--newswire", cat_newswire, "automated newswire lifecycle");

  auto* adv = catalog->add_subcommand("advance", "advance the lifecycle stage");
  adv->add_option("--source", cat_source)->required();
  adv->add_option("--date", cat_date)->required();
  adv->add_option("--start", cat_start)->required();
  adv->add_option("--stage", cat_stage, "RECORDED or INSPECTED")->required();

  auto* seg = catalog->add_subcommand("segment", "segment a file into story units");
  seg->add_option("--source", cat_source)->required();
  seg->add_option("--date", cat_date)->required();
  seg->add_option("--start", cat_start)->required();
  seg->add_option("--boundaries", cat_boundaries,
                  "OFFSET:KIND,... e.g. 0:NEWS,120:NON_NEWS")->required();

  auto* flaw = catalog->add_subcommand("flaw", "report a story flaw");
  flaw->add_option("--story", cat_story)->required();
  flaw->add_option("--type", cat_flaw, "F1..F4")->required();
  flaw->add_option("--reporter", cat_reporter);

  auto* ann = catalog->add_subcommand("annotate", "record a dependent annotation");
  ann->add_option("--id", cat_ann_id)->required();
  ann->add_option("--kind", cat_ann_kind,
                  "STORY_LINK, FIRST_STORY, NAMED_ENTITY_SPAN, GENERIC");
  ann->add_option("--stories", cat_ann_stories, "comma-separated story ids")->required();

  auto* reseg = catalog->add_subcommand("reseg", "fix segmentation; invalidates dependents");
  reseg->add_option("--source", cat_source)->required();
  reseg->add_option("--date", cat_date)->required();
  reseg->add_option("--start", cat_start)->required();
  reseg->add_option("--boundaries", cat_boundaries)->required();

  auto* snap = catalog->add_subcommand("snapshot", "export a frozen catalog state");
  snap->add_option("-o,--output", cat_output, "snapshot path (default stdout)");

  auto* check = catalog->add_subcommand("check", "dangling-reference scan");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // 0 for --help/--version, 2 for genuine usage errors.
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    Config config = load_config(config_path);

    if (parse->parsed()) {
      return cmd_parse(parse_format, parse_input, parse_output, parse_timeline,
                       parse_prov);
    }
    if (merge->parsed()) {
      if (!merge_tolerance.empty()) {
        config.tolerance = ag::Time::parse(merge_tolerance);
      }
      return cmd_merge(merge_inputs, merge_output, config, merge_anchor);
    }
    if (score->parsed()) {
      return cmd_score(score_ref, score_hyp, score_pairs, score_segments,
                       score_format, config, score_records, score_jobs,
                       score_exclude, score_output);
    }
    if (repair->parsed()) {
      return cmd_repair(repair_graph, repair_ledger, repair_output, repair_impact);
    }
    if (query->parsed()) {
      return cmd_query(query_graph, query_from, query_to, query_type, query_output);
    }
    if (exp->parsed()) {
      return cmd_export(export_graph, export_output);
    }
    if (catalog->parsed()) {
      using namespace ag::cat;
      if (reg->parsed()) {
        Catalog cat = load_catalog(ledger_path, false);
        cat.register_recording(cat_source, parse_date(cat_date),
                               parse_time_of_day(cat_start), cat_duration,
                               cat_newswire);
        store_catalog(cat, ledger_path);
        return 0;
      }
      Catalog cat = load_catalog(ledger_path, true);
      FileKey key;
      if (!cat_source.empty()) {
        key = FileKey{cat_source, parse_date(cat_date), parse_time_of_day(cat_start)};
      }
      if (adv->parsed()) {
        cat.advance_stage(key, stage_from_string(cat_stage));
        store_catalog(cat, ledger_path);
      } else if (seg->parsed()) {
        auto units = cat.segment_file(key, parse_boundary_arg(cat_boundaries));
        store_catalog(cat, ledger_path);
        for (const auto& u : units) {
          std::cout << u.story_id << '\t' << to_string(u.kind) << '\t'
                    << u.offset_seconds << '\t' << u.end_offset_seconds << '\n';
        }
      } else if (flaw->parsed()) {
        cat.report_flaw(cat_story, flaw_from_string(cat_flaw), cat_reporter);
        store_catalog(cat, ledger_path);
      } else if (ann->parsed()) {
        std::vector<std::string> ids;
        for (const std::string& id : split_on(cat_ann_stories, ',')) {
          if (!id.empty()) ids.push_back(id);
        }
        cat.add_annotation(cat_ann_id, ann_kind_from_string(cat_ann_kind), ids);
        store_catalog(cat, ledger_path);
      } else if (reseg->parsed()) {
        auto [units, report] =
            cat.apply_resegmentation(key, parse_boundary_arg(cat_boundaries));
        store_catalog(cat, ledger_path);
        std::cout << "removed=" << report.removed_story_ids.size()
                  << " added=" << report.added_story_ids.size()
                  << " invalidated=" << report.invalidated_annotations.size()
                  << " total=" << report.total_annotations << " rate=";
        char buffer[32];
        std::snprintf(buffer, sizeof(buffer), "%.3f%%", report.rate() * 100.0);
        std::cout << buffer << '\n';
        for (const auto& id : report.invalidated_annotations) {
          std::cout << "invalidated\t" << id << '\n';
        }
      } else if (snap->parsed()) {
        std::ostringstream out;
        cat.snapshot().save(out, /*snapshot_header=*/true);
        write_output(cat_output, out.str());
      } else if (check->parsed()) {
        auto scan = cat.check();
        char buffer[32];
        std::snprintf(buffer, sizeof(buffer), "%.3f%%",
                      scan.invalidation_rate() * 100.0);
        std::cout << "annotations=" << scan.total_annotations
                  << " invalidated=" << scan.invalidated << " rate=" << buffer
                  << " dangling_valid=" << scan.dangling_valid.size() << '\n';
        for (const auto& id : scan.dangling_valid) {
          std::cout << "dangling\t" << id << '\n';
        }
        if (!scan.consistent()) return 1;
      }
      return 0;
    }
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const ag::Error& e) {
    std::cerr << "agtool: " << ag::to_string(e.kind()) << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "agtool: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
