#ifndef AG_FORMATS_HPP
#define AG_FORMATS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ag/graph.hpp"

namespace ag::formats {

// ---------------------------------------------------------------------------
// Aligned-word transcripts: one token per line, "CHANNEL START DURATION TEXT",
// with '*' in both time fields for untimed tokens.

struct Token {
  Channel channel = Channel::A;
  std::optional<Time> start;
  std::optional<Time> duration;
  std::string text;

  bool timed() const { return start.has_value(); }
  Time end() const { return start->plus(*duration); }
};

std::vector<Token> parse_aligned_words(std::string_view text);
std::string write_aligned_words(const std::vector<Token>& tokens);

// ---------------------------------------------------------------------------
// POS files: turns delimited by ==== lines, word/TAG tokens, [ ] chunks.

struct PosToken {
  std::string word;
  std::string tag;
  bool chunk_member = false;

  std::string source() const { return word + "/" + tag; }
};

struct PosTurn {
  std::string speaker_code;  // e.g. "SpeakerB22"
  std::vector<PosToken> tokens;
};

std::vector<PosTurn> parse_pos(std::string_view text);
std::string write_pos(const std::vector<PosTurn>& turns);

// ---------------------------------------------------------------------------
// Disfluency files: "X.N:" turn headers; [ reparandum + repair ] restarts,
// {F }/{C } fillers and coordinators, <...> non-speech, '/' slash-unit ends.

struct DisfluencyElement {
  enum class Kind {
    Word,
    Restart,
    FillerF,
    CoordC,
    OtherBrace,   // any other {X ...} code, recorded verbatim
    NonSpeech,
    SentBoundary,
  };

  Kind kind = Kind::Word;
  std::string text;  // word text, non-speech content, or brace code
  std::vector<DisfluencyElement> children;
  // Restart only: children[0..ip_index) is the reparandum, the rest the
  // repair; the interruption point sits between them.
  std::size_t ip_index = 0;
};

struct DisfluencyTurn {
  Channel speaker = Channel::A;
  int turn_index = 0;
  std::vector<DisfluencyElement> elements;
};

std::vector<DisfluencyTurn> parse_disfluency(std::string_view text);
std::string write_disfluency(const std::vector<DisfluencyTurn>& turns);

// ---------------------------------------------------------------------------
// Treebank files: doubled-parenthesis S-expressions, one tree per (( ... )).

struct ParseTree {
  std::string label;                     // empty on leaves
  std::vector<ParseTree> children;
  std::optional<std::string> leaf_text;  // present only on leaves

  bool is_leaf() const { return leaf_text.has_value(); }
};

std::vector<ParseTree> parse_treebank(std::string_view text);
std::string write_treebank(const std::vector<ParseTree>& trees);

/// True for leaves that annotate rather than transcribe: traces ("*", "*-1",
/// "*T*-1", ...) and the slash-unit marker "E_S".
bool is_annotation_leaf(std::string_view leaf_text);

// ---------------------------------------------------------------------------
// Lifts into annotation-graph fragments.

/// Word arcs over per-channel chains of time-anchored nodes. Tokens sharing
/// an end/start boundary share a node; a time gap yields two distinct
/// anchored nodes; '*' tokens bridge their timed neighbors through
/// unanchored nodes.
AnnotationGraph tokens_to_graph(const std::vector<Token>& tokens,
                                const std::string& timeline_id,
                                const std::string& provenance = "aligned-words");

/// Pos/ arcs labeled "word/TAG" over one unanchored chain per turn, plus a
/// spanning "NP-chunk" arc per [ ] chunk.
AnnotationGraph pos_to_graph(const std::vector<PosTurn>& turns,
                             const std::string& timeline_id,
                             const std::string& provenance = "pos");

/// DISF/ word and non-speech arcs over one unanchored chain per turn;
/// restarts, fillers and coordinators become spanning arcs.
AnnotationGraph disfluency_to_graph(const std::vector<DisfluencyTurn>& turns,
                                    const std::string& timeline_id,
                                    const std::string& provenance = "disfluency");

/// T/ leaf arcs over one unanchored chain per tree; every internal
/// constituent becomes a spanning arc labeled with its constituent label.
AnnotationGraph treebank_to_graph(const std::vector<ParseTree>& trees,
                                  const std::string& timeline_id,
                                  const std::string& provenance = "treebank");

// ---------------------------------------------------------------------------
// Surface-word extraction for the cross-stream agreement check. Markup,
// speaker codes, traces and E_S are dropped; punctuation-only tokens are the
// caller's concern (they normalize to nothing under the default policy).

std::vector<std::string> surface_words(const std::vector<PosTurn>& turns);
std::vector<std::string> surface_words(const std::vector<DisfluencyTurn>& turns);
std::vector<std::string> surface_words(const std::vector<ParseTree>& trees);

}  // namespace ag::formats

#endif  // AG_FORMATS_HPP
