#include <cctype>
#include <sstream>

#include "ag/error.hpp"
#include "ag/formats.hpp"

namespace ag::formats {

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t line = 1;
  std::size_t column = 1;

  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  void advance() {
    if (text[pos] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
    ++pos;
  }

  void skip_space() {
    while (!done() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  std::string atom() {
    std::size_t start = pos;
    while (!done() && !std::isspace(static_cast<unsigned char>(peek())) &&
           peek() != '(' && peek() != ')') {
      advance();
    }
    return std::string(text.substr(start, pos - start));
  }
};

ParseTree parse_node(Cursor& cur) {
  // cur points at '('.
  std::size_t open_line = cur.line, open_col = cur.column;
  cur.advance();
  cur.skip_space();
  if (cur.done()) {
    throw ParseError("unbalanced '('", open_line, open_col);
  }
  if (cur.peek() == '(' || cur.peek() == ')') {
    throw ParseError("constituent label expected after '('", cur.line, cur.column);
  }
  ParseTree tree;
  tree.label = cur.atom();
  while (true) {
    cur.skip_space();
    if (cur.done()) {
      throw ParseError("unbalanced '('", open_line, open_col);
    }
    if (cur.peek() == ')') {
      cur.advance();
      break;
    }
    if (cur.peek() == '(') {
      tree.children.push_back(parse_node(cur));
    } else {
      ParseTree leaf;
      leaf.leaf_text = cur.atom();
      tree.children.push_back(std::move(leaf));
    }
  }
  if (tree.children.empty()) {
    throw ParseError("constituent '" + tree.label + "' has no children",
                     open_line, open_col);
  }
  return tree;
}

}  // namespace

std::vector<ParseTree> parse_treebank(std::string_view text) {
  std::vector<ParseTree> trees;
  Cursor cur{text};
  while (true) {
    cur.skip_space();
    if (cur.done()) break;
    if (cur.peek() != '(') {
      throw ParseError("expected '(' at top level", cur.line, cur.column);
    }
    // Outer unlabeled group of the doubled-parenthesis convention.
    std::size_t open_line = cur.line, open_col = cur.column;
    cur.advance();
    cur.skip_space();
    if (cur.done() || cur.peek() != '(') {
      throw ParseError("expected inner '(' of a (( ... )) group",
                       cur.done() ? open_line : cur.line,
                       cur.done() ? open_col : cur.column);
    }
    trees.push_back(parse_node(cur));
    cur.skip_space();
    if (cur.done() || cur.peek() != ')') {
      throw ParseError("unbalanced '(' in (( ... )) group", open_line, open_col);
    }
    cur.advance();
  }
  return trees;
}

namespace {

void write_node(std::ostringstream& out, const ParseTree& tree) {
  if (tree.is_leaf()) {
    out << *tree.leaf_text;
    return;
  }
  out << '(' << tree.label;
  for (const ParseTree& child : tree.children) {
    out << ' ';
    write_node(out, child);
  }
  out << ')';
}

}  // namespace

std::string write_treebank(const std::vector<ParseTree>& trees) {
  std::ostringstream out;
  for (const ParseTree& tree : trees) {
    out << '(';
    write_node(out, tree);
    out << ")\n";
  }
  return out.str();
}

bool is_annotation_leaf(std::string_view leaf_text) {
  return leaf_text == "E_S" || (!leaf_text.empty() && leaf_text[0] == '*');
}

namespace {

void collect_leaves(const ParseTree& tree, std::vector<std::string>* out) {
  if (tree.is_leaf()) {
    if (!is_annotation_leaf(*tree.leaf_text)) out->push_back(*tree.leaf_text);
    return;
  }
  // Edit-region bookkeeping labels hold marker leaves, not words.
  if (tree.label == "RM" || tree.label == "IP" || tree.label == "RS") return;
  for (const ParseTree& child : tree.children) collect_leaves(child, out);
}

}  // namespace

std::vector<std::string> surface_words(const std::vector<ParseTree>& trees) {
  std::vector<std::string> words;
  for (const ParseTree& tree : trees) {
    if (tree.label == "CODE") continue;  // speaker-code units
    collect_leaves(tree, &words);
  }
  return words;
}

}  // namespace ag::formats
