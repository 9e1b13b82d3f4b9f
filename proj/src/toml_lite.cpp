#include "toml_lite.hpp"

#include <cctype>
#include <cstdlib>

#include "slicesim/errors.hpp"

namespace slicesim::toml_lite {

namespace {

[[noreturn]] void fail(int line, const std::string& message) {
  throw ParseError("toml parse error at line " + std::to_string(line) + ": " + message);
}

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  int line = 1;

  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  char take() {
    char c = text[pos++];
    if (c == '\n') ++line;
    return c;
  }

  void skip_spaces() {
    while (!done() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) ++pos;
  }

  // Whitespace, newlines, and comments; used inside arrays.
  void skip_filler() {
    while (!done()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        take();
      } else if (c == '#') {
        while (!done() && peek() != '\n') ++pos;
      } else {
        break;
      }
    }
  }
};

bool is_bare_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

std::string parse_bare_key(Cursor& cur) {
  std::string key;
  while (!cur.done() && is_bare_key_char(cur.peek())) key.push_back(cur.take());
  if (key.empty()) fail(cur.line, "expected a key");
  return key;
}

std::string parse_quoted_string(Cursor& cur) {
  int line = cur.line;
  cur.take();  // opening quote
  std::string out;
  while (true) {
    if (cur.done()) fail(line, "unterminated string");
    char c = cur.take();
    if (c == '"') break;
    if (c == '\n') fail(line, "newline inside string");
    if (c == '\\') {
      if (cur.done()) fail(line, "dangling escape");
      char esc = cur.take();
      switch (esc) {
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        default: fail(line, std::string("unsupported escape \\") + esc);
      }
    } else {
      out.push_back(c);
    }
  }
  return out;
}

Value parse_value(Cursor& cur);

Value parse_array(Cursor& cur) {
  Value v;
  v.type = Value::Type::Array;
  v.line = cur.line;
  cur.take();  // '['
  while (true) {
    cur.skip_filler();
    if (cur.done()) fail(v.line, "unterminated array");
    if (cur.peek() == ']') {
      cur.take();
      break;
    }
    v.array.push_back(parse_value(cur));
    cur.skip_filler();
    if (cur.done()) fail(v.line, "unterminated array");
    if (cur.peek() == ',') {
      cur.take();
    } else if (cur.peek() != ']') {
      fail(cur.line, "expected ',' or ']' in array");
    }
  }
  return v;
}

Value parse_value(Cursor& cur) {
  cur.skip_spaces();
  if (cur.done()) fail(cur.line, "expected a value");
  char c = cur.peek();
  if (c == '"') {
    Value v;
    v.type = Value::Type::String;
    v.line = cur.line;
    v.text = parse_quoted_string(cur);
    return v;
  }
  if (c == '[') return parse_array(cur);

  // Bare token: number or boolean.
  std::string token;
  int line = cur.line;
  while (!cur.done()) {
    char t = cur.peek();
    if (t == ' ' || t == '\t' || t == '\r' || t == '\n' || t == ',' || t == ']' || t == '#') break;
    token.push_back(cur.take());
  }
  if (token.empty()) fail(line, "expected a value");
  Value v;
  v.line = line;
  if (token == "true" || token == "false") {
    v.type = Value::Type::Boolean;
    v.boolean = (token == "true");
    return v;
  }
  char* end = nullptr;
  v.number = std::strtod(token.c_str(), &end);
  if (end == nullptr || *end != '\0') fail(line, "'" + token + "' is not a number");
  v.type = Value::Type::Number;
  return v;
}

}  // namespace

Document parse(std::string_view text) {
  Document doc;
  Cursor cur{text};
  Table* current = &doc.root;

  while (!cur.done()) {
    cur.skip_spaces();
    if (cur.done()) break;
    char c = cur.peek();
    if (c == '\n') {
      cur.take();
      continue;
    }
    if (c == '#') {
      while (!cur.done() && cur.peek() != '\n') ++cur.pos;
      continue;
    }
    if (c == '[') {
      int line = cur.line;
      cur.take();
      bool is_array = !cur.done() && cur.peek() == '[';
      if (is_array) cur.take();
      cur.skip_spaces();
      std::string name = parse_bare_key(cur);
      cur.skip_spaces();
      if (cur.done() || cur.take() != ']') fail(line, "expected ']' after table name");
      if (is_array) {
        if (cur.done() || cur.take() != ']') fail(line, "expected ']]' after table array name");
        doc.table_arrays[name].emplace_back();
        current = &doc.table_arrays[name].back();
      } else {
        if (doc.tables.count(name) > 0) fail(line, "duplicate table [" + name + "]");
        current = &doc.tables[name];
      }
      current->line = line;
      cur.skip_spaces();
      if (!cur.done() && cur.peek() == '#') {
        while (!cur.done() && cur.peek() != '\n') ++cur.pos;
      }
      if (!cur.done() && cur.peek() != '\n') fail(line, "unexpected text after table header");
      continue;
    }

    int line = cur.line;
    std::string key = parse_bare_key(cur);
    cur.skip_spaces();
    if (cur.done() || cur.take() != '=') fail(line, "expected '=' after key '" + key + "'");
    Value value = parse_value(cur);
    cur.skip_spaces();
    if (!cur.done() && cur.peek() == '#') {
      while (!cur.done() && cur.peek() != '\n') ++cur.pos;
    }
    if (!cur.done() && cur.peek() != '\n') fail(line, "unexpected text after value for '" + key + "'");
    if (current->entries.count(key) > 0) fail(line, "duplicate key '" + key + "'");
    value.line = line;
    current->entries[key] = std::move(value);
  }
  return doc;
}

}  // namespace slicesim::toml_lite
