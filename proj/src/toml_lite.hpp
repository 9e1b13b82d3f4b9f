#ifndef SLICESIM_TOML_LITE_HPP
#define SLICESIM_TOML_LITE_HPP

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace slicesim::toml_lite {

// Small reader for the subset of TOML the scenario files use: [table]
// headers, [[array-of-table]] headers, key = value lines, # comments,
// and values that are numbers, quoted strings, booleans, or (possibly
// multi-line) arrays of those.

struct Value {
  enum class Type { Number, String, Boolean, Array };
  Type type = Type::Number;
  double number = 0.0;
  std::string text;
  bool boolean = false;
  std::vector<Value> array;
  int line = 0;
};

struct Table {
  std::map<std::string, Value> entries;
  int line = 0;

  bool has(const std::string& key) const { return entries.count(key) > 0; }
};

struct Document {
  Table root;
  std::map<std::string, Table> tables;
  std::map<std::string, std::vector<Table>> table_arrays;

  bool has_table(const std::string& name) const { return tables.count(name) > 0; }
};

/// Throws slicesim::ParseError with a line number on malformed input.
Document parse(std::string_view text);

}  // namespace slicesim::toml_lite

#endif
