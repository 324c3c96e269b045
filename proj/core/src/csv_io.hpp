// Tiny CSV layer for the fixed-schema artifacts this tool writes. Fields never
// contain commas or quotes, so no escaping is implemented; writers assert that.
#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ease::detail {

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path) : out_(path) {
    if (!out_) throw std::runtime_error("cannot open for writing: " + path);
  }

  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const std::string& f = fields[i];
      if (f.find_first_of(",\"\n") != std::string::npos)
        throw std::runtime_error("csv field needs escaping, refusing: " + f);
      if (i) out_ << ',';
      out_ << f;
    }
    out_ << '\n';
  }

  void close() {
    out_.close();
    if (!out_) throw std::runtime_error("csv write failed");
  }

 private:
  std::ofstream out_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw std::runtime_error("csv column not found: " + name);
  }
};

inline CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  CsvTable t;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      std::size_t comma = line.find(',', start);
      if (comma == std::string::npos) {
        fields.emplace_back(line.substr(start));
        break;
      }
      fields.emplace_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    if (first) {
      t.header = std::move(fields);
      first = false;
    } else {
      if (fields.size() != t.header.size())
        throw std::runtime_error("csv row width mismatch in " + path);
      t.rows.push_back(std::move(fields));
    }
  }
  return t;
}

}  // namespace ease::detail
