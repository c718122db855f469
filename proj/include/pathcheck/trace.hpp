#pragma once

#include <pathcheck/error.hpp>
#include <pathcheck/formula.hpp>

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pathcheck {

/// Truth value of one formula at every position of a path.
class BoolSeq {
public:
  BoolSeq() = default;
  explicit BoolSeq(std::size_t n, bool value = false) : bits_(n, value) {}
  BoolSeq(std::initializer_list<int> bits) {
    bits_.reserve(bits.size());
    for (int b : bits)
      bits_.push_back(b != 0);
  }
  explicit BoolSeq(std::vector<bool> bits) : bits_(std::move(bits)) {}

  /// Parses "0110" or "0,1,1,0".
  static BoolSeq from_string(std::string_view s) {
    BoolSeq out;
    for (char c : s) {
      if (c == '0' || c == '1')
        out.bits_.push_back(c == '1');
      else if (c != ',' && c != ' ')
        throw Error("sequence may contain only 0, 1 and commas");
    }
    return out;
  }

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, bool v) { bits_[i] = v; }
  void push_back(bool v) { bits_.push_back(v); }

  BoolSeq complement() const {
    BoolSeq out(*this);
    out.bits_.flip();
    return out;
  }

  /// Pointwise <=.
  bool below(const BoolSeq &other) const {
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] && !other.bits_[i])
        return false;
    return true;
  }

  std::string to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (bool b : bits_)
      s += b ? '1' : '0';
    return s;
  }

  friend bool operator==(const BoolSeq &, const BoolSeq &) = default;

private:
  std::vector<bool> bits_;
};

enum class TraceFormat { Csv, Jsonl };

/*!
  Finite, nonempty sequence of states over a declared alphabet.

  Stored column-wise: one BoolSeq per proposition. Propositions absent from a
  state are false.
*/
class Path {
public:
  Path(std::vector<std::string> alphabet, std::vector<BoolSeq> columns)
      : alphabet_(std::move(alphabet)), columns_(std::move(columns)) {
    if (alphabet_.size() != columns_.size())
      throw TraceError("alphabet and column count differ");
    length_ = columns_.empty() ? 0 : columns_.front().size();
    for (const auto &c : columns_)
      if (c.size() != length_)
        throw TraceError("columns of unequal length");
    index_by_name();
  }

  /// Path with no propositions but a given length (all reserved atoms still work).
  static Path of_length(std::size_t n) {
    Path p({}, {});
    p.length_ = n;
    return p;
  }

  /// Builds a path from explicit states (sets of proposition names).
  static Path from_states(std::vector<std::string> alphabet,
                          const std::vector<std::vector<std::string>> &states) {
    std::vector<BoolSeq> cols(alphabet.size(), BoolSeq(states.size()));
    Path skeleton(alphabet, std::vector<BoolSeq>(alphabet.size()));
    for (std::size_t i = 0; i < states.size(); ++i)
      for (const auto &name : states[i])
        cols[skeleton.index_of(name)].set(i, true);
    Path p(std::move(alphabet), std::move(cols));
    p.length_ = states.size();
    return p;
  }

  std::size_t size() const noexcept { return length_; }
  const std::vector<std::string> &alphabet() const noexcept { return alphabet_; }

  bool has(std::string_view name) const { return lookup_.count(std::string(name)) != 0; }

  std::size_t index_of(std::string_view name) const {
    auto it = lookup_.find(std::string(name));
    if (it == lookup_.end())
      throw UnknownPropositionError(std::string(name));
    return it->second;
  }

  const BoolSeq &column(std::size_t prop) const { return columns_.at(prop); }

  bool holds(std::string_view name, std::size_t position) const {
    if (name == kTrueAtom)
      return true;
    if (name == kFalseAtom)
      return false;
    return columns_[index_of(name)][position];
  }

  /// Names true in state `i`, in alphabet order.
  std::vector<std::string> state(std::size_t i) const {
    std::vector<std::string> out;
    for (std::size_t p = 0; p < alphabet_.size(); ++p)
      if (columns_[p][i])
        out.push_back(alphabet_[p]);
    return out;
  }

  /// Prefix or window [first, first + count).
  Path slice(std::size_t first, std::size_t count) const {
    std::vector<BoolSeq> cols;
    for (const auto &c : columns_) {
      BoolSeq s(count);
      for (std::size_t i = 0; i < count; ++i)
        s.set(i, c[first + i]);
      cols.push_back(std::move(s));
    }
    Path p(alphabet_, std::move(cols));
    p.length_ = count;
    return p;
  }

  friend bool operator==(const Path &a, const Path &b) {
    return a.length_ == b.length_ && a.alphabet_ == b.alphabet_ &&
           a.columns_ == b.columns_;
  }

private:
  void index_by_name() {
    lookup_.clear();
    for (std::size_t i = 0; i < alphabet_.size(); ++i) {
      const auto &name = alphabet_[i];
      if (name == kTrueAtom || name == kFalseAtom)
        throw TraceError("proposition name '" + name + "' is reserved");
      if (!lookup_.emplace(name, i).second)
        throw TraceError("duplicate proposition '" + name + "'");
    }
  }

  std::vector<std::string> alphabet_;
  std::vector<BoolSeq> columns_;
  std::size_t length_ = 0;
  std::unordered_map<std::string, std::size_t> lookup_;
};

namespace detail {

inline bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

inline std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (!cur.empty())
    lines.push_back(std::move(cur));
  return lines;
}

inline std::vector<std::string> split_cells(const std::string &line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ','))
    cells.push_back(cell);
  if (!line.empty() && line.back() == ',')
    cells.emplace_back();
  for (auto &c : cells) {
    auto b = c.find_first_not_of(" \t");
    auto e = c.find_last_not_of(" \t");
    c = b == std::string::npos ? std::string() : c.substr(b, e - b + 1);
  }
  return cells;
}

inline Path load_csv(std::string_view text) {
  auto lines = split_lines(text);
  std::erase_if(lines, [](const std::string &l) {
    return l.find_first_not_of(" \t") == std::string::npos;
  });
  if (lines.empty())
    throw TraceError("empty trace: missing header");
  auto header = split_cells(lines.front());
  for (const auto &name : header)
    if (!is_identifier(name))
      throw TraceError("header cell '" + name + "' is not an identifier");
  const std::size_t rows = lines.size() - 1;
  if (rows == 0)
    throw TraceError("empty trace");
  std::vector<BoolSeq> cols(header.size(), BoolSeq(rows));
  for (std::size_t r = 0; r < rows; ++r) {
    auto cells = split_cells(lines[r + 1]);
    if (cells.size() != header.size())
      throw TraceError("row " + std::to_string(r + 1) + ": expected " +
                       std::to_string(header.size()) + " cells, got " +
                       std::to_string(cells.size()));
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c] != "0" && cells[c] != "1")
        throw TraceError("row " + std::to_string(r + 1) + ": cell '" + cells[c] +
                         "' is not 0 or 1");
      cols[c].set(r, cells[c] == "1");
    }
  }
  return Path(std::move(header), std::move(cols));
}

inline Path load_jsonl(std::string_view text) {
  auto lines = split_lines(text);
  std::erase_if(lines, [](const std::string &l) {
    return l.find_first_not_of(" \t") == std::string::npos;
  });
  std::vector<std::string> alphabet;
  std::set<std::string> known;
  auto declare = [&](const std::string &name) {
    if (!is_identifier(name))
      throw TraceError("'" + name + "' is not a proposition identifier");
    if (known.insert(name).second)
      alphabet.push_back(name);
  };

  std::size_t first = 0;
  if (!lines.empty()) {
    nlohmann::json head;
    try {
      head = nlohmann::json::parse(lines.front());
    } catch (const nlohmann::json::exception &e) {
      throw TraceError(std::string("line 1: ") + e.what());
    }
    if (head.is_object()) {
      if (!head.contains("alphabet") || !head["alphabet"].is_array())
        throw TraceError("line 1: declaration object needs an \"alphabet\" array");
      for (const auto &n : head["alphabet"]) {
        if (!n.is_string())
          throw TraceError("line 1: alphabet entries must be strings");
        if (known.count(n.get<std::string>()))
          throw TraceError("duplicate proposition '" + n.get<std::string>() + "'");
        declare(n.get<std::string>());
      }
      first = 1;
    }
  }

  std::vector<std::vector<std::string>> states;
  for (std::size_t i = first; i < lines.size(); ++i) {
    nlohmann::json row;
    try {
      row = nlohmann::json::parse(lines[i]);
    } catch (const nlohmann::json::exception &e) {
      throw TraceError("line " + std::to_string(i + 1) + ": " + e.what());
    }
    if (!row.is_array())
      throw TraceError("line " + std::to_string(i + 1) + ": expected an array of names");
    std::vector<std::string> state;
    for (const auto &n : row) {
      if (!n.is_string())
        throw TraceError("line " + std::to_string(i + 1) + ": names must be strings");
      declare(n.get<std::string>());
      state.push_back(n.get<std::string>());
    }
    states.push_back(std::move(state));
  }
  if (states.empty())
    throw TraceError("empty trace");
  return Path::from_states(std::move(alphabet), states);
}

} // namespace detail

/// Parse a trace. Errors: empty trace, malformed row, duplicate proposition.
inline Path load_trace(std::string_view bytes, TraceFormat format) {
  return format == TraceFormat::Csv ? detail::load_csv(bytes)
                                    : detail::load_jsonl(bytes);
}

/// CSV serialization; `load_trace(to_csv(p), Csv) == p`.
inline std::string to_csv(const Path &p) {
  std::string out;
  for (std::size_t i = 0; i < p.alphabet().size(); ++i) {
    if (i)
      out += ',';
    out += p.alphabet()[i];
  }
  out += '\n';
  for (std::size_t r = 0; r < p.size(); ++r) {
    for (std::size_t c = 0; c < p.alphabet().size(); ++c) {
      if (c)
        out += ',';
      out += p.column(c)[r] ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

/// Valuation of a literal along the path: bit i = (name in state i) xor negated.
inline BoolSeq atom_sequence(const Path &p, std::string_view name, bool negated = false) {
  BoolSeq seq;
  if (name == kTrueAtom)
    seq = BoolSeq(p.size(), true);
  else if (name == kFalseAtom)
    seq = BoolSeq(p.size(), false);
  else
    seq = p.column(p.index_of(name));
  return negated ? seq.complement() : seq;
}

} // namespace pathcheck
