#pragma once

// Minimal JSON writing with deterministic field order and 17-significant-digit
// decimals, so that emitted files are byte-stable and reals round-trip
// bit-exactly. Parsing goes through nlohmann::json.

#include <cstdint>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace seqreg::jsonio {

/// Shortest form that still round-trips any double: 17 significant digits.
inline std::string fmt17(double x) {
  if (std::isnan(x)) return "null";
  if (std::isinf(x)) return x > 0 ? "1e999" : "-1e999";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

class Writer {
 public:
  void begin_object() { open('{'); }
  void end_object() { close('}'); }
  void begin_array(const std::string& key) { key_(key); raw_open('['); }
  void begin_object_field(const std::string& key) { key_(key); raw_open('{'); }
  void end_array() { close(']'); }

  void field(const std::string& key, double v) { key_(key); out_ += fmt17(v); }
  void field(const std::string& key, std::uint64_t v) { key_(key); out_ += std::to_string(v); }
  void field(const std::string& key, int v) { key_(key); out_ += std::to_string(v); }
  void field(const std::string& key, bool v) { key_(key); out_ += v ? "true" : "false"; }
  void field(const std::string& key, const std::string& v) {
    key_(key);
    out_ += '"';
    for (char c : v) {
      if (c == '"' || c == '\\') out_ += '\\';
      out_ += c;
    }
    out_ += '"';
  }
  void field(const std::string& key, const std::vector<double>& v) {
    begin_array(key);
    for (double x : v) element(x);
    end_array();
  }
  void element(double v) { sep_(); out_ += fmt17(v); }
  void element_object() { sep_(); out_ += '{'; first_ = true; }

  const std::string& str() const { return out_; }

 private:
  void key_(const std::string& k) {
    sep_();
    out_ += '"';
    out_ += k;
    out_ += "\":";
  }
  void sep_() {
    if (!first_) out_ += ',';
    first_ = false;
  }
  void open(char c) {
    sep_();
    out_ += c;
    first_ = true;
  }
  void raw_open(char c) {  // follows a key; no separator
    out_ += c;
    first_ = true;
  }
  void close(char c) {
    out_ += c;
    first_ = false;
  }

  std::string out_;
  bool first_ = true;
};

/// Parses text, converting nlohmann's errors into invalid_argument.
inline nlohmann::json parse(const std::string& text, const char* what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string(what) + ": malformed JSON: " + e.what());
  }
}

/// Rejects any key of `j` outside `allowed`.
inline void reject_unknown_fields(const nlohmann::json& j,
                                  const std::set<std::string>& allowed,
                                  const char* where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (allowed.find(it.key()) == allowed.end()) {
      throw std::invalid_argument(std::string(where) + ": unknown field '" +
                                  it.key() + "'");
    }
  }
}

inline double as_double(const nlohmann::json& j, const char* where) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!j.is_number())
    throw std::invalid_argument(std::string(where) + ": expected a number");
  return j.get<double>();
}

}  // namespace seqreg::jsonio
