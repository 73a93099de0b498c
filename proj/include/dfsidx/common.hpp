#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dfsidx {

// Vertex ids are 1-based throughout; 0 means "none".
using Vertex = uint32_t;
constexpr Vertex kNoVertex = 0;

// Thrown by the graph text parser; carries the offending line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(uint64_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  uint64_t line() const { return line_; }

 private:
  uint64_t line_;
};

// Width in bits needed to store values in [0, max_value].
inline uint32_t bits_for(uint64_t max_value) {
  uint32_t w = 1;
  while (max_value >> w) ++w;
  return w;
}

// ceil(log2(n)) for n >= 1; 0 for n <= 1.
inline uint32_t ceil_log2(uint64_t n) {
  uint32_t w = 0;
  while ((uint64_t(1) << w) < n) ++w;
  return w;
}

inline uint32_t floor_log2(uint64_t n) {
  uint32_t w = 0;
  while (n >> (w + 1)) ++w;
  return w;
}

}  // namespace dfsidx
