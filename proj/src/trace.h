#ifndef REWLANG_TRACE_H
#define REWLANG_TRACE_H

#include <cstdint>
#include <string>
#include <vector>

#include "term.h"

namespace rewlang {

struct TraceEvent {
  std::uint64_t step = 0;
  // rewrite | builtin | destructive | cond | call | splice
  std::string kind;
  std::string rule;
  std::uint32_t label = 0;
  std::string before;
  std::string after;

  bool operator==(const TraceEvent&) const = default;
};

/// One JSON object per line: step, kind, rule, label, before, after.
std::string to_json_line(const TraceEvent& e);
std::string to_json_lines(const std::vector<TraceEvent>& events);
std::vector<TraceEvent> parse_json_lines(const std::string& text);

}  // namespace rewlang

#endif
