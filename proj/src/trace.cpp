#include "trace.h"

#include <sstream>

#include <json.hpp>

namespace rewlang {

std::string to_json_line(const TraceEvent& e) {
  nlohmann::ordered_json j;
  j["step"] = e.step;
  j["kind"] = e.kind;
  j["rule"] = e.rule;
  j["label"] = e.label;
  j["before"] = e.before;
  j["after"] = e.after;
  return j.dump();
}

std::string to_json_lines(const std::vector<TraceEvent>& events) {
  std::string out;
  for (const auto& e : events) {
    out += to_json_line(e);
    out += '\n';
  }
  return out;
}

std::vector<TraceEvent> parse_json_lines(const std::string& text) {
  std::vector<TraceEvent> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line);
    out.push_back({j.at("step").get<std::uint64_t>(), j.at("kind").get<std::string>(),
                   j.at("rule").get<std::string>(), j.at("label").get<std::uint32_t>(),
                   j.at("before").get<std::string>(), j.at("after").get<std::string>()});
  }
  return out;
}

}  // namespace rewlang
