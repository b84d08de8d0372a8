#pragma once

#include <string>

#include <json.hpp>

#include "trace.hpp"

namespace signcover {

inline nlohmann::json trace_to_json(const BuildTrace& trace) {
  nlohmann::json j;
  j["case"] = trace.case_label;
  j["length"] = trace.length;
  if (trace.coloring) {
    std::string classes;
    for (EdgeClass c : trace.coloring->classes) classes += to_char(c);
    j["coloring"] = classes;
  }
  j["notes"] = trace.notes;
  j["checks"] = nlohmann::json::array();
  for (const BoundCheck& c : trace.checks) {
    j["checks"].push_back({{"name", c.name},
                           {"value", c.value},
                           {"bound", c.bound.str()},
                           {"bound_value", c.bound.value()},
                           {"holds", c.holds()}});
  }
  return j;
}

}  // namespace signcover
