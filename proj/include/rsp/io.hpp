#pragma once

#include <string>

#include "rsp/yard.hpp"

namespace rsp {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string instance_to_json(const Instance& inst, int indent = 2);
Instance instance_from_json(const std::string& text);
std::string plan_to_json(const Plan& plan, int indent = 2);
Plan plan_from_json(const std::string& text);

Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);
Plan load_plan(const std::string& path);
void save_plan(const Plan& plan, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// Compact one-line rendering, switch end on the right: "0:[a b] 1:[]".
std::string format_state(const State& s, const Instance& inst);

}  // namespace rsp
