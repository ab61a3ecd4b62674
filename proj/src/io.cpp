#include "rsp/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace rsp {

using nlohmann::json;

namespace {

json destination_json(const Destination& d) {
  if (d.any) return "any";
  return d.track;
}

Destination destination_from(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "any") throw FormatError("destination must be a track id or \"any\"");
    return Destination::any_classification();
  }
  return Destination::fixed(j.get<int>());
}

std::string id_string(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw FormatError("group id must be a string or integer");
}

}  // namespace

std::string instance_to_json(const Instance& inst, int indent) {
  json j;
  j["tracks"] = json::array();
  for (const auto& t : inst.tracks)
    j["tracks"].push_back({{"id", t.id},
                           {"kind", t.kind == TrackKind::Departure ? "departure" : "classification"},
                           {"capacity", t.capacity}});
  j["groups"] = json::array();
  for (const auto& g : inst.groups)
    j["groups"].push_back({{"id", g.id}, {"length", g.length}, {"destination", destination_json(g.dest)}});
  json init = json::object();
  for (int t = 0; t < static_cast<int>(inst.initial.tracks.size()); ++t) {
    if (inst.initial.tracks[t].empty()) continue;
    json seq = json::array();
    for (int g : inst.initial.tracks[t]) seq.push_back(inst.groups[g].id);
    init[std::to_string(t)] = seq;
  }
  j["initial"] = init;
  j["cost"] = inst.cost;
  return j.dump(indent);
}

Instance instance_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("instance is not valid JSON: ") + e.what());
  }
  Instance inst;
  try {
    for (const auto& t : j.at("tracks")) {
      Track tr;
      tr.id = t.at("id").get<int>();
      const auto kind = t.at("kind").get<std::string>();
      if (kind == "departure") tr.kind = TrackKind::Departure;
      else if (kind == "classification") tr.kind = TrackKind::Classification;
      else throw FormatError("unknown track kind " + kind);
      tr.capacity = t.at("capacity").get<std::int64_t>();
      inst.tracks.push_back(tr);
    }
    std::map<std::string, int> index;
    for (const auto& g : j.at("groups")) {
      Group gr;
      gr.id = id_string(g.at("id"));
      gr.length = g.value("length", std::int64_t{1});
      gr.dest = destination_from(g.at("destination"));
      if (!index.emplace(gr.id, static_cast<int>(inst.groups.size())).second)
        throw FormatError("duplicate group id " + gr.id);
      inst.groups.push_back(gr);
    }
    inst.initial.tracks.assign(inst.tracks.size(), {});
    for (const auto& [key, seq] : j.at("initial").items()) {
      const int t = std::stoi(key);
      if (t < 0 || t >= static_cast<int>(inst.tracks.size())) throw FormatError("initial names unknown track " + key);
      for (const auto& gid : seq) {
        auto it = index.find(id_string(gid));
        if (it == index.end()) throw FormatError("initial names unknown group " + id_string(gid));
        inst.initial.tracks[t].push_back(it->second);
      }
    }
    inst.cost = j.at("cost").get<std::vector<std::vector<Cost>>>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed instance: ") + e.what());
  }
  try {
    inst.validate();
  } catch (const InvalidInstance& e) {
    throw FormatError(std::string("invalid instance: ") + e.what());
  }
  return inst;
}

std::string plan_to_json(const Plan& plan, int indent) {
  json j;
  j["moves"] = json::array();
  for (const auto& m : plan.moves) j["moves"].push_back({{"src", m.src}, {"dst", m.dst}, {"count", m.count}});
  j["total_cost"] = plan.total_cost;
  return j.dump(indent);
}

Plan plan_from_json(const std::string& text) {
  Plan p;
  try {
    const json j = json::parse(text);
    for (const auto& m : j.at("moves"))
      p.moves.push_back({m.at("src").get<int>(), m.at("dst").get<int>(), m.at("count").get<int>()});
    p.total_cost = j.at("total_cost").get<Cost>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed plan: ") + e.what());
  }
  return p;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
}

Instance load_instance(const std::string& path) { return instance_from_json(read_file(path)); }
void save_instance(const Instance& inst, const std::string& path) { write_file(path, instance_to_json(inst) + "\n"); }
Plan load_plan(const std::string& path) { return plan_from_json(read_file(path)); }
void save_plan(const Plan& plan, const std::string& path) { write_file(path, plan_to_json(plan) + "\n"); }

std::string format_state(const State& s, const Instance& inst) {
  std::ostringstream os;
  for (std::size_t t = 0; t < s.tracks.size(); ++t) {
    if (t) os << ' ';
    os << t << ":[";
    for (std::size_t k = 0; k < s.tracks[t].size(); ++k) {
      if (k) os << ' ';
      os << inst.groups[s.tracks[t][k]].id;
    }
    os << ']';
  }
  return os.str();
}

}  // namespace rsp
